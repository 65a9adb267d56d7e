#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "qinterp/polynomial.hpp"
#include "qinterp/rng.hpp"

using namespace qinterp;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) { return binomial_checked(n, k); }

std::vector<std::uint64_t> random_point(const Field& f, std::uint32_t n, Rng& rng) {
    std::vector<std::uint64_t> point(n);
    for (auto& x : point) x = rng.uniform_below(f.q());
    return point;
}

}  // namespace

TEST_CASE("monomial basis enumeration and order", "[polynomial]") {
    MonomialBasis univariate(1, 2, true);
    REQUIRE(univariate.size() == 3);  // 1, x, x^2
    CHECK(univariate.exponents == std::vector<std::vector<std::uint32_t>>{{0}, {1}, {2}});

    MonomialBasis bivariate(2, 2, true);
    REQUIRE(bivariate.size() == 6);  // C(4,2)
    CHECK(bivariate.exponents ==
          std::vector<std::vector<std::uint32_t>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});

    MonomialBasis linear(3, 1, false);
    REQUIRE(linear.size() == 3);  // x1, x2, x3 — the hidden-linear-form class
    CHECK(linear.exponents ==
          std::vector<std::vector<std::uint32_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

    CHECK_THROWS_AS(MonomialBasis(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(MonomialBasis(1, 0), std::invalid_argument);
}

TEST_CASE("basis size matches the closed-form binomial", "[polynomial]") {
    for (std::uint32_t n = 1; n <= 8; ++n)
        for (std::uint32_t d = 1; d <= 8; ++d) {
            CHECK(MonomialBasis(n, d, true).size() == binom(n + d, d));
            CHECK(MonomialBasis(n, d, false).size() == binom(n + d, d) - 1);
        }
}

TEST_CASE("polynomial evaluation", "[polynomial]") {
    Field f3(3);
    MonomialBasis basis(1, 2, true);

    Polynomial zero = Polynomial::zero(f3, basis);
    for (std::uint64_t x = 0; x < 3; ++x) CHECK(zero.evaluate_index({x}) == 0);

    // f = 2x^2 + 1 at x = 2: 2*4 + 1 = 9 = 0 mod 3
    Polynomial f(f3, basis, {1, 0, 2});
    CHECK(f.evaluate_index({2}) == 0);
    CHECK(f.evaluate_index({0}) == 1);
    CHECK(f.evaluate_index({1}) == 0);
    CHECK(f.evaluate(std::vector<FieldElement>{f3.element(2)}) == f3.zero());

    CHECK_THROWS_AS(f.evaluate_index({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial(f3, basis, {1, 0}), std::invalid_argument);
}

TEST_CASE("linear forms match an independent dot-product oracle", "[polynomial]") {
    Field f2(2);
    for (std::uint32_t n = 1; n <= 4; ++n) {
        MonomialBasis linear(n, 1, false);
        for (std::uint64_t a_bits = 0; a_bits < (1ull << n); ++a_bits) {
            std::vector<std::uint64_t> coeffs(n);
            for (std::uint32_t i = 0; i < n; ++i) coeffs[i] = (a_bits >> i) & 1;
            Polynomial f(f2, linear, coeffs);
            for (std::uint64_t x_bits = 0; x_bits < (1ull << n); ++x_bits) {
                std::vector<std::uint64_t> x(n);
                std::uint64_t dot = 0;
                for (std::uint32_t i = 0; i < n; ++i) {
                    x[i] = (x_bits >> i) & 1;
                    dot += ((a_bits >> i) & 1) * x[i];
                }
                CHECK(f.evaluate_index(x) == dot % 2);
            }
        }
    }
}

TEST_CASE("query count formula", "[polynomial]") {
    for (std::uint32_t n = 1; n <= 10; ++n) CHECK(query_count(n, 1) == 1);
    for (std::uint32_t d = 1; d <= 10; ++d) CHECK(query_count(1, d) == d);
    CHECK(query_count(2, 2) == 3);  // (2/4) * C(4,2)

    // integrality (and the cross-form identity) throughout the small grid;
    // query_count throws std::logic_error if either check fails
    for (std::uint32_t n = 1; n <= 12; ++n)
        for (std::uint32_t d = 1; d <= 12; ++d) CHECK_NOTHROW(query_count(n, d));

    CHECK_THROWS_AS(query_count(40, 40, 1000), std::overflow_error);
    CHECK_THROWS_AS(query_count(0, 1), std::invalid_argument);
}

TEST_CASE("z map components", "[polynomial]") {
    Field f5(5);
    MonomialBasis basis(1, 1, true);

    // y = 0 slice maps to the zero vector
    CHECK(z_map(f5, basis, {{3}}, {0}) == std::vector<std::uint64_t>{0, 0});

    // single query: (y, y*x) by direct expansion
    for (std::uint64_t x = 0; x < 5; ++x)
        for (std::uint64_t y = 0; y < 5; ++y)
            CHECK(z_map(f5, basis, {{x}}, {y}) == std::vector<std::uint64_t>{y, f5.mul(y, x)});

    // worked two-query case over F_3: x = (1,2), y = (1,1) on (1, x, x^2)
    // components are 1+1 = 2, 1+2 = 0, 1+4 = 2 (mod 3)
    Field f3(3);
    MonomialBasis quad(1, 2, true);
    CHECK(z_map(f3, quad, {{1}, {2}}, {1, 1}) == std::vector<std::uint64_t>{2, 0, 2});

    CHECK_THROWS_AS(z_map(f3, quad, {{1}, {2}}, {1}), std::invalid_argument);
}

TEST_CASE("seeded random polynomials are reproducible and well spread", "[polynomial]") {
    Field f5(5);
    MonomialBasis basis(2, 2, true);

    CHECK(Polynomial::random(f5, basis, 42) == Polynomial::random(f5, basis, 42));

    int differing = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        if (Polynomial::random(f5, basis, 2 * s).coefficient_indices() !=
            Polynomial::random(f5, basis, 2 * s + 1).coefficient_indices())
            ++differing;
    }
    CHECK(differing >= 99);

    // frequency of each field value over 10*q*D coefficient draws within
    // 5 sigma of uniform
    const std::size_t D = basis.size();
    const std::uint64_t q = f5.q();
    const std::uint64_t total = 10 * q * D;
    std::map<std::uint64_t, std::uint64_t> counts;
    Rng rng(777);
    std::uint64_t drawn = 0;
    while (drawn < total) {
        Polynomial p = Polynomial::random(f5, basis, rng);
        for (auto c : p.coefficient_indices()) {
            if (drawn == total) break;
            ++counts[c];
            ++drawn;
        }
    }
    const double expected = static_cast<double>(total) / q;
    const double sigma = std::sqrt(static_cast<double>(total) * (1.0 / q) * (1.0 - 1.0 / q));
    for (std::uint64_t v = 0; v < q; ++v)
        CHECK(std::abs(static_cast<double>(counts[v]) - expected) <= 5.0 * sigma);
}

TEST_CASE("sum of y_i f(x_i) equals the z-map pairing", "[polynomial]") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        Field field = (q == 4) ? Field(2, 2) : Field(q, 1);
        for (std::uint32_t n = 1; n <= 2; ++n)
            for (std::uint32_t d = 1; d <= 2; ++d)
                for (std::uint32_t k = 1; k <= 3; ++k) {
                    Rng rng(1000 * q + 100 * n + 10 * d + k);
                    for (int rep = 0; rep < 50; ++rep) {
                        Polynomial f = Polynomial::random(field, MonomialBasis(n, d, true), rng);
                        std::vector<std::vector<std::uint64_t>> xs;
                        std::vector<std::uint64_t> ys;
                        for (std::uint32_t i = 0; i < k; ++i) {
                            xs.push_back(random_point(field, n, rng));
                            ys.push_back(rng.uniform_below(q));
                        }
                        std::uint64_t lhs = 0;
                        for (std::uint32_t i = 0; i < k; ++i)
                            lhs = field.add(lhs, field.mul(ys[i], f.evaluate_index(xs[i])));
                        const auto z = z_map(field, f.basis(), xs, ys);
                        std::uint64_t rhs = 0;
                        for (std::size_t j = 0; j < z.size(); ++j)
                            rhs = field.add(rhs, field.mul(z[j], f.coefficient_indices()[j]));
                        CHECK(lhs == rhs);
                    }
                }
    }
}
