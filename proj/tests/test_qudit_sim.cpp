#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <sstream>

#include "qinterp/qudit_sim.hpp"

using namespace qinterp;

namespace {

StateVector random_state(const RegisterLayout& layout, Rng& rng) {
    std::vector<Amplitude> amps(layout.dimension());
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = Amplitude{rng.uniform_unit() - 0.5, rng.uniform_unit() - 0.5};
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= scale;
    return StateVector(layout, std::move(amps));
}

double max_state_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
        worst = std::max(worst, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    return worst;
}

Field make_field(std::uint32_t q) { return q == 4 ? Field(2, 2) : Field(q, 1); }

}  // namespace

TEST_CASE("basis states", "[qudit]") {
    RegisterLayout layout(Field(2), {{"x", 2}, {"anc", 1}});
    StateVector s = StateVector::basis_state(layout, {0, 0, 1});
    CHECK(s.amplitudes()[4] == Amplitude{1.0, 0.0});  // little-endian: cell 2 has stride 4
    CHECK(s.norm() == 1.0);

    StateVector t = StateVector::basis_state(layout, {1, 0, 1});
    CHECK(std::abs(s.inner_product(t)) == 0.0);

    CHECK_THROWS_AS(StateVector::basis_state(layout, {0, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::basis_state(layout, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(RegisterLayout(Field(2), {{"x", 30}}), std::length_error);
}

TEST_CASE("qft at q = 2 is the Hadamard gate", "[qudit]") {
    RegisterLayout layout(Field(2), {{"c", 1}});
    const double h = 1.0 / std::sqrt(2.0);
    const Amplitude expected[2][2] = {{{h, 0}, {h, 0}}, {{h, 0}, {-h, 0}}};
    for (std::uint32_t col = 0; col < 2; ++col) {
        StateVector out = qft(StateVector::basis_state(layout, {col}), "c");
        for (std::uint32_t row = 0; row < 2; ++row)
            CHECK(std::abs(out.amplitudes()[row] - expected[row][col]) <= 1e-12);
    }
}

TEST_CASE("iqft inverts qft on random states", "[qudit]") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        RegisterLayout layout(make_field(q), {{"x", 2}});
        Rng rng(q);
        for (int rep = 0; rep < 25; ++rep) {
            StateVector s = random_state(layout, rng);
            CHECK(max_state_diff(iqft(qft(s, "x"), "x"), s) <= 1e-12);
            CHECK(max_state_diff(qft(iqft(s, "x"), "x"), s) <= 1e-12);
        }
    }
}

TEST_CASE("qft of |0> is the uniform phaseless superposition", "[qudit]") {
    RegisterLayout layout(Field(3), {{"c", 1}});
    StateVector out = qft(StateVector::basis_state(layout, {0}), "c");
    for (const auto& a : out.amplitudes()) CHECK(std::abs(a - Amplitude{1.0 / std::sqrt(3.0), 0.0}) <= 1e-12);
}

TEST_CASE("shift oracle", "[qudit]") {
    Field f2(2);
    RegisterLayout layout(f2, {{"x", 1}, {"z", 1}});
    MonomialBasis linear(1, 1, false);
    Polynomial identity_poly(f2, linear, {1});  // f(x) = x
    Polynomial zero_poly = Polynomial::zero(f2, linear);

    // f = 0 acts as the identity
    Rng rng(3);
    StateVector s = random_state(layout, rng);
    CHECK(max_state_diff(oracle_shift(s, zero_poly, "x", "z"), s) == 0.0);

    // CNOT truth table: |x,z> -> |x, z xor x>
    const std::uint32_t expect[4][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};  // index = x + 2z
    for (std::uint32_t x = 0; x < 2; ++x)
        for (std::uint32_t z = 0; z < 2; ++z) {
            StateVector out = oracle_shift(StateVector::basis_state(layout, {x, z}), identity_poly, "x", "z");
            const std::uint64_t idx = expect[x + 2 * z][0] + 2 * expect[x + 2 * z][1];
            CHECK(out.amplitudes()[idx] == Amplitude{1.0, 0.0});
        }

    // applying the same shift twice over q = 2 is the identity
    StateVector twice = oracle_shift(oracle_shift(s, identity_poly, "x", "z"), identity_poly, "x", "z");
    CHECK(max_state_diff(twice, s) == 0.0);

    CHECK_THROWS_AS(oracle_shift(s, identity_poly, "x", "missing"), std::invalid_argument);
    Polynomial wide(f2, MonomialBasis(2, 1, false), {1, 0});
    CHECK_THROWS_AS(oracle_shift(s, wide, "x", "z"), std::invalid_argument);
}

TEST_CASE("phase oracle", "[qudit]") {
    Field f2(2);
    RegisterLayout layout(f2, {{"x", 1}, {"y", 1}});
    MonomialBasis linear(1, 1, false);
    Polynomial identity_poly(f2, linear, {1});

    Rng rng(4);
    StateVector s = random_state(layout, rng);
    CHECK(max_state_diff(oracle_phase(s, Polynomial::zero(f2, linear), "x", "y"), s) == 0.0);

    // |1,1> picks up e(1) = -1
    StateVector out = oracle_phase(StateVector::basis_state(layout, {1, 1}), identity_poly, "x", "y");
    CHECK(out.amplitudes()[3] == Amplitude{-1.0, 0.0});
    // |1,0>, |0,y> are fixed
    out = oracle_phase(StateVector::basis_state(layout, {1, 0}), identity_poly, "x", "y");
    CHECK(out.amplitudes()[1] == Amplitude{1.0, 0.0});
}

TEST_CASE("kickback: conjugated shift oracle equals the phase oracle", "[qudit]") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        Field field = make_field(q);
        RegisterLayout layout(field, {{"x", 1}, {"y", 1}});
        Rng rng(50 + q);
        Polynomial f = Polynomial::random(field, MonomialBasis(1, 2, true), rng);
        for (std::uint64_t idx = 0; idx < layout.dimension(); ++idx) {
            std::vector<std::uint32_t> digits = {static_cast<std::uint32_t>(idx % q),
                                                 static_cast<std::uint32_t>(idx / q)};
            StateVector in = StateVector::basis_state(layout, digits);
            StateVector lhs = iqft(oracle_shift(qft(in, "y"), f, "x", "y"), "y");
            StateVector rhs = oracle_phase(in, f, "x", "y");
            CHECK(max_state_diff(lhs, rhs) <= 1e-10);
        }
    }
}

TEST_CASE("unitarity on random states", "[qudit]") {
    const std::pair<std::uint32_t, std::uint32_t> configs[] = {{2, 6}, {3, 4}, {4, 3}, {5, 3}};
    for (auto [q, m] : configs) {
        Field field = make_field(q);
        RegisterLayout layout(field, {{"x", m - 1}, {"y", 1}});
        Rng rng(q * 31 + m);
        Polynomial f = Polynomial::random(field, MonomialBasis(m - 1, 2, true), rng);
        for (int rep = 0; rep < 5; ++rep) {
            StateVector s = random_state(layout, rng);
            CHECK(std::abs(qft(s, "x").norm() - 1.0) <= 1e-9);
            CHECK(std::abs(iqft(s, "y").norm() - 1.0) <= 1e-9);
            CHECK(std::abs(oracle_shift(s, f, "x", "y").norm() - 1.0) <= 1e-9);
            CHECK(std::abs(oracle_phase(s, f, "x", "y").norm() - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("measurement statistics and determinism", "[qudit]") {
    RegisterLayout layout(Field(2), {{"c", 1}});

    // basis state measures to itself with certainty
    {
        Rng rng(9);
        StateVector s = StateVector::basis_state(layout, {1});
        for (int rep = 0; rep < 20; ++rep) {
            const MeasureOutcome out = measure(s, rng);
            CHECK(out.index == 1);
            CHECK(out.post.amplitudes()[1] == Amplitude{1.0, 0.0});
        }
    }

    // uniform qubit: frequencies within 3 sigma over 10^4 draws
    {
        Rng rng(10);
        StateVector uniform = qft(StateVector::basis_state(layout, {0}), "c");
        int ones = 0;
        const int trials = 10000;
        for (int t = 0; t < trials; ++t)
            if (measure(uniform, rng).index == 1) ++ones;
        const double sigma = std::sqrt(0.25 / trials);
        CHECK(std::abs(ones / double(trials) - 0.5) <= 3 * sigma);
    }

    // fixed seed gives a reproducible outcome sequence
    {
        StateVector uniform = qft(StateVector::basis_state(layout, {0}), "c");
        Rng rng_a(11), rng_b(11);
        for (int t = 0; t < 50; ++t) CHECK(measure(uniform, rng_a).index == measure(uniform, rng_b).index);
    }

    // unnormalized input is rejected
    {
        std::vector<Amplitude> bad(layout.dimension(), Amplitude{0.5, 0.0});
        bad[0] = Amplitude{0.9, 0.0};
        StateVector s(layout, std::move(bad));
        Rng rng(12);
        CHECK_THROWS_AS(measure(s, rng), std::invalid_argument);
    }
}

TEST_CASE("amplitude dump format", "[qudit]") {
    RegisterLayout layout(Field(3), {{"x", 2}});
    StateVector s = StateVector::basis_state(layout, {2, 1});
    std::ostringstream os;
    dump_amplitudes_csv(s, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "digits,re,im");
    std::size_t rows = 0, hits = 0;
    while (std::getline(is, line)) {
        ++rows;
        if (line == "2-1,1,0") ++hits;
    }
    CHECK(rows == 9);
    CHECK(hits == 1);

    std::ostringstream os2;
    dump_amplitudes_csv(s, os2);
    CHECK(os.str() == os2.str());
}
