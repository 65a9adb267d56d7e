#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qinterp/finite_field.hpp"
#include "qinterp/rng.hpp"

namespace qinterp {

/// Exponent tuples of total degree <= d in n variables, graded-lex ordered:
/// ascending total degree, and within one degree descending lexicographic
/// comparison of the tuples (so x1 comes before x2, x1^2 before x1*x2).
/// The all-zero tuple is present iff include_constant.
struct MonomialBasis {
    std::uint32_t num_variables = 0;
    std::uint32_t max_degree = 0;
    bool include_constant = true;
    std::vector<std::vector<std::uint32_t>> exponents;

    MonomialBasis() = default;
    MonomialBasis(std::uint32_t n, std::uint32_t d, bool with_constant = true)
        : num_variables(n), max_degree(d), include_constant(with_constant) {
        if (n < 1) throw std::invalid_argument("MonomialBasis: need at least one variable");
        if (d < 1) throw std::invalid_argument("MonomialBasis: need degree at least one");
        std::vector<std::uint32_t> tuple(n, 0);
        for (std::uint32_t deg = with_constant ? 0 : 1; deg <= d; ++deg) emit(tuple, 0, deg);
    }

    std::size_t size() const { return exponents.size(); }

    bool operator==(const MonomialBasis& other) const {
        return num_variables == other.num_variables && max_degree == other.max_degree &&
               include_constant == other.include_constant;
    }
    bool operator!=(const MonomialBasis& other) const { return !(*this == other); }

  private:
    void emit(std::vector<std::uint32_t>& tuple, std::uint32_t var, std::uint32_t remaining) {
        if (var + 1 == num_variables) {
            tuple[var] = remaining;
            exponents.push_back(tuple);
            return;
        }
        for (std::uint32_t e = remaining + 1; e-- > 0;) {
            tuple[var] = e;
            emit(tuple, var + 1, remaining - e);
        }
        tuple[var] = 0;
    }
};

/// Exact binomial coefficient; throws std::overflow_error past max_value.
inline std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k,
                                      std::uint64_t max_value = 1ull << 62) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;  // exact at every step
        if (result > max_value) throw std::overflow_error("binomial coefficient exceeds configured bound");
    }
    return static_cast<std::uint64_t>(result);
}

/// Optimal query count k = (d/(n+d)) * C(n+d, d), evaluated in exact integer
/// arithmetic with an integrality assertion, cross-checked against the
/// equivalent closed form C(n+d-1, n).
inline std::uint64_t query_count(std::uint32_t n, std::uint32_t d,
                                 std::uint64_t max_value = 1ull << 62) {
    if (n < 1 || d < 1) throw std::invalid_argument("query_count: need n >= 1 and d >= 1");
    const unsigned __int128 numerator =
        static_cast<unsigned __int128>(d) * binomial_checked(n + d, d, max_value);
    if (numerator % (n + d) != 0) throw std::logic_error("query_count: d/(n+d)*C(n+d,d) is not an integer");
    const unsigned __int128 k = numerator / (n + d);
    if (k > max_value) throw std::overflow_error("query_count exceeds configured bound");
    if (k != binomial_checked(n + d - 1, n, max_value))
        throw std::logic_error("query_count: formula disagrees with C(n+d-1, n)");
    return static_cast<std::uint64_t>(k);
}

/// Multivariate polynomial over F_q on a fixed monomial basis. Owns a copy
/// of its field; coefficients are stored as element indices in basis order.
class Polynomial {
  public:
    Polynomial(Field field, MonomialBasis basis, std::vector<std::uint64_t> coefficient_indices)
        : field_(std::move(field)), basis_(std::move(basis)), coeffs_(std::move(coefficient_indices)) {
        if (coeffs_.size() != basis_.size())
            throw std::invalid_argument("Polynomial: coefficient count must equal basis size");
        for (auto c : coeffs_)
            if (c >= field_.q()) throw std::invalid_argument("Polynomial: coefficient index out of range");
    }

    static Polynomial zero(Field field, MonomialBasis basis) {
        std::vector<std::uint64_t> coeffs(basis.size(), 0);
        return Polynomial(std::move(field), std::move(basis), std::move(coeffs));
    }

    /// Uniform i.i.d. coefficients from the given stream.
    static Polynomial random(Field field, MonomialBasis basis, Rng& rng) {
        std::vector<std::uint64_t> coeffs(basis.size());
        for (auto& c : coeffs) c = rng.uniform_below(field.q());
        return Polynomial(std::move(field), std::move(basis), std::move(coeffs));
    }

    /// Seeded variant; the same seed always yields the same polynomial.
    static Polynomial random(Field field, MonomialBasis basis, std::uint64_t seed) {
        Rng rng(seed);
        return random(std::move(field), std::move(basis), rng);
    }

    const Field& field() const { return field_; }
    const MonomialBasis& basis() const { return basis_; }
    const std::vector<std::uint64_t>& coefficient_indices() const { return coeffs_; }
    FieldElement coefficient(std::size_t i) const { return field_.element(coeffs_.at(i)); }

    /// Value at a point given as element indices, one per variable.
    std::uint64_t evaluate_index(const std::vector<std::uint64_t>& point) const {
        if (point.size() != basis_.num_variables)
            throw std::invalid_argument("Polynomial: point dimension mismatch");
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j] == 0) continue;
            std::uint64_t term = coeffs_[j];
            const auto& alpha = basis_.exponents[j];
            for (std::uint32_t v = 0; v < basis_.num_variables; ++v)
                if (alpha[v] != 0) term = field_.mul(term, field_.pow(point[v], alpha[v]));
            acc = field_.add(acc, term);
        }
        return acc;
    }

    FieldElement evaluate(const std::vector<FieldElement>& point) const {
        std::vector<std::uint64_t> indices(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (point[i].field() != field_)
                throw std::invalid_argument("Polynomial: point element from a different field");
            indices[i] = point[i].index();
        }
        return field_.element(evaluate_index(indices));
    }

    bool operator==(const Polynomial& other) const {
        return field_ == other.field_ && basis_ == other.basis_ && coeffs_ == other.coeffs_;
    }

  private:
    Field field_;
    MonomialBasis basis_;
    std::vector<std::uint64_t> coeffs_;
};

/// Z(x, y): component at exponent tuple alpha is sum_i y_i * x_i^alpha.
/// points holds k points of F_q^n (element indices); ys holds k scalars.
inline std::vector<std::uint64_t> z_map(const Field& field, const MonomialBasis& basis,
                                        const std::vector<std::vector<std::uint64_t>>& points,
                                        const std::vector<std::uint64_t>& ys) {
    if (points.size() != ys.size()) throw std::invalid_argument("z_map: need one y per point");
    std::vector<std::uint64_t> out(basis.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != basis.num_variables)
            throw std::invalid_argument("z_map: point dimension mismatch");
        for (std::size_t j = 0; j < basis.size(); ++j) {
            std::uint64_t term = ys[i];
            const auto& alpha = basis.exponents[j];
            for (std::uint32_t v = 0; v < basis.num_variables; ++v)
                if (alpha[v] != 0) term = field.mul(term, field.pow(points[i][v], alpha[v]));
            out[j] = field.add(out[j], term);
        }
    }
    return out;
}

}  // namespace qinterp
