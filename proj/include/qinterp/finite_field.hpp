#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinterp {

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::size_t poly_degree(const std::vector<std::uint32_t>& a) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) deg = i;
    return deg;
}

/// Remainder of a modulo the monic polynomial m, coefficients in Z_p.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& m, std::uint32_t p) {
    const std::size_t dm = poly_degree(m);
    for (std::size_t i = a.size(); i-- > dm;) {
        const std::uint64_t c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (std::size_t j = 0; j < dm; ++j)
            a[i - dm + j] = static_cast<std::uint32_t>((a[i - dm + j] + c * (p - m[j])) % p);
    }
    a.resize(dm);
    return a;
}

inline std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b, std::uint32_t p) {
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return out;
}

inline bool poly_is_zero(const std::vector<std::uint32_t>& a) {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

/// Exhaustive irreducibility test over Z_p: trial division by every monic
/// polynomial of degree 1..deg/2. Desk-scale only.
inline bool poly_is_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
    const std::size_t deg = poly_degree(m);
    if (deg == 0) return false;
    if (deg == 1) return true;
    for (std::size_t e = 1; 2 * e <= deg; ++e) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            std::vector<std::uint32_t> divisor(e + 1, 0);
            std::uint64_t t = v;
            for (std::size_t i = 0; i < e; ++i) {
                divisor[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            divisor[e] = 1;
            if (poly_is_zero(poly_mod(m, divisor, p))) return false;
        }
    }
    return true;
}

}  // namespace detail

class FieldElement;

/// The finite field F_q, q = p^r, as parameters plus element arithmetic.
///
/// Elements are identified with indices in [0, q): the index encodes the
/// polynomial-basis coefficient vector (c_0, ..., c_{r-1}) little-endian in
/// base p, i.e. index = sum c_i * p^i. Immutable after construction; all
/// operations are pure, so one Field may be shared across threads.
class Field {
  public:
    static constexpr std::uint64_t kDefaultMaxQ = 1ull << 20;
    /// Unit-root tables are only precomputed for small characteristic.
    static constexpr std::uint32_t kCharacterTableMaxP = 4096;

    /// Constructs F_{p^r}. When no modulus is given, selects the smallest
    /// monic irreducible degree-r polynomial over Z_p (non-leading
    /// coefficients read as a base-p integer, c_{r-1} most significant).
    explicit Field(std::uint32_t p, std::uint32_t r = 1,
                   std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                   std::uint64_t max_q = kDefaultMaxQ) : p_(p), r_(r) {
        if (!detail::is_prime(p)) throw std::invalid_argument("Field: p = " + std::to_string(p) + " is not prime");
        if (r < 1) throw std::invalid_argument("Field: extension degree must be >= 1");
        q_ = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            if (q_ > max_q / p) throw std::length_error("Field: q = p^r exceeds the configured bound");
            q_ *= p;
        }
        if (modulus) {
            modulus_ = std::move(*modulus);
            if (modulus_.size() != std::size_t(r) + 1)
                throw std::invalid_argument("Field: modulus must have degree exactly r");
            for (auto c : modulus_)
                if (c >= p) throw std::invalid_argument("Field: modulus coefficient out of range [0, p)");
            if (modulus_.back() != 1) throw std::invalid_argument("Field: modulus must be monic");
            if (!detail::poly_is_irreducible(modulus_, p))
                throw std::invalid_argument("Field: modulus is reducible over Z_p");
        } else {
            modulus_ = find_default_modulus();
        }
        if (p_ <= kCharacterTableMaxP) {
            character_table_.resize(p_);
            for (std::uint32_t t = 0; t < p_; ++t) character_table_[t] = unit_root(t);
        }
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint64_t q() const { return q_; }
    /// Monic modulus polynomial, coefficients c_0..c_r little-endian.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool operator==(const Field& other) const {
        return p_ == other.p_ && r_ == other.r_ && modulus_ == other.modulus_;
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

    std::vector<std::uint32_t> decode(std::uint64_t idx) const {
        check_index(idx);
        std::vector<std::uint32_t> coeffs(r_);
        for (std::uint32_t i = 0; i < r_; ++i) {
            coeffs[i] = static_cast<std::uint32_t>(idx % p_);
            idx /= p_;
        }
        return coeffs;
    }

    std::uint64_t encode(const std::vector<std::uint32_t>& coeffs) const {
        if (coeffs.size() != r_) throw std::invalid_argument("Field: coefficient vector must have length r");
        std::uint64_t idx = 0;
        for (std::uint32_t i = r_; i-- > 0;) {
            if (coeffs[i] >= p_) throw std::invalid_argument("Field: coefficient out of range [0, p)");
            idx = idx * p_ + coeffs[i];
        }
        return idx;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        check_index(a);
        check_index(b);
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += ((a % p_ + b % p_) % p_) * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return out;
    }

    std::uint64_t neg(std::uint64_t a) const {
        check_index(a);
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < r_; ++i) {
            out += ((p_ - a % p_) % p_) * mult;
            a /= p_;
            mult *= p_;
        }
        return out;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        check_index(a);
        check_index(b);
        if (r_ == 1) return (a * b) % p_;
        return encode(detail::poly_mod(detail::poly_mul(decode(a), decode(b), p_), modulus_, p_));
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        check_index(a);
        std::uint64_t result = 1, base = a;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    /// Multiplicative inverse via a^(q-2); a must be nonzero.
    std::uint64_t inv(std::uint64_t a) const {
        check_index(a);
        if (a == 0) throw std::invalid_argument("Field: zero has no multiplicative inverse");
        return pow(a, q_ - 2);
    }

    /// Absolute trace onto the prime subfield: sum of z^(p^i), i = 0..r-1,
    /// reported as an integer in [0, p).
    std::uint32_t trace(std::uint64_t a) const {
        check_index(a);
        std::uint64_t acc = a, frob = a;
        for (std::uint32_t i = 1; i < r_; ++i) {
            frob = pow(frob, p_);
            acc = add(acc, frob);
        }
        const auto coeffs = decode(acc);
        for (std::uint32_t i = 1; i < r_; ++i)
            if (coeffs[i] != 0) throw std::logic_error("Field: trace left the prime subfield");
        return coeffs[0];
    }

    /// Additive character exp(2*pi*i*trace(z)/p). Values at trace 0 and, for
    /// p = 2, trace 1 are exact so qubit gates carry no rounding.
    std::complex<double> character(std::uint64_t a) const {
        const std::uint32_t t = trace(a);
        if (!character_table_.empty()) return character_table_[t];
        return unit_root(t);
    }

    FieldElement element(std::uint64_t idx) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;

    /// Human-readable modulus, highest-degree term first, e.g. "x^2+x+1".
    std::string modulus_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            const std::uint32_t c = modulus_[i];
            if (c == 0) continue;
            if (!first) os << "+";
            if (i == 0)
                os << c;
            else {
                if (c != 1) os << c << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    void check_index(std::uint64_t idx) const {
        if (idx >= q_) throw std::invalid_argument("Field: element index out of range [0, q)");
    }

    std::complex<double> unit_root(std::uint32_t t) const {
        if (t == 0) return {1.0, 0.0};
        if (p_ == 2) return {-1.0, 0.0};
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p_);
        return {std::cos(angle), std::sin(angle)};
    }

    std::vector<std::uint32_t> find_default_modulus() const {
        if (r_ == 1) return {0, 1};  // x itself: Z_p
        std::vector<std::uint32_t> m(r_ + 1, 0);
        m[r_] = 1;
        for (std::uint64_t v = 0; v < q_; ++v) {
            std::uint64_t t = v;
            for (std::uint32_t i = 0; i < r_; ++i) {
                m[i] = static_cast<std::uint32_t>(t % p_);
                t /= p_;
            }
            if (detail::poly_is_irreducible(m, p_)) return m;
        }
        throw std::logic_error("Field: no irreducible modulus found");  // unreachable
    }

    std::uint32_t p_;
    std::uint32_t r_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::complex<double>> character_table_;
};

/// One element of a Field, held as its index. Keeps a non-owning pointer to
/// the field, which must outlive the element. Binary operations accept
/// elements of distinct Field objects with equal parameters.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(const Field& field, std::uint64_t index) : field_(&field), index_(index) {
        if (index >= field.q()) throw std::invalid_argument("FieldElement: index out of range");
    }

    const Field& field() const {
        if (!field_) throw std::logic_error("FieldElement: default-constructed element has no field");
        return *field_;
    }
    std::uint64_t index() const { return index_; }
    std::vector<std::uint32_t> coeffs() const { return field().decode(index_); }
    bool is_zero() const { return index_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        const Field& f = common_field(a, b);
        return FieldElement(f, f.add(a.index_, b.index_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        const Field& f = common_field(a, b);
        return FieldElement(f, f.sub(a.index_, b.index_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        const Field& f = common_field(a, b);
        return FieldElement(f, f.mul(a.index_, b.index_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        const Field& f = common_field(a, b);
        return FieldElement(f, f.mul(a.index_, f.inv(b.index_)));
    }
    FieldElement operator-() const { return FieldElement(field(), field().neg(index_)); }

    FieldElement pow(std::uint64_t e) const { return FieldElement(field(), field().pow(index_, e)); }
    FieldElement inverse() const { return FieldElement(field(), field().inv(index_)); }
    std::uint32_t trace() const { return field().trace(index_); }
    std::complex<double> character() const { return field().character(index_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        common_field(a, b);
        return a.index_ == b.index_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  private:
    static const Field& common_field(const FieldElement& a, const FieldElement& b) {
        const Field& fa = a.field();
        const Field& fb = b.field();
        if (&fa != &fb && fa != fb)
            throw std::invalid_argument("FieldElement: operands belong to different fields");
        return fa;
    }

    const Field* field_ = nullptr;
    std::uint64_t index_ = 0;
};

inline FieldElement Field::element(std::uint64_t idx) const { return FieldElement(*this, idx); }
inline FieldElement Field::zero() const { return FieldElement(*this, 0); }
inline FieldElement Field::one() const { return FieldElement(*this, 1); }
inline FieldElement Field::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    return FieldElement(*this, encode(coeffs));
}

}  // namespace qinterp
