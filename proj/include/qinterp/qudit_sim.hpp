#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qinterp/finite_field.hpp"
#include "qinterp/polynomial.hpp"
#include "qinterp/rng.hpp"

namespace qinterp {

using Amplitude = std::complex<double>;

struct QuditRegister {
    std::string name;
    std::uint32_t first_cell = 0;
    std::uint32_t num_cells = 0;
};

/// Named groups of base-q cells over one field. State indices are
/// little-endian base-q digit strings: cell 0 is the least significant
/// digit, so index = sum_j digit_j * q^j.
class RegisterLayout {
  public:
    static constexpr std::uint64_t kDefaultMaxAmplitudes = 1ull << 24;

    RegisterLayout(Field field, const std::vector<std::pair<std::string, std::uint32_t>>& registers,
                   std::uint64_t max_amplitudes = kDefaultMaxAmplitudes) : field_(std::move(field)) {
        strides_.push_back(1);
        for (const auto& [name, cells] : registers) {
            if (cells == 0) throw std::invalid_argument("RegisterLayout: register needs at least one cell");
            registers_.push_back({name, total_cells_, cells});
            for (std::uint32_t i = 0; i < cells; ++i) {
                if (dimension_ > max_amplitudes / field_.q())
                    throw std::length_error("RegisterLayout: q^m exceeds the amplitude bound");
                dimension_ *= field_.q();
                strides_.push_back(dimension_);
            }
            total_cells_ += cells;
        }
        if (total_cells_ == 0) throw std::invalid_argument("RegisterLayout: need at least one register");
    }

    const Field& field() const { return field_; }
    std::uint64_t dimension() const { return dimension_; }
    std::uint32_t total_cells() const { return total_cells_; }
    const std::vector<QuditRegister>& registers() const { return registers_; }

    const QuditRegister& reg(std::string_view name) const {
        for (const auto& r : registers_)
            if (r.name == name) return r;
        throw std::invalid_argument("RegisterLayout: unknown register '" + std::string(name) + "'");
    }

    std::uint64_t stride(std::uint32_t cell) const { return strides_[cell]; }
    std::uint32_t digit(std::uint64_t index, std::uint32_t cell) const {
        return static_cast<std::uint32_t>((index / strides_[cell]) % field_.q());
    }

    bool operator==(const RegisterLayout& other) const {
        if (field_ != other.field_ || registers_.size() != other.registers_.size()) return false;
        for (std::size_t i = 0; i < registers_.size(); ++i)
            if (registers_[i].name != other.registers_[i].name ||
                registers_[i].first_cell != other.registers_[i].first_cell ||
                registers_[i].num_cells != other.registers_[i].num_cells)
                return false;
        return true;
    }

  private:
    Field field_;
    std::vector<QuditRegister> registers_;
    std::uint32_t total_cells_ = 0;
    std::uint64_t dimension_ = 1;
    std::vector<std::uint64_t> strides_;
};

/// Dense amplitude vector over a layout. Value type; gate functions take a
/// state by value and return the transformed state. A state must not be
/// operated on from two threads at once, distinct states are independent.
class StateVector {
  public:
    StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
        : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
        if (amps_.size() != layout_.dimension())
            throw std::invalid_argument("StateVector: amplitude count must equal layout dimension");
    }

    static StateVector basis_state(RegisterLayout layout, const std::vector<std::uint32_t>& digits) {
        if (digits.size() != layout.total_cells())
            throw std::invalid_argument("StateVector: need one digit per cell");
        std::uint64_t index = 0;
        for (std::uint32_t cell = 0; cell < digits.size(); ++cell) {
            if (digits[cell] >= layout.field().q())
                throw std::invalid_argument("StateVector: digit out of range [0, q)");
            index += digits[cell] * layout.stride(cell);
        }
        std::vector<Amplitude> amps(layout.dimension(), Amplitude{0.0, 0.0});
        amps[index] = Amplitude{1.0, 0.0};
        return StateVector(std::move(layout), std::move(amps));
    }

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }

    double norm() const {
        double n = 0.0;
        for (const auto& a : amps_) n += std::norm(a);
        return std::sqrt(n);
    }

    std::vector<std::uint32_t> digits_of(std::uint64_t index) const {
        std::vector<std::uint32_t> out(layout_.total_cells());
        for (std::uint32_t cell = 0; cell < out.size(); ++cell) out[cell] = layout_.digit(index, cell);
        return out;
    }

    Amplitude inner_product(const StateVector& other) const {
        if (amps_.size() != other.amps_.size())
            throw std::invalid_argument("StateVector: dimension mismatch in inner product");
        Amplitude acc{0.0, 0.0};
        for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
        return acc;
    }

  private:
    RegisterLayout layout_;
    std::vector<Amplitude> amps_;
};

namespace detail {

inline void check_norm_preserved(const StateVector& state, const char* op) {
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw std::logic_error(std::string(op) + ": gate left the state unnormalized");
}

/// Applies a q x q matrix to one cell; matrix[t][s] maps digit s to t.
inline void apply_cell_matrix(StateVector& state, std::uint32_t cell,
                              const std::vector<std::vector<Amplitude>>& matrix) {
    const std::uint64_t q = state.layout().field().q();
    const std::uint64_t stride = state.layout().stride(cell);
    auto& amps = state.amplitudes();
    std::vector<Amplitude> scratch(q);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if ((base / stride) % q != 0) continue;
        for (std::uint64_t t = 0; t < q; ++t) {
            Amplitude acc{0.0, 0.0};
            for (std::uint64_t s = 0; s < q; ++s) acc += matrix[t][s] * amps[base + s * stride];
            scratch[t] = acc;
        }
        for (std::uint64_t t = 0; t < q; ++t) amps[base + t * stride] = scratch[t];
    }
}

/// fourier_matrix(field, -1)[y][x] = e(-x*y)/sqrt(q); sign +1 is the adjoint.
inline std::vector<std::vector<Amplitude>> fourier_matrix(const Field& field, int sign) {
    const std::uint64_t q = field.q();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<std::vector<Amplitude>> m(q, std::vector<Amplitude>(q));
    for (std::uint64_t y = 0; y < q; ++y)
        for (std::uint64_t x = 0; x < q; ++x) {
            const std::uint64_t prod = field.mul(x, y);
            m[y][x] = field.character(sign < 0 ? field.neg(prod) : prod) * scale;
        }
    return m;
}

/// Values of f over every source-register assignment, indexed by the
/// combined little-endian source digits.
inline std::vector<std::uint64_t> oracle_value_table(const StateVector& state, const Polynomial& f,
                                                     const QuditRegister& source) {
    const Field& field = state.layout().field();
    if (f.field() != field) throw std::invalid_argument("oracle: polynomial field differs from layout field");
    if (f.basis().num_variables != source.num_cells)
        throw std::invalid_argument("oracle: source register size must equal the variable count");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < source.num_cells; ++i) count *= field.q();
    std::vector<std::uint64_t> values(count);
    std::vector<std::uint64_t> point(source.num_cells);
    for (std::uint64_t combined = 0; combined < count; ++combined) {
        std::uint64_t t = combined;
        for (std::uint32_t v = 0; v < source.num_cells; ++v) {
            point[v] = t % field.q();
            t /= field.q();
        }
        values[combined] = f.evaluate_index(point);
    }
    return values;
}

inline std::uint64_t combined_source_digits(const StateVector& state, const QuditRegister& source,
                                            std::uint64_t index) {
    const std::uint64_t q = state.layout().field().q();
    std::uint64_t combined = 0, mult = 1;
    for (std::uint32_t i = 0; i < source.num_cells; ++i) {
        combined += state.layout().digit(index, source.first_cell + i) * mult;
        mult *= q;
    }
    return combined;
}

}  // namespace detail

/// Cell-wise QFT over F_q on every cell of the named register:
/// |x> -> (1/sqrt(q)) sum_y e(-x*y) |y>. At q = 2 this is the Hadamard gate.
inline StateVector qft(StateVector state, std::string_view reg_name) {
    const QuditRegister& reg = state.layout().reg(reg_name);
    const auto matrix = detail::fourier_matrix(state.layout().field(), -1);
    for (std::uint32_t i = 0; i < reg.num_cells; ++i)
        detail::apply_cell_matrix(state, reg.first_cell + i, matrix);
    detail::check_norm_preserved(state, "qft");
    return state;
}

/// Adjoint of qft: |x> -> (1/sqrt(q)) sum_y e(+x*y) |y>.
inline StateVector iqft(StateVector state, std::string_view reg_name) {
    const QuditRegister& reg = state.layout().reg(reg_name);
    const auto matrix = detail::fourier_matrix(state.layout().field(), +1);
    for (std::uint32_t i = 0; i < reg.num_cells; ++i)
        detail::apply_cell_matrix(state, reg.first_cell + i, matrix);
    detail::check_norm_preserved(state, "iqft");
    return state;
}

/// Additive shift oracle |x, z> -> |x, z + f(x)>; a basis-state permutation.
inline StateVector oracle_shift(StateVector state, const Polynomial& f, std::string_view source_name,
                                std::string_view target_name) {
    const QuditRegister& source = state.layout().reg(source_name);
    const QuditRegister& target = state.layout().reg(target_name);
    if (target.num_cells != 1) throw std::invalid_argument("oracle_shift: target register must be one cell");
    const Field& field = state.layout().field();
    const auto values = detail::oracle_value_table(state, f, source);
    const std::uint64_t stride = state.layout().stride(target.first_cell);
    const auto& amps = state.amplitudes();
    std::vector<Amplitude> out(amps.size());
    for (std::uint64_t index = 0; index < amps.size(); ++index) {
        const std::uint64_t fx = values[detail::combined_source_digits(state, source, index)];
        const std::uint64_t z = state.layout().digit(index, target.first_cell);
        const std::uint64_t shifted = index - z * stride + field.add(z, fx) * stride;
        out[shifted] = amps[index];
    }
    StateVector result(state.layout(), std::move(out));
    detail::check_norm_preserved(result, "oracle_shift");
    return result;
}

/// Diagonal phase oracle: amplitude of |x, y> is multiplied by e(y * f(x)).
inline StateVector oracle_phase(StateVector state, const Polynomial& f, std::string_view source_name,
                                std::string_view coefficient_name) {
    const QuditRegister& source = state.layout().reg(source_name);
    const QuditRegister& ycell = state.layout().reg(coefficient_name);
    if (ycell.num_cells != 1)
        throw std::invalid_argument("oracle_phase: coefficient register must be one cell");
    const Field& field = state.layout().field();
    const auto values = detail::oracle_value_table(state, f, source);
    auto& amps = state.amplitudes();
    for (std::uint64_t index = 0; index < amps.size(); ++index) {
        const std::uint64_t fx = values[detail::combined_source_digits(state, source, index)];
        const std::uint64_t y = state.layout().digit(index, ycell.first_cell);
        amps[index] *= field.character(field.mul(y, fx));
    }
    detail::check_norm_preserved(state, "oracle_phase");
    return state;
}

struct MeasureOutcome {
    std::vector<std::uint32_t> digits;
    std::uint64_t index = 0;
    StateVector post;
};

/// Full measurement in the computational basis. Samples by inverse CDF over
/// the probability vector in index order; the post state is the outcome
/// basis state.
inline MeasureOutcome measure(const StateVector& state, Rng& rng) {
    if (std::abs(state.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("measure: state norm deviates from 1 beyond 1e-6");
    const auto& amps = state.amplitudes();
    const double u = rng.uniform_unit();
    double cumulative = 0.0;
    std::uint64_t outcome = 0;
    bool found = false;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double prob = std::norm(amps[i]);
        if (prob > 0.0) last_nonzero = i;
        cumulative += prob;
        if (!found && u < cumulative) {
            outcome = i;
            found = true;
        }
    }
    if (!found) outcome = last_nonzero;  // u landed in rounding slack past the last bin
    StateVector post = StateVector::basis_state(state.layout(), state.digits_of(outcome));
    return MeasureOutcome{post.digits_of(outcome), outcome, std::move(post)};
}

/// CSV dump (digits, real, imag) with '-'-joined little-endian digits.
/// Intended for states of at most 2^16 amplitudes.
inline void dump_amplitudes_csv(const StateVector& state, std::ostream& os) {
    if (state.amplitudes().size() > (1ull << 16))
        throw std::length_error("dump_amplitudes_csv: state exceeds 2^16 amplitudes");
    os << "digits,re,im\n";
    char buf[64];
    for (std::uint64_t i = 0; i < state.amplitudes().size(); ++i) {
        const auto digits = state.digits_of(i);
        for (std::size_t c = 0; c < digits.size(); ++c) {
            if (c > 0) os << '-';
            os << digits[c];
        }
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", state.amplitudes()[i].real(),
                      state.amplitudes()[i].imag());
        os << buf << '\n';
    }
}

}  // namespace qinterp
