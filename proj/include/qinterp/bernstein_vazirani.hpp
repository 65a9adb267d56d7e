#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qinterp/qudit_sim.hpp"
#include "qinterp/transcript.hpp"

namespace qinterp {

/// Hidden-linear-form instance over F_2: f(x) = a.x with a in F_2^N.
struct BvInstance {
    std::uint32_t num_qubits = 0;
    std::vector<std::uint32_t> hidden;  // bits a_1..a_N, cell order

    BvInstance(std::uint32_t n, std::vector<std::uint32_t> a) : num_qubits(n), hidden(std::move(a)) {
        if (n < 1) throw std::invalid_argument("BvInstance: need at least one qubit");
        if (hidden.size() != n) throw std::invalid_argument("BvInstance: hidden vector must have length N");
        for (auto bit : hidden)
            if (bit > 1) throw std::invalid_argument("BvInstance: hidden vector entries must be bits");
    }
};

struct BvTrace {
    StateVector psi0, psi1, psi2, psi3;
};

namespace detail {

inline Polynomial bv_black_box(const BvInstance& instance) {
    Field f2(2);
    MonomialBasis linear(instance.num_qubits, 1, /*with_constant=*/false);
    std::vector<std::uint64_t> coeffs(instance.hidden.begin(), instance.hidden.end());
    return Polynomial(std::move(f2), std::move(linear), std::move(coeffs));
}

}  // namespace detail

/// Runs the four-stage circuit and returns every intermediate state:
/// psi0 = |0...0;1>, psi1 = H^(N+1) psi0, psi2 = U_f psi1 (one oracle call),
/// psi3 = H on the input register only.
inline BvTrace bv_circuit(const BvInstance& instance,
                          std::uint64_t max_amplitudes = RegisterLayout::kDefaultMaxAmplitudes) {
    RegisterLayout layout(Field(2), {{"x", instance.num_qubits}, {"anc", 1}}, max_amplitudes);
    std::vector<std::uint32_t> digits(instance.num_qubits + 1, 0);
    digits.back() = 1;  // ancilla starts at |1>
    StateVector psi0 = StateVector::basis_state(layout, digits);
    StateVector psi1 = qft(qft(psi0, "x"), "anc");  // qft == Hadamard at q = 2
    const Polynomial f = detail::bv_black_box(instance);
    StateVector psi2 = oracle_shift(psi1, f, "x", "anc");
    StateVector psi3 = qft(psi2, "x");
    return BvTrace{std::move(psi0), std::move(psi1), std::move(psi2), std::move(psi3)};
}

struct BvResult {
    std::vector<std::uint32_t> recovered;
    bool success = false;
    std::uint32_t oracle_calls = 0;
    Transcript transcript;
};

/// Full protocol run: circuit, measurement, readout of the input register.
/// The ancilla is measured along with everything else and discarded. The
/// message flow is logged as a role-tagged transcript.
inline BvResult bv_run(const BvInstance& instance, Rng& rng,
                       std::uint64_t max_amplitudes = RegisterLayout::kDefaultMaxAmplitudes) {
    BvTrace trace = bv_circuit(instance, max_amplitudes);
    BvResult result;
    result.transcript.append("eve", "bob", msg::kQuery,
                             digest_values("bv-encoded", {instance.num_qubits}));
    result.oracle_calls = 1;
    result.transcript.append("bob", "eve", msg::kShare,
                             digest_values("bv-response", {instance.num_qubits}));
    const MeasureOutcome outcome = measure(trace.psi3, rng);
    result.recovered.assign(outcome.digits.begin(), outcome.digits.begin() + instance.num_qubits);
    result.success = result.recovered == instance.hidden;
    std::vector<std::uint64_t> readout(result.recovered.begin(), result.recovered.end());
    result.transcript.append("eve", "eve", msg::kResult, digest_values("bv-recovered", readout));
    return result;
}

}  // namespace qinterp
