#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qinterp/polynomial.hpp"
#include "qinterp/qudit_sim.hpp"
#include "qinterp/rng.hpp"

namespace qinterp {

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t bound,
                                 const char* what) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (out > bound / base) throw std::length_error(std::string(what) + " exceeds the configured bound");
        out *= base;
    }
    return out;
}

/// Parameters of one interpolation run: the field, the monomial class of
/// the secret polynomial, and the number of parallel queries k (defaulting
/// to the optimal count for the class).
struct ProtocolParams {
    Field field;
    MonomialBasis basis;
    std::uint32_t k = 1;
    std::uint64_t max_enumeration = 1ull << 26;
    std::uint64_t max_amplitudes = RegisterLayout::kDefaultMaxAmplitudes;

    ProtocolParams(Field f, MonomialBasis b, std::optional<std::uint32_t> k_override = std::nullopt,
                   std::uint64_t max_enum = 1ull << 26,
                   std::uint64_t max_amps = RegisterLayout::kDefaultMaxAmplitudes)
        : field(std::move(f)), basis(std::move(b)), max_enumeration(max_enum), max_amplitudes(max_amps) {
        if (field.q() <= basis.max_degree)
            throw std::invalid_argument("ProtocolParams: need q > d so monomial functions stay distinct");
        if (k_override) {
            if (*k_override < 1) throw std::invalid_argument("ProtocolParams: k must be at least 1");
            k = *k_override;
        } else {
            const std::uint64_t optimal = query_count(basis.num_variables, basis.max_degree);
            if (optimal > 0xFFFFFFFFull) throw std::length_error("ProtocolParams: optimal k too large");
            k = static_cast<std::uint32_t>(optimal);
        }
    }

    std::size_t dimension() const { return basis.size(); }  // D
    /// q^(k(n+1)), the query-tuple enumeration space.
    std::uint64_t domain_size() const {
        return checked_pow(field.q(), std::uint64_t(k) * (basis.num_variables + 1), max_enumeration,
                           "ProtocolParams: query domain");
    }
    /// q^D, the coefficient space.
    std::uint64_t codomain_size() const {
        return checked_pow(field.q(), basis.size(), max_enumeration, "ProtocolParams: coefficient space");
    }
};

/// Exact rational probability with a float rendering.
struct Probability {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string ratio_string() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Probability& other) const { return num == other.num && den == other.den; }
};

/// Exact image R of the Z map together with a transversal: for each image
/// point, the first query tuple (in enumeration order) that produces it.
/// Query tuples are identified with indices t in [0, q^(k(n+1))), decoded
/// little-endian base q as (x_1, ..., x_k, y_1, ..., y_k).
struct TransversalTable {
    std::vector<std::uint64_t> image;     // sorted ascending
    std::vector<std::uint64_t> preimage;  // aligned with image
    std::uint64_t domain_size = 0;        // q^(k(n+1))
    std::uint64_t codomain_size = 0;      // q^D

    std::size_t size() const { return image.size(); }
};

struct QueryTuple {
    std::vector<std::vector<std::uint64_t>> points;  // k points in F_q^n
    std::vector<std::uint64_t> ys;                   // k coefficients
};

inline QueryTuple decode_query_tuple(const ProtocolParams& params, std::uint64_t t) {
    const std::uint64_t q = params.field.q();
    const std::uint32_t n = params.basis.num_variables;
    QueryTuple tuple;
    tuple.points.assign(params.k, std::vector<std::uint64_t>(n));
    for (std::uint32_t i = 0; i < params.k; ++i)
        for (std::uint32_t v = 0; v < n; ++v) {
            tuple.points[i][v] = t % q;
            t /= q;
        }
    tuple.ys.resize(params.k);
    for (std::uint32_t i = 0; i < params.k; ++i) {
        tuple.ys[i] = t % q;
        t /= q;
    }
    return tuple;
}

inline std::vector<std::uint64_t> decode_codomain_index(const ProtocolParams& params, std::uint64_t z) {
    std::vector<std::uint64_t> digits(params.basis.size());
    for (auto& d : digits) {
        d = z % params.field.q();
        z /= params.field.q();
    }
    return digits;
}

/// Enumerates the whole query domain and returns the exact image of the
/// Z map with a deterministic transversal (first preimage wins).
inline TransversalTable build_image(const ProtocolParams& params) {
    const Field& field = params.field;
    const std::uint64_t q = field.q();
    const std::uint32_t n = params.basis.num_variables;
    const std::size_t D = params.basis.size();
    const std::uint64_t domain = params.domain_size();
    const std::uint64_t codomain = params.codomain_size();

    // Monomial rows for every point of F_q^n, indexed by combined digits.
    const std::uint64_t point_count = checked_pow(q, n, params.max_enumeration, "build_image: point space");
    std::vector<std::vector<std::uint64_t>> rows(point_count, std::vector<std::uint64_t>(D));
    std::vector<std::uint64_t> point(n);
    for (std::uint64_t combined = 0; combined < point_count; ++combined) {
        std::uint64_t rest = combined;
        for (std::uint32_t v = 0; v < n; ++v) {
            point[v] = rest % q;
            rest /= q;
        }
        for (std::size_t j = 0; j < D; ++j) {
            std::uint64_t term = 1;
            const auto& alpha = params.basis.exponents[j];
            for (std::uint32_t v = 0; v < n; ++v)
                if (alpha[v] != 0) term = field.mul(term, field.pow(point[v], alpha[v]));
            rows[combined][j] = term;
        }
    }

    std::unordered_map<std::uint64_t, std::uint64_t> first_preimage;
    std::vector<std::uint64_t> z(D);
    for (std::uint64_t t = 0; t < domain; ++t) {
        std::fill(z.begin(), z.end(), 0);
        for (std::uint32_t i = 0; i < params.k; ++i) {
            std::uint64_t xcomb = t;
            for (std::uint32_t skip = 0; skip < i; ++skip) xcomb /= point_count;
            xcomb %= point_count;
            std::uint64_t y = t;
            for (std::uint32_t skip = 0; skip < params.k; ++skip) y /= point_count;
            for (std::uint32_t skip = 0; skip < i; ++skip) y /= q;
            y %= q;
            if (y == 0) continue;
            const auto& row = rows[xcomb];
            for (std::size_t j = 0; j < D; ++j) z[j] = field.add(z[j], field.mul(y, row[j]));
        }
        std::uint64_t z_index = 0;
        for (std::size_t j = D; j-- > 0;) z_index = z_index * q + z[j];
        first_preimage.try_emplace(z_index, t);
    }

    TransversalTable table;
    table.domain_size = domain;
    table.codomain_size = codomain;
    table.image.reserve(first_preimage.size());
    for (const auto& [zi, _] : first_preimage) table.image.push_back(zi);
    std::sort(table.image.begin(), table.image.end());
    table.preimage.reserve(table.image.size());
    for (auto zi : table.image) table.preimage.push_back(first_preimage.at(zi));
    return table;
}

inline Probability success_probability([[maybe_unused]] const ProtocolParams& params,
                                       const TransversalTable& table) {
    return Probability{table.size(), table.codomain_size};
}

inline Probability success_probability(const ProtocolParams& params) {
    return success_probability(params, build_image(params));
}

namespace detail {

inline RegisterLayout coefficient_layout(const ProtocolParams& params) {
    checked_pow(params.field.q(), params.basis.size(), params.max_amplitudes,
                "interpolation: coefficient register");
    return RegisterLayout(params.field, {{"z", static_cast<std::uint32_t>(params.basis.size())}},
                          params.max_amplitudes);
}

inline void check_secret(const Polynomial& secret, const ProtocolParams& params) {
    if (secret.field() != params.field || secret.basis() != params.basis)
        throw std::invalid_argument("interpolation: secret polynomial does not match the parameters");
}

}  // namespace detail

/// State of the coefficient register just before Fourier decoding: amplitude
/// e(z.c)/sqrt(|R|) on each |z> with z in R, zero elsewhere. This is what
/// the k phase queries plus the transversal isometry produce.
inline StateVector analytic_predecode_state(const Polynomial& secret, const ProtocolParams& params,
                                            const TransversalTable& table) {
    detail::check_secret(secret, params);
    const Field& field = params.field;
    RegisterLayout layout = detail::coefficient_layout(params);
    std::vector<Amplitude> amps(layout.dimension(), Amplitude{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(table.size()));
    const auto& c = secret.coefficient_indices();
    for (const auto z_index : table.image) {
        const auto z = decode_codomain_index(params, z_index);
        std::uint64_t dot = 0;
        for (std::size_t j = 0; j < z.size(); ++j) dot = field.add(dot, field.mul(z[j], c[j]));
        amps[z_index] = field.character(dot) * scale;
    }
    return StateVector(std::move(layout), std::move(amps));
}

/// Fourier decoding of the phase-encoded coefficient register. The phases
/// carry e(+z.c), so the cell-wise forward transform e(-z.v) concentrates
/// the amplitude on |c> itself.
inline StateVector decode_coefficient_state(StateVector state) { return qft(std::move(state), "z"); }

/// Full-register protocol state: k query blocks (x_i: n cells, y_i: 1 cell)
/// prepared uniformly over the transversal, one phase oracle per block, then
/// the isometry |x,y> -> |Z(x,y)> onto the coefficient register.
inline StateVector circuit_predecode_state(const Polynomial& secret, const ProtocolParams& params,
                                           const TransversalTable& table,
                                           std::uint32_t* oracle_calls = nullptr) {
    detail::check_secret(secret, params);
    std::vector<std::pair<std::string, std::uint32_t>> regs;
    for (std::uint32_t i = 0; i < params.k; ++i)
        regs.emplace_back("x" + std::to_string(i + 1), params.basis.num_variables);
    for (std::uint32_t i = 0; i < params.k; ++i) regs.emplace_back("y" + std::to_string(i + 1), 1u);
    RegisterLayout query_layout(params.field, regs, params.max_amplitudes);
    if (query_layout.dimension() != table.domain_size)
        throw std::logic_error("circuit_predecode_state: table does not match the parameters");

    std::vector<Amplitude> amps(query_layout.dimension(), Amplitude{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(table.size()));
    for (const auto t : table.preimage) amps[t] = Amplitude{scale, 0.0};
    StateVector state(std::move(query_layout), std::move(amps));

    std::uint32_t calls = 0;
    for (std::uint32_t i = 0; i < params.k; ++i) {
        state = oracle_phase(std::move(state), secret, "x" + std::to_string(i + 1),
                             "y" + std::to_string(i + 1));
        ++calls;
    }
    if (oracle_calls) *oracle_calls = calls;

    // Isometry onto the coefficient register; support never leaves the
    // transversal because the oracles are diagonal.
    RegisterLayout coeff_layout = detail::coefficient_layout(params);
    std::vector<Amplitude> out(coeff_layout.dimension(), Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < table.size(); ++i)
        out[table.image[i]] += state.amplitudes()[table.preimage[i]];
    StateVector mapped(std::move(coeff_layout), std::move(out));
    detail::check_norm_preserved(mapped, "circuit_predecode_state");
    return mapped;
}

struct ProtocolResult {
    std::vector<std::uint64_t> c_true;
    std::vector<std::uint64_t> c_hat;
    bool success = false;
    Probability p_success;
    std::uint32_t oracle_calls = 0;
};

enum class ProtocolMode { analytic, circuit };

inline const char* to_string(ProtocolMode mode) {
    return mode == ProtocolMode::analytic ? "analytic" : "circuit";
}

namespace detail {

inline ProtocolResult finish_protocol(const Polynomial& secret, const ProtocolParams& params,
                                      const TransversalTable& table, StateVector decoded, Rng& rng,
                                      std::uint32_t oracle_calls) {
    const MeasureOutcome outcome = measure(decoded, rng);
    ProtocolResult result;
    result.c_true = secret.coefficient_indices();
    result.c_hat.assign(outcome.digits.begin(), outcome.digits.end());
    result.success = result.c_hat == result.c_true;
    result.p_success = success_probability(params, table);
    result.oracle_calls = oracle_calls;
    return result;
}

}  // namespace detail

inline ProtocolResult run_protocol_analytic(const Polynomial& secret, const ProtocolParams& params,
                                            const TransversalTable& table, Rng& rng) {
    StateVector decoded = decode_coefficient_state(analytic_predecode_state(secret, params, table));
    return detail::finish_protocol(secret, params, table, std::move(decoded), rng, params.k);
}

inline ProtocolResult run_protocol_circuit(const Polynomial& secret, const ProtocolParams& params,
                                           const TransversalTable& table, Rng& rng) {
    std::uint32_t calls = 0;
    StateVector decoded =
        decode_coefficient_state(circuit_predecode_state(secret, params, table, &calls));
    return detail::finish_protocol(secret, params, table, std::move(decoded), rng, calls);
}

inline ProtocolResult run_protocol(const Polynomial& secret, const ProtocolParams& params,
                                   const TransversalTable& table, Rng& rng, ProtocolMode mode) {
    return mode == ProtocolMode::analytic ? run_protocol_analytic(secret, params, table, rng)
                                          : run_protocol_circuit(secret, params, table, rng);
}

/// Measurement distribution over coefficient outcomes (index order) after
/// decoding; no sampling involved.
inline std::vector<double> decoded_distribution(const Polynomial& secret, const ProtocolParams& params,
                                                const TransversalTable& table, ProtocolMode mode) {
    StateVector decoded =
        mode == ProtocolMode::analytic
            ? decode_coefficient_state(analytic_predecode_state(secret, params, table))
            : decode_coefficient_state(circuit_predecode_state(secret, params, table));
    std::vector<double> probs(decoded.amplitudes().size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(decoded.amplitudes()[i]);
    return probs;
}

inline constexpr double kWilson95Z = 1.959963984540054;

/// Wilson 95% score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: need at least one trial");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = kWilson95Z * kWilson95Z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        (kWilson95Z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct TrialsSummary {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double empirical_rate = 0.0;
    Probability exact_rate;
    double wilson_lo = 0.0;
    double wilson_hi = 1.0;
    std::uint64_t seed = 0;
};

/// T independent protocol runs with per-trial seeds derived from the master
/// seed; each trial draws a fresh uniformly random secret (the success
/// probability does not depend on it).
inline TrialsSummary run_trials(const ProtocolParams& params, const TransversalTable& table,
                                std::uint64_t trials, std::uint64_t master_seed,
                                ProtocolMode mode = ProtocolMode::analytic) {
    if (trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
    TrialsSummary summary;
    summary.trials = trials;
    summary.seed = master_seed;
    summary.exact_rate = success_probability(params, table);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(master_seed, t));
        const Polynomial secret = Polynomial::random(params.field, params.basis, rng);
        const ProtocolResult result = run_protocol(secret, params, table, rng, mode);
        if (result.success) ++summary.successes;
    }
    summary.empirical_rate = static_cast<double>(summary.successes) / static_cast<double>(trials);
    std::tie(summary.wilson_lo, summary.wilson_hi) = wilson_interval(summary.successes, trials);
    return summary;
}

}  // namespace qinterp
