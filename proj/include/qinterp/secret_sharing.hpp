#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qinterp/interpolation.hpp"
#include "qinterp/transcript.hpp"

namespace qinterp {

/// One interpolation query routed to one player. Single-use token: the
/// no-cloning rule is modeled as "present once, then the token is spent".
class Share {
  public:
    Share(std::uint32_t index, std::vector<std::uint64_t> point, std::uint64_t y)
        : index_(index), point_(std::move(point)), y_(y) {}

    std::uint32_t index() const { return index_; }
    const std::vector<std::uint64_t>& point() const { return point_; }
    std::uint64_t y() const { return y_; }
    bool consumed() const { return consumed_; }

    struct Payload {
        std::vector<std::uint64_t> point;
        std::uint64_t y = 0;
    };

    /// Hands over the share content and spends the token.
    Payload present() {
        if (consumed_) throw std::logic_error("Share: token already consumed");
        consumed_ = true;
        return Payload{point_, y_};
    }

    /// Interception also spends the token; the carried state is gone.
    void mark_destroyed() {
        if (consumed_) throw std::logic_error("Share: token already consumed");
        consumed_ = true;
    }

    std::uint64_t digest() const {
        std::vector<std::uint64_t> payload{index_};
        payload.insert(payload.end(), point_.begin(), point_.end());
        payload.push_back(y_);
        return digest_values("share", payload);
    }

  private:
    std::uint32_t index_;
    std::vector<std::uint64_t> point_;
    std::uint64_t y_;
    bool consumed_ = false;
};

enum class SessionOutcome { reconstructed, destroyed };

inline const char* to_string(SessionOutcome outcome) {
    return outcome == SessionOutcome::reconstructed ? "reconstructed" : "destroyed";
}

struct SessionResult {
    Transcript transcript;
    SessionOutcome outcome = SessionOutcome::destroyed;
    std::optional<ProtocolResult> result;  // set only when reconstructed
    std::vector<Share> intercepted_view;   // everything the interceptor saw
};

/// One dealing session: the dealer routes one query share to each of k
/// players, the recipient reconstructs from the concatenated shares via the
/// interpolation protocol. Intercepted shares are destroyed; any missing
/// share aborts reconstruction and the transcript shows the non-arrival.
inline SessionResult deal_and_reconstruct(const Polynomial& secret, const ProtocolParams& params,
                                          const TransversalTable& table, Rng& rng,
                                          const std::set<std::uint32_t>& intercepted = {}) {
    for (auto i : intercepted)
        if (i < 1 || i > params.k)
            throw std::invalid_argument("deal_and_reconstruct: interception index out of range [1..k]");

    SessionResult session;

    // Classical share labels for the transcript come from one query tuple of
    // the transversal; the quantum payload lives only inside the simulator.
    const std::uint64_t pick = table.preimage[rng.uniform_below(table.size())];
    const QueryTuple tuple = decode_query_tuple(params, pick);
    std::vector<Share> shares;
    shares.reserve(params.k);
    for (std::uint32_t i = 0; i < params.k; ++i)
        shares.emplace_back(i + 1, tuple.points[i], tuple.ys[i]);

    for (const auto& share : shares)
        session.transcript.append("dealer", "player" + std::to_string(share.index()), msg::kQuery,
                                  share.digest());

    bool any_intercepted = false;
    for (auto& share : shares) {
        const std::string player = "player" + std::to_string(share.index());
        if (intercepted.count(share.index()) > 0) {
            share.mark_destroyed();
            session.transcript.append(player, "interceptor", msg::kDestroyed, share.digest());
            session.intercepted_view.push_back(share);
            any_intercepted = true;
        } else {
            const Share::Payload payload = share.present();
            std::vector<std::uint64_t> values{share.index()};
            values.insert(values.end(), payload.point.begin(), payload.point.end());
            values.push_back(payload.y);
            session.transcript.append(player, "recipient", msg::kShare, digest_values("share", values));
        }
    }

    if (any_intercepted) {
        session.outcome = SessionOutcome::destroyed;
        return session;
    }

    ProtocolResult result = run_protocol_analytic(secret, params, table, rng);
    session.transcript.append("recipient", "dealer", msg::kResult,
                              digest_values("recovered", result.c_hat));
    session.outcome = SessionOutcome::reconstructed;
    session.result = std::move(result);
    return session;
}

/// What a coalition learns from one share: the classical constraint
/// sum_alpha (y * x^alpha) * c_alpha = y * f(x).
struct ShareObservation {
    std::vector<std::uint64_t> point;
    std::uint64_t y = 0;
    std::uint64_t value = 0;  // y * f(x)

    static ShareObservation from_share(const Share& share, const Polynomial& secret) {
        const Field& field = secret.field();
        return ShareObservation{share.point(), share.y(),
                                field.mul(share.y(), secret.evaluate_index(share.point()))};
    }
};

namespace detail {

inline std::vector<std::uint64_t> observation_row(const Field& field, const MonomialBasis& basis,
                                                  const ShareObservation& obs) {
    if (obs.point.size() != basis.num_variables)
        throw std::invalid_argument("observation: point dimension mismatch");
    std::vector<std::uint64_t> row(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        std::uint64_t term = obs.y;
        const auto& alpha = basis.exponents[j];
        for (std::uint32_t v = 0; v < basis.num_variables; ++v)
            if (alpha[v] != 0) term = field.mul(term, field.pow(obs.point[v], alpha[v]));
        row[j] = term;
    }
    return row;
}

}  // namespace detail

/// Number of coefficient vectors consistent with the observed constraints,
/// by direct enumeration of all q^D candidates.
inline std::uint64_t ambiguity_count(const Field& field, const MonomialBasis& basis,
                                     const std::vector<ShareObservation>& observations,
                                     std::uint64_t max_enumeration = 1ull << 26) {
    const std::size_t D = basis.size();
    const std::uint64_t total = checked_pow(field.q(), D, max_enumeration, "ambiguity_count: q^D");
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(observations.size());
    for (const auto& obs : observations) rows.push_back(detail::observation_row(field, basis, obs));

    std::uint64_t count = 0;
    std::vector<std::uint64_t> candidate(D, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rest = c;
        for (std::size_t j = 0; j < D; ++j) {
            candidate[j] = rest % field.q();
            rest /= field.q();
        }
        bool ok = true;
        for (std::size_t i = 0; i < rows.size() && ok; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < D; ++j) acc = field.add(acc, field.mul(rows[i][j], candidate[j]));
            ok = acc == observations[i].value;
        }
        if (ok) ++count;
    }
    return count;
}

/// Rank of the constraint rows over F_q (Gaussian elimination); the
/// consistent-count identity is count = q^(D - rank).
inline std::uint32_t observation_rank(const Field& field, const MonomialBasis& basis,
                                      const std::vector<ShareObservation>& observations) {
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(observations.size());
    for (const auto& obs : observations) rows.push_back(detail::observation_row(field, basis, obs));

    const std::size_t D = basis.size();
    std::uint32_t rank = 0;
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows.size() && pivot_col < D; ++pivot_col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][pivot_col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const std::uint64_t inv = field.inv(rows[r][pivot_col]);
        for (std::size_t j = pivot_col; j < D; ++j) rows[r][j] = field.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][pivot_col] == 0) continue;
            const std::uint64_t factor = rows[i][pivot_col];
            for (std::size_t j = pivot_col; j < D; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(factor, rows[r][j]));
        }
        ++r;
        ++rank;
    }
    return rank;
}

}  // namespace qinterp
