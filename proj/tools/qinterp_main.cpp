// qinterp command-line interface: every protocol and check behind one
// binary with reproducible seeds and machine-readable CSV/JSON output.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible size, 3 internal
// invariant breach.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinterp/qinterp.hpp"
#include "qinterp/serialization.hpp"

namespace {

using namespace qinterp;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::uint64_t amplitude_bound() {
    if (const char* env = std::getenv("QINTERP_MAX_AMPLITUDES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw std::invalid_argument("QINTERP_MAX_AMPLITUDES must be a positive integer");
        return v;
    }
    return RegisterLayout::kDefaultMaxAmplitudes;
}

/// Writes to the chosen path, or stdout when none was given.
void emit(const std::optional<std::string>& path, const std::string& text) {
    if (path) {
        std::ofstream os(*path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file " + *path);
        os << text;
    } else {
        std::cout << text;
    }
}

struct CommonOutput {
    std::string format = "csv";
    std::optional<std::string> path;
};

void add_output_options(CLI::App* cmd, CommonOutput& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", out.path, "Write output to this file instead of stdout");
}

// ---------------------------------------------------------------- field ---

int cmd_field(std::uint32_t p, std::uint32_t r, const CommonOutput& out) {
    Field field(p, r);
    const bool with_tables = field.q() <= 64;
    std::string text;
    if (out.format == "json") {
        Json j{{"p", field.p()}, {"r", field.r()}, {"q", field.q()},
               {"modulus", field.modulus()}, {"modulus_string", field.modulus_string()}};
        if (with_tables) {
            Json trace = Json::array(), character = Json::array();
            for (std::uint64_t i = 0; i < field.q(); ++i) {
                trace.push_back(field.trace(i));
                const auto c = field.character(i);
                character.push_back(Json::array({c.real(), c.imag()}));
            }
            j["trace"] = trace;
            j["character"] = character;
        }
        text = j.dump(2) + "\n";
    } else {
        text = "key,value\n";
        text += "p," + std::to_string(field.p()) + "\n";
        text += "r," + std::to_string(field.r()) + "\n";
        text += "q," + std::to_string(field.q()) + "\n";
        text += "modulus," + field.modulus_string() + "\n";
        if (with_tables) {
            text += "index,coeffs,trace,char_re,char_im\n";
            for (std::uint64_t i = 0; i < field.q(); ++i) {
                const auto coeffs = field.decode(i);
                std::string cs;
                for (std::size_t c = 0; c < coeffs.size(); ++c)
                    cs += (c ? ";" : "") + std::to_string(coeffs[c]);
                const auto ch = field.character(i);
                text += std::to_string(i) + "," + cs + "," + std::to_string(field.trace(i)) + "," +
                        format_double(ch.real()) + "," + format_double(ch.imag()) + "\n";
            }
        }
    }
    emit(out.path, text);
    return 0;
}

// ------------------------------------------------------------------- bv ---

int cmd_bv(std::uint32_t n, const std::string& a_bits, bool random_a, std::uint64_t seed,
           const CommonOutput& out) {
    if (n > 12) throw std::length_error("bv: N exceeds the supported bound of 12");
    Rng rng(seed);
    std::vector<std::uint32_t> hidden(n, 0);
    if (random_a) {
        for (auto& bit : hidden) bit = static_cast<std::uint32_t>(rng.uniform_below(2));
    } else {
        if (a_bits.size() != n) throw std::invalid_argument("bv: --a must have exactly N bits");
        for (std::size_t i = 0; i < n; ++i) {
            if (a_bits[i] != '0' && a_bits[i] != '1')
                throw std::invalid_argument("bv: --a must consist of 0s and 1s");
            hidden[i] = a_bits[i] - '0';
        }
    }
    BvInstance instance(n, hidden);
    const BvResult result = bv_run(instance, rng, amplitude_bound());

    std::string a_str, a_hat_str;
    for (auto b : instance.hidden) a_str += char('0' + b);
    for (auto b : result.recovered) a_hat_str += char('0' + b);

    std::string text;
    if (out.format == "json") {
        Json j{{"N", n}, {"a", a_str}, {"a_hat", a_hat_str}, {"success", result.success},
               {"queries", result.oracle_calls}, {"seed", seed}};
        text = j.dump(2) + "\n";
    } else {
        text = "N,a,a_hat,success,queries,seed\n";
        text += std::to_string(n) + "," + a_str + "," + a_hat_str + "," +
                (result.success ? "1" : "0") + "," + std::to_string(result.oracle_calls) + "," +
                std::to_string(seed) + "\n";
    }
    emit(out.path, text);
    return result.success ? 0 : 1;
}

// ---------------------------------------------------------- interpolate ---

ProtocolParams make_params(std::uint32_t p, std::uint32_t r, std::uint32_t n, std::uint32_t d,
                           std::optional<std::uint32_t> k) {
    return ProtocolParams(Field(p, r), MonomialBasis(n, d, true), k, 1ull << 26, amplitude_bound());
}

int cmd_interpolate(std::uint32_t p, std::uint32_t r, std::uint32_t n, std::uint32_t d,
                    std::optional<std::uint32_t> k, std::uint64_t trials, std::uint64_t seed,
                    const std::string& mode_name, const CommonOutput& out) {
    const ProtocolParams params = make_params(p, r, n, d, k);
    const TransversalTable table = build_image(params);
    const ProtocolMode mode =
        mode_name == "circuit" ? ProtocolMode::circuit : ProtocolMode::analytic;
    const TrialsSummary summary = run_trials(params, table, trials, seed, mode);
    const Probability exact = summary.exact_rate;

    std::string text;
    if (out.format == "json") {
        Json j{{"p", p}, {"r", r}, {"n", n}, {"d", d}, {"k", params.k},
               {"D", params.basis.size()}, {"image_size", table.size()},
               {"q_pow_D", table.codomain_size}, {"p_exact", exact.ratio_string()},
               {"p_float", exact.value()}, {"trials", summary.trials},
               {"successes", summary.successes}, {"wilson_lo", summary.wilson_lo},
               {"wilson_hi", summary.wilson_hi}, {"seed", seed}, {"mode", to_string(mode)}};
        text = j.dump(2) + "\n";
    } else {
        text = "p,r,n,d,k,D,image_size,q_pow_D,p_exact,p_float,trials,successes,wilson_lo,wilson_hi,seed\n";
        text += std::to_string(p) + "," + std::to_string(r) + "," + std::to_string(n) + "," +
                std::to_string(d) + "," + std::to_string(params.k) + "," +
                std::to_string(params.basis.size()) + "," + std::to_string(table.size()) + "," +
                std::to_string(table.codomain_size) + "," + exact.ratio_string() + "," +
                format_double(exact.value()) + "," + std::to_string(summary.trials) + "," +
                std::to_string(summary.successes) + "," + format_double(summary.wilson_lo) + "," +
                format_double(summary.wilson_hi) + "," + std::to_string(seed) + "\n";
    }
    emit(out.path, text);
    return 0;
}

// ---------------------------------------------------------------- share ---

int cmd_share(std::uint32_t p, std::uint32_t r, std::uint32_t n, std::uint32_t d,
              std::optional<std::uint32_t> k, const std::vector<std::uint32_t>& intercept,
              std::uint64_t sessions, std::uint64_t seed, const std::string& transcript_dir,
              const CommonOutput& out) {
    const ProtocolParams params = make_params(p, r, n, d, k);
    const TransversalTable table = build_image(params);
    const Probability exact = success_probability(params, table);
    const std::set<std::uint32_t> intercepted(intercept.begin(), intercept.end());
    std::filesystem::create_directories(transcript_dir);

    std::uint64_t destroyed = 0, successes = 0;
    Json session_rows = Json::array();
    std::string csv_rows = "session,outcome,success,transcript\n";
    for (std::uint64_t s = 0; s < sessions; ++s) {
        Rng rng(derive_seed(seed, s));
        const Polynomial secret = Polynomial::random(params.field, params.basis, rng);
        const SessionResult session = deal_and_reconstruct(secret, params, table, rng, intercepted);

        char name[64];
        std::snprintf(name, sizeof(name), "session_%05llu.jsonl",
                      static_cast<unsigned long long>(s + 1));
        const std::string path = (std::filesystem::path(transcript_dir) / name).string();
        std::ofstream ts(path, std::ios::binary);
        if (!ts) throw std::runtime_error("cannot open transcript file " + path);
        transcript_to_jsonl(session.transcript, ts);

        const bool ok =
            session.outcome == SessionOutcome::reconstructed && session.result->success;
        if (session.outcome == SessionOutcome::destroyed) ++destroyed;
        if (ok) ++successes;
        session_rows.push_back(Json{{"session", s + 1}, {"outcome", to_string(session.outcome)},
                                    {"success", ok}, {"transcript", path}});
        csv_rows += std::to_string(s + 1) + "," + to_string(session.outcome) + "," +
                    (ok ? "1" : "0") + "," + path + "\n";
    }

    const std::uint64_t completed = sessions - destroyed;
    const double rate = completed ? static_cast<double>(successes) / completed : 0.0;
    std::string text;
    if (out.format == "json") {
        Json j{{"sessions", session_rows},
               {"aggregate", Json{{"sessions", sessions}, {"destroyed", destroyed},
                                  {"completed", completed}, {"successes", successes},
                                  {"success_rate", rate}, {"p_exact", exact.ratio_string()},
                                  {"p_float", exact.value()}, {"seed", seed}}}};
        text = j.dump(2) + "\n";
    } else {
        text = csv_rows;
        text += "sessions,destroyed,completed,successes,success_rate,p_exact,p_float,seed\n";
        text += std::to_string(sessions) + "," + std::to_string(destroyed) + "," +
                std::to_string(completed) + "," + std::to_string(successes) + "," +
                format_double(rate) + "," + exact.ratio_string() + "," +
                format_double(exact.value()) + "," + std::to_string(seed) + "\n";
    }
    emit(out.path, text);
    return 0;
}

// ------------------------------------------------------------- adversary ---

int cmd_adversary(std::uint32_t players, const std::string& structure_arg,
                  std::optional<std::uint32_t> threshold, const CommonOutput& out) {
    AdversaryStructure structure;
    if (threshold) {
        structure = threshold_structure(players, *threshold);
    } else {
        std::string payload = structure_arg;
        if (std::filesystem::exists(structure_arg)) {
            std::ifstream is(structure_arg);
            payload.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
        }
        Json parsed;
        try {
            parsed = Json::parse(payload);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("adversary: bad structure: ") + e.what());
        }
        structure = adversary_from_json(players, parsed);
    }

    const bool dc = is_downward_closed(structure);
    std::optional<bool> q2, q2s, sd;
    if (dc) {
        q2 = is_q2(structure);
        q2s = is_q2_star(structure);
        sd = *q2 && *q2s;
    }
    const AdversaryStructure dual_structure = dual(structure);

    auto flag = [](std::optional<bool> v) -> std::string {
        return v ? (*v ? "true" : "false") : "";
    };
    std::string text;
    if (out.format == "json") {
        Json j{{"players", players}, {"downward_closed", dc}};
        j["q2"] = q2 ? Json(*q2) : Json(nullptr);
        j["q2_star"] = q2s ? Json(*q2s) : Json(nullptr);
        j["self_dual"] = sd ? Json(*sd) : Json(nullptr);
        j["structure"] = adversary_to_json(structure);
        j["dual"] = adversary_to_json(dual_structure);
        text = j.dump(2) + "\n";
    } else {
        text = "key,value\n";
        text += "players," + std::to_string(players) + "\n";
        text += std::string("downward_closed,") + (dc ? "true" : "false") + "\n";
        text += "q2," + flag(q2) + "\n";
        text += "q2_star," + flag(q2s) + "\n";
        text += "self_dual," + flag(sd) + "\n";
        text += "structure," + adversary_to_json(structure).dump() + "\n";
        text += "dual," + adversary_to_json(dual_structure).dump() + "\n";
    }
    emit(out.path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qinterp: qudit protocol simulator (hidden linear forms, multivariate "
                 "interpolation, share distribution, adversary structures)"};
    app.require_subcommand(1);
    int rc = 0;

    // field
    auto* field_cmd = app.add_subcommand("field", "Describe F_{p^r}: modulus, trace and character tables");
    std::uint32_t f_p = 2, f_r = 1;
    CommonOutput f_out;
    field_cmd->add_option("p", f_p, "Prime characteristic")->required();
    field_cmd->add_option("r", f_r, "Extension degree")->required();
    add_output_options(field_cmd, f_out);
    field_cmd->callback([&] { rc = cmd_field(f_p, f_r, f_out); });

    // bv
    auto* bv_cmd = app.add_subcommand("bv", "Recover a hidden linear form over F_2");
    std::uint32_t b_n = 1;
    std::string b_a;
    bool b_random = false;
    std::uint64_t b_seed = 0;
    CommonOutput b_out;
    bv_cmd->add_option("N", b_n, "Number of input qubits")->required();
    auto* opt_a = bv_cmd->add_option("--a", b_a, "Hidden bit string a_1..a_N");
    auto* opt_rand = bv_cmd->add_flag("--random", b_random, "Draw the hidden string from the seed");
    opt_a->excludes(opt_rand);
    bv_cmd->add_option("--seed", b_seed, "Random seed")->required();
    add_output_options(bv_cmd, b_out);
    bv_cmd->callback([&] {
        if (b_a.empty() && !b_random)
            throw CLI::ValidationError("bv", "provide --a or --random");
        rc = cmd_bv(b_n, b_a, b_random, b_seed, b_out);
    });

    // interpolate
    auto* ip_cmd = app.add_subcommand("interpolate", "Run the multivariate interpolation protocol");
    std::uint32_t i_p = 3, i_r = 1, i_n = 1, i_d = 1;
    std::optional<std::uint32_t> i_k;
    std::uint64_t i_trials = 1, i_seed = 0;
    std::string i_mode = "analytic";
    CommonOutput i_out;
    ip_cmd->add_option("p", i_p, "Prime characteristic")->required();
    ip_cmd->add_option("r", i_r, "Extension degree")->required();
    ip_cmd->add_option("n", i_n, "Number of variables")->required();
    ip_cmd->add_option("d", i_d, "Maximum total degree")->required();
    ip_cmd->add_option("k", i_k, "Query count override (defaults to the optimal count)");
    ip_cmd->add_option("--trials,-T", i_trials, "Number of protocol runs")->capture_default_str();
    ip_cmd->add_option("--seed", i_seed, "Master seed")->required();
    ip_cmd->add_option("--mode", i_mode, "Simulation mode")
        ->check(CLI::IsMember({"analytic", "circuit"}))
        ->capture_default_str();
    add_output_options(ip_cmd, i_out);
    ip_cmd->callback([&] { rc = cmd_interpolate(i_p, i_r, i_n, i_d, i_k, i_trials, i_seed, i_mode, i_out); });

    // share
    auto* sh_cmd = app.add_subcommand("share", "Distribute a secret across k players and reconstruct");
    std::uint32_t s_p = 3, s_r = 1, s_n = 1, s_d = 1;
    std::optional<std::uint32_t> s_k;
    std::vector<std::uint32_t> s_intercept;
    std::uint64_t s_sessions = 1, s_seed = 0;
    std::string s_dir = "transcripts";
    CommonOutput s_out;
    sh_cmd->add_option("p", s_p, "Prime characteristic")->required();
    sh_cmd->add_option("r", s_r, "Extension degree")->required();
    sh_cmd->add_option("n", s_n, "Number of variables")->required();
    sh_cmd->add_option("d", s_d, "Maximum total degree")->required();
    sh_cmd->add_option("k", s_k, "Query count override");
    sh_cmd->add_option("--intercept", s_intercept, "Share indices captured in transit (1-based)")
        ->delimiter(',');
    sh_cmd->add_option("--trials,-T", s_sessions, "Number of sessions")->capture_default_str();
    sh_cmd->add_option("--seed", s_seed, "Master seed")->required();
    sh_cmd->add_option("--transcript-dir", s_dir, "Directory for session transcripts")
        ->capture_default_str();
    add_output_options(sh_cmd, s_out);
    sh_cmd->callback(
        [&] { rc = cmd_share(s_p, s_r, s_n, s_d, s_k, s_intercept, s_sessions, s_seed, s_dir, s_out); });

    // adversary
    auto* ad_cmd = app.add_subcommand("adversary", "Adversary structure predicates and dual");
    std::uint32_t a_players = 1;
    std::string a_structure;
    std::optional<std::uint32_t> a_threshold;
    CommonOutput a_out;
    ad_cmd->add_option("--players", a_players, "Number of players")->required();
    auto* opt_struct =
        ad_cmd->add_option("--structure", a_structure, "Subset list as inline JSON or a file path");
    auto* opt_thresh = ad_cmd->add_option("--threshold", a_threshold, "Use the size-<=-t structure");
    opt_struct->excludes(opt_thresh);
    add_output_options(ad_cmd, a_out);
    ad_cmd->callback([&] {
        if (a_structure.empty() && !a_threshold)
            throw CLI::ValidationError("adversary", "provide --structure or --threshold");
        rc = cmd_adversary(a_players, a_structure, a_threshold, a_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::length_error& e) {
        std::cerr << "error (infeasible size): " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error (infeasible size): " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
