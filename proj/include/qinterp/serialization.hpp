#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qinterp/adversary.hpp"
#include "qinterp/finite_field.hpp"
#include "qinterp/interpolation.hpp"
#include "qinterp/polynomial.hpp"
#include "qinterp/transcript.hpp"

namespace qinterp {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const Field& field) {
    return Json{{"p", field.p()}, {"r", field.r()}, {"modulus", field.modulus()}};
}

inline Field field_from_json(const Json& j) {
    return Field(j.at("p").get<std::uint32_t>(), j.at("r").get<std::uint32_t>(),
                 j.at("modulus").get<std::vector<std::uint32_t>>());
}

/// Elements serialize as their coefficient lists, constant term first.
inline Json element_to_json(const Field& field, std::uint64_t index) {
    return Json(field.decode(index));
}

inline Json polynomial_to_json(const Polynomial& poly) {
    Json coeffs = Json::array();
    for (auto c : poly.coefficient_indices()) coeffs.push_back(element_to_json(poly.field(), c));
    return Json{{"field", field_to_json(poly.field())},
                {"n", poly.basis().num_variables},
                {"d", poly.basis().max_degree},
                {"include_constant", poly.basis().include_constant},
                {"coeffs", coeffs}};
}

inline Polynomial polynomial_from_json(const Json& j) {
    Field field = field_from_json(j.at("field"));
    MonomialBasis basis(j.at("n").get<std::uint32_t>(), j.at("d").get<std::uint32_t>(),
                        j.at("include_constant").get<bool>());
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(field.encode(c.get<std::vector<std::uint32_t>>()));
    return Polynomial(std::move(field), std::move(basis), std::move(coeffs));
}

/// Structures serialize as sorted subset lists, each subset a sorted list
/// of 1-based player indices.
inline Json adversary_to_json(const AdversaryStructure& a) { return Json(a.subsets()); }

inline AdversaryStructure adversary_from_json(std::uint32_t players, const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("adversary structure: expected an array of subsets");
    std::vector<std::vector<std::uint32_t>> subsets;
    for (const auto& s : j) {
        if (!s.is_array()) throw std::invalid_argument("adversary structure: subsets must be arrays");
        subsets.push_back(s.get<std::vector<std::uint32_t>>());
    }
    return AdversaryStructure::from_subsets(players, subsets);
}

/// JSON-lines rendering, one entry per line in step order.
inline void transcript_to_jsonl(const Transcript& transcript, std::ostream& os) {
    for (const auto& e : transcript.entries()) {
        Json line{{"step", e.step}, {"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"digest", e.digest}};
        os << line.dump() << '\n';
    }
}

inline std::uint64_t protocol_params_hash(const ProtocolParams& params) {
    std::string buf = "params";
    buf += ":" + std::to_string(params.field.p()) + ":" + std::to_string(params.field.r());
    for (auto c : params.field.modulus()) buf += "," + std::to_string(c);
    buf += ":" + std::to_string(params.basis.num_variables) + ":" + std::to_string(params.basis.max_degree);
    buf += params.basis.include_constant ? ":c1" : ":c0";
    buf += ":" + std::to_string(params.k);
    return fnv1a64(buf);
}

/// Disk cache for an enumerated image/transversal, guarded by a parameter
/// hash so a stale file cannot be loaded against different parameters.
inline Json transversal_to_json(const ProtocolParams& params, const TransversalTable& table) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i)
        entries.push_back(Json::array({table.image[i], table.preimage[i]}));
    return Json{{"params_hash", protocol_params_hash(params)},
                {"domain_size", table.domain_size},
                {"codomain_size", table.codomain_size},
                {"entries", entries}};
}

inline TransversalTable transversal_from_json(const ProtocolParams& params, const Json& j) {
    if (j.at("params_hash").get<std::uint64_t>() != protocol_params_hash(params))
        throw std::invalid_argument("transversal cache: parameter hash mismatch");
    TransversalTable table;
    table.domain_size = j.at("domain_size").get<std::uint64_t>();
    table.codomain_size = j.at("codomain_size").get<std::uint64_t>();
    for (const auto& e : j.at("entries")) {
        table.image.push_back(e.at(0).get<std::uint64_t>());
        table.preimage.push_back(e.at(1).get<std::uint64_t>());
    }
    return table;
}

inline void save_transversal(const ProtocolParams& params, const TransversalTable& table,
                             const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_transversal: cannot open " + path);
    os << transversal_to_json(params, table).dump(2) << '\n';
}

inline TransversalTable load_transversal(const ProtocolParams& params, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_transversal: cannot open " + path);
    Json j;
    is >> j;
    return transversal_from_json(params, j);
}

}  // namespace qinterp
