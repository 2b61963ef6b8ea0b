/*
   Copyright 2026 The detrep authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "detrep/parser.hpp"
#include "detrep/poly.hpp"
#include "detrep/represent.hpp"

namespace detrep {

using ordered_json = nlohmann::ordered_json;

/// Interchange schema, format_version 1. Every rational is serialized as a
/// reduced "num/den" string (JSON numbers are doubles; exactness is
/// non-negotiable). The optional per-block "negated" flag marks the block
/// pencil (-J_b, -A_b); it is omitted when false.
inline constexpr int kFormatVersion = 1;

namespace detail {

inline ordered_json rational_json(const Rational& q) { return q.to_fraction_string(); }

inline Rational rational_from_json(const ordered_json& j, const char* what) {
    if (!j.is_string()) throw std::invalid_argument(std::string("document: ") + what + " must be a \"num/den\" string");
    return Rational::from_string(j.get<std::string>());
}

}  // namespace detail

inline ordered_json representation_to_json(const Representation& rep, const Poly& p) {
    ordered_json doc;
    doc["format_version"] = kFormatVersion;
    doc["polynomial"] = serialize_poly(p);
    doc["scale"] = detail::rational_json(rep.scale);
    doc["signature"] = {rep.declared_signature.plus, rep.declared_signature.minus};
    doc["blocks"] = ordered_json::array();
    for (const auto& b : rep.blocks) {
        ordered_json jb;
        jb["branch"] = (b.branch == BlockBranch::main) ? "main" : "no_real";
        jb["real_nodes"] = ordered_json::array();
        for (const auto& n : b.real_nodes) {
            jb["real_nodes"].push_back(
                {{"lambda", detail::rational_json(n.lambda)}, {"h_sq", detail::rational_json(n.h_sq)}});
        }
        jb["complex_nodes"] = ordered_json::array();
        for (const auto& n : b.complex_nodes) {
            jb["complex_nodes"].push_back({{"mu", detail::rational_json(n.mu)},
                                           {"nu", detail::rational_json(n.nu)},
                                           {"sq_re", detail::rational_json(n.sq_re)},
                                           {"sq_im", detail::rational_json(n.sq_im)}});
        }
        jb["e"] = detail::rational_json(b.tail_e);
        if (b.special) {
            jb["special"] = {{"lambda", detail::rational_json(b.special->lambda)},
                             {"h_sq", detail::rational_json(b.special->h_sq)}};
        }
        if (b.negated) jb["negated"] = true;
        doc["blocks"].push_back(std::move(jb));
    }
    return doc;
}

struct LoadedDocument {
    Poly polynomial;
    Representation rep;
};

/// Parses and structurally validates a representation document. Throws
/// std::invalid_argument on schema violations (the certifying comparison
/// against the polynomial is a separate, deliberate step).
inline LoadedDocument representation_from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("document: not a JSON object");
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
        doc["format_version"].get<int>() != kFormatVersion)
        throw std::invalid_argument("document: missing or unsupported format_version");
    if (!doc.contains("polynomial") || !doc["polynomial"].is_string())
        throw std::invalid_argument("document: missing polynomial");
    if (!doc.contains("blocks") || !doc["blocks"].is_array())
        throw std::invalid_argument("document: missing blocks");
    if (!doc.contains("signature") || !doc["signature"].is_array() || doc["signature"].size() != 2)
        throw std::invalid_argument("document: missing signature pair");

    LoadedDocument out;
    out.polynomial = parse_poly(doc["polynomial"].get<std::string>());
    out.rep.scale = detail::rational_from_json(doc.at("scale"), "scale");
    out.rep.declared_signature.plus = doc["signature"][0].get<int>();
    out.rep.declared_signature.minus = doc["signature"][1].get<int>();

    for (const auto& jb : doc["blocks"]) {
        ArrowBlock b;
        const std::string branch = jb.at("branch").get<std::string>();
        if (branch == "main") b.branch = BlockBranch::main;
        else if (branch == "no_real") b.branch = BlockBranch::no_real;
        else throw std::invalid_argument("document: unknown branch '" + branch + "'");
        if (jb.contains("real_nodes")) {
            for (const auto& jn : jb["real_nodes"]) {
                b.real_nodes.push_back({detail::rational_from_json(jn.at("lambda"), "lambda"),
                                        detail::rational_from_json(jn.at("h_sq"), "h_sq")});
            }
        }
        if (jb.contains("complex_nodes")) {
            for (const auto& jn : jb["complex_nodes"]) {
                b.complex_nodes.push_back({detail::rational_from_json(jn.at("mu"), "mu"),
                                           detail::rational_from_json(jn.at("nu"), "nu"),
                                           detail::rational_from_json(jn.at("sq_re"), "sq_re"),
                                           detail::rational_from_json(jn.at("sq_im"), "sq_im")});
            }
        }
        b.tail_e = detail::rational_from_json(jb.at("e"), "e");
        if (jb.contains("special")) {
            b.special = RealNode{detail::rational_from_json(jb["special"].at("lambda"), "special lambda"),
                                 detail::rational_from_json(jb["special"].at("h_sq"), "special h_sq")};
        }
        if (jb.contains("negated")) b.negated = jb["negated"].get<bool>();
        out.rep.blocks.push_back(std::move(b));
    }
    validate_representation(out.rep);
    return out;
}

}  // namespace detrep
