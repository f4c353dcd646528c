#pragma once

// JSON and CSV interchange.  Rationals and big integers travel as exact
// decimal strings ("p" or "p/q"); fields travel as their generator pair and
// are re-canonicalized on load, so a parsed representation always hangs off
// a verified field handle.  Parsing checks structure only — whether a
// representation actually sums to its target stays a question for
// sos_verify, so tampered files load fine and then fail verification.

#include "sos.hpp"

#include <json.hpp>

namespace biquad {

using json = nlohmann::json;

inline json rat_to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be encoded as a string");
    return parse_rat(j.get<std::string>());
}

inline json field_to_json(const Field& K) { return json{{"r1", K->r1}, {"r2", K->r2}}; }

inline Field field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("r1") || !j.contains("r2"))
        throw std::invalid_argument("field must be an object with r1 and r2");
    if (!j["r1"].is_number_integer() || !j["r2"].is_number_integer())
        throw std::invalid_argument("field radicands must be integers");
    return classify_field(j["r1"].get<long long>(), j["r2"].get<long long>());
}

inline json elem_to_json(const BiquadElem& x) {
    json coords = json::array();
    for (const auto& c : x.c) coords.push_back(to_string(c));
    json out{{"coords", coords}};
    if (auto ic = integral_coords(x)) {
        json b = json::array();
        for (const auto& v : *ic) b.push_back(to_string(v));
        out["integral_coords"] = b;
    }
    return out;
}

inline BiquadElem elem_from_json(const Field& K, const json& j) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array() ||
        j["coords"].size() != 4)
        throw std::invalid_argument("element must carry a four-entry coords array");
    std::array<Rat, 4> c;
    for (int i = 0; i < 4; ++i) c[i] = rat_from_json(j["coords"][i]);
    return elem(K, c);
}

inline json rep_to_json(const SosRep& rep) {
    json squares = json::array();
    for (const auto& s : rep.squares) squares.push_back(elem_to_json(s));
    return json{{"field", field_to_json(rep.K)},
                {"target", elem_to_json(rep.target)},
                {"squares", std::move(squares)},
                {"verified", sos_verify(rep)}};
}

inline SosRep rep_from_json(const json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("target") || !j.contains("squares"))
        throw std::invalid_argument("representation must carry field, target and squares");
    Field K = field_from_json(j["field"]);
    SosRep rep{K, elem_from_json(K, j["target"]), {}};
    if (!j["squares"].is_array()) throw std::invalid_argument("squares must be an array");
    for (const auto& sj : j["squares"]) rep.squares.push_back(elem_from_json(K, sj));
    return rep;
}

inline std::string survey_csv(const std::vector<SurveyRow>& rows) {
    std::string out =
        "r1,r2,class_tag,s_classifier,s_oracle,max_decomp4_len,sample_size,discrepancy_flag\n";
    for (const auto& r : rows) {
        out += std::to_string(r.r1) + ',' + std::to_string(r.r2) + ',' + r.class_tag + ',' +
               std::to_string(r.s_classifier) + ',' + std::to_string(r.s_oracle) + ',' +
               std::to_string(r.max_decomp4_len) + ',' + std::to_string(r.sample_size) + ',' +
               (r.discrepancy_flag ? "1" : "0") + '\n';
    }
    return out;
}

} // namespace biquad
