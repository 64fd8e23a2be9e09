#pragma once

// JSON problem-spec files:
//   { "x_alphabet": [...], "y_alphabet": [...], "z_alphabet": [...], "zhat_alphabet": [...],
//     "p_xy": [[...], ...],   // rows x, columns y
//     "f":    [[...], ...],   // rows x, columns y, entries are z indices
//     "d":    [[...], ...] }  // rows z, columns zhat

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lossycomp/model.hpp"

namespace lossycomp {

namespace detail {

template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("key '") + key + "': " + e.what());
    }
}

}  // namespace detail

inline RawSpec raw_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(Errc::ParseError, "problem spec must be a JSON object");
    RawSpec raw;
    raw.x_alphabet = detail::required<std::vector<std::string>>(j, "x_alphabet");
    raw.y_alphabet = detail::required<std::vector<std::string>>(j, "y_alphabet");
    raw.z_alphabet = detail::required<std::vector<std::string>>(j, "z_alphabet");
    raw.zhat_alphabet = detail::required<std::vector<std::string>>(j, "zhat_alphabet");
    raw.p_xy = detail::required<std::vector<std::vector<double>>>(j, "p_xy");
    raw.f = detail::required<std::vector<std::vector<std::int64_t>>>(j, "f");
    raw.d = detail::required<std::vector<std::vector<double>>>(j, "d");
    return raw;
}

inline nlohmann::json to_json(const RawSpec& raw) {
    return nlohmann::json{{"x_alphabet", raw.x_alphabet}, {"y_alphabet", raw.y_alphabet},
                          {"z_alphabet", raw.z_alphabet}, {"zhat_alphabet", raw.zhat_alphabet},
                          {"p_xy", raw.p_xy},             {"f", raw.f},
                          {"d", raw.d}};
}

inline nlohmann::json to_json(const ProblemSpec& spec) { return to_json(spec.to_raw()); }

inline ProblemSpec parse_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
    return validate_spec(raw_spec_from_json(j));
}

inline std::string serialize_spec(const ProblemSpec& spec, int indent = 2) { return to_json(spec).dump(indent); }

inline ProblemSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open spec file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

}  // namespace lossycomp
