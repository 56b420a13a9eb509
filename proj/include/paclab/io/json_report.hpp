#pragma once

#include "paclab/exact/digit_stream.hpp"
#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/serversim/simplex.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace paclab {

using Json = nlohmann::ordered_json;

/// Exact decimal-free rendering: every rational lands in JSON as "p/q".
inline Json json_of(const Rational& r) { return Json(r.str()); }

/// Streams are recorded by generator name, base and a digit-prefix sample so
/// a report pins down exactly which number was used.
inline Json json_of(const DigitStream& s, std::size_t prefix_digits = 32) {
    Json j;
    j["generator"] = s.name();
    j["base"] = s.base();
    std::string prefix;
    for (int d : s.prefix(prefix_digits)) {
        if (!prefix.empty() && s.base() > 10) prefix.push_back('.');
        prefix += std::to_string(d);
    }
    j["prefix"] = prefix;
    return j;
}

inline Json json_of(const RealValue& x) {
    if (x.is_rational()) return json_of(x.as_rational());
    Json j;
    j["expression"] = x.description();
    j["stream"] = json_of(x.as_mobius().stream);
    return j;
}

inline Json json_of(const SimplexState& v) {
    return Json::array({json_of(v.v1), json_of(v.v2), json_of(v.v3)});
}

inline Json json_of(const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const Rational& x : xs) arr.push_back(json_of(x));
    return arr;
}

/// Writes through a sibling temp file and renames, so readers never observe
/// a half-written report.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void write_json(const std::filesystem::path& path, const Json& j) {
    atomic_write_text(path, j.dump(2) + "\n");
}

}  // namespace paclab
