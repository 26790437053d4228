#ifndef WGAB_REPORT_HPP
#define WGAB_REPORT_HPP

// Deterministic machine-readable reports. Key order is fixed, rationals are
// exact "p/q" strings, half-integers "k/2", and the digest is an FNV-1a hash
// of the canonical serialization of everything except the tool version, so
// golden comparisons survive version bumps.

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "algebra.hpp"
#include "derivations.hpp"

namespace wgab {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

inline json params_json(const std::map<std::string, Rational>& params) {
    json j = json::object();
    for (auto& [k, v] : params) j[k] = v.str();
    return j;
}

// Assembles the report document and stamps the digest (computed over the
// document minus the version field).
inline json make_report(const std::string& command, const json& params,
                        const std::optional<std::string>& window,
                        const std::optional<int>& margin, const json& result) {
    json core = json::object();
    core["schema"] = kSchema;
    core["command"] = command;
    if (!params.is_null()) core["params"] = params;
    if (window) core["window"] = *window;
    if (margin) core["margin"] = *margin;
    core["result"] = result;
    std::string digest = fnv1a_hex(core.dump());

    json doc = json::object();
    doc["schema"] = kSchema;
    doc["version"] = kVersion;
    doc["command"] = command;
    if (!params.is_null()) doc["params"] = params;
    if (window) doc["window"] = *window;
    if (margin) doc["margin"] = *margin;
    doc["result"] = result;
    doc["digest"] = digest;
    return doc;
}

struct GoldenDiff {
    bool pass = true;
    std::string diff;  // textual description of the first mismatches
};

// Structural comparison ignoring the version field.
inline GoldenDiff golden_compare(const json& report, const json& golden) {
    GoldenDiff out;
    std::ostringstream diff;
    json a = report, b = golden;
    a.erase("version");
    b.erase("version");
    std::function<void(const json&, const json&, const std::string&)> walk =
        [&](const json& x, const json& y, const std::string& path) {
            if (x == y) return;
            if (x.is_object() && y.is_object()) {
                for (auto& [k, v] : x.items()) {
                    if (!y.contains(k))
                        diff << path << "/" << k << ": missing in golden\n";
                    else
                        walk(v, y[k], path + "/" + k);
                }
                for (auto& [k, v] : y.items())
                    if (!x.contains(k)) diff << path << "/" << k << ": missing in report\n";
                return;
            }
            if (x.is_array() && y.is_array() && x.size() == y.size()) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    walk(x[i], y[i], path + "/" + std::to_string(i));
                return;
            }
            diff << path << ": " << x.dump() << " != " << y.dump() << "\n";
        };
    walk(a, b, "");
    out.diff = diff.str();
    out.pass = out.diff.empty();
    return out;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

// ---------------------------------------------------------------------------
// serialization of engine values

inline json element_json(const AlgebraSpec& spec, const Element& e) { return e.str(spec); }

inline json candidate_json(const AlgebraSpec& spec, const DerivationCandidate& cand) {
    json images = json::object();
    for (auto& [x, img] : cand.images)
        if (!img.is_zero()) images[basis_str(spec, x)] = img.str(spec);
    json j = json::object();
    j["degree"] = cand.degree.str();
    j["images"] = images;
    return j;
}

inline json h1_json(const AlgebraSpec& spec, const H1Report& rep) {
    json j = json::object();
    j["degree"] = rep.degree.str();
    j["solve_window"] = rep.solve_window.str();
    j["interior_window"] = rep.interior_window.str();
    j["solution_dim"] = rep.solution_dim;
    j["inner_dim"] = rep.inner_dim;
    j["outer_dim"] = rep.outer_dim;
    json basis = json::array();
    for (auto& c : rep.outer_basis) basis.push_back(candidate_json(spec, c));
    j["outer_basis"] = basis;
    return j;
}

}  // namespace wgab

#endif
