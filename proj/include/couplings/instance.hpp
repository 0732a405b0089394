#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "couplings/errors.hpp"
#include "couplings/extreme_measures.hpp"
#include "couplings/group_action.hpp"

namespace couplings {

/// One instance file drives every CLI command: the action, and optionally
/// the marginals for the measure commands.
struct Instance {
    ActionSpec action;
    std::optional<Marginals> marginals;
};

// 64-bit FNV-1a over the raw file bytes; pinned into every run report so
// outputs are traceable to their input.
inline std::string fnv1a_digest(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline Perm parse_perm(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array of integers");
    Perm p;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(what + " must be an array of integers");
        p.push_back(v.get<int>());
    }
    return p;
}

inline std::vector<Rat> parse_rational_array(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array of rational strings");
    std::vector<Rat> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError(what + " entries must be rational strings like \"1/2\"");
        out.push_back(parse_rational(v.get<std::string>()));
    }
    return out;
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance must be a JSON object");

    Instance inst;
    if (!j.contains("x_size") || !j["x_size"].is_number_integer())
        throw ParseError("missing integer field \"x_size\"");
    if (!j.contains("y_size") || !j["y_size"].is_number_integer())
        throw ParseError("missing integer field \"y_size\"");
    inst.action.x_size = j["x_size"].get<int>();
    inst.action.y_size = j["y_size"].get<int>();

    if (j.contains("generators")) {
        if (!j["generators"].is_array()) throw ParseError("\"generators\" must be an array");
        for (const auto& g : j["generators"]) {
            if (!g.is_object() || !g.contains("perm_x") || !g.contains("perm_y"))
                throw ParseError("each generator needs \"perm_x\" and \"perm_y\"");
            inst.action.generators.push_back(GeneratorPair{
                detail::parse_perm(g["perm_x"], "perm_x"),
                detail::parse_perm(g["perm_y"], "perm_y")});
        }
    }

    if (j.contains("marginals")) {
        const auto& m = j["marginals"];
        if (!m.is_object() || !m.contains("mu1") || !m.contains("mu2"))
            throw ParseError("\"marginals\" needs \"mu1\" and \"mu2\"");
        inst.marginals = Marginals{detail::parse_rational_array(m["mu1"], "mu1"),
                                   detail::parse_rational_array(m["mu2"], "mu2")};
    }
    return inst;
}

struct LoadedInstance {
    Instance instance;
    std::string digest;
};

inline LoadedInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return LoadedInstance{parse_instance(text), fnv1a_digest(text)};
}

}  // namespace couplings
