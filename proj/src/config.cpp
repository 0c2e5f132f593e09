#include "ifslab/config.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ifslab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

std::vector<double> number_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

ComparisonFunction parse_phi(const json& j) {
    if (!j.is_object()) throw ConfigError("phi must be an object");
    std::string family = j.value("family", "");
    if (family == "linear") {
        reject_unknown(j, {"family", "c"}, "phi");
        if (!j.contains("c")) throw ConfigError("linear phi needs \"c\"");
        return ComparisonFunction::linear(j["c"].get<double>());
    }
    if (family == "rational") {
        reject_unknown(j, {"family"}, "phi");
        return ComparisonFunction::rational();
    }
    if (family == "table") {
        reject_unknown(j, {"family", "knots", "values"}, "phi");
        return ComparisonFunction::table(number_array(j["knots"], "phi.knots"),
                                         number_array(j["values"], "phi.values"));
    }
    throw ConfigError("unknown phi family \"" + family + "\"");
}

ContractionMap parse_map(const json& j, std::size_t dim) {
    if (!j.is_object()) throw ConfigError("map entry must be an object");
    std::string kind = j.value("kind", "");
    std::optional<ComparisonFunction> witness;
    if (j.contains("phi")) witness = parse_phi(j["phi"]);
    if (kind == "affine") {
        reject_unknown(j, {"name", "kind", "matrix", "offset", "phi"}, "map");
        if (!j.contains("matrix") || !j.contains("offset"))
            throw ConfigError("affine map needs \"matrix\" and \"offset\"");
        AffineMap f;
        const json& rows = j["matrix"];
        if (!rows.is_array() || rows.size() != dim)
            throw ConfigError("matrix must have one row per dimension");
        for (const auto& row : rows) {
            std::vector<double> r = number_array(row, "matrix row");
            if (r.size() != dim) throw ConfigError("matrix row has wrong length");
            f.matrix.insert(f.matrix.end(), r.begin(), r.end());
        }
        f.offset = number_array(j["offset"], "offset");
        if (f.offset.size() != dim) throw ConfigError("offset has wrong length");
        return ContractionMap(std::move(f), std::move(witness));
    }
    if (kind == "sinusoidal") {
        reject_unknown(j, {"name", "kind", "amplitude", "offset", "phi"}, "map");
        if (!j.contains("amplitude") || !j.contains("offset"))
            throw ConfigError("sinusoidal map needs \"amplitude\" and \"offset\"");
        SinusoidalMap f;
        f.amplitude = j["amplitude"].get<double>();
        f.offset = number_array(j["offset"], "offset");
        if (f.offset.size() != dim) throw ConfigError("offset has wrong length");
        return ContractionMap(dim, std::move(f), std::move(witness));
    }
    throw ConfigError("unknown map kind \"" + kind + "\"");
}

Tolerances parse_tolerances(const json& j) {
    reject_unknown(j,
                   {"tol_point", "tol_attr", "max_depth", "dedup_cell", "word_cap",
                    "max_attractor_iters"},
                   "tolerances");
    Tolerances tol;
    if (j.contains("tol_point")) tol.tol_point = j["tol_point"].get<double>();
    if (j.contains("tol_attr")) tol.tol_attr = j["tol_attr"].get<double>();
    if (j.contains("max_depth")) tol.max_depth = j["max_depth"].get<std::size_t>();
    if (j.contains("dedup_cell")) tol.dedup_cell = j["dedup_cell"].get<double>();
    if (j.contains("word_cap")) tol.word_cap = j["word_cap"].get<std::size_t>();
    if (j.contains("max_attractor_iters"))
        tol.max_attractor_iters = j["max_attractor_iters"].get<std::size_t>();
    if (tol.tol_point <= 0 || tol.tol_attr <= 0)
        throw ConfigError("tolerances must be positive");
    return tol;
}

}  // namespace

LoadedConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, {"dimension", "maps", "tolerances", "seed_cloud"}, "config");
    if (!root.contains("dimension") || !root["dimension"].is_number_unsigned())
        throw ConfigError("config needs a positive integer \"dimension\"");
    std::size_t dim = root["dimension"].get<std::size_t>();
    if (dim == 0) throw ConfigError("dimension must be >= 1");
    if (!root.contains("maps") || !root["maps"].is_array() || root["maps"].empty())
        throw ConfigError("config needs a non-empty \"maps\" array");

    std::vector<ContractionMap> maps;
    try {
        for (const auto& m : root["maps"]) maps.push_back(parse_map(m, dim));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    Tolerances tol;
    if (root.contains("tolerances")) tol = parse_tolerances(root["tolerances"]);

    PointCloud seed(dim);
    if (!root.contains("seed_cloud") ||
        (root["seed_cloud"].is_string() && root["seed_cloud"] == "origin")) {
        seed.add(Point(dim, 0.0));
    } else if (root["seed_cloud"].is_array()) {
        for (const auto& p : root["seed_cloud"]) {
            Point point = number_array(p, "seed_cloud point");
            if (point.size() != dim)
                throw ConfigError("seed_cloud point has wrong dimension");
            seed.add(point);
        }
        if (seed.empty()) throw ConfigError("seed_cloud must not be empty");
    } else {
        throw ConfigError("seed_cloud must be \"origin\" or an array of points");
    }

    try {
        return LoadedConfig{IfsInstance(std::move(maps), tol), std::move(seed)};
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ifslab
