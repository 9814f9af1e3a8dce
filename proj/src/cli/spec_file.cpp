#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "atsuji/cli.hpp"
#include "atsuji/generators.hpp"

namespace atsuji::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) bad(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(path + "." + key, "missing required field");
    return *it;
}

void only_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad(path + "." + key, "unknown field");
    }
}

std::string as_string(const Json& value, const std::string& path) {
    if (!value.is_string()) bad(path, "expected a string");
    return value.get<std::string>();
}

double as_number(const Json& value, const std::string& path) {
    if (!value.is_number()) bad(path, "expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) bad(path, "expected a finite number");
    return x;
}

std::vector<std::string> as_id_list(const Json& value, const std::string& path) {
    if (!value.is_array()) bad(path, "expected an array of point ids");
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < value.size(); ++k) ids.push_back(as_string(value[k], path + "[" + std::to_string(k) + "]"));
    return ids;
}

struct SpaceArm {
    FiniteSpace space;
    std::optional<DerivedSetView> builtin_oracle;
};

SpaceArm load_builtin(const Json& node, double tol) {
    only_keys(node, {"kind", "name", "params"}, "space");
    GeneratorSpec spec;
    spec.name = as_string(member(node, "name", "space"), "space.name");
    if (auto it = node.find("params"); it != node.end()) {
        if (!it->is_object()) bad("space.params", "expected an object");
        for (const auto& [key, value] : it->items()) {
            const std::string path = "space.params." + key;
            if (value.is_boolean()) {
                spec.flag_params[key] = value.get<bool>();
            } else if (value.is_number_integer()) {
                spec.int_params[key] = value.get<std::int64_t>();
            } else if (value.is_string()) {
                spec.text_params[key] = value.get<std::string>();
            } else {
                bad(path, "expected an integer, string or boolean");
            }
        }
    }
    try {
        GeneratedSpace generated = generate(spec, tol);
        return {std::move(generated.space), std::move(generated.oracle)};
    } catch (const DomainError& e) {
        bad("space.params", e.what());
    }
}

SpaceArm load_points(const Json& node, double tol) {
    only_keys(node, {"kind", "points"}, "space");
    const Json& points = member(node, "points", "space");
    if (!points.is_array()) bad("space.points", "expected an array");
    std::vector<PointSpec> specs;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const std::string path = "space.points[" + std::to_string(k) + "]";
        const Json& p = points[k];
        if (!p.is_object()) bad(path, "expected an object");
        only_keys(p, {"id", "coords"}, path);
        PointSpec spec{as_string(member(p, "id", path), path + ".id"), {}};
        if (auto c = p.find("coords"); c != p.end()) {
            if (!c->is_object()) bad(path + ".coords", "expected an object mapping slot to value");
            for (const auto& [slot_text, value] : c->items()) {
                const std::string slot_path = path + ".coords." + slot_text;
                int slot = 0;
                auto [ptr, ec] = std::from_chars(slot_text.data(), slot_text.data() + slot_text.size(), slot);
                if (ec != std::errc{} || ptr != slot_text.data() + slot_text.size() || slot < 1) {
                    bad(slot_path, "slot must be a positive integer");
                }
                spec.coords[slot] = as_number(value, slot_path);
            }
        }
        specs.push_back(std::move(spec));
    }
    try {
        return {build_space(specs, tol), std::nullopt};
    } catch (const ConstructionError& e) {
        bad("space.points", e.what());
    }
}

SpaceArm load_matrix(const Json& node, double tol) {
    only_keys(node, {"kind", "ids", "matrix"}, "space");
    std::vector<std::string> ids = as_id_list(member(node, "ids", "space"), "space.ids");
    const Json& rows = member(node, "matrix", "space");
    if (!rows.is_array()) bad("space.matrix", "expected an array of rows");
    if (rows.size() != ids.size()) {
        bad("space.matrix", "has " + std::to_string(rows.size()) + " rows for " + std::to_string(ids.size()) + " ids");
    }
    DistanceMatrix dist(ids.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string row_path = "space.matrix[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != ids.size()) {
            bad(row_path, "expected a row of " + std::to_string(ids.size()) + " numbers");
        }
        for (std::size_t j = 0; j < ids.size(); ++j) {
            dist(i, j) = as_number(rows[i][j], row_path + "[" + std::to_string(j) + "]");
        }
    }
    try {
        return {FiniteSpace::from_matrix(std::move(ids), std::move(dist), tol), std::nullopt};
    } catch (const ConstructionError& e) {
        bad("space.matrix", e.what());
    }
}

DerivedSetView load_derived(const Json& doc, const SpaceArm& arm) {
    auto it = doc.find("derived_set");
    if (it == doc.end()) return arm.builtin_oracle.value_or(DerivedSetView::empty());
    const Json& node = *it;
    const std::string kind = as_string(member(node, "kind", "derived_set"), "derived_set.kind");
    if (kind == "empty") {
        only_keys(node, {"kind"}, "derived_set");
        return DerivedSetView::empty();
    }
    if (kind == "oracle") {
        only_keys(node, {"kind", "ids"}, "derived_set");
        const auto ids = as_id_list(member(node, "ids", "derived_set"), "derived_set.ids");
        PointSet members;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (!arm.space.contains(ids[k])) bad("derived_set.ids[" + std::to_string(k) + "]", "unknown point id '" + ids[k] + "'");
            members.push_back(arm.space.index_of(ids[k]));
        }
        return DerivedSetView::oracle(arm.space, members);
    }
    if (kind == "detect") {
        only_keys(node, {"kind", "radius"}, "derived_set");
        const double radius = as_number(member(node, "radius", "derived_set"), "derived_set.radius");
        if (!(radius > 0.0)) bad("derived_set.radius", "must be > 0");
        return detect_limit_points(arm.space, radius);
    }
    bad("derived_set.kind", "expected one of oracle, detect, empty; got '" + kind + "'");
}

}  // namespace

LoadedSpec load_spec(const Json& doc, std::optional<double> tol_override) {
    if (!doc.is_object()) bad("<root>", "expected a JSON object");
    only_keys(doc, {"space", "derived_set", "tol"}, "<root>");
    double tol = kDefaultTolerance;
    if (auto it = doc.find("tol"); it != doc.end()) tol = as_number(*it, "tol");
    if (tol_override) tol = *tol_override;
    if (!(tol >= 0.0)) bad("tol", "must be >= 0");

    const Json& space = member(doc, "space", "<root>");
    const std::string kind = as_string(member(space, "kind", "space"), "space.kind");
    SpaceArm arm = [&] {
        if (kind == "builtin") return load_builtin(space, tol);
        if (kind == "points_l2") return load_points(space, tol);
        if (kind == "matrix") return load_matrix(space, tol);
        bad("space.kind", "expected one of builtin, points_l2, matrix; got '" + kind + "'");
    }();
    DerivedSetView derived = load_derived(doc, arm);
    return {std::move(arm.space), std::move(derived), doc};
}

LoadedSpec load_spec_file(const std::string& path, std::optional<double> tol_override) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open spec file");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    return load_spec(doc, tol_override);
}

Json matrix_spec(const FiniteSpace& space, const DerivedSetView& derived) {
    Json rows = Json::array();
    for (PointIndex i = 0; i < space.size(); ++i) {
        Json row = Json::array();
        for (double v : space.matrix().row(i)) row.push_back(v);
        rows.push_back(std::move(row));
    }
    Json ids = Json::array();
    for (PointIndex m : derived.members()) ids.push_back(space.label(m));
    Json doc;
    doc["space"] = {{"kind", "matrix"}, {"ids", space.labels()}, {"matrix", std::move(rows)}};
    doc["derived_set"] = {{"kind", "oracle"}, {"ids", std::move(ids)}};
    doc["tol"] = space.tol();
    return doc;
}

}  // namespace atsuji::cli
