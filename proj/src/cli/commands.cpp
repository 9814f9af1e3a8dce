#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "atsuji/cli.hpp"
#include "atsuji/functions.hpp"
#include "atsuji/remetrize.hpp"

namespace atsuji::cli {

Json number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

namespace {

struct Options {
    std::string spec_path;
    std::optional<double> tol;
    std::string out_path;
    std::string eps_grid;
    double threshold = kDefaultThreshold;
    std::string out_matrix;
    std::string fn;
    std::string a_ids;
    std::string b_ids;
    double eps0 = 0.0;
    double delta = 0.0;
    double eps = 0.0;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            items.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current.push_back(c);
        }
    }
    items.push_back(current);
    return items;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) return default_eps_grid();
    std::vector<double> grid;
    for (const std::string& item : split_list(text)) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw InputError("--eps-grid: '" + item + "' is not a number");
        }
        if (!(value > 0.0) || !std::isfinite(value)) throw InputError("--eps-grid: values must be finite and > 0");
        grid.push_back(value);
    }
    return grid;
}

PointSet parse_ids(const FiniteSpace& space, const std::string& text, const std::string& flag) {
    if (text.empty()) throw InputError(flag + ": expected a comma-separated list of point ids");
    PointSet out;
    for (const std::string& id : split_list(text)) {
        if (!space.contains(id)) throw InputError(flag + ": unknown point id '" + id + "'");
        out.push_back(space.index_of(id));
    }
    return space.normalize(out);
}

Json ids_json(const FiniteSpace& space, std::span<const PointIndex> set) {
    Json out = Json::array();
    for (PointIndex i : set) out.push_back(space.label(i));
    return out;
}

Json pair_json(const FiniteSpace& space, const std::optional<IndexPair>& pair) {
    if (!pair) return nullptr;
    return Json::array({space.label(pair->first), space.label(pair->second)});
}

Json witness_json(const FiniteSpace& space, const std::optional<WitnessPair>& w) {
    if (!w) return nullptr;
    Json out;
    out["x"] = space.label(w->x);
    out["y"] = space.label(w->y);
    out["distance"] = number(w->distance);
    out["gap"] = number(w->gap);
    return out;
}

Json derived_json(const FiniteSpace& space, const DerivedSetView& derived) {
    Json out;
    out["kind"] = to_string(derived.kind());
    out["members"] = ids_json(space, derived.members());
    out["resolution"] = derived.resolution() ? Json(*derived.resolution()) : Json(nullptr);
    return out;
}

Json axioms_json(const FiniteSpace& space, const AxiomReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json item;
        item["kind"] = to_string(v.kind);
        item["points"] = ids_json(space, v.points);
        item["magnitude"] = number(v.magnitude);
        violations.push_back(std::move(item));
    }
    Json out;
    out["passed"] = report.passed;
    out["point_count"] = space.size();
    out["violations"] = std::move(violations);
    return out;
}

Json verdict_json(const FiniteSpace& space, const DerivedSetView& derived, const AtsujiVerdict& v) {
    Json scales = Json::array();
    for (const auto& s : v.scales) {
        Json item;
        item["eps"] = s.eps;
        item["net_size"] = s.net_size;
        item["outside_count"] = s.outside_count;
        item["eta"] = number(s.isolation.eta);
        item["witness"] = pair_json(space, s.isolation.witness);
        scales.push_back(std::move(item));
    }
    Json out;
    out["status"] = to_string(v.status);
    out["threshold"] = v.threshold;
    out["derived_set"] = derived_json(space, derived);
    out["scales"] = std::move(scales);
    out["fail_eps"] = v.fail_eps ? Json(*v.fail_eps) : Json(nullptr);
    out["fail_witness"] = witness_json(space, v.fail_witness);
    out["notes"] = v.notes;
    return out;
}

// Keyed rows appended directly; ordered_json lookups are linear and would make this quadratic per row.
Json matrix_object(const FiniteSpace& space, const DistanceMatrix& m) {
    Json out = Json::object();
    auto& rows = out.get_ref<Json::object_t&>();
    for (PointIndex i = 0; i < space.size(); ++i) {
        Json row = Json::object();
        auto& cells = row.get_ref<Json::object_t&>();
        for (PointIndex j = 0; j < space.size(); ++j) cells.emplace_back(space.label(j), m(i, j));
        rows.emplace_back(space.label(i), std::move(row));
    }
    return out;
}

struct Outcome {
    Json result;
    int code = kExitOk;
    std::vector<std::string> notes;
};

Outcome cmd_check_metric(const LoadedSpec& spec, const Options&) {
    const AxiomReport report = verify_metric_axioms(spec.space);
    return {axioms_json(spec.space, report), report.passed ? kExitOk : kExitFail, {}};
}

Outcome cmd_atsuji(const LoadedSpec& spec, const Options& opt) {
    if (!(opt.threshold > 0.0)) throw InputError("--threshold: must be > 0");
    const AtsujiVerdict v = atsuji_check(spec.space, spec.derived, parse_grid(opt.eps_grid), opt.threshold);
    return {verdict_json(spec.space, spec.derived, v), v.status == VerdictStatus::fail ? kExitFail : kExitOk, {}};
}

Outcome cmd_remetrize(const LoadedSpec& spec, const Options& opt) {
    if (!(opt.threshold > 0.0)) throw InputError("--threshold: must be > 0");
    const std::vector<double> grid = parse_grid(opt.eps_grid);
    const RemetrizedSpace r = remetrize(spec.space, spec.derived);
    const FiniteSpace rspace = r.as_space();

    const AxiomReport axioms = verify_metric_axioms(rspace);
    const TopologyReport topology = verify_same_topology(r);
    bool ok = axioms.passed && topology.passed;

    Json isolation = Json::array();
    for (double eta : grid) {
        const IsolationBoundReport b = verify_isolation_bound(r, eta);
        ok = ok && b.passed;
        Json item;
        item["eta"] = eta;
        item["level"] = b.level;
        item["bound"] = b.bound;
        item["outside_count"] = b.outside_count;
        item["passed"] = b.passed;
        item["witness"] = pair_json(rspace, b.witness);
        isolation.push_back(std::move(item));
    }
    const AtsujiVerdict verdict = atsuji_check(rspace, r.derived, grid, opt.threshold);
    ok = ok && verdict.status != VerdictStatus::fail;

    Json levels = Json::object();
    for (const auto& [index, level] : r.levels) levels.get_ref<Json::object_t&>().emplace_back(rspace.label(index), level);

    Json topo;
    topo["passed"] = topology.passed;
    topo["witness"] = pair_json(rspace, topology.witness);
    topo["reason"] = topology.reason;

    Json result;
    result["derived_set"] = derived_json(rspace, r.derived);
    result["empty_derived_fallback_used"] = r.empty_derived_fallback_used;
    result["levels"] = std::move(levels);
    result["axioms"] = axioms_json(rspace, axioms);
    result["topology"] = std::move(topo);
    result["isolation"] = std::move(isolation);
    result["atsuji"] = verdict_json(rspace, r.derived, verdict);
    result["newdist"] = matrix_object(rspace, r.newdist);

    if (!opt.out_matrix.empty()) {
        std::ofstream file(opt.out_matrix, std::ios::binary);
        if (!file) throw InputError("--out-matrix: cannot write '" + opt.out_matrix + "'");
        file << dump(matrix_spec(rspace, r.derived));
    }
    std::vector<std::string> notes;
    if (r.empty_derived_fallback_used) notes.emplace_back("derived set is empty; used d = max(delta, 1)");
    return {std::move(result), ok ? kExitOk : kExitFail, std::move(notes)};
}

Outcome cmd_witness(const LoadedSpec& spec, const Options& opt) {
    if (!(opt.eps0 > 0.0)) throw InputError("--eps0: must be > 0");
    if (!(opt.delta > 0.0)) throw InputError("--delta: must be > 0");
    const FiniteSpace& space = spec.space;
    SampledFunction f;
    Json fn;
    fn["name"] = opt.fn;
    if (opt.fn == "parity") {
        f = parity_function(space);
    } else if (opt.fn == "identity") {
        f = integer_label_function(space);
    } else if (opt.fn == "const") {
        f = constant_function(space);
    } else if (opt.fn == "separator") {
        const PointSet a = parse_ids(space, opt.a_ids, "--a");
        const PointSet b = parse_ids(space, opt.b_ids, "--b");
        f = separator(space, a, b);
        fn["a"] = ids_json(space, a);
        fn["b"] = ids_json(space, b);
    } else {
        throw InputError("--fn: expected one of parity, identity, const, separator; got '" + opt.fn + "'");
    }
    const auto w = uc_witness_search(space, f, opt.eps0, opt.delta);
    Json result;
    result["function"] = std::move(fn);
    result["eps0"] = opt.eps0;
    result["delta"] = opt.delta;
    result["modulus"] = number(modulus_of_continuity(space, f, opt.eps0));
    result["witness"] = witness_json(space, w);
    return {std::move(result), w ? kExitFail : kExitOk, {}};
}

Outcome cmd_separator(const LoadedSpec& spec, const Options& opt) {
    const FiniteSpace& space = spec.space;
    const PointSet a = parse_ids(space, opt.a_ids, "--a");
    const PointSet b = parse_ids(space, opt.b_ids, "--b");
    const SampledFunction f = separator(space, a, b);
    Json values = Json::object();
    for (PointIndex i = 0; i < space.size(); ++i) values.get_ref<Json::object_t&>().emplace_back(space.label(i), f.values[i]);
    Json result;
    result["a"] = ids_json(space, a);
    result["b"] = ids_json(space, b);
    result["values"] = std::move(values);
    return {std::move(result), kExitOk, {}};
}

Outcome cmd_net(const LoadedSpec& spec, const Options& opt) {
    if (!(opt.eps > 0.0)) throw InputError("--eps: must be > 0");
    const PointSet net = greedy_epsilon_net(spec.space, spec.space.all_points(), opt.eps);
    Json result;
    result["eps"] = opt.eps;
    result["size"] = net.size();
    result["net"] = ids_json(spec.space, net);
    return {std::move(result), kExitOk, {}};
}

Json flags_json(const std::string& command, const Options& opt) {
    Json flags = Json::object();
    if (opt.tol) flags["tol"] = *opt.tol;
    if (command == "atsuji" || command == "remetrize") {
        flags["eps_grid"] = opt.eps_grid.empty() ? Json(default_eps_grid()) : Json(parse_grid(opt.eps_grid));
        flags["threshold"] = opt.threshold;
    }
    if (command == "remetrize" && !opt.out_matrix.empty()) flags["out_matrix"] = opt.out_matrix;
    if (command == "witness") {
        flags["fn"] = opt.fn;
        flags["eps0"] = opt.eps0;
        flags["delta"] = opt.delta;
    }
    if (command == "separator" || (command == "witness" && opt.fn == "separator")) {
        flags["a"] = opt.a_ids;
        flags["b"] = opt.b_ids;
    }
    if (command == "net") flags["eps"] = opt.eps;
    return flags;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Atsuji-space checks and remetrization for finite metric spaces", "atsuji"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("spec", opt.spec_path, "space spec file (JSON)")->required();
        sub->add_option("--tol", opt.tol, "comparison tolerance, overrides the spec's tol");
        sub->add_option("--out", opt.out_path, "write the report here instead of standard output");
        return sub;
    };
    common(app.add_subcommand("check-metric", "verify the metric axioms"));
    auto* atsuji = common(app.add_subcommand("atsuji", "test the limit-point characterization"));
    atsuji->add_option("--eps-grid", opt.eps_grid, "comma-separated eps values (default 2^-k, k=0..10)");
    atsuji->add_option("--threshold", opt.threshold, "isolation threshold");
    auto* remet = common(app.add_subcommand("remetrize", "build the uniformly continuous metric and verify it"));
    remet->add_option("--eps-grid", opt.eps_grid, "comma-separated eta values for the isolation checks");
    remet->add_option("--threshold", opt.threshold, "isolation threshold for the final check");
    remet->add_option("--out-matrix", opt.out_matrix, "write the new metric as a matrix spec file");
    auto* witness = common(app.add_subcommand("witness", "search for a uniform-continuity failure"));
    witness->add_option("--fn", opt.fn, "parity | identity | const | separator")->required();
    witness->add_option("--eps0", opt.eps0, "minimum value gap")->required();
    witness->add_option("--delta", opt.delta, "maximum distance")->required();
    witness->add_option("--a", opt.a_ids, "separator zero set (comma-separated ids)");
    witness->add_option("--b", opt.b_ids, "separator one set (comma-separated ids)");
    auto* sep = common(app.add_subcommand("separator", "evaluate d(x,A) / (d(x,A) + d(x,B))"));
    sep->add_option("--a", opt.a_ids, "zero set (comma-separated ids)")->required();
    sep->add_option("--b", opt.b_ids, "one set (comma-separated ids)")->required();
    auto* net = common(app.add_subcommand("net", "greedy eps-net of the whole space"));
    net->add_option("--eps", opt.eps, "net radius")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    static const std::map<std::string, std::function<Outcome(const LoadedSpec&, const Options&)>> handlers{
        {"check-metric", cmd_check_metric}, {"atsuji", cmd_atsuji},       {"remetrize", cmd_remetrize},
        {"witness", cmd_witness},           {"separator", cmd_separator}, {"net", cmd_net},
    };

    try {
        const LoadedSpec spec = load_spec_file(opt.spec_path, opt.tol);
        Outcome outcome = handlers.at(command)(spec, opt);

        Json report;
        report["schema_version"] = kSchemaVersion;
        report["tool"] = "atsuji";
        report["version"] = kToolVersion;
        report["command"] = command;
        report["inputs"] = {{"spec", spec.echo}, {"flags", flags_json(command, opt)}};
        report["exit_code"] = outcome.code;
        report["result"] = std::move(outcome.result);
        report["notes"] = std::move(outcome.notes);

        const std::string text = dump(report);
        if (opt.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) throw InputError("--out: cannot write '" + opt.out_path + "'");
            file << text;
        }
        return outcome.code;
    } catch (const Error& e) {
        err << "atsuji " << command << ": " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "atsuji " << command << ": " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace atsuji::cli
