#include "atsuji/generators.hpp"

#include <cmath>
#include <limits>

#include "atsuji/error.hpp"

namespace atsuji {

std::string_view to_string(IntegerMetric metric) { return metric == IntegerMetric::d1 ? "d1" : "d2"; }

IntegerMetric parse_integer_metric(std::string_view text) {
    if (text == "d1") return IntegerMetric::d1;
    if (text == "d2") return IntegerMetric::d2;
    throw DomainError("unknown integer metric '" + std::string(text) + "' (expected d1 or d2)");
}

std::string grid_point_id(int i, int j) { return "p_" + std::to_string(i) + "_" + std::to_string(j); }

std::string integer_point_id(int k) { return "n" + std::to_string(k); }

GeneratedSpace gen_E(int i_max, int j_max, bool include_origin) {
    if (i_max < 1 || j_max < 1) throw DomainError("gen_E needs i_max >= 1 and j_max >= 1");
    std::vector<PointSpec> specs;
    specs.reserve(static_cast<std::size_t>(i_max) * static_cast<std::size_t>(j_max) + 1);
    if (include_origin) specs.push_back({std::string(kZeroId), {}});
    for (int i = 1; i <= i_max; ++i) {
        for (int j = 1; j <= j_max; ++j) specs.push_back({grid_point_id(i, j), {{i, 1.0 / j}}});
    }
    FiniteSpace space = build_space(specs);
    DerivedSetView oracle = include_origin ? DerivedSetView::oracle(space, std::vector<PointIndex>{0})
                                           : DerivedSetView::empty();
    return {std::move(space), std::move(oracle)};
}

GeneratedSpace gen_integers(int n_max, IntegerMetric metric) {
    if (n_max < 2) throw DomainError("gen_integers needs n_max >= 2");
    const auto n = static_cast<std::size_t>(n_max);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int k = 1; k <= n_max; ++k) labels.push_back(integer_point_id(k));
    DistanceMatrix dist(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double x = static_cast<double>(a + 1);
            const double y = static_cast<double>(b + 1);
            dist(a, b) = dist(b, a) = metric == IntegerMetric::d1 ? std::abs(x - y) : std::abs(1.0 / x - 1.0 / y);
        }
    }
    FiniteSpace space = FiniteSpace::from_matrix_unchecked(std::move(labels), std::move(dist));
    return {std::move(space), DerivedSetView::empty()};
}

GeneratedSpace gen_convergent(int n_max) {
    if (n_max < 2) throw DomainError("gen_convergent needs n_max >= 2");
    std::vector<double> values{0.0};
    std::vector<std::string> labels{std::string(kZeroId)};
    for (int k = 1; k <= n_max; ++k) {
        values.push_back(1.0 / k);
        labels.push_back(integer_point_id(k));
    }
    DistanceMatrix dist(values.size());
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) dist(a, b) = dist(b, a) = std::abs(values[a] - values[b]);
    }
    FiniteSpace space = FiniteSpace::from_matrix_unchecked(std::move(labels), std::move(dist));
    DerivedSetView oracle = DerivedSetView::oracle(space, std::vector<PointIndex>{0});
    return {std::move(space), std::move(oracle)};
}

namespace {

int require_int(const GeneratorSpec& spec, const std::string& key) {
    auto it = spec.int_params.find(key);
    if (it == spec.int_params.end()) {
        throw DomainError("generator '" + spec.name + "' needs integer parameter '" + key + "'");
    }
    if (it->second < std::numeric_limits<int>::min() || it->second > std::numeric_limits<int>::max()) {
        throw DomainError("parameter '" + key + "' is out of range");
    }
    return static_cast<int>(it->second);
}

FiniteSpace with_tol(const FiniteSpace& space, double tol) {
    return FiniteSpace::from_matrix_unchecked(space.labels(), space.matrix(), tol);
}

}  // namespace

GeneratedSpace generate(const GeneratorSpec& spec, double tol) {
    GeneratedSpace out = [&] {
        if (spec.name == "sequence_grid_E") {
            auto flag = spec.flag_params.find("include_origin");
            return gen_E(require_int(spec, "i_max"), require_int(spec, "j_max"),
                         flag == spec.flag_params.end() ? true : flag->second);
        }
        if (spec.name == "positive_integers") {
            auto metric = spec.text_params.find("metric");
            if (metric == spec.text_params.end()) {
                throw DomainError("generator 'positive_integers' needs text parameter 'metric'");
            }
            return gen_integers(require_int(spec, "n_max"), parse_integer_metric(metric->second));
        }
        if (spec.name == "convergent_sequence") return gen_convergent(require_int(spec, "n_max"));
        throw DomainError("unknown generator '" + spec.name + "'");
    }();
    if (tol != out.space.tol()) out.space = with_tol(out.space, tol);
    return out;
}

}  // namespace atsuji
