#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "atsuji/analysis.hpp"
#include "atsuji/space.hpp"

namespace atsuji {

/// A generated space bundled with the derived set of the infinite space it samples.
struct GeneratedSpace {
    FiniteSpace space;
    DerivedSetView oracle;
};

enum class IntegerMetric { d1, d2 };

std::string_view to_string(IntegerMetric metric);
IntegerMetric parse_integer_metric(std::string_view text);

/// Point ids are fixed: "p_{i}_{j}" for grid points, "n{k}" for integers and 1/k, "zero" for
/// the origin / the limit 0.
std::string grid_point_id(int i, int j);
std::string integer_point_id(int k);
inline constexpr std::string_view kZeroId = "zero";

/// Points p_ij with 1/j in slot i (1 <= i <= i_max, 1 <= j <= j_max), ordered by i then j,
/// preceded by the origin when `include_origin`. Oracle derived set: {origin} or empty.
GeneratedSpace gen_E(int i_max, int j_max, bool include_origin);

/// Integers 1..n_max with |a - b| (d1) or |1/a - 1/b| (d2). Oracle: empty (all points isolated).
GeneratedSpace gen_integers(int n_max, IntegerMetric metric);

/// {0} and 1/n for 1 <= n <= n_max on the real line, in order 0, 1, 1/2, 1/3, ...
/// Oracle: {0}.
GeneratedSpace gen_convergent(int n_max);

/// Named generator with validated parameters; the `builtin` arm of the space-spec file.
struct GeneratorSpec {
    std::string name;
    std::map<std::string, std::int64_t> int_params;
    std::map<std::string, std::string> text_params;
    std::map<std::string, bool> flag_params;
};

/// Dispatches on `name` in {sequence_grid_E, positive_integers, convergent_sequence}.
/// Throws DomainError for unknown names or missing / invalid parameters.
GeneratedSpace generate(const GeneratorSpec& spec, double tol = kDefaultTolerance);

}  // namespace atsuji
