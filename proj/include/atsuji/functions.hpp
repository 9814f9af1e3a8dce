#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atsuji/analysis.hpp"
#include "atsuji/space.hpp"

namespace atsuji {

/// A real-valued function sampled on every point of a space (values[i] belongs to point i).
struct SampledFunction {
    std::string label;
    std::vector<double> values;
};

/// f(x) = d(x,A) / (d(x,A) + d(x,B)): 0 on A, 1 on B, values in [0,1].
/// Throws PreconditionError when A or B is empty or they intersect.
SampledFunction separator(const FiniteSpace& space, std::span<const PointIndex> a, std::span<const PointIndex> b);

/// 1 on p_i_j with i + j even, 0 otherwise. Throws DomainError on any id not of that form.
SampledFunction parity_function(const FiniteSpace& space);

/// k on "n{k}", 0 on "zero". Throws DomainError on any other id.
SampledFunction integer_label_function(const FiniteSpace& space);

SampledFunction constant_function(const FiniteSpace& space, double value = 0.0);

/// Smallest distance between two points whose values differ by at least `eta`: the largest
/// delta that works for this eta. kInfinity if no pair differs by eta.
double modulus_of_continuity(const FiniteSpace& space, const SampledFunction& f, double eta);

/// Lexicographically least pair with distance < delta and gap >= eps0.
std::optional<WitnessPair> uc_witness_search(const FiniteSpace& space, const SampledFunction& f, double eps0,
                                             double delta);

}  // namespace atsuji
