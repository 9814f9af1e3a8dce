#pragma once

#include <map>
#include <optional>
#include <string>

#include "atsuji/analysis.hpp"
#include "atsuji/space.hpp"

namespace atsuji {

/// A base metric delta together with the rebuilt metric d.
///
/// For x != y off the derived set D, d(x,y) = max(delta(x,y), 2^m) where m is the larger of the
/// two endpoint levels; pairs touching D keep delta. With D empty every off-diagonal entry is
/// max(delta, 1) and `empty_derived_fallback_used` is set.
struct RemetrizedSpace {
    FiniteSpace base;
    DerivedSetView derived;
    DistanceMatrix newdist;
    /// Dyadic level of delta(x, D) for every x outside D. Empty under the fallback.
    std::map<PointIndex, int> levels;
    bool empty_derived_fallback_used = false;

    /// The new metric as a space with the base labels and tolerance.
    FiniteSpace as_space() const;
};

/// The unique m with 2^m < t <= 2^(m+1), read off the binary exponent so exact powers of two
/// land at the top of their interval. Throws DomainError for t <= 0, non-finite t, or when
/// 2^m is not representable.
int dyadic_level(double t);

RemetrizedSpace remetrize(const FiniteSpace& base, const DerivedSetView& derived);

struct TopologyReport {
    bool passed = true;
    std::optional<IndexPair> witness;
    std::string reason;
};

/// Checks d >= delta everywhere, d == delta on pairs touching D, and that every point off D
/// keeps positive distance to all others under both metrics.
TopologyReport verify_same_topology(const RemetrizedSpace& r);

struct IsolationBoundReport {
    bool passed = true;
    int level = 0;
    double bound = 0.0;
    std::size_t outside_count = 0;
    std::optional<IndexPair> witness;
};

/// With n = dyadic_level(eta), every pair outside the d-neighborhood B_d(D, eta) must satisfy
/// d >= 2^n (up to 1e-12).
IsolationBoundReport verify_isolation_bound(const RemetrizedSpace& r, double eta);

}  // namespace atsuji
