#include "atsuji/remetrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atsuji/error.hpp"

namespace atsuji {

namespace {

constexpr double kBoundSlack = 1e-12;

// Smallest m with 2^m still representable (subnormal).
constexpr int kMinLevel = std::numeric_limits<double>::min_exponent - std::numeric_limits<double>::digits;

}  // namespace

FiniteSpace RemetrizedSpace::as_space() const {
    return FiniteSpace::from_matrix_unchecked(base.labels(), newdist, base.tol());
}

int dyadic_level(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("dyadic level needs a finite t > 0");
    int exponent = 0;
    const double mantissa = std::frexp(t, &exponent);  // t = mantissa * 2^exponent, mantissa in [0.5, 1)
    const int level = mantissa == 0.5 ? exponent - 2 : exponent - 1;
    if (level < kMinLevel) throw DomainError("2^m is not representable for this t");
    return level;
}

RemetrizedSpace remetrize(const FiniteSpace& base, const DerivedSetView& derived) {
    for (PointIndex m : derived.members()) base.require_index(m);
    const std::size_t n = base.size();
    RemetrizedSpace out{base, derived, DistanceMatrix(n), {}, derived.members().empty()};

    if (out.empty_derived_fallback_used) {
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y < n; ++y) out.newdist(x, y) = out.newdist(y, x) = std::max(base.dist(x, y), 1.0);
        }
        return out;
    }

    std::vector<int> level(n, 0);
    for (PointIndex x = 0; x < n; ++x) {
        if (derived.contains(x)) continue;
        const double to_derived = set_distance(base, x, derived.members());
        if (!(to_derived > 0.0)) {
            throw PreconditionError("point '" + base.label(x) +
                                    "' is at distance 0 from the derived set without belonging to it");
        }
        level[x] = dyadic_level(to_derived);
        out.levels.emplace(x, level[x]);
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            double d = base.dist(x, y);
            if (!derived.contains(x) && !derived.contains(y)) d = std::max(d, std::ldexp(1.0, std::max(level[x], level[y])));
            out.newdist(x, y) = out.newdist(y, x) = d;
        }
    }
    return out;
}

TopologyReport verify_same_topology(const RemetrizedSpace& r) {
    const std::size_t n = r.base.size();
    const double tol = r.base.tol();
    TopologyReport report;
    if (r.newdist.size() != n) {
        report.passed = false;
        report.reason = "new matrix size does not match the base space";
        return report;
    }
    auto fail = [&](PointIndex x, PointIndex y, std::string reason) {
        report.passed = false;
        report.witness = IndexPair{x, y};
        report.reason = std::move(reason);
    };
    for (PointIndex x = 0; x < n && report.passed; ++x) {
        for (PointIndex y = x + 1; y < n; ++y) {
            const bool touches = r.derived.contains(x) || r.derived.contains(y);
            const bool both_derived = r.derived.contains(x) && r.derived.contains(y);
            for (auto [a, b] : {IndexPair{x, y}, IndexPair{y, x}}) {
                const double delta = r.base.dist(a, b);
                const double d = r.newdist(a, b);
                if (d < delta - tol) {
                    fail(x, y, "new distance is below the base distance");
                } else if (touches && std::abs(d - delta) > tol) {
                    fail(x, y, "new distance differs from the base distance on a pair touching the derived set");
                } else if (!both_derived && (!(d > 0.0) || !(delta > 0.0))) {
                    fail(x, y, "a point outside the derived set is not isolated");
                }
                if (!report.passed) break;
            }
            if (!report.passed) break;
        }
    }
    return report;
}

IsolationBoundReport verify_isolation_bound(const RemetrizedSpace& r, double eta) {
    if (!(eta > 0.0)) throw DomainError("eta must be > 0");
    IsolationBoundReport report;
    report.level = dyadic_level(eta);
    report.bound = std::ldexp(1.0, report.level);

    const FiniteSpace space = r.as_space();
    const PointSet outside = complement(space, neighborhood(space, r.derived.members(), eta));
    report.outside_count = outside.size();
    for (std::size_t a = 0; a < outside.size() && report.passed; ++a) {
        for (std::size_t b = a + 1; b < outside.size(); ++b) {
            if (r.newdist(outside[a], outside[b]) < report.bound - kBoundSlack) {
                report.passed = false;
                report.witness = IndexPair{outside[a], outside[b]};
                break;
            }
        }
    }
    return report;
}

}  // namespace atsuji
