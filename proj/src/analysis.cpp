#include "atsuji/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "atsuji/error.hpp"

namespace atsuji {

DerivedSetView DerivedSetView::oracle(const FiniteSpace& space, std::span<const PointIndex> members) {
    return DerivedSetView(Kind::oracle, space.normalize(members), std::nullopt);
}

DerivedSetView DerivedSetView::detected(const FiniteSpace& space, std::span<const PointIndex> members,
                                        double resolution) {
    if (!(resolution > 0.0)) throw DomainError("detection resolution must be > 0");
    return DerivedSetView(Kind::detected, space.normalize(members), resolution);
}

bool DerivedSetView::contains(PointIndex i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

std::string_view to_string(DerivedSetView::Kind kind) {
    return kind == DerivedSetView::Kind::oracle ? "oracle" : "detected";
}

std::string_view to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::pass: return "PASS";
        case VerdictStatus::fail: return "FAIL";
        case VerdictStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

std::vector<double> default_eps_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(std::ldexp(1.0, -k));
    return grid;
}

DerivedSetView detect_limit_points(const FiniteSpace& space, double resolution) {
    if (!(resolution > 0.0)) throw DomainError("detection resolution must be > 0");
    PointSet members;
    for (PointIndex x = 0; x < space.size(); ++x) {
        const auto row = space.matrix().row(x);
        for (PointIndex y = 0; y < space.size(); ++y) {
            if (y != x && row[y] < resolution) {
                members.push_back(x);
                break;
            }
        }
    }
    return DerivedSetView::detected(space, members, resolution);
}

IsolationReport min_pairwise_distance(const FiniteSpace& space, std::span<const PointIndex> subset) {
    const PointSet s = space.normalize(subset);
    IsolationReport report;
    for (std::size_t a = 0; a < s.size(); ++a) {
        const auto row = space.matrix().row(s[a]);
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            // Strict '<' keeps the first (lexicographically least) pair among ties.
            if (!report.witness || row[s[b]] < report.eta) {
                report.eta = row[s[b]];
                report.witness = IndexPair{s[a], s[b]};
            }
        }
    }
    return report;
}

PointSet greedy_epsilon_net(const FiniteSpace& space, std::span<const PointIndex> subset, double eps) {
    if (!(eps > 0.0)) throw DomainError("net radius must be > 0");
    const PointSet s = space.normalize(subset);
    PointSet net;
    for (PointIndex x : s) {
        const auto row = space.matrix().row(x);
        const bool covered = std::any_of(net.begin(), net.end(), [&](PointIndex c) { return row[c] < eps; });
        if (!covered) net.push_back(x);
    }
    return net;
}

AtsujiVerdict atsuji_check(const FiniteSpace& space, const DerivedSetView& derived,
                           std::span<const double> eps_grid, double threshold) {
    if (eps_grid.empty()) throw DomainError("eps grid must not be empty");
    for (double eps : eps_grid) {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps grid values must be finite and > 0");
    }
    if (!(threshold > 0.0) || !std::isfinite(threshold)) throw DomainError("threshold must be finite and > 0");
    for (PointIndex m : derived.members()) space.require_index(m);

    AtsujiVerdict verdict;
    verdict.threshold = threshold;
    std::vector<double> seen;
    for (double eps : eps_grid) {
        if (std::find(seen.begin(), seen.end(), eps) != seen.end()) continue;
        seen.push_back(eps);

        ScaleEvidence scale;
        scale.eps = eps;
        const PointSet outside = complement(space, neighborhood(space, derived.members(), eps));
        scale.outside_count = outside.size();
        scale.isolation = min_pairwise_distance(space, outside);
        scale.net_size = greedy_epsilon_net(space, derived.members(), eps).size();

        if (scale.isolation.eta < threshold &&
            (!verdict.fail_witness || scale.isolation.eta < verdict.fail_witness->distance)) {
            const auto [x, y] = *scale.isolation.witness;
            // The separator with A = {x}, B = {y} is continuous with gap 1 across the pair.
            verdict.fail_witness = WitnessPair{x, y, scale.isolation.eta, 1.0};
            verdict.fail_eps = eps;
        }
        verdict.scales.push_back(std::move(scale));
    }

    const double finest = *std::min_element(seen.begin(), seen.end());
    const auto finest_scale = std::find_if(verdict.scales.begin(), verdict.scales.end(),
                                           [&](const ScaleEvidence& s) { return s.eps == finest; });
    const std::size_t derived_size = derived.members().size();

    if (verdict.fail_witness) {
        verdict.status = VerdictStatus::fail;
        std::ostringstream os;
        os << "points '" << space.label(verdict.fail_witness->x) << "' and '"
           << space.label(verdict.fail_witness->y) << "' lie outside B(D, " << *verdict.fail_eps
           << ") at distance " << verdict.fail_witness->distance << " < threshold " << threshold;
        verdict.notes.push_back(os.str());
    } else if (derived_size >= 2 && finest_scale->net_size == derived_size) {
        verdict.status = VerdictStatus::inconclusive;
        verdict.notes.push_back(
            "derived set is fully separated at the finest grid scale; no total-boundedness evidence");
    } else {
        verdict.status = VerdictStatus::pass;
    }
    if (derived.kind() == DerivedSetView::Kind::detected) {
        verdict.notes.push_back("derived set detected at a finite resolution; it over-approximates the limit points");
    }
    verdict.notes.push_back(
        "finite truncation: the verdict covers this point set, grid and threshold only, not the infinite space");
    return verdict;
}

}  // namespace atsuji
