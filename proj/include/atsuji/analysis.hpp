#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atsuji/space.hpp"

namespace atsuji {

/// The set of limit points, either declared (oracle) or detected at a resolution.
class DerivedSetView {
public:
    enum class Kind { oracle, detected };

    static DerivedSetView oracle(const FiniteSpace& space, std::span<const PointIndex> members);
    static DerivedSetView empty() { return DerivedSetView(Kind::oracle, {}, std::nullopt); }
    static DerivedSetView detected(const FiniteSpace& space, std::span<const PointIndex> members,
                                   double resolution);

    Kind kind() const noexcept { return kind_; }
    const PointSet& members() const noexcept { return members_; }
    std::optional<double> resolution() const noexcept { return resolution_; }
    bool contains(PointIndex i) const;

    friend bool operator==(const DerivedSetView&, const DerivedSetView&) = default;

private:
    DerivedSetView(Kind kind, PointSet members, std::optional<double> resolution)
        : kind_(kind), members_(std::move(members)), resolution_(resolution) {}

    Kind kind_ = Kind::oracle;
    PointSet members_;
    std::optional<double> resolution_;
};

std::string_view to_string(DerivedSetView::Kind kind);

/// Index pair with first < second.
using IndexPair = std::pair<PointIndex, PointIndex>;

struct IsolationReport {
    double eta = kInfinity;
    std::optional<IndexPair> witness;
};

/// Two points at small distance whose function values are far apart.
struct WitnessPair {
    PointIndex x = 0;
    PointIndex y = 0;
    double distance = 0.0;
    double gap = 0.0;
};

enum class VerdictStatus { pass, fail, inconclusive };

std::string_view to_string(VerdictStatus status);

struct ScaleEvidence {
    double eps = 0.0;
    std::size_t net_size = 0;
    std::size_t outside_count = 0;
    IsolationReport isolation;
};

struct AtsujiVerdict {
    VerdictStatus status = VerdictStatus::inconclusive;
    double threshold = 0.0;
    /// One entry per distinct grid value, in grid order.
    std::vector<ScaleEvidence> scales;
    std::optional<WitnessPair> fail_witness;
    std::optional<double> fail_eps;
    std::vector<std::string> notes;
};

inline constexpr double kDefaultThreshold = 1e-4;

/// {2^-k : k = 0..10}
std::vector<double> default_eps_grid();

/// Points having another point strictly closer than `resolution`.
DerivedSetView detect_limit_points(const FiniteSpace& space, double resolution);

/// Minimum distance over unordered pairs of `subset`; the witness is the lexicographically
/// least pair attaining it.
IsolationReport min_pairwise_distance(const FiniteSpace& space, std::span<const PointIndex> subset);

/// Greedy scan of `subset` in canonical order; a point joins unless some net point is < eps away.
PointSet greedy_epsilon_net(const FiniteSpace& space, std::span<const PointIndex> subset, double eps);

/// Finite-evidence test of the characterization: the derived set is totally bounded (net sizes
/// recorded) and, at every grid scale, the points outside its eps-neighborhood are uniformly
/// isolated with eta >= threshold.
///
/// FAIL carries the minimizing pair of the failing scale with the smallest eta. INCONCLUSIVE
/// means no isolation failure, but a derived set of two or more points that is still fully
/// separated at the finest grid scale, so the truncation shows no sign of total boundedness.
AtsujiVerdict atsuji_check(const FiniteSpace& space, const DerivedSetView& derived,
                           std::span<const double> eps_grid, double threshold = kDefaultThreshold);

}  // namespace atsuji
