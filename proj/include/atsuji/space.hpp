#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atsuji {

using PointIndex = std::size_t;

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<PointIndex>;

/// Distance to the empty set, radius of a vacuous ball, eta of a set with at most one point.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr double kDefaultTolerance = 1e-12;

struct PointId {
    std::string label;
    PointIndex index = 0;

    friend bool operator==(const PointId&, const PointId&) = default;
};

/// A point of l2 with finitely many nonzero coordinates. Slots start at 1.
struct PointSpec {
    std::string id;
    std::map<int, double> coords;
};

/// Dense row-major n x n matrix of doubles.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// An immutable finite point set with its distance matrix.
///
/// Spaces built through `build_space` or `from_matrix` satisfy the metric axioms
/// (triangle inequality up to `tol`). `from_matrix_unchecked` only validates shape and
/// labels, so it can carry tampered matrices into `verify_metric_axioms`.
class FiniteSpace {
public:
    static FiniteSpace from_matrix(std::vector<std::string> labels, DistanceMatrix dist,
                                   double tol = kDefaultTolerance);
    static FiniteSpace from_matrix_unchecked(std::vector<std::string> labels, DistanceMatrix dist,
                                             double tol = kDefaultTolerance);

    std::size_t size() const noexcept { return labels_.size(); }
    double tol() const noexcept { return tol_; }

    double dist(PointIndex i, PointIndex j) const noexcept { return dist_(i, j); }
    const DistanceMatrix& matrix() const noexcept { return dist_; }

    const std::string& label(PointIndex i) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    PointId point(PointIndex i) const;
    std::vector<PointId> points() const;

    /// Throws LookupError for an unknown label.
    PointIndex index_of(std::string_view label) const;
    bool contains(std::string_view label) const;

    /// Throws LookupError if `i` is out of range.
    void require_index(PointIndex i) const;

    /// Validates every index and returns the set sorted and deduplicated.
    PointSet normalize(std::span<const PointIndex> indices) const;
    PointSet resolve(std::span<const std::string> labels) const;
    PointSet all_points() const;

    /// Largest pairwise distance (0 for fewer than two points).
    double diameter() const noexcept;

private:
    FiniteSpace(std::vector<std::string> labels, DistanceMatrix dist, double tol);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, PointIndex> by_label_;
    DistanceMatrix dist_;
    double tol_ = kDefaultTolerance;
};

enum class ViolationKind { nonneg, symmetry, identity, triangle };

std::string_view to_string(ViolationKind kind);

struct AxiomViolation {
    ViolationKind kind = ViolationKind::triangle;
    /// One index (diagonal identity), two (pairs), or three (x, via, z for triangle).
    std::vector<PointIndex> points;
    double magnitude = 0.0;
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomViolation> violations;
};

/// Euclidean l2 distances over the union of slots. Throws ConstructionError on duplicate
/// ids, an empty list, slots below 1, non-finite coordinates or coincident points.
FiniteSpace build_space(std::span<const PointSpec> specs, double tol = kDefaultTolerance);

/// Exhaustive scan of every pair and triple. Triangle violations are reported once per
/// (x, via, z) with x < z, carrying the worse of the two orientations.
AxiomReport verify_metric_axioms(const FiniteSpace& space);

using Triple = std::array<double, 3>;

struct TripleMax {
    Triple values;
    bool satisfies = false;
};

bool satisfies_triangle(const Triple& t) noexcept;

/// Componentwise max of two triples and whether it satisfies the triangle inequality.
/// Throws DomainError on a negative or non-finite component.
TripleMax triple_max_triangle(const Triple& first, const Triple& second);

/// min over a in `targets` of dist(x, a); kInfinity for an empty set.
double set_distance(const FiniteSpace& space, PointIndex x, std::span<const PointIndex> targets);

/// Union of open balls { y : dist(y, a) < eps for some a in `centers` }.
PointSet neighborhood(const FiniteSpace& space, std::span<const PointIndex> centers, double eps);

/// Largest r such that the open ball B(z, r) stays inside `open_set` for every z in `compact`,
/// i.e. min over z of set_distance(z, complement). kInfinity when `open_set` is the whole space.
double uniform_interior_radius(const FiniteSpace& space, std::span<const PointIndex> compact,
                               std::span<const PointIndex> open_set);

/// Complement of `subset` in the space, in canonical order.
PointSet complement(const FiniteSpace& space, std::span<const PointIndex> subset);

}  // namespace atsuji
