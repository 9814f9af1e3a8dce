#include "atsuji/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "atsuji/error.hpp"

namespace atsuji {

namespace {

std::string describe(const FiniteSpace& space, const AxiomViolation& v) {
    std::ostringstream os;
    os << to_string(v.kind) << " violation at (";
    for (std::size_t k = 0; k < v.points.size(); ++k) {
        if (k) os << ", ";
        os << space.label(v.points[k]);
    }
    os << "), magnitude " << v.magnitude;
    return os.str();
}

std::vector<char> membership(const FiniteSpace& space, std::span<const PointIndex> subset) {
    std::vector<char> mask(space.size(), 0);
    for (PointIndex i : subset) {
        space.require_index(i);
        mask[i] = 1;
    }
    return mask;
}

}  // namespace

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    DistanceMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw ConstructionError("matrix row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(rows.size()));
        }
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.n_));
    }
    return m;
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, DistanceMatrix dist, double tol)
    : labels_(std::move(labels)), dist_(std::move(dist)), tol_(tol) {
    if (labels_.empty()) throw ConstructionError("a space needs at least one point");
    if (dist_.size() != labels_.size()) {
        throw ConstructionError("matrix is " + std::to_string(dist_.size()) + "x" +
                                std::to_string(dist_.size()) + " but there are " +
                                std::to_string(labels_.size()) + " ids");
    }
    if (!(tol_ >= 0.0) || !std::isfinite(tol_)) throw ConstructionError("tolerance must be finite and >= 0");
    by_label_.reserve(labels_.size());
    for (PointIndex i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw ConstructionError("empty point id at index " + std::to_string(i));
        if (!by_label_.emplace(labels_[i], i).second) {
            throw ConstructionError("duplicate point id '" + labels_[i] + "'");
        }
    }
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (!std::isfinite(dist_(i, j))) {
                throw ConstructionError("non-finite distance between '" + labels_[i] + "' and '" +
                                        labels_[j] + "'");
            }
        }
    }
}

FiniteSpace FiniteSpace::from_matrix_unchecked(std::vector<std::string> labels, DistanceMatrix dist,
                                               double tol) {
    return FiniteSpace(std::move(labels), std::move(dist), tol);
}

FiniteSpace FiniteSpace::from_matrix(std::vector<std::string> labels, DistanceMatrix dist, double tol) {
    FiniteSpace space(std::move(labels), std::move(dist), tol);
    const AxiomReport report = verify_metric_axioms(space);
    if (!report.passed) throw ConstructionError(describe(space, report.violations.front()));
    return space;
}

const std::string& FiniteSpace::label(PointIndex i) const {
    require_index(i);
    return labels_[i];
}

PointId FiniteSpace::point(PointIndex i) const { return {label(i), i}; }

std::vector<PointId> FiniteSpace::points() const {
    std::vector<PointId> out;
    out.reserve(size());
    for (PointIndex i = 0; i < size(); ++i) out.push_back({labels_[i], i});
    return out;
}

PointIndex FiniteSpace::index_of(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) throw LookupError("unknown point id '" + std::string(label) + "'");
    return it->second;
}

bool FiniteSpace::contains(std::string_view label) const { return by_label_.contains(std::string(label)); }

void FiniteSpace::require_index(PointIndex i) const {
    if (i >= size()) {
        throw LookupError("point index " + std::to_string(i) + " out of range for a space of " +
                          std::to_string(size()) + " points");
    }
}

PointSet FiniteSpace::normalize(std::span<const PointIndex> indices) const {
    PointSet out(indices.begin(), indices.end());
    for (PointIndex i : out) require_index(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PointSet FiniteSpace::resolve(std::span<const std::string> labels) const {
    PointSet out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(index_of(l));
    return normalize(out);
}

PointSet FiniteSpace::all_points() const {
    PointSet out(size());
    for (PointIndex i = 0; i < size(); ++i) out[i] = i;
    return out;
}

double FiniteSpace::diameter() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, dist_(i, j));
    }
    return best;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::nonneg: return "nonneg";
        case ViolationKind::symmetry: return "symmetry";
        case ViolationKind::identity: return "identity";
        case ViolationKind::triangle: return "triangle";
    }
    return "unknown";
}

FiniteSpace build_space(std::span<const PointSpec> specs, double tol) {
    if (specs.empty()) throw ConstructionError("a space needs at least one point");

    // Zero entries are dropped so that {1 -> 0} and {} denote the same point.
    std::vector<std::vector<std::pair<int, double>>> sparse(specs.size());
    std::vector<std::string> labels;
    labels.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (const auto& [slot, value] : specs[i].coords) {
            if (slot < 1) {
                throw ConstructionError("point '" + specs[i].id + "' uses slot " + std::to_string(slot) +
                                        "; slots start at 1");
            }
            if (!std::isfinite(value)) {
                throw ConstructionError("point '" + specs[i].id + "' has a non-finite coordinate");
            }
            if (value != 0.0) sparse[i].emplace_back(slot, value);
        }
        labels.push_back(specs[i].id);
    }

    const std::size_t n = specs.size();
    DistanceMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = sparse[i];
            const auto& b = sparse[j];
            double sum = 0.0;
            std::size_t p = 0, q = 0;
            while (p < a.size() || q < b.size()) {
                if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
                    sum += a[p].second * a[p].second;
                    ++p;
                } else if (p == a.size() || b[q].first < a[p].first) {
                    sum += b[q].second * b[q].second;
                    ++q;
                } else {
                    const double diff = a[p].second - b[q].second;
                    sum += diff * diff;
                    ++p;
                    ++q;
                }
            }
            if (a == b) {
                throw ConstructionError("points '" + specs[i].id + "' and '" + specs[j].id +
                                        "' have identical coordinates");
            }
            dist(i, j) = dist(j, i) = std::sqrt(sum);
        }
    }
    // Label checks (duplicates, empties) happen in the constructor.
    return FiniteSpace::from_matrix_unchecked(std::move(labels), std::move(dist), tol);
}

AxiomReport verify_metric_axioms(const FiniteSpace& space) {
    AxiomReport report;
    const std::size_t n = space.size();
    const double tol = space.tol();
    const DistanceMatrix& d = space.matrix();
    auto add = [&](ViolationKind kind, std::vector<PointIndex> pts, double magnitude) {
        report.violations.push_back({kind, std::move(pts), magnitude});
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (d(i, i) < 0.0) {
            add(ViolationKind::nonneg, {i, i}, -d(i, i));
        } else if (d(i, i) != 0.0) {
            add(ViolationKind::identity, {i}, d(i, i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
                if (d(a, b) < 0.0) {
                    add(ViolationKind::nonneg, {a, b}, -d(a, b));
                } else if (d(a, b) <= tol) {
                    // Distinct points must be resolvable at the space's tolerance.
                    add(ViolationKind::identity, {a, b}, tol - d(a, b));
                }
            }
            const double asym = std::abs(d(i, j) - d(j, i));
            if (asym > tol) add(ViolationKind::symmetry, {i, j}, asym);
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        const auto row_x = d.row(x);
        for (std::size_t z = x + 1; z < n; ++z) {
            const double direct = std::max(d(x, z), d(z, x));
            const auto row_z = d.row(z);
            for (std::size_t via = 0; via < n; ++via) {
                if (via == x || via == z) continue;
                const double around = std::min(row_x[via] + d(via, z), row_z[via] + d(via, x));
                const double excess = direct - around;
                if (excess > tol) add(ViolationKind::triangle, {x, via, z}, excess);
            }
        }
    }
    report.passed = report.violations.empty();
    return report;
}

bool satisfies_triangle(const Triple& t) noexcept {
    return t[0] <= t[1] + t[2] && t[1] <= t[0] + t[2] && t[2] <= t[0] + t[1];
}

TripleMax triple_max_triangle(const Triple& first, const Triple& second) {
    for (const Triple* t : {&first, &second}) {
        for (double v : *t) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw DomainError("triple components must be finite and nonnegative");
            }
        }
    }
    TripleMax out;
    for (std::size_t k = 0; k < 3; ++k) out.values[k] = std::max(first[k], second[k]);
    out.satisfies = satisfies_triangle(out.values);
    return out;
}

double set_distance(const FiniteSpace& space, PointIndex x, std::span<const PointIndex> targets) {
    space.require_index(x);
    double best = kInfinity;
    for (PointIndex a : targets) {
        space.require_index(a);
        best = std::min(best, space.dist(x, a));
    }
    return best;
}

PointSet neighborhood(const FiniteSpace& space, std::span<const PointIndex> centers, double eps) {
    if (!(eps > 0.0)) throw DomainError("neighborhood radius must be > 0");
    const PointSet c = space.normalize(centers);
    PointSet out;
    for (PointIndex y = 0; y < space.size(); ++y) {
        const auto row = space.matrix().row(y);
        for (PointIndex a : c) {
            if (row[a] < eps) {
                out.push_back(y);
                break;
            }
        }
    }
    return out;
}

PointSet complement(const FiniteSpace& space, std::span<const PointIndex> subset) {
    const auto mask = membership(space, subset);
    PointSet out;
    for (PointIndex i = 0; i < space.size(); ++i) {
        if (!mask[i]) out.push_back(i);
    }
    return out;
}

double uniform_interior_radius(const FiniteSpace& space, std::span<const PointIndex> compact,
                               std::span<const PointIndex> open_set) {
    if (compact.empty()) throw PreconditionError("K must be nonempty");
    const auto in_open = membership(space, open_set);
    for (PointIndex z : compact) {
        space.require_index(z);
        if (!in_open[z]) {
            throw PreconditionError("K is not contained in U: '" + space.label(z) + "' lies outside U");
        }
    }
    const PointSet outside = complement(space, open_set);
    double r = kInfinity;
    for (PointIndex z : compact) r = std::min(r, set_distance(space, z, outside));
    return r;
}

}  // namespace atsuji
