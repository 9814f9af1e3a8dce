#include "atsuji/functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "atsuji/error.hpp"
#include "atsuji/generators.hpp"

namespace atsuji {

namespace {

void require_domain(const FiniteSpace& space, const SampledFunction& f) {
    if (f.values.size() != space.size()) {
        throw PreconditionError("function '" + f.label + "' has " + std::to_string(f.values.size()) +
                                " values for a space of " + std::to_string(space.size()) + " points");
    }
}

std::optional<long long> parse_positive(std::string_view text) {
    if (text.empty() || text.front() == '0') return std::nullopt;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) return std::nullopt;
    return value;
}

}  // namespace

SampledFunction separator(const FiniteSpace& space, std::span<const PointIndex> a, std::span<const PointIndex> b) {
    const PointSet sa = space.normalize(a);
    const PointSet sb = space.normalize(b);
    if (sa.empty() || sb.empty()) throw PreconditionError("separator needs nonempty A and B");
    PointSet common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
    if (!common.empty()) {
        throw PreconditionError("A and B must be disjoint; both contain '" + space.label(common.front()) + "'");
    }

    SampledFunction f{"separator", std::vector<double>(space.size())};
    for (PointIndex x = 0; x < space.size(); ++x) {
        const double da = set_distance(space, x, sa);
        const double db = set_distance(space, x, sb);
        f.values[x] = da / (da + db);
    }
    return f;
}

SampledFunction parity_function(const FiniteSpace& space) {
    SampledFunction f{"parity", std::vector<double>(space.size())};
    for (PointIndex x = 0; x < space.size(); ++x) {
        const std::string& id = space.label(x);
        std::optional<long long> i, j;
        if (id.starts_with("p_")) {
            const std::string_view rest = std::string_view(id).substr(2);
            const auto sep = rest.find('_');
            if (sep != std::string_view::npos) {
                i = parse_positive(rest.substr(0, sep));
                j = parse_positive(rest.substr(sep + 1));
            }
        }
        if (!i || !j) throw DomainError("parity function needs ids of the form p_{i}_{j}; got '" + id + "'");
        f.values[x] = (*i + *j) % 2 == 0 ? 1.0 : 0.0;
    }
    return f;
}

SampledFunction integer_label_function(const FiniteSpace& space) {
    SampledFunction f{"identity", std::vector<double>(space.size())};
    for (PointIndex x = 0; x < space.size(); ++x) {
        const std::string& id = space.label(x);
        if (id == kZeroId) continue;
        std::optional<long long> k;
        if (id.starts_with("n")) k = parse_positive(std::string_view(id).substr(1));
        if (!k) throw DomainError("identity function needs ids of the form n{k} or zero; got '" + id + "'");
        f.values[x] = static_cast<double>(*k);
    }
    return f;
}

SampledFunction constant_function(const FiniteSpace& space, double value) {
    return {"const", std::vector<double>(space.size(), value)};
}

double modulus_of_continuity(const FiniteSpace& space, const SampledFunction& f, double eta) {
    if (!(eta > 0.0)) throw DomainError("eta must be > 0");
    require_domain(space, f);
    double best = kInfinity;
    for (PointIndex x = 0; x < space.size(); ++x) {
        const auto row = space.matrix().row(x);
        for (PointIndex y = x + 1; y < space.size(); ++y) {
            if (std::abs(f.values[x] - f.values[y]) >= eta) best = std::min(best, row[y]);
        }
    }
    return best;
}

std::optional<WitnessPair> uc_witness_search(const FiniteSpace& space, const SampledFunction& f, double eps0,
                                             double delta) {
    if (!(eps0 > 0.0) || !(delta > 0.0)) throw DomainError("eps0 and delta must be > 0");
    require_domain(space, f);
    for (PointIndex x = 0; x < space.size(); ++x) {
        const auto row = space.matrix().row(x);
        for (PointIndex y = x + 1; y < space.size(); ++y) {
            const double gap = std::abs(f.values[x] - f.values[y]);
            if (row[y] < delta && gap >= eps0) return WitnessPair{x, y, row[y], gap};
        }
    }
    return std::nullopt;
}

}  // namespace atsuji
