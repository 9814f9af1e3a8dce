#include <doctest.h>

#include <cmath>
#include <random>

#include "atsuji/error.hpp"
#include "atsuji/generators.hpp"
#include "atsuji/space.hpp"
#include "oracles.hpp"

using namespace atsuji;

namespace {

FiniteSpace matrix_space(const std::vector<std::vector<double>>& rows) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    return FiniteSpace::from_matrix_unchecked(labels, DistanceMatrix::from_rows(rows));
}

FiniteSpace random_space(std::mt19937_64& rng, std::size_t n, int dims) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<PointSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
        PointSpec p{"q" + std::to_string(i), {}};
        for (int k = 1; k <= dims; ++k) p.coords[k] = u(rng);
        specs.push_back(p);
    }
    return build_space(specs);
}

PointSet random_subset(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution keep(p);
    PointSet out;
    for (PointIndex i = 0; i < n; ++i) {
        if (keep(rng)) out.push_back(i);
    }
    return out;
}

bool subset_of(const PointSet& a, const PointSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("build_space computes l2 distances over the union of slots") {
    const std::vector<PointSpec> two{{"p11", {{1, 1.0}}}, {"p21", {{2, 1.0}}}};
    CHECK(build_space(two).dist(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const std::vector<PointSpec> line{{"p11", {{1, 1.0}}}, {"p12", {{1, 0.5}}}};
    CHECK(build_space(line).dist(0, 1) == 0.5);

    const std::vector<PointSpec> single{{"a", {}}};
    const FiniteSpace s = build_space(single);
    REQUIRE(s.size() == 1);
    CHECK(s.dist(0, 0) == 0.0);
}

TEST_CASE("build_space rejects malformed input") {
    const std::vector<PointSpec> dup{{"a", {{1, 1.0}}}, {"a", {{1, 2.0}}}};
    CHECK_THROWS_AS(build_space(dup), ConstructionError);

    // Explicit zeros are the same point as an empty spec.
    const std::vector<PointSpec> same{{"a", {{1, 0.0}, {3, 2.0}}}, {"b", {{3, 2.0}}}};
    CHECK_THROWS_AS(build_space(same), ConstructionError);

    const std::vector<PointSpec> bad_slot{{"a", {{0, 1.0}}}};
    CHECK_THROWS_AS(build_space(bad_slot), ConstructionError);

    CHECK_THROWS_AS(build_space(std::vector<PointSpec>{}), ConstructionError);
}

TEST_CASE("verify_metric_axioms") {
    CHECK(verify_metric_axioms(matrix_space({{0, 1}, {1, 0}})).passed);

    SUBCASE("triangle violation is reported once with its excess") {
        const AxiomReport r = verify_metric_axioms(matrix_space({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
        REQUIRE(r.violations.size() == 1);
        CHECK_FALSE(r.passed);
        CHECK(r.violations[0].kind == ViolationKind::triangle);
        CHECK(r.violations[0].points == std::vector<PointIndex>{0, 1, 2});
        CHECK(r.violations[0].magnitude == doctest::Approx(1.0));
    }
    SUBCASE("symmetry, identity and sign") {
        const AxiomReport r = verify_metric_axioms(matrix_space({{0.5, 1, 1}, {1.5, 0, -1}, {1, -1, 0}}));
        auto count = [&](ViolationKind k) {
            return std::count_if(r.violations.begin(), r.violations.end(), [&](const auto& v) { return v.kind == k; });
        };
        CHECK(count(ViolationKind::identity) == 1);
        CHECK(count(ViolationKind::symmetry) == 1);
        CHECK(count(ViolationKind::nonneg) == 2);
    }
    SUBCASE("coincident distinct points") {
        const AxiomReport r = verify_metric_axioms(matrix_space({{0, 0}, {0, 0}}));
        CHECK_FALSE(r.passed);
        CHECK(r.violations.front().kind == ViolationKind::identity);
    }
    SUBCASE("from_matrix refuses a non-metric and names the triple") {
        try {
            FiniteSpace::from_matrix({"a", "b", "c"}, DistanceMatrix::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
            FAIL("expected ConstructionError");
        } catch (const ConstructionError& e) {
            CHECK(std::string(e.what()).find("(a, b, c)") != std::string::npos);
        }
    }
}

TEST_CASE("verify_metric_axioms agrees with an ordered-triple brute force on perturbed matrices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        FiniteSpace base = random_space(rng, 9, 2);
        DistanceMatrix m = base.matrix();
        const auto i = static_cast<std::size_t>(u(rng) * 9), j = (i + 1 + static_cast<std::size_t>(u(rng) * 8)) % 9;
        m(i, j) = m(j, i) = m(i, j) * (0.2 + 3.0 * u(rng));
        const FiniteSpace s = FiniteSpace::from_matrix_unchecked(base.labels(), m);

        bool brute_ok = true;
        for (std::size_t a = 0; a < 9; ++a)
            for (std::size_t b = 0; b < 9; ++b)
                for (std::size_t c = 0; c < 9; ++c)
                    if (m(a, c) > m(a, b) + m(b, c) + s.tol()) brute_ok = false;
        CHECK(verify_metric_axioms(s).passed == brute_ok);
    }
}

TEST_CASE("triple_max_triangle") {
    auto r = triple_max_triangle({1, 1, 1}, {2, 2, 2});
    CHECK(r.values == Triple{2, 2, 2});
    CHECK(r.satisfies);

    r = triple_max_triangle({3, 2, 2}, {1, 4, 3});
    CHECK(r.values == Triple{3, 4, 3});
    CHECK(r.satisfies);

    r = triple_max_triangle({5, 3, 2}, {2, 2, 4});
    CHECK(r.values == Triple{5, 3, 4});
    CHECK(r.satisfies);

    CHECK_FALSE(triple_max_triangle({3, 1, 1}, {0, 0, 0}).satisfies);
    CHECK_THROWS_AS(triple_max_triangle({-1, 1, 1}, {1, 1, 1}), DomainError);
}

TEST_CASE("max of two triangle triples is a triangle triple (sampled)") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 2000; ++k) {
        const auto t1 = oracle::random_triangle(rng);
        const auto t2 = oracle::random_triangle(rng);
        REQUIRE(triple_max_triangle(t1, t2).satisfies);
    }
}

TEST_CASE("set_distance") {
    const auto e = gen_E(3, 3, true);
    CHECK(set_distance(e.space, 0, std::vector<PointIndex>{0}) == 0.0);
    for (int j = 1; j <= 3; ++j) {
        const PointIndex p = e.space.index_of(grid_point_id(1, j));
        CHECK(set_distance(e.space, p, std::vector<PointIndex>{0}) == doctest::Approx(1.0 / j).epsilon(1e-15));
    }
    CHECK(set_distance(e.space, 0, PointSet{}) == kInfinity);
    CHECK_THROWS_AS(set_distance(e.space, 99, PointSet{0}), LookupError);

    const auto c = gen_convergent(10);
    const PointIndex half = c.space.index_of("n2");
    const PointSet targets{c.space.index_of("zero"), c.space.index_of("n5")};
    // min(|1/2 - 0|, |1/2 - 1/5|)
    CHECK(set_distance(c.space, half, targets) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("neighborhood uses open balls") {
    const auto e = gen_E(3, 3, true);
    CHECK(neighborhood(e.space, PointSet{}, 1.0).empty());
    CHECK(complement(e.space, neighborhood(e.space, PointSet{}, 1.0)) == e.space.all_points());
    CHECK(neighborhood(e.space, e.space.all_points(), 1e-9) == e.space.all_points());

    // |p_i3| = 1/3 < 1/2, |p_i2| = 1/2 is excluded.
    PointSet expected{0};
    for (int i = 1; i <= 3; ++i) expected.push_back(e.space.index_of(grid_point_id(i, 3)));
    std::sort(expected.begin(), expected.end());
    CHECK(neighborhood(e.space, PointSet{0}, 0.5) == expected);

    CHECK_THROWS_AS(neighborhood(e.space, PointSet{0}, 0.0), DomainError);
    CHECK_THROWS_AS(neighborhood(e.space, PointSet{0}, -1.0), DomainError);
}

TEST_CASE("neighborhood is monotone in radius and center set") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteSpace s = random_space(rng, 25, 3);
        const PointSet a1 = random_subset(rng, s.size(), 0.2);
        PointSet a2 = a1;
        for (PointIndex extra : random_subset(rng, s.size(), 0.2)) a2.push_back(extra);
        a2 = s.normalize(a2);
        double e1 = u(rng), e2 = u(rng);
        if (e1 > e2) std::swap(e1, e2);
        CHECK(subset_of(neighborhood(s, a1, e1), neighborhood(s, a1, e2)));
        CHECK(subset_of(neighborhood(s, a1, e1), neighborhood(s, a2, e1)));
    }
}

TEST_CASE("set_distance obeys the reverse triangle inequality") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const FiniteSpace s = random_space(rng, 20, 2);
        const PointSet a = random_subset(rng, s.size(), 0.3);
        if (a.empty()) continue;
        for (PointIndex x = 0; x < s.size(); ++x) {
            for (PointIndex y = 0; y < s.size(); ++y) {
                CHECK(std::abs(set_distance(s, x, a) - set_distance(s, y, a)) <= s.dist(x, y) + 1e-12);
            }
        }
    }
}

TEST_CASE("uniform_interior_radius") {
    const auto c = gen_convergent(100);
    const PointSet k{0};
    const PointSet u = neighborhood(c.space, k, 0.5);
    CHECK(uniform_interior_radius(c.space, k, u) == 0.5);

    CHECK(uniform_interior_radius(c.space, c.space.all_points(), c.space.all_points()) == kInfinity);
    CHECK_THROWS_AS(uniform_interior_radius(c.space, PointSet{1}, PointSet{0}), PreconditionError);
    CHECK_THROWS_AS(uniform_interior_radius(c.space, PointSet{}, PointSet{0}), PreconditionError);
}

TEST_CASE("uniform_interior_radius matches the brute-force maximal radius") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(2, 30);
    for (int trial = 0; trial < 40; ++trial) {
        const FiniteSpace s = random_space(rng, size(rng), 2);
        PointSet u = random_subset(rng, s.size(), 0.6);
        if (u.empty()) u.push_back(0);
        PointSet k;
        std::bernoulli_distribution keep(0.4);
        for (PointIndex z : u) {
            if (keep(rng)) k.push_back(z);
        }
        if (k.empty()) k.push_back(u.front());

        std::vector<char> in_open(s.size(), 0);
        for (PointIndex z : u) in_open[z] = 1;
        const double r = uniform_interior_radius(s, k, u);
        const double brute = oracle::max_uniform_radius(s.size(), k, in_open, [&](auto i, auto j) { return s.dist(i, j); });
        CHECK(r == brute);
        if (std::isfinite(r)) {
            for (PointIndex z : k) CHECK(subset_of(neighborhood(s, PointSet{z}, r), u));
        }
    }
}
