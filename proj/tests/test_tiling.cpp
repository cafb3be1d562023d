#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/lp.hpp"
#include "polyflow/tiling.hpp"

using namespace polyflow;

namespace {

bool check_passed(const ValidationReport& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return c.passed;
    }
    return false;
}

const ValidationCheck* find_check(const ValidationReport& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("polyhedron normalization") {
    // zero row with nonnegative rhs is dropped
    const Polyhedron p(make_rmatrix({{0}, {1}}), make_rvector({5, 2}));
    CHECK(p.num_rows() == 1);
    CHECK(!p.trivially_infeasible());
    CHECK(p.contains(make_rvector({2})));
    CHECK(!p.contains(make_rvector({3})));
    // zero row with negative rhs flags the set empty
    const Polyhedron q(make_rmatrix({{0}, {1}}), make_rvector({-1, 2}));
    CHECK(q.trivially_infeasible());
    CHECK(!q.contains(make_rvector({0})));
}

TEST_CASE("corpus systems validate") {
    ValidateOptions opts;
    opts.coverage_samples = 500;
    for (const auto& system : corpus::certified()) {
        const auto report = validate(system, opts);
        CHECK(report.valid);
    }
    CHECK(validate(corpus::h3(), opts).valid);
}

TEST_CASE("duplicate drifts are rejected") {
    std::vector<Region> regions;
    regions.push_back({"D1", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({1})});
    regions.push_back({"D2", Polyhedron(make_rmatrix({{-1}}), make_rvector({0})),
                       make_rvector({1})});
    const HybridSystem bad(1, std::move(regions));
    const auto report = validate(bad);
    CHECK(!report.valid);
    CHECK(!check_passed(report, "distinct-drifts"));
}

TEST_CASE("coverage gap is caught with a witness") {
    // D1 = (-inf, 0], D2 = [1, inf): the open interval (0,1) is uncovered
    std::vector<Region> regions;
    regions.push_back({"D1", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({1})});
    regions.push_back({"D2", Polyhedron(make_rmatrix({{-1}}), make_rvector({-1})),
                       make_rvector({-1})});
    const HybridSystem gap(1, std::move(regions));
    const auto report = validate(gap);
    CHECK(!report.valid);
    const auto* coverage = find_check(report, "coverage");
    REQUIRE(coverage != nullptr);
    CHECK(!coverage->passed);
    CHECK(coverage->details.find("uncovered point") != std::string::npos);
}

TEST_CASE("empty-interior regions are rejected, not pruned") {
    std::vector<Region> regions;
    regions.push_back({"P", Polyhedron(make_rmatrix({{1}, {-1}}), make_rvector({0, 0})),
                       make_rvector({1})});
    regions.push_back({"D", Polyhedron(make_rmatrix({{-1}}), make_rvector({0})),
                       make_rvector({-1})});
    regions.push_back({"L", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({2})});
    const HybridSystem degenerate(1, std::move(regions));
    const auto report = validate(degenerate);
    CHECK(!report.valid);
    CHECK(!check_passed(report, "interior:P"));
}

TEST_CASE("overlapping interiors are detected") {
    std::vector<Region> regions;
    regions.push_back({"D1", Polyhedron(make_rmatrix({{1}}), make_rvector({1})),
                       make_rvector({1})});
    regions.push_back({"D2", Polyhedron(make_rmatrix({{-1}}), make_rvector({0})),
                       make_rvector({-1})});
    const HybridSystem overlapping(1, std::move(regions));
    const auto report = validate(overlapping);
    CHECK(!report.valid);
    bool found = false;
    for (const auto& c : report.checks) {
        if (c.name.rfind("disjoint-interiors", 0) == 0) {
            found = true;
            CHECK(!c.passed);
        }
    }
    CHECK(found);
}

TEST_CASE("validate is idempotent and side-effect free") {
    const auto system = corpus::h2();
    ValidateOptions opts;
    opts.coverage_samples = 200;
    const auto r1 = validate(system, opts);
    const auto r2 = validate(system, opts);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (std::size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].name == r2.checks[i].name);
        CHECK(r1.checks[i].passed == r2.checks[i].passed);
        CHECK(r1.checks[i].details == r2.checks[i].details);
    }
}

TEST_CASE("active sets by exact membership") {
    const auto sys1 = corpus::h1();
    CHECK(active_set(sys1, make_rvector({-3})).indices == std::vector<int>{0});
    CHECK(active_set(sys1, make_rvector({0})).indices == std::vector<int>{0, 1});

    const auto sys2 = corpus::h2();
    CHECK(active_set(sys2, make_rvector({0, 0})).indices == std::vector<int>{0, 1, 2});
    CHECK(active_set(sys2, make_rvector({3, 1})).indices == std::vector<int>{0});

    // uncovered point throws
    std::vector<Region> regions;
    regions.push_back({"D1", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({1})});
    const HybridSystem partial(1, std::move(regions));
    CHECK_THROWS_AS(active_set(partial, make_rvector({1})), UncoveredPoint);
}

TEST_CASE("adjacency by exact intersection tests") {
    using Pairs = std::vector<std::pair<int, int>>;
    CHECK(adjacency(corpus::h1()) == Pairs{{0, 1}});
    CHECK(adjacency(corpus::h2()) == Pairs{{0, 1}, {0, 2}, {1, 2}});
    // three intervals: ends do not touch
    CHECK(adjacency(corpus::t3()) == Pairs{{0, 1}, {1, 2}});
}

TEST_CASE("vertex enumeration") {
    // unit interval
    const Polyhedron interval(make_rmatrix({{1}, {-1}}), make_rvector({1, 0}));
    const auto v1 = vertices(interval);
    REQUIRE(v1.size() == 2);
    CHECK(v1[0](0) == 0);
    CHECK(v1[1](0) == 1);
    // wedge with unique basic point at the origin
    const Polyhedron wedge(make_rmatrix({{-1, 1}, {-1, 0}}), make_rvector({0, 0}));
    const auto v2 = vertices(wedge);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0] == RVector::Zero(2));
    // halfline in R^1 has its endpoint
    const Polyhedron halfline(make_rmatrix({{1}}), make_rvector({0}));
    const auto v3 = vertices(halfline);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0](0) == 0);
    // halfplane in R^2 contains a line: no vertices
    const Polyhedron halfplane(make_rmatrix({{1, 0}}), make_rvector({0}));
    CHECK(vertices(halfplane).empty());
}

TEST_CASE("membership and adjacency are consistent") {
    for (const auto& system : corpus::certified()) {
        const auto pairs = adjacency(system);
        for (const auto& [i, j] : pairs) {
            // the LP witness realizes the adjacency in the active set
            RMatrix A(system.region(i).poly.num_rows() + system.region(j).poly.num_rows(),
                      system.dimension());
            RVector b(A.rows());
            A.topRows(system.region(i).poly.num_rows()) = system.region(i).poly.A();
            b.head(system.region(i).poly.num_rows()) = system.region(i).poly.b();
            A.bottomRows(system.region(j).poly.num_rows()) = system.region(j).poly.A();
            b.tail(system.region(j).poly.num_rows()) = system.region(j).poly.b();
            const auto witness = feasible(A, b);
            REQUIRE(witness.feasible);
            const auto act = active_set(system, witness.point).indices;
            CHECK(std::find(act.begin(), act.end(), i) != act.end());
            CHECK(std::find(act.begin(), act.end(), j) != act.end());
        }
    }
}

TEST_CASE("active sets only shrink near vertices") {
    // within rational distance 2^-20 of any region vertex, membership is a
    // subset of the vertex's membership
    const Rational radius = Rational(1, 1 << 20);
    for (const auto& system : corpus::certified()) {
        Sampler sampler(99);
        for (const auto& region : system.regions()) {
            for (const auto& v : vertices(region.poly)) {
                const auto at_vertex = active_set(system, v).indices;
                for (int probe = 0; probe < 24; ++probe) {
                    RVector d(system.dimension());
                    for (int k = 0; k < system.dimension(); ++k) {
                        d(k) = Rational(sampler.int_in(-3, 3));
                    }
                    Rational linf = 0;
                    for (int k = 0; k < system.dimension(); ++k) {
                        const Rational mag = abs(d(k));
                        if (mag > linf) linf = mag;
                    }
                    if (linf == 0) continue;
                    const RVector y =
                        v + (d * (radius / (linf * system.dimension()))).eval();
                    CHECK(squared_norm(y - v) <= radius * radius);
                    for (int idx : active_set(system, y).indices) {
                        CHECK(std::find(at_vertex.begin(), at_vertex.end(), idx) !=
                              at_vertex.end());
                    }
                }
            }
        }
    }
}
