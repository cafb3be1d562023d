#ifndef POLYFLOW_TESTS_CORPUS_HPP
#define POLYFLOW_TESTS_CORPUS_HPP

#include "polyflow/tiling.hpp"

// Shared analytic test systems.
//
//  h1:  two half-lines, drifts pointing at the origin; potential |x|.
//  h2:  two-queue longest-queue service example; potential max(x1, x2, 0).
//  h3:  rotation field on the four quadrants; nonexpansive test must reject.
//  t3:  three intervals (-inf,0], [0,1], [1,inf) with drifts +1, 0, -1;
//       the only corpus member with a finite triple-intersection radius.
namespace corpus {

using polyflow::HybridSystem;
using polyflow::Polyhedron;
using polyflow::Rational;
using polyflow::Region;
using polyflow::make_rmatrix;
using polyflow::make_rvector;

inline HybridSystem h1() {
    std::vector<Region> regions;
    regions.push_back({"D1", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({1})});
    regions.push_back({"D2", Polyhedron(make_rmatrix({{-1}}), make_rvector({0})),
                       make_rvector({-1})});
    return HybridSystem(1, std::move(regions));
}

inline HybridSystem h2() {
    std::vector<Region> regions;
    // D1 = {x1 >= x2, x1 >= 0}, serves queue 1
    regions.push_back({"D1",
                       Polyhedron(make_rmatrix({{-1, 1}, {-1, 0}}), make_rvector({0, 0})),
                       make_rvector({-1, 0})});
    // D2 = {x2 >= x1, x2 >= 0}, serves queue 2
    regions.push_back({"D2",
                       Polyhedron(make_rmatrix({{1, -1}, {0, -1}}), make_rvector({0, 0})),
                       make_rvector({0, -1})});
    // D3 = {x1 <= 0, x2 <= 0}, server idles
    regions.push_back({"D3",
                       Polyhedron(make_rmatrix({{1, 0}, {0, 1}}), make_rvector({0, 0})),
                       make_rvector({0, 0})});
    return HybridSystem(2, std::move(regions));
}

inline HybridSystem h3() {
    std::vector<Region> regions;
    regions.push_back({"Q1",
                       Polyhedron(make_rmatrix({{-1, 0}, {0, -1}}), make_rvector({0, 0})),
                       make_rvector({-1, 1})});
    regions.push_back({"Q2",
                       Polyhedron(make_rmatrix({{1, 0}, {0, -1}}), make_rvector({0, 0})),
                       make_rvector({-1, -1})});
    regions.push_back({"Q3",
                       Polyhedron(make_rmatrix({{1, 0}, {0, 1}}), make_rvector({0, 0})),
                       make_rvector({1, -1})});
    regions.push_back({"Q4",
                       Polyhedron(make_rmatrix({{-1, 0}, {0, 1}}), make_rvector({0, 0})),
                       make_rvector({1, 1})});
    return HybridSystem(2, std::move(regions));
}

inline HybridSystem t3() {
    std::vector<Region> regions;
    regions.push_back({"L", Polyhedron(make_rmatrix({{1}}), make_rvector({0})),
                       make_rvector({1})});
    regions.push_back({"M", Polyhedron(make_rmatrix({{1}, {-1}}), make_rvector({1, 0})),
                       make_rvector({0})});
    regions.push_back({"R", Polyhedron(make_rmatrix({{-1}}), make_rvector({-1})),
                       make_rvector({-1})});
    return HybridSystem(1, std::move(regions));
}

inline std::vector<HybridSystem> certified() {
    std::vector<HybridSystem> out;
    out.push_back(h1());
    out.push_back(h2());
    out.push_back(t3());
    return out;
}

}  // namespace corpus

#endif  // POLYFLOW_TESTS_CORPUS_HPP
