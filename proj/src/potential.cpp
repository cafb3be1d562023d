#include "polyflow/potential.hpp"

#include <algorithm>
#include <queue>

#include "polyflow/errors.hpp"
#include "polyflow/lp.hpp"

namespace polyflow {

std::vector<Rational> region_weights(const HybridSystem& system,
                                     const WeightedAdjacency& weights, int reference) {
    const int m = system.num_regions();
    if (reference < 0 || reference >= m) throw Error("region_weights: bad reference index");
    std::vector<std::vector<int>> neighbors(m);
    for (const auto& [i, j] : weights.pairs()) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
    }
    for (auto& list : neighbors) std::sort(list.begin(), list.end());

    std::vector<Rational> b(m, Rational(0));
    std::vector<bool> reached(m, false);
    std::vector<std::pair<int, int>> tree_edges;
    std::queue<int> frontier;
    reached[reference] = true;
    frontier.push(reference);
    while (!frontier.empty()) {
        const int i = frontier.front();
        frontier.pop();
        for (int j : neighbors[i]) {
            if (reached[j]) continue;
            reached[j] = true;
            b[j] = b[i] - weights.at(i, j);
            tree_edges.emplace_back(std::min(i, j), std::max(i, j));
            frontier.push(j);
        }
    }
    for (int i = 0; i < m; ++i) {
        if (!reached[i]) {
            throw DisconnectedAdjacency("region '" + system.region(i).name +
                                        "' is unreachable in the adjacency graph");
        }
    }
    // every non-tree edge must close its cycle with zero residual
    for (const auto& [i, j] : weights.pairs()) {
        if (std::find(tree_edges.begin(), tree_edges.end(), std::make_pair(i, j)) !=
            tree_edges.end()) {
            continue;
        }
        const Rational residual = b[i] - b[j] - weights.at(i, j);
        if (residual != 0) {
            throw ConservationViolated(
                "non-tree adjacency edge (" + system.region(i).name + "," +
                    system.region(j).name + ") has residual " + to_string(residual),
                to_string(residual));
        }
    }
    return b;
}

PWLPotential build_potential(const HybridSystem& system, const WeightedAdjacency& weights) {
    const std::vector<Rational> offsets = region_weights(system, weights);
    PWLPotential potential;
    potential.pieces.reserve(system.num_regions());
    for (int i = 0; i < system.num_regions(); ++i) {
        potential.pieces.push_back({system.drift(i), offsets[i]});
    }
    return potential;
}

PWLPotential build_potential(const HybridSystem& system) {
    const auto pairs = adjacency(system);
    std::map<std::pair<int, int>, Rational> weights;
    for (const auto& [i, j] : pairs) {
        const ExtendedRational bij = boundary_weight(system, i, j);
        const ExtendedRational bji = boundary_weight(system, j, i);
        if (bij.infinite || bji.infinite) {
            throw Error("build_potential requires a certified system; boundary weight (" +
                        system.region(i).name + "," + system.region(j).name + ") is unbounded");
        }
        weights[{i, j}] = bij.value;
        weights[{j, i}] = bji.value;
    }
    return build_potential(system, WeightedAdjacency(pairs, std::move(weights)));
}

Evaluation evaluate(const PWLPotential& potential, const RVector& x) {
    if (potential.pieces.empty()) throw Error("potential has no pieces");
    if (x.size() != potential.dimension()) {
        throw DimensionMismatch("potential evaluated in wrong dimension");
    }
    Evaluation out;
    for (std::size_t i = 0; i < potential.pieces.size(); ++i) {
        const Rational v = -potential.pieces[i].slope.dot(x) + potential.pieces[i].offset;
        if (i == 0 || v > out.value) {
            out.value = v;
            out.argmax.clear();
        }
        if (v == out.value) out.argmax.push_back(static_cast<int>(i));
    }
    return out;
}

Subdifferential subdifferential(const PWLPotential& potential, const RVector& x) {
    Subdifferential out;
    out.point = x;
    for (int i : evaluate(potential, x).argmax) {
        out.generators.push_back(potential.pieces[i].slope);
    }
    return out;
}

namespace {

void compare_point(const HybridSystem& system, const PWLPotential& potential,
                   const RVector& point, bool require_unique) {
    const std::vector<int> argmax = evaluate(potential, point).argmax;
    const std::vector<int> active = active_set(system, point).indices;
    if (argmax != active) {
        throw Lemma4Violated("argmax/active mismatch at " + to_string(point));
    }
    if (require_unique && argmax.size() != 1) {
        throw Lemma4Violated("interior point " + to_string(point) +
                             " has a non-unique maximizer");
    }
}

}  // namespace

Lemma4Transcript verify_lemma4(const HybridSystem& system, const PWLPotential& potential,
                               int random_points, std::uint64_t seed) {
    if (static_cast<int>(potential.pieces.size()) != system.num_regions()) {
        throw Error("verify_lemma4: potential was not built from this system");
    }
    Lemma4Transcript transcript;
    for (const auto& region : system.regions()) {
        for (const auto& v : vertices(region.poly)) {
            compare_point(system, potential, v, false);
            ++transcript.vertex_points;
        }
        const InteriorWitness w = interior_witness(region.poly.A(), region.poly.b());
        if (!w.nonempty_interior) {
            throw Lemma4Violated("region '" + region.name + "' has no interior witness");
        }
        compare_point(system, potential, w.point, true);
        ++transcript.interior_points;
    }
    Sampler sampler(seed);
    for (int k = 0; k < random_points; ++k) {
        compare_point(system, potential, sampler.point_in_box(system.dimension(), 100), false);
        ++transcript.random_points;
    }
    return transcript;
}

HybridSystem potential_to_hybrid(const PWLPotential& potential) {
    const int n = potential.dimension();
    const int count = static_cast<int>(potential.pieces.size());
    if (count == 0) throw Error("potential has no pieces");
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            if (potential.pieces[i].slope == potential.pieces[j].slope &&
                potential.pieces[i].offset == potential.pieces[j].offset) {
                throw Error("potential pieces must be distinct");
            }
        }
    }

    std::vector<Region> regions;
    for (int i = 0; i < count; ++i) {
        RMatrix A(count - 1, n);
        RVector b(count - 1);
        int row = 0;
        for (int j = 0; j < count; ++j) {
            if (j == i) continue;
            A.row(row) = (potential.pieces[j].slope - potential.pieces[i].slope).transpose();
            b(row) = potential.pieces[i].offset - potential.pieces[j].offset;
            ++row;
        }
        Polyhedron poly(std::move(A), std::move(b));
        if (poly.trivially_infeasible()) continue;  // dominated duplicate slope
        if (!interior_witness(poly.A(), poly.b()).nonempty_interior) continue;
        regions.push_back({"D" + std::to_string(regions.size() + 1), std::move(poly),
                           potential.pieces[i].slope});
    }
    if (regions.empty()) throw AllPiecesPruned("every piece was pruned");
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            if (regions[i].drift == regions[j].drift) {
                throw Error("internal: surviving pieces carry duplicate drifts");
            }
        }
    }
    return HybridSystem(n, std::move(regions));
}

CanonicalTiling canonical_tiling(const std::vector<RVector>& drifts, const SampleSet& samples) {
    const int m = static_cast<int>(drifts.size());
    if (m == 0) throw Error("canonical_tiling needs at least one drift");
    const int n = static_cast<int>(drifts.front().size());
    for (const auto& mu : drifts) {
        if (mu.size() != n) throw DimensionMismatch("drift dimensions differ");
    }
    std::vector<std::vector<const RVector*>> classes(m);
    for (const auto& [point, label] : samples.samples) {
        if (label < 0 || label >= m) throw Error("sample label out of range");
        if (point.size() != n) throw DimensionMismatch("sample dimension differs from drifts");
        classes[label].push_back(&point);
    }
    for (int i = 0; i < m; ++i) {
        if (classes[i].empty()) {
            throw EmptyClass("sample class " + std::to_string(i) + " is empty");
        }
    }

    CanonicalTiling out;
    out.d = RMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const RVector diff = drifts[i] - drifts[j];
            bool first = true;
            Rational best;
            for (const RVector* x : classes[j]) {
                const Rational v = diff.dot(*x);
                if (first || v < best) {
                    best = v;
                    first = false;
                }
            }
            out.d(i, j) = best;
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Rational sum = out.d(i, j) + out.d(j, i);
            if (sum < 0) out.monotonicity_violations.emplace_back(i, j, sum);
        }
    }
    for (int i = 0; i < m; ++i) {
        RMatrix A(m - 1, n);
        RVector b(m - 1);
        int row = 0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            A.row(row) = (drifts[i] - drifts[j]).transpose();
            b(row) = out.d(i, j);
            ++row;
        }
        out.regions.emplace_back(std::move(A), std::move(b));
    }
    return out;
}

}  // namespace polyflow
