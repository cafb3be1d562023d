#ifndef POLYFLOW_POTENTIAL_HPP
#define POLYFLOW_POTENTIAL_HPP

#include <cstdint>
#include <tuple>
#include <vector>

#include "polyflow/certify.hpp"
#include "polyflow/tiling.hpp"

namespace polyflow {

/// One affine piece of the potential. `slope` stores the drift vector mu, so
/// the piece contributes -mu'x + offset to the pointwise maximum.
struct Piece {
    RVector slope;
    Rational offset;
};

/// Convex piecewise-linear potential Phi(x) = max_i (-mu_i'x + b_i).
struct PWLPotential {
    std::vector<Piece> pieces;
    int dimension() const {
        return pieces.empty() ? 0 : static_cast<int>(pieces.front().slope.size());
    }
};

/// Region offsets b_i anchored at b[reference] = 0, propagated along a
/// spanning tree of the adjacency graph via b_j = b_i - b_ij. Every non-tree
/// adjacency edge must satisfy b_i - b_j = b_ij with zero residual; this is
/// the checkable content of the zero-cycle-weight law on the graph. Throws
/// ConservationViolated naming the offending edge, or DisconnectedAdjacency.
std::vector<Rational> region_weights(const HybridSystem& system,
                                     const WeightedAdjacency& weights, int reference = 0);

/// Assembles the potential (mu_i, b_i) of a certified system. Piece i
/// corresponds to region i and the reference offset is 0.
PWLPotential build_potential(const HybridSystem& system);
PWLPotential build_potential(const HybridSystem& system, const WeightedAdjacency& weights);

struct Evaluation {
    Rational value;
    std::vector<int> argmax;  // ascending
};

/// Exact maximum value and full argmax index set.
Evaluation evaluate(const PWLPotential& potential, const RVector& x);

struct Subdifferential {
    RVector point;
    std::vector<RVector> generators;  // -dPhi(x) = Conv(generators)
};

/// Generators {mu_i : i in argmax at x} of the negated subdifferential.
Subdifferential subdifferential(const PWLPotential& potential, const RVector& x);

struct Lemma4Transcript {
    int vertex_points = 0;
    int interior_points = 0;
    int random_points = 0;
};

/// Verifies the region/argmax correspondence between a system and the
/// potential built from it: argmax equals the active set at every region
/// vertex, at one interior witness per region (where the maximizer must also
/// be unique), and at seeded random points. Throws Lemma4Violated with a
/// counterexample point on any mismatch.
Lemma4Transcript verify_lemma4(const HybridSystem& system, const PWLPotential& potential,
                               int random_points = 1000, std::uint64_t seed = 0);

/// Converse construction: the argmax regions D_i = {x : (mu_j - mu_i)'x <=
/// b_i - b_j for all j} of the pieces, with empty-interior pieces pruned
/// (dominated duplicates can never attain the maximum). The result passes
/// validation and, on potentials built from certified systems, reproduces
/// the original regions and drifts.
HybridSystem potential_to_hybrid(const PWLPotential& potential);

/// Labeled sample points for the sample-based canonicalization.
struct SampleSet {
    std::vector<std::pair<RVector, int>> samples;  // (point, class index)
};

struct CanonicalTiling {
    std::vector<Polyhedron> regions;  // outer approximations P_i
    RMatrix d;                        // pairwise thresholds d_ij (diagonal 0)
    /// Pairs with d_ij + d_ji < 0: counterevidence against monotonicity of
    /// the sampled field.
    std::vector<std::tuple<int, int, Rational>> monotonicity_violations;
};

/// Estimates d_ij = min over class-j samples of (mu_i - mu_j)'x (an upper
/// bound on the true infimum, so every P_i is an outer approximation that
/// shrinks monotonically as samples accumulate) and intersects the resulting
/// halfspaces. Throws EmptyClass when some class has no samples.
CanonicalTiling canonical_tiling(const std::vector<RVector>& drifts, const SampleSet& samples);

}  // namespace polyflow

#endif  // POLYFLOW_POTENTIAL_HPP
