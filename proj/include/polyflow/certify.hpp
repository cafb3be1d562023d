#ifndef POLYFLOW_CERTIFY_HPP
#define POLYFLOW_CERTIFY_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polyflow/tiling.hpp"

namespace polyflow {

/// A nonnegative-or-finite rational extended with +infinity.
struct ExtendedRational {
    bool infinite = false;
    Rational value;  // meaningful only when finite

    static ExtendedRational infinity() { return {true, 0}; }
    static ExtendedRational of(Rational v) { return {false, std::move(v)}; }
    bool is_finite() const { return !infinite; }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
};

std::string to_string(const ExtendedRational& v);

/// Adjacency graph of the tiling with the boundary weights
///     b_ij = sup over D_i of (mu_i - mu_j)' x
/// stored for every ordered adjacent pair; b_ii is fixed to 0. On a certified
/// system every stored weight is finite and b_ij = -b_ji.
class WeightedAdjacency {
  public:
    WeightedAdjacency() = default;
    WeightedAdjacency(std::vector<std::pair<int, int>> pairs,
                      std::map<std::pair<int, int>, Rational> weights)
        : pairs_(std::move(pairs)), weights_(std::move(weights)) {}

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    bool is_adjacent(int i, int j) const;

    /// b_ij for i == j (always 0) or an adjacent ordered pair.
    Rational at(int i, int j) const;

    /// Overrides one ordered weight; used by fault-injection paths.
    void set(int i, int j, Rational value) { weights_[{i, j}] = std::move(value); }

    const std::map<std::pair<int, int>, Rational>& weights() const { return weights_; }

  private:
    std::vector<std::pair<int, int>> pairs_;  // unordered, i < j
    std::map<std::pair<int, int>, Rational> weights_;
};

/// Exact supremum of (mu_i - mu_j)' x over D_i; +infinity when the LP is
/// unbounded (the recession ray is kept by the detail overload used by the
/// certifier).
ExtendedRational boundary_weight(const HybridSystem& system, int i, int j);

struct Witness {
    int i = -1, j = -1;
    RVector x_i, x_j;
    Rational value;  // (mu_i - mu_j)'(x_i - x_j) > 0, exactly
};

enum class Verdict { Nonexpansive, NotNonexpansive };

struct ConservationTranscript {
    struct PairCheck {
        int i, j;
        Rational b_ij, b_ji, residual;
    };
    struct TripleCheck {
        int i, j, k;
        Rational residual;
    };
    std::vector<PairCheck> pairs;
    std::vector<TripleCheck> triples;
};

struct Certificate {
    Verdict verdict = Verdict::NotNonexpansive;
    /// Every ordered pair sum b_ij + b_ji (finite entries only), for
    /// transparency; the decision uses all ordered pairs, not just adjacent
    /// ones, since the bilinear criterion must hold globally.
    std::vector<std::tuple<int, int, ExtendedRational>> pair_sums;
    std::optional<Witness> witness;                        // on failure
    std::optional<WeightedAdjacency> weights;              // on success
    std::optional<ConservationTranscript> conservation;    // on success
};

/// Decides monotonicity of the drift field: Nonexpansive iff for every
/// ordered pair i != j the weight b_ij is finite and b_ij + b_ji <= 0.
/// An unbounded weight is converted into a finite witness pair by walking
/// far enough along the recession ray. On success the certificate carries
/// the adjacency weights and a full local-conservation transcript.
Certificate certify_nonexpansive(const HybridSystem& system);

/// Zero-tolerance checks of the weight identities: b_ij + b_ji = 0 on every
/// adjacent pair, and b_ij + b_jk + b_ki = 0 for every index multiset {i,j,k}
/// (repeats allowed, handled through b_ii = 0) whose regions intersect.
/// Throws ConservationViolated on the first nonzero residual.
ConservationTranscript local_conservation(const HybridSystem& system,
                                          const WeightedAdjacency& weights);

struct GammaDelta {
    struct TripleProgram {
        int i, j, k;
        Rational epsilon_star;
    };
    ExtendedRational gamma;      // reported value (safety factor applied)
    ExtendedRational delta;      // gamma / 3
    ExtendedRational raw_gamma;  // min epsilon*/2 before the safety factor
    bool numeric_mode = false;   // floating-point row normalization was used
    std::vector<TripleProgram> triples;  // qualifying triples and their optima
};

/// Radius so that any ball of that size meeting three regions forces the
/// three regions to intersect, computed per empty-intersection triple by the
/// slack-minimization LP over unit-norm rows. Rows are normalized in floating
/// point (exact unit normalization is impossible in rationals), the LP is
/// then solved exactly on that data, and the result is halved as a safety
/// margin; gamma only parameterizes fine-path sampling, so any positive
/// lower bound is valid. gamma = +infinity when every triple intersects.
GammaDelta gamma_delta(const HybridSystem& system);

/// Sample path through region interiors; used for cycle-weight checks.
struct PathPoint {
    RVector point;
    int region;  // the point lies strictly inside this region
};

struct Path {
    std::vector<PathPoint> points;
};

/// True when consecutive points sit in equal or adjacent regions.
bool path_is_jump_free(const HybridSystem& system, const Path& path);

/// True when every consecutive gap has length at most delta.
bool path_is_fine(const Path& path, const ExtendedRational& delta);

/// Sum of b over consecutive path regions. Throws NotJumpFree naming the
/// first offending consecutive pair.
Rational path_weight(const HybridSystem& system, const WeightedAdjacency& weights,
                     const Path& path);

/// Subdivides the segment from x to y into steps of length <= delta and
/// nudges any sample that lands on a region boundary into a neighboring
/// interior with a deterministic rational offset of magnitude <= delta/4.
/// Jump-freeness of the result is checked, never assumed. Both endpoints
/// must already be interior points.
Path sample_fine_path(const HybridSystem& system, const RVector& x, const RVector& y,
                      const ExtendedRational& delta);

}  // namespace polyflow

#endif  // POLYFLOW_CERTIFY_HPP
