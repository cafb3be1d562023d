#ifndef POLYFLOW_TILING_HPP
#define POLYFLOW_TILING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/rational.hpp"

namespace polyflow {

/// Closed convex set {x : Ax <= b} over exact rationals.
///
/// Construction normalizes the representation: all-zero rows with
/// nonnegative right-hand side are dropped (they constrain nothing), and an
/// all-zero row with negative right-hand side marks the whole set infeasible
/// instead of being stored. After normalization the interior is exactly
/// {x : Ax < b}, which the strict-feasibility tests rely on.
class Polyhedron {
  public:
    Polyhedron(RMatrix A, RVector b);

    const RMatrix& A() const { return A_; }
    const RVector& b() const { return b_; }
    int dimension() const { return static_cast<int>(A_.cols()); }
    int num_rows() const { return static_cast<int>(A_.rows()); }
    bool trivially_infeasible() const { return trivially_infeasible_; }

    /// Exact membership test.
    bool contains(const RVector& x) const;

  private:
    RMatrix A_;
    RVector b_;
    bool trivially_infeasible_ = false;
};

/// One tile: a named polyhedron with its constant drift vector.
struct Region {
    std::string name;
    Polyhedron poly;
    RVector drift;
};

/// Finite polyhedral tiling of R^n with one drift per region. Immutable after
/// construction; all operations on it are pure and safe to run concurrently.
class HybridSystem {
  public:
    HybridSystem(int dimension, std::vector<Region> regions);

    int dimension() const { return dimension_; }
    int num_regions() const { return static_cast<int>(regions_.size()); }
    const std::vector<Region>& regions() const { return regions_; }
    const Region& region(int i) const { return regions_.at(i); }
    const RVector& drift(int i) const { return regions_.at(i).drift; }

  private:
    int dimension_;
    std::vector<Region> regions_;
};

/// The set of region indices containing a point.
struct ActiveSet {
    RVector point;
    std::vector<int> indices;  // ascending
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string details;
};

struct ValidationReport {
    bool valid = false;
    std::vector<ValidationCheck> checks;
};

struct ValidateOptions {
    int coverage_samples = 10000;
    std::uint64_t seed = 0;
    Rational box_half_width = 100;
};

/// Structural validation of the tiling axioms: unique region names, nonempty
/// interiors, pairwise disjoint interiors, pairwise distinct drifts, and a
/// coverage check combining deterministic probes (region vertices, facet
/// centroids, pairwise intersection witnesses) with seeded random points in
/// the test box. Exact coverage of R^n admits no finite certificate here, so
/// a clean pass is reported as "covered (probabilistic)"; any uncovered probe
/// is a hard failure. All failures are report entries, never exceptions.
ValidationReport validate(const HybridSystem& system, const ValidateOptions& options = {});

/// Exact membership indices {i : A_i x <= b_i}. Throws UncoveredPoint when
/// no region contains x.
ActiveSet active_set(const HybridSystem& system, const RVector& x);

/// Unordered pairs {i, j} with D_i and D_j intersecting, decided by exact LP
/// feasibility. Pairs are returned with i < j in lexicographic order.
std::vector<std::pair<int, int>> adjacency(const HybridSystem& system);

/// All basic feasible points (vertices) of the polyhedron, deduplicated and
/// sorted lexicographically. Empty for polyhedra without vertices.
std::vector<RVector> vertices(const Polyhedron& poly);

}  // namespace polyflow

#endif  // POLYFLOW_TILING_HPP
