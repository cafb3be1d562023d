#include "polyflow/tiling.hpp"

#include <algorithm>
#include <set>

#include "polyflow/errors.hpp"
#include "polyflow/linalg.hpp"
#include "polyflow/lp.hpp"

namespace polyflow {

namespace {

bool lex_less(const RVector& a, const RVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
}

// Stacks the H-representations of two polyhedra into one system.
void stack_into(const Polyhedron& p, RMatrix& A, RVector& b, int& row) {
    for (int r = 0; r < p.num_rows(); ++r) {
        A.row(row) = p.A().row(r);
        b(row) = p.b()(r);
        ++row;
    }
}

std::pair<RMatrix, RVector> stacked(const std::vector<const Polyhedron*>& polys, int dim) {
    int rows = 0;
    for (const auto* p : polys) rows += p->num_rows();
    RMatrix A(rows, dim);
    RVector b(rows);
    int row = 0;
    for (const auto* p : polys) stack_into(*p, A, b, row);
    return {std::move(A), std::move(b)};
}

int membership_count(const HybridSystem& system, const RVector& x) {
    int count = 0;
    for (const auto& region : system.regions()) {
        if (region.poly.contains(x)) ++count;
    }
    return count;
}

// Strict common point of the interiors of two polyhedra: max t subject to
// both systems slackened by t, capped at t <= 1. Interiors intersect iff the
// optimum is positive.
bool interiors_intersect(const Polyhedron& p, const Polyhedron& q, RVector* witness) {
    if (p.trivially_infeasible() || q.trivially_infeasible()) return false;
    const auto [A, b] = stacked({&p, &q}, p.dimension());
    const InteriorWitness w = interior_witness(A, b);
    if (w.nonempty_interior && witness != nullptr) *witness = w.point;
    return w.nonempty_interior;
}

}  // namespace

Polyhedron::Polyhedron(RMatrix A, RVector b) {
    if (A.rows() != b.size()) {
        throw DimensionMismatch("polyhedron rows of A and length of b differ");
    }
    if (A.cols() < 1) throw DimensionMismatch("polyhedron must live in dimension >= 1");
    std::vector<int> keep;
    for (int r = 0; r < A.rows(); ++r) {
        bool zero_row = true;
        for (int j = 0; j < A.cols(); ++j) {
            if (A(r, j) != 0) { zero_row = false; break; }
        }
        if (!zero_row) {
            keep.push_back(r);
        } else if (b(r) < 0) {
            trivially_infeasible_ = true;  // 0'x <= negative: empty set
        }
    }
    A_ = RMatrix(static_cast<int>(keep.size()), A.cols());
    b_ = RVector(static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        A_.row(static_cast<int>(k)) = A.row(keep[k]);
        b_(static_cast<int>(k)) = b(keep[k]);
    }
}

bool Polyhedron::contains(const RVector& x) const {
    if (x.size() != A_.cols()) throw DimensionMismatch("membership test in wrong dimension");
    if (trivially_infeasible_) return false;
    for (int r = 0; r < num_rows(); ++r) {
        if (A_.row(r).dot(x) > b_(r)) return false;
    }
    return true;
}

HybridSystem::HybridSystem(int dimension, std::vector<Region> regions)
    : dimension_(dimension), regions_(std::move(regions)) {
    if (dimension_ < 1) throw DimensionMismatch("system dimension must be >= 1");
    for (const auto& region : regions_) {
        if (region.poly.dimension() != dimension_) {
            throw DimensionMismatch("region '" + region.name + "' has wrong ambient dimension");
        }
        if (region.drift.size() != dimension_) {
            throw DimensionMismatch("drift of region '" + region.name + "' has wrong dimension");
        }
    }
}

ActiveSet active_set(const HybridSystem& system, const RVector& x) {
    ActiveSet out;
    out.point = x;
    for (int i = 0; i < system.num_regions(); ++i) {
        if (system.region(i).poly.contains(x)) out.indices.push_back(i);
    }
    if (out.indices.empty()) {
        throw UncoveredPoint("point " + to_string(x) + " lies in no region");
    }
    return out;
}

std::vector<std::pair<int, int>> adjacency(const HybridSystem& system) {
    std::vector<std::pair<int, int>> pairs;
    const int m = system.num_regions();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Polyhedron& p = system.region(i).poly;
            const Polyhedron& q = system.region(j).poly;
            if (p.trivially_infeasible() || q.trivially_infeasible()) continue;
            const auto [A, b] = stacked({&p, &q}, system.dimension());
            if (feasible(A, b).feasible) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

std::vector<RVector> vertices(const Polyhedron& poly) {
    std::vector<RVector> out;
    if (poly.trivially_infeasible()) return out;
    const int n = poly.dimension();
    const int m = poly.num_rows();
    if (m < n) return out;  // fewer facets than dimensions: no basic point

    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
        RMatrix M(n, n);
        RVector rhs(n);
        for (int i = 0; i < n; ++i) {
            M.row(i) = poly.A().row(pick[i]);
            rhs(i) = poly.b()(pick[i]);
        }
        if (const auto x = solve_square(M, rhs); x && poly.contains(*x)) {
            out.push_back(*x);
        }
        // next n-combination of row indices
        int k = n - 1;
        while (k >= 0 && pick[k] == m - n + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const RVector& a, const RVector& b) { return a == b; }),
              out.end());
    return out;
}

ValidationReport validate(const HybridSystem& system, const ValidateOptions& options) {
    ValidationReport report;
    auto add = [&report](std::string name, bool passed, std::string details) {
        report.checks.push_back({std::move(name), passed, std::move(details)});
    };

    // Unique names fix the region indexing used by every downstream artifact.
    {
        std::set<std::string> seen;
        bool ok = true;
        std::string dup;
        for (const auto& region : system.regions()) {
            if (region.name.empty() || !seen.insert(region.name).second) {
                ok = false;
                dup = region.name;
                break;
            }
        }
        add("unique-region-names", ok, ok ? "" : "duplicate or empty name '" + dup + "'");
    }

    if (system.num_regions() == 0) {
        add("nonempty-system", false, "system has no regions");
        report.valid = false;
        return report;
    }

    // Nonempty interiors, with a strict witness per region.
    std::vector<RVector> interior_points;
    bool interiors_ok = true;
    for (const auto& region : system.regions()) {
        if (region.poly.trivially_infeasible()) {
            add("interior:" + region.name, false, "region is empty");
            interiors_ok = false;
            continue;
        }
        const InteriorWitness w = interior_witness(region.poly.A(), region.poly.b());
        if (w.nonempty_interior) {
            interior_points.push_back(w.point);
            add("interior:" + region.name, true,
                "witness " + to_string(w.point) + " with margin " + to_string(w.margin));
        } else {
            interiors_ok = false;
            add("interior:" + region.name, false, "region has empty interior");
        }
    }

    // Pairwise disjoint interiors.
    for (int i = 0; i < system.num_regions(); ++i) {
        for (int j = i + 1; j < system.num_regions(); ++j) {
            RVector witness;
            const bool overlap =
                interiors_intersect(system.region(i).poly, system.region(j).poly, &witness);
            if (overlap) {
                add("disjoint-interiors:" + system.region(i).name + "," + system.region(j).name,
                    false, "common interior point " + to_string(witness));
            }
        }
    }

    // Pairwise distinct drifts.
    {
        bool ok = true;
        std::string offenders;
        for (int i = 0; i < system.num_regions() && ok; ++i) {
            for (int j = i + 1; j < system.num_regions(); ++j) {
                if (system.drift(i) == system.drift(j)) {
                    ok = false;
                    offenders = system.region(i).name + "," + system.region(j).name;
                    break;
                }
            }
        }
        add("distinct-drifts", ok, ok ? "" : "drifts not distinct: " + offenders);
    }

    // Coverage: deterministic probes first, then seeded random points.
    {
        std::vector<RVector> probes = interior_points;
        for (const auto& region : system.regions()) {
            if (region.poly.trivially_infeasible()) continue;
            const std::vector<RVector> verts = vertices(region.poly);
            probes.insert(probes.end(), verts.begin(), verts.end());
            // facet centroids, where the facet carries at least one vertex
            for (int r = 0; r < region.poly.num_rows(); ++r) {
                RVector sum = RVector::Zero(system.dimension());
                int hits = 0;
                for (const auto& v : verts) {
                    if (region.poly.A().row(r).dot(v) == region.poly.b()(r)) {
                        sum += v;
                        ++hits;
                    }
                }
                if (hits > 0) probes.push_back(sum / Rational(hits));
            }
        }
        for (int i = 0; i < system.num_regions(); ++i) {
            for (int j = i + 1; j < system.num_regions(); ++j) {
                const Polyhedron& p = system.region(i).poly;
                const Polyhedron& q = system.region(j).poly;
                if (p.trivially_infeasible() || q.trivially_infeasible()) continue;
                const auto [A, b] = stacked({&p, &q}, system.dimension());
                if (const FeasibilityResult f = feasible(A, b); f.feasible) {
                    probes.push_back(f.point);
                }
            }
        }
        Sampler sampler(options.seed);
        for (int k = 0; k < options.coverage_samples; ++k) {
            probes.push_back(sampler.point_in_box(system.dimension(), options.box_half_width));
        }
        bool covered = true;
        RVector gap;
        for (const auto& p : probes) {
            if (membership_count(system, p) == 0) {
                covered = false;
                gap = p;
                break;
            }
        }
        if (covered) {
            add("coverage", true,
                "covered (probabilistic): " + std::to_string(probes.size()) + " probes");
        } else {
            add("coverage", false, "uncovered point " + to_string(gap));
        }
    }

    report.valid = interiors_ok;
    for (const auto& check : report.checks) report.valid = report.valid && check.passed;
    return report;
}

}  // namespace polyflow
