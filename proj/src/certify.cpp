#include "polyflow/certify.hpp"

#include <cmath>

#include "polyflow/errors.hpp"
#include "polyflow/lp.hpp"

namespace polyflow {

namespace {

struct WeightDetail {
    bool unbounded = false;
    Rational value;     // finite supremum, attained
    RVector maximizer;  // attaining point when finite
    RVector ray;        // recession direction when unbounded
};

WeightDetail boundary_weight_detail(const HybridSystem& system, int i, int j) {
    const RVector objective = system.drift(i) - system.drift(j);
    const Polyhedron& domain = system.region(i).poly;
    const LPOutcome lp = solve_lp(objective, domain.A(), domain.b(), Sense::Maximize);
    WeightDetail out;
    switch (lp.status) {
        case LPStatus::Optimal:
            out.value = lp.optimal_value;
            out.maximizer = lp.optimal_point;
            return out;
        case LPStatus::Unbounded:
            out.unbounded = true;
            out.ray = lp.ray;
            return out;
        case LPStatus::Infeasible:
            throw Error("boundary weight over empty region '" + system.region(i).name + "'");
    }
    throw Error("unreachable");
}

RVector any_point(const HybridSystem& system, int i) {
    const Polyhedron& poly = system.region(i).poly;
    const FeasibilityResult f = feasible(poly.A(), poly.b());
    if (!f.feasible) throw Error("region '" + system.region(i).name + "' is empty");
    return f.point;
}

// Materializes a finite witness pair from an unbounded weight b_ij: walk far
// enough along the recession ray of D_i that the bilinear form against any
// point of D_j turns strictly positive.
Witness witness_from_ray(const HybridSystem& system, int i, int j, const RVector& ray) {
    const RVector diff = system.drift(i) - system.drift(j);
    const RVector base = any_point(system, i);
    const RVector other = any_point(system, j);
    const Rational growth = diff.dot(ray);
    if (growth <= 0) throw Error("internal: ray does not grow the bilinear form");
    const Rational deficit = diff.dot(other - base);
    Integer steps = 1;
    if (deficit >= 0) {
        steps = rational_ceil(deficit / growth) + 1;
    }
    Witness w;
    w.i = i;
    w.j = j;
    w.x_i = base + (ray * Rational(steps)).eval();
    w.x_j = other;
    w.value = diff.dot(w.x_i - w.x_j);
    if (w.value <= 0) throw Error("internal: ray witness is not positive");
    return w;
}

}  // namespace

std::string to_string(const ExtendedRational& v) {
    return v.infinite ? "inf" : to_string(v.value);
}

bool WeightedAdjacency::is_adjacent(int i, int j) const {
    if (i == j) return false;
    const auto key = std::minmax(i, j);
    return std::find(pairs_.begin(), pairs_.end(),
                     std::make_pair(key.first, key.second)) != pairs_.end();
}

Rational WeightedAdjacency::at(int i, int j) const {
    if (i == j) return 0;
    const auto it = weights_.find({i, j});
    if (it == weights_.end()) {
        throw Error("no weight stored for region pair (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
    }
    return it->second;
}

ExtendedRational boundary_weight(const HybridSystem& system, int i, int j) {
    if (i == j) throw Error("boundary weight needs two distinct regions");
    const WeightDetail d = boundary_weight_detail(system, i, j);
    return d.unbounded ? ExtendedRational::infinity() : ExtendedRational::of(d.value);
}

Certificate certify_nonexpansive(const HybridSystem& system) {
    const int m = system.num_regions();
    std::vector<std::vector<WeightDetail>> detail(m, std::vector<WeightDetail>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j) detail[i][j] = boundary_weight_detail(system, i, j);
        }
    }

    Certificate cert;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const WeightDetail& ij = detail[i][j];
            const WeightDetail& ji = detail[j][i];
            if (ij.unbounded || ji.unbounded) {
                cert.pair_sums.emplace_back(i, j, ExtendedRational::infinity());
                if (!cert.witness) {
                    cert.witness = ij.unbounded ? witness_from_ray(system, i, j, ij.ray)
                                                : witness_from_ray(system, j, i, ji.ray);
                }
                continue;
            }
            const Rational sum = ij.value + ji.value;
            cert.pair_sums.emplace_back(i, j, ExtendedRational::of(sum));
            if (sum > 0 && !cert.witness) {
                Witness w;
                w.i = i;
                w.j = j;
                w.x_i = ij.maximizer;
                w.x_j = ji.maximizer;
                w.value = (system.drift(i) - system.drift(j)).dot(w.x_i - w.x_j);
                if (w.value != sum) throw Error("internal: witness value mismatch");
                cert.witness = w;
            }
        }
    }
    if (cert.witness) {
        cert.verdict = Verdict::NotNonexpansive;
        return cert;
    }

    cert.verdict = Verdict::Nonexpansive;
    const auto pairs = adjacency(system);
    std::map<std::pair<int, int>, Rational> weights;
    for (const auto& [i, j] : pairs) {
        weights[{i, j}] = detail[i][j].value;
        weights[{j, i}] = detail[j][i].value;
    }
    cert.weights = WeightedAdjacency(pairs, std::move(weights));
    cert.conservation = local_conservation(system, *cert.weights);
    return cert;
}

ConservationTranscript local_conservation(const HybridSystem& system,
                                          const WeightedAdjacency& weights) {
    ConservationTranscript transcript;
    for (const auto& [i, j] : weights.pairs()) {
        ConservationTranscript::PairCheck check;
        check.i = i;
        check.j = j;
        check.b_ij = weights.at(i, j);
        check.b_ji = weights.at(j, i);
        check.residual = check.b_ij + check.b_ji;
        transcript.pairs.push_back(check);
        if (check.residual != 0) {
            throw ConservationViolated(
                "antisymmetry violated on regions (" + system.region(i).name + "," +
                    system.region(j).name + "): residual " + to_string(check.residual),
                to_string(check.residual));
        }
    }

    const int m = system.num_regions();
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            for (int k = j; k < m; ++k) {
                if (i == j && j == k) continue;
                // intersection of the distinct regions in the multiset
                std::vector<int> distinct{i};
                if (j != i) distinct.push_back(j);
                if (k != j && k != i) distinct.push_back(k);
                int rows = 0;
                bool empty = false;
                for (int r : distinct) {
                    if (system.region(r).poly.trivially_infeasible()) empty = true;
                    rows += system.region(r).poly.num_rows();
                }
                if (empty) continue;
                RMatrix A(rows, system.dimension());
                RVector b(rows);
                int at = 0;
                for (int r : distinct) {
                    const Polyhedron& p = system.region(r).poly;
                    A.middleRows(at, p.num_rows()) = p.A();
                    b.segment(at, p.num_rows()) = p.b();
                    at += p.num_rows();
                }
                if (!feasible(A, b).feasible) continue;
                // all pairs inside a nonempty multiset intersection are
                // adjacent (or equal), so every needed weight exists
                ConservationTranscript::TripleCheck check;
                check.i = i;
                check.j = j;
                check.k = k;
                check.residual = weights.at(i, j) + weights.at(j, k) + weights.at(k, i);
                transcript.triples.push_back(check);
                if (check.residual != 0) {
                    throw ConservationViolated(
                        "cycle identity violated on regions (" + system.region(i).name + "," +
                            system.region(j).name + "," + system.region(k).name +
                            "): residual " + to_string(check.residual),
                        to_string(check.residual));
                }
            }
        }
    }
    return transcript;
}

GammaDelta gamma_delta(const HybridSystem& system) {
    GammaDelta out;
    out.gamma = ExtendedRational::infinity();
    out.raw_gamma = ExtendedRational::infinity();
    out.delta = ExtendedRational::infinity();

    const int m = system.num_regions();
    const int n = system.dimension();
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            for (int k = j; k < m; ++k) {
                if (i == j && j == k) continue;
                std::vector<int> distinct{i};
                if (j != i) distinct.push_back(j);
                if (k != j && k != i) distinct.push_back(k);
                int rows = 0;
                for (int r : distinct) rows += system.region(r).poly.num_rows();
                RMatrix A(rows, n);
                RVector b(rows);
                int at = 0;
                for (int r : distinct) {
                    const Polyhedron& p = system.region(r).poly;
                    A.middleRows(at, p.num_rows()) = p.A();
                    b.segment(at, p.num_rows()) = p.b();
                    at += p.num_rows();
                }
                if (feasible(A, b).feasible) continue;

                // Row normalization happens in floating point; the doubles are
                // then taken back exactly and the LP is solved in rationals.
                out.numeric_mode = true;
                RMatrix An(rows, n + 1);
                RVector bn(rows);
                for (int r = 0; r < rows; ++r) {
                    double norm2 = 0;
                    for (int c = 0; c < n; ++c) {
                        const double a = to_double(A(r, c));
                        norm2 += a * a;
                    }
                    const double norm = std::sqrt(norm2);
                    for (int c = 0; c < n; ++c) {
                        An(r, c) = rational_from_double(to_double(A(r, c)) / norm);
                    }
                    An(r, n) = -1;  // slack variable epsilon
                    bn(r) = rational_from_double(to_double(b(r)) / norm);
                }
                RVector cost = RVector::Zero(n + 1);
                cost(n) = 1;
                const LPOutcome lp = solve_lp(cost, An, bn, Sense::Minimize);
                if (lp.status != LPStatus::Optimal) {
                    throw Error("internal: slack-minimization LP must have an optimum");
                }
                out.triples.push_back({i, j, k, lp.optimal_value});
                const Rational half = lp.optimal_value / 2;
                if (out.raw_gamma.infinite || half < out.raw_gamma.value) {
                    out.raw_gamma = ExtendedRational::of(half);
                }
            }
        }
    }
    if (!out.raw_gamma.infinite) {
        out.gamma = ExtendedRational::of(out.raw_gamma.value / 2);  // safety factor
        out.delta = ExtendedRational::of(out.gamma.value / 3);
    }
    return out;
}

bool path_is_jump_free(const HybridSystem& system, const Path& path) {
    for (std::size_t t = 0; t + 1 < path.points.size(); ++t) {
        const int a = path.points[t].region;
        const int b = path.points[t + 1].region;
        if (a == b) continue;
        const Polyhedron& p = system.region(a).poly;
        const Polyhedron& q = system.region(b).poly;
        RMatrix A(p.num_rows() + q.num_rows(), system.dimension());
        RVector rhs(A.rows());
        A.topRows(p.num_rows()) = p.A();
        rhs.head(p.num_rows()) = p.b();
        A.bottomRows(q.num_rows()) = q.A();
        rhs.tail(q.num_rows()) = q.b();
        if (!feasible(A, rhs).feasible) return false;
    }
    return true;
}

bool path_is_fine(const Path& path, const ExtendedRational& delta) {
    if (delta.infinite) return true;
    const Rational bound = delta.value * delta.value;
    for (std::size_t t = 0; t + 1 < path.points.size(); ++t) {
        if (squared_norm(path.points[t + 1].point - path.points[t].point) > bound) {
            return false;
        }
    }
    return true;
}

Rational path_weight(const HybridSystem& system, const WeightedAdjacency& weights,
                     const Path& path) {
    Rational total = 0;
    for (std::size_t t = 0; t + 1 < path.points.size(); ++t) {
        const int a = path.points[t].region;
        const int b = path.points[t + 1].region;
        if (a == b) continue;
        if (!weights.is_adjacent(a, b)) {
            throw NotJumpFree("path step " + std::to_string(t) + " jumps between regions '" +
                                  system.region(a).name + "' and '" + system.region(b).name +
                                  "'",
                              a, b);
        }
        total += weights.at(a, b);
    }
    return total;
}

Path sample_fine_path(const HybridSystem& system, const RVector& x, const RVector& y,
                      const ExtendedRational& delta) {
    const int n = system.dimension();
    auto sole_region = [&system](const RVector& p) -> int {
        const auto act = active_set(system, p);
        return act.indices.size() == 1 ? act.indices.front() : -1;
    };
    const int rx = sole_region(x);
    const int ry = sole_region(y);
    if (rx < 0 || ry < 0) {
        throw Error("sample_fine_path endpoints must be strictly interior to a region");
    }
    if (!delta.infinite && delta.value <= 0) throw Error("sample_fine_path needs delta > 0");

    Path path;
    if (x == y) {
        path.points.push_back({x, rx});
        return path;
    }

    Integer steps = 1;
    if (!delta.infinite) {
        const Rational ratio = squared_norm(y - x) / (delta.value * delta.value);
        steps = ceil_sqrt(ratio);
        if (steps < 1) steps = 1;
    }

    for (Integer t = 0; t <= steps; ++t) {
        const RVector base = x + ((y - x) * Rational(t, steps)).eval();
        int region = sole_region(base);
        RVector point = base;
        if (region < 0) {
            // Boundary sample: nudge along a deterministic direction family
            // (1, c, c^2, ...) that no hyperplane can contain for every c.
            if (delta.infinite) {
                throw PerturbationFailed("interior sample on a boundary with infinite delta");
            }
            bool placed = false;
            for (int c = 1; c <= 24 && !placed; ++c) {
                RVector dir(n);
                Rational power = 1;
                Rational l1 = 0;
                for (int d = 0; d < n; ++d) {
                    dir(d) = power;
                    l1 += power;
                    power *= c;
                }
                // |offset| <= delta/4 since the 2-norm is at most the 1-norm
                const Rational scale = delta.value / (4 * l1);
                for (int s : {1, -1}) {
                    const RVector candidate = base + (dir * (scale * s)).eval();
                    const int r = sole_region(candidate);
                    if (r >= 0) {
                        point = candidate;
                        region = r;
                        placed = true;
                        break;
                    }
                }
            }
            if (!placed) {
                throw PerturbationFailed("could not move sample " + to_string(base) +
                                         " off the region boundary");
            }
        }
        path.points.push_back({point, region});
    }

    if (!path_is_jump_free(system, path)) {
        throw NotJumpFree("sampled path is not jump-free; delta exceeds the safe bound", -1, -1);
    }
    return path;
}

}  // namespace polyflow
