#include "polyflow/flow.hpp"

#include <algorithm>
#include <set>

#include "polyflow/errors.hpp"
#include "polyflow/linalg.hpp"

namespace polyflow {

namespace {

constexpr int kWolfeIterationCap = 100000;

bool is_zero_vector(const RVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) != 0) return false;
    }
    return true;
}

// Affine minimizer of |sum alpha_l p_l|^2 subject to sum alpha = 1 over the
// current corral, via the bordered Gram system. Null when the Gram system is
// singular, which cannot happen while the corral stays affinely independent.
std::optional<std::vector<Rational>> affine_minimizer(const std::vector<RVector>& points,
                                                      const std::vector<int>& corral) {
    const int s = static_cast<int>(corral.size());
    RMatrix M(s + 1, s + 1);
    RVector rhs(s + 1);
    M(0, 0) = 0;
    rhs(0) = 1;
    for (int a = 0; a < s; ++a) {
        M(0, a + 1) = 1;
        M(a + 1, 0) = 1;
        rhs(a + 1) = 0;
        for (int b = 0; b < s; ++b) {
            M(a + 1, b + 1) = points[corral[a]].dot(points[corral[b]]);
        }
    }
    const auto solved = solve_square(M, rhs);
    if (!solved) return std::nullopt;
    std::vector<Rational> alpha(s);
    for (int a = 0; a < s; ++a) alpha[a] = (*solved)(a + 1);
    return alpha;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<RVector>& vectors) {
    if (vectors.empty()) throw Error("min_norm_point needs at least one vector");
    const Eigen::Index dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim) throw DimensionMismatch("min_norm_point dimensions differ");
    }

    // start from the generator of smallest norm
    int start = 0;
    Rational best = squared_norm(vectors[0]);
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        const Rational q = squared_norm(vectors[i]);
        if (q < best) {
            best = q;
            start = static_cast<int>(i);
        }
    }
    std::vector<int> corral{start};
    std::vector<Rational> lambda{1};
    RVector x = vectors[start];

    for (int iter = 0; iter < kWolfeIterationCap; ++iter) {
        // major cycle: most violating generator, smallest index on ties
        const Rational xx = x.dot(x);
        int entering = -1;
        Rational lowest = xx;
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            const Rational v = vectors[j].dot(x);
            if (v < lowest) {
                lowest = v;
                entering = static_cast<int>(j);
            }
        }
        if (entering < 0) break;  // x'p_j >= x'x for all j: optimal
        corral.push_back(entering);
        lambda.push_back(0);

        // minor cycles: restore a corral with strictly positive coordinates
        for (;;) {
            const auto alpha = affine_minimizer(vectors, corral);
            if (!alpha) throw Error("internal: corral lost affine independence");
            bool inside = true;
            for (const auto& a : *alpha) {
                if (a <= 0) { inside = false; break; }
            }
            if (inside) {
                lambda = *alpha;
                x = RVector::Zero(dim);
                for (std::size_t a = 0; a < corral.size(); ++a) {
                    x += vectors[corral[a]] * lambda[a];
                }
                break;
            }
            // exact line search from lambda toward alpha
            bool have_theta = false;
            Rational theta;
            for (std::size_t a = 0; a < corral.size(); ++a) {
                if ((*alpha)[a] > 0) continue;
                const Rational denom = lambda[a] - (*alpha)[a];
                if (denom <= 0) throw Error("internal: bad line-search denominator");
                const Rational candidate = lambda[a] / denom;
                if (!have_theta || candidate < theta) {
                    theta = candidate;
                    have_theta = true;
                }
            }
            if (!have_theta || theta <= 0) {
                throw Error("internal: degenerate line search in min_norm_point");
            }
            std::vector<int> next_corral;
            std::vector<Rational> next_lambda;
            for (std::size_t a = 0; a < corral.size(); ++a) {
                const Rational nl = (1 - theta) * lambda[a] + theta * (*alpha)[a];
                if (nl > 0) {
                    next_corral.push_back(corral[a]);
                    next_lambda.push_back(nl);
                }
            }
            corral = std::move(next_corral);
            lambda = std::move(next_lambda);
            if (corral.empty()) throw Error("internal: empty corral in min_norm_point");
        }
    }

    MinNormResult out;
    out.point = x;
    out.weights.assign(vectors.size(), Rational(0));
    Rational total = 0;
    for (std::size_t a = 0; a < corral.size(); ++a) {
        out.weights[corral[a]] += lambda[a];
        total += lambda[a];
    }
    // verify the variational characterization and the combination exactly
    if (total != 1) throw Error("internal: min_norm_point weights do not sum to 1");
    RVector rebuilt = RVector::Zero(dim);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (out.weights[j] < 0) throw Error("internal: negative min_norm_point weight");
        rebuilt += vectors[j] * out.weights[j];
    }
    if (rebuilt != x) throw Error("internal: min_norm_point combination mismatch");
    const Rational xx = x.dot(x);
    for (const auto& v : vectors) {
        if (v.dot(x) < xx) throw Error("internal: min_norm_point is not optimal");
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// velocity selection shared by both simulation front ends

struct Selection {
    std::vector<int> initial_active;
    std::vector<int> final_active;
    RVector velocity;
    std::vector<std::vector<int>> trace;
    std::vector<std::pair<int, Rational>> weights;
};

template <typename DriftOf>
Selection resolve_from(const DriftOf& drift_of, std::vector<int> active) {
    Selection sel;
    sel.initial_active = active;
    sel.trace.push_back(active);
    for (;;) {
        std::vector<RVector> gens;
        gens.reserve(active.size());
        for (int i : active) gens.push_back(drift_of(i));
        const MinNormResult mn = min_norm_point(gens);
        // pieces whose value grows fastest along v stay active for t > 0+
        Rational fastest;
        bool first = true;
        std::vector<Rational> rates(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            rates[a] = -gens[a].dot(mn.point);
            if (first || rates[a] > fastest) {
                fastest = rates[a];
                first = false;
            }
        }
        std::vector<int> refined;
        for (std::size_t a = 0; a < active.size(); ++a) {
            if (rates[a] == fastest) refined.push_back(active[a]);
        }
        if (refined.size() == active.size()) {
            sel.final_active = active;
            sel.velocity = mn.point;
            for (std::size_t a = 0; a < active.size(); ++a) {
                if (mn.weights[a] != 0) sel.weights.emplace_back(active[a], mn.weights[a]);
            }
            return sel;
        }
        active = std::move(refined);
        sel.trace.push_back(active);
    }
}

// Environment for region-based simulation: membership intervals of each
// region along the segment x + t v.
struct SystemEnv {
    const HybridSystem& system;

    struct Window {
        bool possible = false;  // rows with zero velocity component all hold
        std::optional<Rational> lo;  // entry time (absent: -inf)
        std::optional<Rational> hi;  // exit time (absent: +inf)
    };

    Window window(int region, const RVector& x, const RVector& v) const {
        Window w;
        const Polyhedron& poly = system.region(region).poly;
        if (poly.trivially_infeasible()) return w;
        w.possible = true;
        for (int r = 0; r < poly.num_rows(); ++r) {
            const Rational p = poly.A().row(r).dot(x) - poly.b()(r);
            const Rational q = poly.A().row(r).dot(v);
            if (q == 0) {
                if (p > 0) { w.possible = false; return w; }
            } else if (q > 0) {
                const Rational bound = -p / q;  // t <= bound
                if (!w.hi || bound < *w.hi) w.hi = bound;
            } else {
                const Rational bound = -p / q;  // t >= bound
                if (!w.lo || bound > *w.lo) w.lo = bound;
            }
        }
        if (w.lo && w.hi && *w.lo > *w.hi) w.possible = false;
        return w;
    }

    int dimension() const { return system.dimension(); }
    std::vector<int> initial_active(const RVector& x) const {
        return active_set(system, x).indices;
    }
    RVector drift(int i) const { return system.drift(i); }

    std::vector<int> segment_active(const RVector& x, const RVector& v) const {
        std::vector<int> out;
        for (int i = 0; i < system.num_regions(); ++i) {
            const Window w = window(i, x, v);
            if (!w.possible) continue;
            const bool from_start = !w.lo || *w.lo <= 0;
            const bool into_future = !w.hi || *w.hi > 0;
            if (from_start && into_future) out.push_back(i);
        }
        return out;
    }

    std::optional<Rational> next_event(const RVector& x, const RVector& v,
                                       const std::vector<int>& segment) const {
        std::optional<Rational> best;
        for (int i = 0; i < system.num_regions(); ++i) {
            const Window w = window(i, x, v);
            if (!w.possible) continue;
            const bool member = std::find(segment.begin(), segment.end(), i) != segment.end();
            std::optional<Rational> candidate;
            if (member) {
                candidate = w.hi;  // exits after hi
            } else if (w.lo && *w.lo > 0) {
                candidate = *w.lo;  // enters at lo
            }
            if (candidate && *candidate > 0 && (!best || *candidate < *best)) {
                best = candidate;
            }
        }
        return best;
    }
};

// Environment for potential-based simulation: argmax crossings of the piece
// values along the segment.
struct PotentialEnv {
    const PWLPotential& potential;

    int dimension() const { return potential.dimension(); }
    std::vector<int> initial_active(const RVector& x) const {
        return evaluate(potential, x).argmax;
    }
    RVector drift(int i) const { return potential.pieces[i].slope; }

    std::vector<int> segment_active(const RVector& x, const RVector& v) const {
        const std::vector<int> argmax = evaluate(potential, x).argmax;
        Rational fastest;
        bool first = true;
        for (int i : argmax) {
            const Rational rate = -potential.pieces[i].slope.dot(v);
            if (first || rate > fastest) {
                fastest = rate;
                first = false;
            }
        }
        std::vector<int> out;
        for (int i : argmax) {
            if (-potential.pieces[i].slope.dot(v) == fastest) out.push_back(i);
        }
        return out;
    }

    std::optional<Rational> next_event(const RVector& x, const RVector& v,
                                       const std::vector<int>& segment) const {
        const Evaluation eval = evaluate(potential, x);
        const Rational running_rate = -potential.pieces[segment.front()].slope.dot(v);
        std::optional<Rational> best;
        for (std::size_t j = 0; j < potential.pieces.size(); ++j) {
            if (std::find(segment.begin(), segment.end(), static_cast<int>(j)) !=
                segment.end()) {
                continue;
            }
            const Rational value = -potential.pieces[j].slope.dot(x) + potential.pieces[j].offset;
            const Rational rate = -potential.pieces[j].slope.dot(v);
            if (rate <= running_rate) continue;   // can never catch the running max
            if (value >= eval.value) continue;    // ties with lower rate drop instantly
            const Rational t = (eval.value - value) / (rate - running_rate);
            if (!best || t < *best) best = t;
        }
        return best;
    }
};

template <typename Env>
Trajectory simulate_impl(const Env& env, const RVector& x0, const Rational& horizon,
                         const SimulateOptions& options) {
    if (horizon <= 0) throw Error("simulate needs a positive horizon");
    if (x0.size() != env.dimension()) throw DimensionMismatch("initial state has wrong dimension");

    Trajectory traj;
    Rational t = 0;
    RVector x = x0;
    traj.breakpoints.push_back({t, x, EventKind::Start});

    for (;;) {
        if (static_cast<long>(traj.breakpoints.size()) > options.max_events) {
            throw EventStorm("breakpoint cap exceeded; degenerate input or internal bug");
        }
        Selection sel = resolve_from([&env](int i) { return env.drift(i); },
                                     env.initial_active(x));
        // The refined set must agree with the membership seen along the
        // segment; on certified inputs it already does, on naive runs over
        // non-monotone fields the selection is re-based until consistent.
        const int rebase_cap = 2 * static_cast<int>(env.initial_active(x).size()) + 2;
        int rebase = 0;
        while (!is_zero_vector(sel.velocity)) {
            const std::vector<int> seen = env.segment_active(x, sel.velocity);
            if (seen == sel.final_active) break;
            if (++rebase > rebase_cap) {
                throw EventStorm("sliding-mode selection did not stabilize");
            }
            sel = resolve_from([&env](int i) { return env.drift(i); }, seen);
        }

        if (is_zero_vector(sel.velocity)) {
            traj.breakpoints.back().event = EventKind::Equilibrium;
            traj.terminal = Terminal::Equilibrium;
            return traj;
        }

        const std::optional<Rational> dt = env.next_event(x, sel.velocity, sel.final_active);
        const Rational remaining = horizon - t;
        if (!dt || *dt >= remaining) {
            x += (sel.velocity * remaining).eval();
            traj.breakpoints.push_back({horizon, x, EventKind::Horizon});
            traj.segment_velocity.push_back(sel.velocity);
            traj.terminal = Terminal::Horizon;
            return traj;
        }
        t += *dt;
        x += (sel.velocity * *dt).eval();
        traj.breakpoints.push_back({t, x, EventKind::Crossing});
        traj.segment_velocity.push_back(sel.velocity);
    }
}

}  // namespace

VelocityResolution resolve_velocity(const HybridSystem& system, const RVector& x) {
    const SystemEnv env{system};
    const Selection sel = resolve_from([&env](int i) { return env.drift(i); },
                                       env.initial_active(x));
    return {x, sel.initial_active, sel.velocity, sel.trace, sel.weights};
}

VelocityResolution resolve_velocity(const PWLPotential& potential, const RVector& x) {
    const PotentialEnv env{potential};
    const Selection sel = resolve_from([&env](int i) { return env.drift(i); },
                                       env.initial_active(x));
    return {x, sel.initial_active, sel.velocity, sel.trace, sel.weights};
}

Trajectory simulate(const HybridSystem& system, const RVector& x0, const Rational& horizon,
                    const SimulateOptions& options) {
    return simulate_impl(SystemEnv{system}, x0, horizon, options);
}

Trajectory simulate(const PWLPotential& potential, const RVector& x0, const Rational& horizon,
                    const SimulateOptions& options) {
    return simulate_impl(PotentialEnv{potential}, x0, horizon, options);
}

RVector Trajectory::state_at(const Rational& t) const {
    if (breakpoints.empty()) throw Error("empty trajectory");
    if (t < breakpoints.front().time) throw Error("time before trajectory start");
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        if (t <= breakpoints[k + 1].time) {
            return breakpoints[k].state +
                   (segment_velocity[k] * (t - breakpoints[k].time)).eval();
        }
    }
    if (t == breakpoints.back().time) return breakpoints.back().state;
    if (terminal == Terminal::Equilibrium) return breakpoints.back().state;
    throw Error("time beyond trajectory horizon");
}

namespace {

// ---------------------------------------------------------------------------
// proximal step

// Solves the stationarity system for a hypothesized active set S: the convex
// weights lambda over S with sum 1 and equal piece values at
// z = x + h * sum lambda_l mu_l. Returns z when the system is regular, the
// weights are nonnegative, and S is contained in the argmax at z; the
// verification makes wrong hypotheses harmless.
std::optional<RVector> try_active_set(const PWLPotential& potential, const RVector& x,
                                      const Rational& h, const std::vector<int>& S) {
    const int r = static_cast<int>(S.size());
    RMatrix M(r, r);
    RVector rhs(r);
    for (int c = 0; c < r; ++c) M(0, c) = 1;
    rhs(0) = 1;
    const RVector& mu0 = potential.pieces[S[0]].slope;
    const Rational b0 = potential.pieces[S[0]].offset;
    for (int e = 1; e < r; ++e) {
        const RVector diff = mu0 - potential.pieces[S[e]].slope;
        for (int c = 0; c < r; ++c) {
            M(e, c) = -h * diff.dot(potential.pieces[S[c]].slope);
        }
        rhs(e) = diff.dot(x) - (b0 - potential.pieces[S[e]].offset);
    }
    const auto solved = solve_square(M, rhs);
    if (!solved) return std::nullopt;
    RVector w = RVector::Zero(x.size());
    for (int c = 0; c < r; ++c) {
        if ((*solved)(c) < 0) return std::nullopt;
        w += potential.pieces[S[c]].slope * (*solved)(c);
    }
    const RVector z = x + (w * h).eval();
    const Evaluation eval = evaluate(potential, z);
    for (int s : S) {
        if (-potential.pieces[s].slope.dot(z) + potential.pieces[s].offset != eval.value) {
            return std::nullopt;
        }
    }
    return z;
}

std::optional<RVector> prox_by_enumeration(const PWLPotential& potential, const RVector& x,
                                           const Rational& h) {
    const int k = static_cast<int>(potential.pieces.size());
    // subsets ordered by size then lexicographically; the prox is unique, so
    // the first verified hypothesis is the answer
    for (int size = 1; size <= k; ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        for (;;) {
            if (const auto z = try_active_set(potential, x, h, pick)) return z;
            int at = size - 1;
            while (at >= 0 && pick[at] == k - size + at) --at;
            if (at < 0) break;
            ++pick[at];
            for (int i = at + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace

RVector prox_step(const PWLPotential& potential, const RVector& x, const Rational& h) {
    if (h <= 0) throw Error("prox_step needs h > 0");
    if (x.size() != potential.dimension()) {
        throw DimensionMismatch("prox_step point has wrong dimension");
    }
    const int k = static_cast<int>(potential.pieces.size());
    if (k > 12) {
        // exact active-set iteration, falling back to enumeration when the
        // hypothesized system degenerates
        std::vector<int> S{evaluate(potential, x).argmax.front()};
        for (int iter = 0; iter < 200; ++iter) {
            const int r = static_cast<int>(S.size());
            RMatrix M(r, r);
            RVector rhs(r);
            for (int c = 0; c < r; ++c) M(0, c) = 1;
            rhs(0) = 1;
            const RVector& mu0 = potential.pieces[S[0]].slope;
            const Rational b0 = potential.pieces[S[0]].offset;
            for (int e = 1; e < r; ++e) {
                const RVector diff = mu0 - potential.pieces[S[e]].slope;
                for (int c = 0; c < r; ++c) {
                    M(e, c) = -h * diff.dot(potential.pieces[S[c]].slope);
                }
                rhs(e) = diff.dot(x) - (b0 - potential.pieces[S[e]].offset);
            }
            const auto solved = solve_square(M, rhs);
            if (!solved) break;
            int worst = -1;
            for (int c = 0; c < r; ++c) {
                if ((*solved)(c) < 0 && (worst < 0 || (*solved)(c) < (*solved)(worst))) {
                    worst = c;
                }
            }
            if (worst >= 0) {
                S.erase(S.begin() + worst);
                continue;
            }
            RVector w = RVector::Zero(x.size());
            for (int c = 0; c < r; ++c) w += potential.pieces[S[c]].slope * (*solved)(c);
            const RVector z = x + (w * h).eval();
            const Rational value_s = -mu0.dot(z) + b0;
            int add = -1;
            Rational worst_violation = 0;
            for (int j = 0; j < k; ++j) {
                if (std::find(S.begin(), S.end(), j) != S.end()) continue;
                const Rational v = -potential.pieces[j].slope.dot(z) +
                                   potential.pieces[j].offset;
                if (v > value_s && (add < 0 || v - value_s > worst_violation)) {
                    add = j;
                    worst_violation = v - value_s;
                }
            }
            if (add < 0) return z;
            S.push_back(add);
            std::sort(S.begin(), S.end());
        }
    }
    if (const auto z = prox_by_enumeration(potential, x, h)) return *z;
    throw Error("internal: proximal step found no consistent active set");
}

std::vector<std::pair<Rational, RVector>> proximal_trajectory(const PWLPotential& potential,
                                                              const RVector& x0,
                                                              const Rational& horizon,
                                                              const Rational& h) {
    if (h <= 0) throw Error("proximal_trajectory needs h > 0");
    if (horizon <= 0) throw Error("proximal_trajectory needs a positive horizon");
    const Integer steps = rational_ceil(horizon / h);
    std::vector<std::pair<Rational, RVector>> out;
    out.emplace_back(0, x0);
    RVector x = x0;
    for (Integer k = 1; k <= steps; ++k) {
        x = prox_step(potential, x, h);
        out.emplace_back(Rational(k) * h, x);
    }
    return out;
}

DistanceReport check_nonexpansive_trajectories(const Trajectory& a, const Trajectory& b) {
    auto reach = [](const Trajectory& t) -> std::optional<Rational> {
        if (t.terminal == Terminal::Equilibrium) return std::nullopt;  // persists forever
        return t.breakpoints.back().time;
    };
    const auto ra = reach(a);
    const auto rb = reach(b);
    Rational end;
    if (ra && rb) end = std::min(*ra, *rb);
    else if (ra) end = *ra;
    else if (rb) end = *rb;
    else end = std::max(a.breakpoints.back().time, b.breakpoints.back().time);

    std::set<Rational> times;
    times.insert(0);
    times.insert(end);
    for (const auto& bp : a.breakpoints) {
        if (bp.time <= end) times.insert(bp.time);
    }
    for (const auto& bp : b.breakpoints) {
        if (bp.time <= end) times.insert(bp.time);
    }
    std::vector<Rational> grid(times.begin(), times.end());
    std::vector<Rational> sampled;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        sampled.push_back(grid[i]);
        sampled.push_back((grid[i] + grid[i + 1]) / 2);  // segment midpoints
    }
    sampled.push_back(grid.back());

    DistanceReport report;
    report.max_increment = 0;
    Rational previous;
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        const Rational d2 = squared_norm(a.state_at(sampled[i]) - b.state_at(sampled[i]));
        report.samples.emplace_back(sampled[i], d2);
        if (i > 0) {
            const Rational inc = d2 - previous;
            if (inc > report.max_increment) report.max_increment = inc;
        }
        previous = d2;
    }
    return report;
}

}  // namespace polyflow
