#ifndef POLYFLOW_FLOW_HPP
#define POLYFLOW_FLOW_HPP

#include <optional>
#include <utility>
#include <vector>

#include "polyflow/potential.hpp"
#include "polyflow/tiling.hpp"

namespace polyflow {

struct MinNormResult {
    RVector point;
    /// Convex combination weights aligned with the input list; the support
    /// reproduces `point` exactly.
    std::vector<Rational> weights;
};

/// Unique minimum-Euclidean-norm point of the convex hull of the given
/// vectors, computed exactly in rationals with Wolfe's minimum-norm-point
/// algorithm (major cycles add the most violating generator, minor cycles
/// restore a corral by exact line search). The result is verified against
/// the variational characterization before returning.
MinNormResult min_norm_point(const std::vector<RVector>& vectors);

/// Velocity selection at a point: the minimum-norm element of the hull of
/// the active drifts, refined by iteratively discarding pieces whose value
/// does not grow fastest along the candidate velocity (those leave the
/// active set immediately for t > 0).
struct VelocityResolution {
    RVector point;
    std::vector<int> active;    // active indices at the point
    RVector velocity;           // element of Conv{drifts of the final set}
    std::vector<std::vector<int>> refinement_trace;  // strictly shrinking
    std::vector<std::pair<int, Rational>> weights;   // convex combination
};

VelocityResolution resolve_velocity(const HybridSystem& system, const RVector& x);
VelocityResolution resolve_velocity(const PWLPotential& potential, const RVector& x);

enum class Terminal { Horizon, Equilibrium };
enum class EventKind { Start, Crossing, Equilibrium, Horizon };

struct Breakpoint {
    Rational time;
    RVector state;
    EventKind event;
};

/// Exact piecewise-linear trajectory. Between consecutive breakpoints the
/// state is affine with the stored segment velocity; times strictly increase
/// from 0. Terminal Equilibrium means the final velocity is the zero vector.
struct Trajectory {
    std::vector<Breakpoint> breakpoints;
    std::vector<RVector> segment_velocity;  // one per consecutive pair
    Terminal terminal = Terminal::Horizon;

    /// State at any time up to the final breakpoint; equilibria persist
    /// beyond their last breakpoint.
    RVector state_at(const Rational& t) const;
};

struct SimulateOptions {
    long max_events = 1000000;
};

/// Event-driven integration of the hybrid dynamics from x0 up to horizon T.
/// Segment velocities come from the minimum-norm selection; the next
/// breakpoint is the exact rational root of the earliest affine membership
/// (or argmax) change along the segment. Equilibrium is declared exactly
/// when the resolved velocity is zero. The caller is responsible for
/// certifying the system first; on uncertified fields the selection is the
/// same naive rule and need not be nonexpansive.
Trajectory simulate(const HybridSystem& system, const RVector& x0, const Rational& horizon,
                    const SimulateOptions& options = {});
Trajectory simulate(const PWLPotential& potential, const RVector& x0, const Rational& horizon,
                    const SimulateOptions& options = {});

/// One implicit-Euler step: argmin_z Phi(z) + |z - x|^2 / (2h), solved
/// exactly. Candidate active sets are enumerated for up to 12 pieces and
/// explored by an exact active-set iteration above that.
RVector prox_step(const PWLPotential& potential, const RVector& x, const Rational& h);

/// Proximal-point discretization with ceil(T/h) steps; the independent
/// oracle for the event-driven integrator.
std::vector<std::pair<Rational, RVector>> proximal_trajectory(const PWLPotential& potential,
                                                              const RVector& x0,
                                                              const Rational& horizon,
                                                              const Rational& h);

struct DistanceReport {
    /// Largest positive jump of the squared distance across the sample
    /// sequence; exactly 0 for a nonexpansive pair.
    Rational max_increment;
    std::vector<std::pair<Rational, Rational>> samples;  // (time, squared distance)
};

/// Evaluates the exact squared distance between two trajectories at the
/// merged breakpoints plus every segment midpoint and reports the largest
/// positive increment along that ordered sequence.
DistanceReport check_nonexpansive_trajectories(const Trajectory& a, const Trajectory& b);

}  // namespace polyflow

#endif  // POLYFLOW_FLOW_HPP
