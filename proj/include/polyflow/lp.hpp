#ifndef POLYFLOW_LP_HPP
#define POLYFLOW_LP_HPP

#include "polyflow/rational.hpp"

namespace polyflow {

enum class Sense { Maximize, Minimize };
enum class LPStatus { Optimal, Unbounded, Infeasible };

/// Outcome of an exact LP solve over {x : Ax <= b} with x free.
/// Exactly one payload is populated per status:
///  - Optimal:    optimal_point, optimal_value, and a verified dual vector y
///                with y >= 0, A'y = c (max sense) and y'b = optimal_value.
///  - Unbounded:  ray with A*ray <= 0 and objective strictly improving along
///                it (c'ray > 0 when maximizing, < 0 when minimizing).
///  - Infeasible: certificate y with y >= 0, y'A = 0, y'b < 0.
struct LPOutcome {
    LPStatus status = LPStatus::Optimal;
    RVector optimal_point;
    Rational optimal_value;
    RVector dual;
    RVector ray;
    RVector certificate;
};

/// Dense two-phase simplex with Bland's anti-cycling rule over exact
/// rationals. Deterministic: identical inputs give bit-identical outputs.
/// Throws DimensionMismatch on inconsistent operand shapes; every other
/// result is a legal LPOutcome.
LPOutcome solve_lp(const RVector& objective, const RMatrix& constraints_A,
                   const RVector& constraints_b, Sense sense);

struct FeasibilityResult {
    bool feasible = false;
    RVector point;        // satisfies Ax <= b exactly when feasible
    RVector certificate;  // Farkas vector otherwise
};

/// Exact feasibility of {x : Ax <= b}.
FeasibilityResult feasible(const RMatrix& constraints_A, const RVector& constraints_b);

struct InteriorWitness {
    bool nonempty_interior = false;
    RVector point;    // strictly interior when nonempty_interior
    Rational margin;  // attained slack t* (capped at 1); meaningful when feasible
};

/// Solves max t s.t. Ax + t*1 <= b, t <= 1. The interior is nonempty iff
/// the optimum t* is positive; the cap keeps the program bounded and only
/// the sign of t* matters.
InteriorWitness interior_witness(const RMatrix& constraints_A, const RVector& constraints_b);

}  // namespace polyflow

#endif  // POLYFLOW_LP_HPP
