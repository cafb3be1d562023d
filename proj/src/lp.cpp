#include "polyflow/lp.hpp"

#include <optional>
#include <vector>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

// Two-phase primal simplex on the equality standard form of
//     optimize c'x  s.t.  Ax <= b,  x free.
// Free variables split as x = xp - xn; slacks s turn rows into equalities;
// rows are sign-flipped so the right-hand side is nonnegative; phase 1 then
// starts from the all-artificial basis. Column order:
//     [ xp_0..xp_{n-1} | xn_0..xn_{n-1} | s_0..s_{m-1} | a_0..a_{m-1} ]
// Bland's smallest-index rule is used for entering and (via basis-variable
// index) leaving ties, which guarantees termination and determinism.
class Simplex {
  public:
    Simplex(const RMatrix& A, const RVector& b) : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())) {
        sign_.assign(m_, 1);
        num_structural_ = 2 * n_ + m_;
        cols_ = num_structural_ + m_;
        tab_ = RMatrix::Zero(m_, cols_);
        rhs_ = RVector::Zero(m_);
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            if (b(i) < 0) sign_[i] = -1;
            const Rational s(sign_[i]);
            for (int j = 0; j < n_; ++j) {
                tab_(i, j) = s * A(i, j);
                tab_(i, n_ + j) = -s * A(i, j);
            }
            tab_(i, 2 * n_ + i) = s;          // slack
            tab_(i, num_structural_ + i) = 1; // artificial
            rhs_(i) = s * b(i);
            basis_[i] = num_structural_ + i;
        }
    }

    // Returns false when the constraint system is infeasible; in that case
    // farkas() yields the certificate.
    bool phase1() {
        RVector cost = RVector::Zero(cols_);
        for (int i = 0; i < m_; ++i) cost(num_structural_ + i) = 1;
        const int unbounded_col = run(cost, cols_);
        if (unbounded_col >= 0) {
            // min of a sum of nonnegative variables cannot be unbounded
            throw Error("internal: phase-1 simplex reported unbounded");
        }
        Rational value = 0;
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] >= num_structural_) value += rhs_(i);
        }
        if (value > 0) {
            // Infeasible. The phase-1 duals read off the slack columns give
            // the Farkas vector: reduced cost of slack i equals -sign_i*y_i.
            farkas_ = RVector(m_);
            const RVector reduced = reduced_costs(cost);
            for (int i = 0; i < m_; ++i) (*farkas_)(i) = reduced(2 * n_ + i);
            return false;
        }
        drive_out_artificials();
        return true;
    }

    // Runs phase 2 for min cost'z restricted to structural columns.
    // Returns the entering column index if unbounded, -1 at optimality.
    int phase2(const RVector& structural_cost) {
        cost2_ = RVector::Zero(cols_);
        for (int j = 0; j < num_structural_; ++j) cost2_(j) = structural_cost(j);
        return run(cost2_, num_structural_);
    }

    RVector extract_point() const {
        RVector x = RVector::Zero(n_);
        for (int i = 0; i < m_; ++i) {
            const int v = basis_[i];
            if (v < n_) x(v) += rhs_(i);
            else if (v < 2 * n_) x(v - n_) -= rhs_(i);
        }
        return x;
    }

    // Recession direction of {z >= 0, eq rows} increasing along `col`, mapped
    // back to the free variables x.
    RVector extract_ray(int col) const {
        RVector d = RVector::Zero(cols_);
        d(col) = 1;
        for (int i = 0; i < m_; ++i) d(basis_[i]) = -tab_(i, col);
        RVector ray(n_);
        for (int j = 0; j < n_; ++j) ray(j) = d(j) - d(n_ + j);
        return ray;
    }

    // Dual multipliers for Ax <= b at phase-2 optimality, read off the slack
    // reduced costs.
    RVector extract_dual() const {
        const RVector reduced = reduced_costs(cost2_);
        RVector y(m_);
        for (int i = 0; i < m_; ++i) y(i) = reduced(2 * n_ + i);
        return y;
    }

    const RVector& farkas() const { return *farkas_; }
    int num_rows() const { return m_; }

  private:
    RVector reduced_costs(const RVector& cost) const {
        RVector reduced = cost;
        for (int i = 0; i < m_; ++i) {
            const Rational cb = cost(basis_[i]);
            if (cb == 0) continue;
            for (int j = 0; j < cols_; ++j) {
                if (tab_(i, j) != 0) reduced(j) -= cb * tab_(i, j);
            }
        }
        return reduced;
    }

    void pivot(int row, int col) {
        const Rational p = tab_(row, col);
        for (int j = 0; j < cols_; ++j) tab_(row, j) /= p;
        rhs_(row) /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const Rational f = tab_(i, col);
            if (f == 0) continue;
            for (int j = 0; j < cols_; ++j) {
                if (tab_(row, j) != 0) tab_(i, j) -= f * tab_(row, j);
            }
            rhs_(i) -= f * rhs_(row);
        }
        basis_[row] = col;
    }

    // Bland loop minimizing cost'z over columns [0, admissible). Returns the
    // entering column when unbounded, -1 at optimality.
    int run(const RVector& cost, int admissible) {
        for (;;) {
            const RVector reduced = reduced_costs(cost);
            int entering = -1;
            for (int j = 0; j < admissible; ++j) {
                if (reduced(j) < 0) { entering = j; break; }
            }
            if (entering < 0) return -1;
            int leave_row = -1;
            for (int i = 0; i < m_; ++i) {
                if (tab_(i, entering) <= 0) continue;
                if (leave_row < 0) { leave_row = i; continue; }
                const Rational lhs = rhs_(i) * tab_(leave_row, entering);
                const Rational rhs = rhs_(leave_row) * tab_(i, entering);
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave_row])) {
                    leave_row = i;
                }
            }
            if (leave_row < 0) return entering;
            pivot(leave_row, entering);
        }
    }

    // After a zero-value phase 1, remove artificials from the basis so that
    // phase-2 rays and duals never touch artificial columns. Every row owns a
    // slack with nonzero coefficient, so a replacement column always exists.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < num_structural_) continue;
            int col = -1;
            for (int j = 0; j < num_structural_; ++j) {
                if (tab_(i, j) != 0) { col = j; break; }
            }
            if (col < 0) throw Error("internal: tableau row with no structural pivot");
            pivot(i, col);
        }
    }

    int m_;
    int n_;
    int num_structural_;
    int cols_;
    std::vector<int> sign_;
    RMatrix tab_;
    RVector rhs_;
    std::vector<int> basis_;
    RVector cost2_;
    std::optional<RVector> farkas_;
};

void check_dimensions(const RVector& c, const RMatrix& A, const RVector& b) {
    if (A.cols() != c.size()) {
        throw DimensionMismatch("objective length " + std::to_string(c.size()) +
                                " does not match constraint columns " + std::to_string(A.cols()));
    }
    if (A.rows() != b.size()) {
        throw DimensionMismatch("right-hand side length " + std::to_string(b.size()) +
                                " does not match constraint rows " + std::to_string(A.rows()));
    }
}

void verify_optimal(const RVector& c_max, const RMatrix& A, const RVector& b,
                    const RVector& x, const Rational& value_max, const RVector& y) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (A.row(i).dot(x) > b(i)) throw Error("internal: LP optimum violates a constraint");
        if (y(i) < 0) throw Error("internal: LP dual has a negative multiplier");
    }
    if (c_max.dot(x) != value_max) throw Error("internal: LP value mismatch");
    const RVector aty = A.transpose() * y;
    for (Eigen::Index j = 0; j < c_max.size(); ++j) {
        if (aty(j) != c_max(j)) throw Error("internal: LP dual is not feasible");
    }
    if (y.dot(b) != value_max) throw Error("internal: LP strong duality violated");
}

}  // namespace

LPOutcome solve_lp(const RVector& objective, const RMatrix& constraints_A,
                   const RVector& constraints_b, Sense sense) {
    check_dimensions(objective, constraints_A, constraints_b);
    const int n = static_cast<int>(constraints_A.cols());
    const RVector c_max = sense == Sense::Maximize ? objective : RVector(-objective);

    Simplex simplex(constraints_A, constraints_b);
    LPOutcome out;
    if (!simplex.phase1()) {
        out.status = LPStatus::Infeasible;
        out.certificate = simplex.farkas();
        for (Eigen::Index i = 0; i < out.certificate.size(); ++i) {
            if (out.certificate(i) < 0) throw Error("internal: negative Farkas multiplier");
        }
        RVector yta = constraints_A.transpose() * out.certificate;
        for (int j = 0; j < n; ++j) {
            if (yta(j) != 0) throw Error("internal: Farkas certificate not in the left kernel");
        }
        if (out.certificate.dot(constraints_b) >= 0) {
            throw Error("internal: Farkas certificate does not witness infeasibility");
        }
        return out;
    }

    // Phase-2 cost (minimization form of max c_max'x): -c on xp, +c on xn.
    RVector structural_cost = RVector::Zero(2 * n + simplex.num_rows());
    for (int j = 0; j < n; ++j) {
        structural_cost(j) = -c_max(j);
        structural_cost(n + j) = c_max(j);
    }
    const int unbounded_col = simplex.phase2(structural_cost);
    if (unbounded_col >= 0) {
        out.status = LPStatus::Unbounded;
        out.ray = simplex.extract_ray(unbounded_col);
        const RVector ar = constraints_A * out.ray;
        for (Eigen::Index i = 0; i < ar.size(); ++i) {
            if (ar(i) > 0) throw Error("internal: ray is not a recession direction");
        }
        if (c_max.dot(out.ray) <= 0) throw Error("internal: ray does not improve the objective");
        return out;
    }

    out.status = LPStatus::Optimal;
    out.optimal_point = simplex.extract_point();
    const Rational value_max = c_max.dot(out.optimal_point);
    out.dual = simplex.extract_dual();
    verify_optimal(c_max, constraints_A, constraints_b, out.optimal_point, value_max, out.dual);
    out.optimal_value = sense == Sense::Maximize ? value_max : Rational(-value_max);
    return out;
}

FeasibilityResult feasible(const RMatrix& constraints_A, const RVector& constraints_b) {
    const RVector zero = RVector::Zero(constraints_A.cols());
    const LPOutcome lp = solve_lp(zero, constraints_A, constraints_b, Sense::Maximize);
    FeasibilityResult out;
    if (lp.status == LPStatus::Optimal) {
        out.feasible = true;
        out.point = lp.optimal_point;
    } else {
        out.feasible = false;
        out.certificate = lp.certificate;
    }
    return out;
}

InteriorWitness interior_witness(const RMatrix& constraints_A, const RVector& constraints_b) {
    if (constraints_A.rows() != constraints_b.size()) {
        throw DimensionMismatch("interior_witness: rows of A and length of b differ");
    }
    const int m = static_cast<int>(constraints_A.rows());
    const int n = static_cast<int>(constraints_A.cols());
    RMatrix A(m + 1, n + 1);
    RVector b(m + 1);
    A.setZero();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = constraints_A(i, j);
        A(i, n) = 1;
        b(i) = constraints_b(i);
    }
    A(m, n) = 1;  // t <= 1 keeps the program bounded; only the sign of t* matters
    b(m) = 1;
    RVector c = RVector::Zero(n + 1);
    c(n) = 1;
    const LPOutcome lp = solve_lp(c, A, b, Sense::Maximize);
    InteriorWitness out;
    if (lp.status != LPStatus::Optimal) {
        out.nonempty_interior = false;  // infeasible: the set itself is empty
        return out;
    }
    out.margin = lp.optimal_value;
    out.nonempty_interior = lp.optimal_value > 0;
    out.point = lp.optimal_point.head(n);
    return out;
}

}  // namespace polyflow
