#include "polyflow/linalg.hpp"

#include "polyflow/errors.hpp"

namespace polyflow {

std::optional<RVector> solve_square(const RMatrix& M, const RVector& rhs) {
    const Eigen::Index n = M.rows();
    if (M.cols() != n || rhs.size() != n) {
        throw DimensionMismatch("solve_square expects a square system");
    }
    RMatrix a = M;
    RVector b = rhs;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (a(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            std::swap(b(pivot), b(col));
        }
        const Rational p = a(col, col);
        for (Eigen::Index j = col; j < n; ++j) a(col, j) /= p;
        b(col) /= p;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            for (Eigen::Index j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b(r) -= f * b(col);
        }
    }
    return b;
}

}  // namespace polyflow
