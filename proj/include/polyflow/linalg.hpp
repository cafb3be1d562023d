#ifndef POLYFLOW_LINALG_HPP
#define POLYFLOW_LINALG_HPP

#include <optional>

#include "polyflow/rational.hpp"

namespace polyflow {

/// Solves the square system M x = rhs exactly by Gauss-Jordan elimination.
/// Returns nullopt when M is singular.
std::optional<RVector> solve_square(const RMatrix& M, const RVector& rhs);

}  // namespace polyflow

#endif  // POLYFLOW_LINALG_HPP
