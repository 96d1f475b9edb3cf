#ifndef ELASTODIPOLE_LINALG_HPP
#define ELASTODIPOLE_LINALG_HPP

#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace edp::linalg {

/// In-place LU solve A X = B (A square, column-major; both overwritten).
/// Returns the solution in B's storage.
void solve_lu(MatX& A, MatX& B);

struct ComplexSolveInfo {
    double rcond;        ///< reciprocal condition estimate from the LU factors
    bool used_lstsq;     ///< true when the truncated least-squares fallback ran
};

/// LU solve for a complex system with a condition estimate; when rcond falls
/// below rcond_floor the routine redoes the solve via SVD-truncated least
/// squares (zgelsd) instead of failing.
ComplexSolveInfo solve_lu_cond(MatXc A, const VecXc& b, VecXc& x, double rcond_floor);

/// Singular values of A, descending.
VecX singular_values(MatX A);

/// Eigenvalues of a general real square matrix.
VecXc eigenvalues(MatX A);

} // namespace edp::linalg

#endif
