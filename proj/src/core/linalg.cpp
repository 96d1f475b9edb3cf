#include "linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

namespace edp::linalg {

namespace {

[[noreturn]] void lapack_fail(const char* routine, lapack_int info) {
    throw Error(std::string(routine) + " failed with info = " + std::to_string(info));
}

} // namespace

void solve_lu(MatX& A, MatX& B) {
    const lapack_int n = lapack_int(A.rows());
    const lapack_int nrhs = lapack_int(B.cols());
    std::vector<lapack_int> ipiv(n);
    const lapack_int info =
        LAPACKE_dgesv(LAPACK_COL_MAJOR, n, nrhs, A.data(), n, ipiv.data(), B.data(), lapack_int(B.rows()));
    if (info != 0) lapack_fail("dgesv", info);
}

ComplexSolveInfo solve_lu_cond(MatXc A, const VecXc& b, VecXc& x, double rcond_floor) {
    const lapack_int n = lapack_int(A.rows());
    const double anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', n, n, reinterpret_cast<lapack_complex_double*>(A.data()), n);
    MatXc LU = A;
    std::vector<lapack_int> ipiv(n);
    lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, reinterpret_cast<lapack_complex_double*>(LU.data()), n,
                                     ipiv.data());
    ComplexSolveInfo out{0.0, false};
    if (info == 0) {
        double rcond = 0.0;
        info = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, reinterpret_cast<lapack_complex_double*>(LU.data()), n, anorm,
                              &rcond);
        if (info != 0) lapack_fail("zgecon", info);
        out.rcond = rcond;
        if (rcond > rcond_floor) {
            x = b;
            info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, reinterpret_cast<lapack_complex_double*>(LU.data()), n,
                                  ipiv.data(), reinterpret_cast<lapack_complex_double*>(x.data()), n);
            if (info != 0) lapack_fail("zgetrs", info);
            return out;
        }
    }
    // Truncated least-squares fallback for (near-)singular systems.
    out.used_lstsq = true;
    MatXc Awork = A;
    x = b;
    VecX sv(n);
    lapack_int rank = 0;
    info = LAPACKE_zgelsd(LAPACK_COL_MAJOR, n, n, 1, reinterpret_cast<lapack_complex_double*>(Awork.data()), n,
                          reinterpret_cast<lapack_complex_double*>(x.data()), n, sv.data(), rcond_floor, &rank);
    if (info != 0) lapack_fail("zgelsd", info);
    return out;
}

VecX singular_values(MatX A) {
    const lapack_int mrows = lapack_int(A.rows()), ncols = lapack_int(A.cols());
    VecX sv(std::min(mrows, ncols));
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', mrows, ncols, A.data(), mrows, sv.data(), nullptr, 1,
                                           nullptr, 1);
    if (info != 0) lapack_fail("dgesdd", info);
    return sv;
}

VecXc eigenvalues(MatX A) {
    const lapack_int n = lapack_int(A.rows());
    VecX wr(n), wi(n);
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, wr.data(), wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0) lapack_fail("dgeev", info);
    VecXc out(n);
    for (lapack_int i = 0; i < n; ++i) out(i) = Complex(wr(i), wi(i));
    return out;
}

} // namespace edp::linalg
