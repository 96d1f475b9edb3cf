#include "bem.hpp"

#include <cmath>

#include "linalg.hpp"
#include "quadrature.hpp"

namespace edp {

namespace {

bool faces_are_near(const TriangleMesh& mesh, int i, int j) {
    return (mesh.centroid(i) - mesh.centroid(j)).norm() <= quad::near_ratio * mesh.diameter(j);
}

// Kernel evaluation plan for one (row, source face) pair.
void source_rule(const TriangleMesh& mesh, int i, int j, quad::PointSet& ps) {
    ps.points.clear();
    ps.weights.clear();
    const auto tri = mesh.triangle(j);
    if (i == j) {
        quad::duffy_rule(tri, mesh.centroid(i), quad::duffy_order, ps);
    } else if (faces_are_near(mesh, i, j)) {
        quad::adaptive_rule(tri, mesh.centroid(i), quad::near_ratio, quad::near_depth, ps);
    } else {
        quad::triangle_rule(tri, ps);
    }
}

template <typename Scalar, typename KernelFn>
void assemble_blocks(const TriangleMesh& mesh, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& out,
                     KernelFn&& kernel, bool skip_diagonal) {
    const int n = mesh.face_count();
    out.setZero(3 * n, 3 * n);
#pragma omp parallel
    {
        quad::PointSet ps;
#pragma omp for schedule(dynamic, 8)
        for (int i = 0; i < n; ++i) {
            const Vec3 x = mesh.centroid(i);
            const Vec3 nu = mesh.normal(i);
            for (int j = 0; j < n; ++j) {
                if (skip_diagonal && i == j) continue;
                source_rule(mesh, i, j, ps);
                Eigen::Matrix<Scalar, 3, 3> blk = Eigen::Matrix<Scalar, 3, 3>::Zero();
                for (size_t q = 0; q < ps.points.size(); ++q)
                    blk += ps.weights[q] * kernel(x, ps.points[q], nu);
                out.template block<3, 3>(3 * i, 3 * j) = blk;
            }
        }
    }
    if (!out.allFinite()) throw QuadratureFailure("operator assembly produced non-finite entries");
}

// Diagonal completion from the translation identity K^T_w t = t/2, followed
// by the minimal rank-6 correction that restores the full rigid-motion
// adjoint identity (the static operator annihilates rigid motions exactly
// on the continuous level; the correction transfers that to the matrix).
void complete_and_restore(const TriangleMesh& mesh, MatX& K, double& rotation_residual) {
    const int n = mesh.face_count();
    const VecX w = face_weights(mesh);
    for (int j = 0; j < n; ++j) {
        Mat3 acc = Mat3::Zero();
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            acc += mesh.area(i) * K.block<3, 3>(3 * i, 3 * j);
        }
        K.block<3, 3>(3 * j, 3 * j) = 0.5 * Mat3::Identity() - acc / mesh.area(j);
    }
    const MatX G = rigid_motion_basis(mesh).generators;
    const MatX WG = w.asDiagonal() * G;
    // rotation residual before the correction: |K_w g - g/2|_w / |g|_w
    rotation_residual = 0.0;
    const MatX KtWG = K.transpose() * WG;
    for (int k = 3; k < 6; ++k) {
        const VecX num = KtWG.col(k).cwiseQuotient(w) - 0.5 * G.col(k);
        const double res = std::sqrt(num.dot(w.asDiagonal() * num) / G.col(k).dot(WG.col(k)));
        rotation_residual = std::max(rotation_residual, res);
    }
    const MatX defect = 0.5 * WG - KtWG; // 3N x 6
    const Mat6 gram = WG.transpose() * WG;
    K.noalias() += WG * gram.ldlt().solve(defect.transpose());
}

} // namespace

RigidMotionBasis rigid_motion_basis(const TriangleMesh& mesh) {
    const int n = mesh.face_count();
    MatX G(3 * n, 6);
    for (int f = 0; f < n; ++f)
        for (int k = 0; k < 6; ++k) G.block<3, 1>(3 * f, k) = rigid_generator(k, mesh.centroid(f));
    return {std::move(G)};
}

Vec3 rigid_generator(int k, const Vec3& p) {
    switch (k) {
        case 0: return {1, 0, 0};
        case 1: return {0, 1, 0};
        case 2: return {0, 0, 1};
        case 3: return {p.y(), -p.x(), 0};
        case 4: return {p.z(), 0, -p.x()};
        default: return {0, p.z(), -p.y()};
    }
}

VecX face_weights(const TriangleMesh& mesh) {
    VecX w(3 * mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) w.segment<3>(3 * f).setConstant(mesh.area(f));
    return w;
}

BoundaryOperator assemble_single_layer(const TriangleMesh& mesh, const Material& m, double omega) {
    BoundaryOperator op;
    op.kind = BoundaryOperator::Kind::SingleLayer;
    op.material = m;
    op.omega = omega;
    if (omega == 0.0) {
        assemble_blocks<double>(
            mesh, op.re, [&](const Vec3& x, const Vec3& y, const Vec3&) { return kelvin_static(x - y, m); }, false);
    } else {
        assemble_blocks<Complex>(
            mesh, op.cx, [&](const Vec3& x, const Vec3& y, const Vec3&) { return fundamental_dynamic(x - y, m, omega); },
            false);
    }
    return op;
}

BoundaryOperator assemble_np_adjoint(const TriangleMesh& mesh, const Material& m, double omega) {
    BoundaryOperator op;
    op.kind = BoundaryOperator::Kind::NpAdjoint;
    op.material = m;
    op.omega = omega;
    MatX K;
    assemble_blocks<double>(
        mesh, K, [&](const Vec3& x, const Vec3& y, const Vec3& nu) { return traction_static(x - y, nu, m); }, true);
    complete_and_restore(mesh, K, op.rotation_residual);
    if (omega == 0.0) {
        op.re = std::move(K);
        return op;
    }
    MatXc D;
    assemble_blocks<Complex>(
        mesh, D,
        [&](const Vec3& x, const Vec3& y, const Vec3& nu) { return traction_dynamic_minus_static(x - y, nu, m, omega); },
        false);
    op.cx = K.cast<Complex>() + D;
    return op;
}

BiorthogonalBasis biorthogonal_basis_from_np(const TriangleMesh& mesh, const BoundaryOperator& K0star) {
    if (!K0star.is_static() || K0star.kind != BoundaryOperator::Kind::NpAdjoint)
        throw InvalidArgument("biorthogonal basis needs the static np-adjoint operator");
    const MatX& K = K0star.re;
    const int n3 = int(K.rows());
    const VecX w = face_weights(mesh);
    const MatX G = rigid_motion_basis(mesh).generators;

    // (a) w-orthonormal rigid motions via the symmetric inverse square root.
    const Mat6 H = G.transpose() * (w.asDiagonal() * G);
    Eigen::SelfAdjointEigenSolver<Mat6> hs(H);
    if (hs.eigenvalues().minCoeff() <= 0.0)
        throw NullSpaceDimensionMismatch("rigid motions are numerically dependent on this mesh");
    const Mat6 Hm12 = hs.eigenvectors() * hs.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      hs.eigenvectors().transpose();
    const MatX xi_hat = G * Hm12;

    // (b) bordered solve of (1/2 - K*) zeta_hat = (-1/2 + K*) xi_hat with the
    // constraint zeta_hat perp_w rigid motions; the border columns span the
    // complement of the range.
    MatX rhs_top = K * xi_hat - 0.5 * xi_hat;
    MatX bord = MatX::Zero(n3 + 6, n3 + 6);
    bord.topLeftCorner(n3, n3) = 0.5 * MatX::Identity(n3, n3) - K;
    bord.topRightCorner(n3, 6) = G;
    bord.bottomLeftCorner(6, n3) = (w.asDiagonal() * G).transpose();
    MatX rhs = MatX::Zero(n3 + 6, 6);
    rhs.topRows(n3) = rhs_top;
    linalg::solve_lu(bord, rhs);
    const MatX zeta_hat = rhs.topRows(n3);
    const double mult = rhs.bottomRows(6).cwiseAbs().maxCoeff();

    // (c) shift into the null space of (-1/2 + K*).
    MatX zeta_t = zeta_hat + xi_hat;

    // (d) Gram eigendecomposition and rescaling.
    const Mat6 P = zeta_t.transpose() * (w.asDiagonal() * zeta_t);
    Eigen::SelfAdjointEigenSolver<Mat6> ps(P);
    if (ps.eigenvalues().minCoeff() <= 0.0)
        throw NullSpaceDimensionMismatch("Gram matrix of the candidate dual basis is not positive definite");
    const Mat6 T = ps.eigenvectors();
    const VecX lam = ps.eigenvalues();
    const Mat6 R = T * lam.cwiseSqrt().cwiseInverse().asDiagonal();
    const Mat6 Rt = T * lam.cwiseSqrt().asDiagonal();

    BiorthogonalBasis out;
    out.zeta = zeta_t * R;
    out.xi = xi_hat * Rt;
    out.xi_in_generators = Hm12 * Rt;
    for (int i = 0; i < 6; ++i) out.c[i] = lam(i);
    out.bordered_multiplier = mult;

    const MatX resid = K * out.zeta - 0.5 * out.zeta;
    out.max_null_residual = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double num = std::sqrt(resid.col(i).dot(w.asDiagonal() * resid.col(i)));
        const double den = std::sqrt(out.zeta.col(i).dot(w.asDiagonal() * out.zeta.col(i)));
        out.max_null_residual = std::max(out.max_null_residual, num / den);
    }
    const Mat6 bio = out.zeta.transpose() * (w.asDiagonal() * out.xi);
    out.max_biorth_error = (bio - Mat6::Identity()).cwiseAbs().maxCoeff();
    return out;
}

BiorthogonalBasis biorthogonal_basis(const TriangleMesh& mesh, const BoundaryOperator& S0,
                                     const BoundaryOperator& K0star) {
    if (!S0.is_static() || S0.kind != BoundaryOperator::Kind::SingleLayer)
        throw InvalidArgument("biorthogonal basis needs the static single-layer operator");
    return biorthogonal_basis_from_np(mesh, K0star);
}

double nullspace_gap(const BoundaryOperator& K0star, double tol) {
    if (!K0star.is_static()) throw InvalidArgument("nullspace gap is a static diagnostic");
    MatX A = K0star.re;
    A.diagonal().array() -= 0.5;
    const VecX sv = linalg::singular_values(std::move(A));
    const int n = int(sv.size());
    const double gap = sv(n - 6) / sv(n - 7); // sv descending
    if (gap > tol)
        throw NullSpaceDimensionMismatch("null space of (-1/2 + K*) is not six-dimensional: sigma6/sigma7 = " +
                                         std::to_string(gap));
    return gap;
}

} // namespace edp
