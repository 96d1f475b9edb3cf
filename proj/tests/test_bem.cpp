#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/bem.hpp"
#include "core/linalg.hpp"
#include "core/sphere_oracle.hpp"

using namespace edp;

namespace {

const Material unit = validate_material(1.0, 1.0, 1.0);

double wdot(const VecX& w, const VecX& a, const VecX& b) { return a.dot(w.asDiagonal() * b); }

// discrete T1m-type pattern: rotation generator sampled at centroids
VecX rotation_pattern(const TriangleMesh& mesh, int axis) {
    VecX v(3 * mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) v.segment<3>(3 * f) = rigid_generator(3 + axis, mesh.centroid(f));
    return v;
}

VecX translation_pattern(const TriangleMesh& mesh, int axis) {
    VecX v = VecX::Zero(3 * mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) v(3 * f + axis) = 1.0;
    return v;
}

double rayleigh(const MatX& A, const VecX& w, const VecX& v) { return wdot(w, A * v, v) / wdot(w, v, v); }

} // namespace

TEST_CASE("rigid motion basis") {
    const TriangleMesh mesh = icosphere(1.0, 1);
    const MatX G = rigid_motion_basis(mesh).generators;
    CHECK(G.block<3, 1>(0, 0).isApprox(Vec3(1, 0, 0)));
    const Vec3 c = mesh.centroid(7);
    CHECK(G.block<3, 1>(21, 3).isApprox(Vec3(c.y(), -c.x(), 0.0)));
    const VecX w = face_weights(mesh);
    const Mat6 gram = G.transpose() * (w.asDiagonal() * G);
    CHECK(Eigen::FullPivLU<Mat6>(gram).rank() == 6);
}

TEST_CASE("static sphere eigen-patterns of the single layer") {
    // S0[T1m pattern] ~= f1 * pattern and S0[I0m pattern] ~= g1 * pattern
    // with f1 = -R/(3mu) = -1/3 and g1 = -(2l+5m)R/(3m(l+2m)) = -7/9
    const TriangleMesh mesh = icosphere(1.0, 2);
    const BoundaryOperator S0 = assemble_single_layer(mesh, unit, 0.0);
    const VecX w = face_weights(mesh);
    for (int axis = 0; axis < 3; ++axis) {
        CHECK(rayleigh(S0.re, w, rotation_pattern(mesh, axis)) == doctest::Approx(-1.0 / 3.0).epsilon(0.02));
        CHECK(rayleigh(S0.re, w, translation_pattern(mesh, axis)) == doctest::Approx(-7.0 / 9.0).epsilon(0.02));
    }
}

TEST_CASE("single layer converges to the sphere eigenvalue at first order") {
    double prev_err = 0.0;
    std::vector<double> errs;
    for (int subdiv : {1, 2, 3}) {
        const TriangleMesh mesh = icosphere(1.0, subdiv);
        const BoundaryOperator S0 = assemble_single_layer(mesh, unit, 0.0);
        const VecX w = face_weights(mesh);
        errs.push_back(std::abs(rayleigh(S0.re, w, rotation_pattern(mesh, 0)) + 1.0 / 3.0));
    }
    const double slope = std::log(errs[0] / errs[2]) / std::log(4.0);
    CHECK(slope > 0.8);
    CHECK(errs[0] > errs[1]);
    CHECK(errs[1] > errs[2]);
    (void)prev_err;
}

TEST_CASE("static single layer is symmetric up to quadrature error") {
    const TriangleMesh mesh = icosphere(1.0, 1);
    const MatX& A = assemble_single_layer(mesh, unit, 0.0).re;
    CHECK((A - A.transpose()).norm() / A.norm() < 1e-3);
}

TEST_CASE("frequency derivative of the single layer is the constant kernel") {
    // (S^w - S^0)/w applied to a random density equals the rank-style
    // constant operator -(i/(12 pi)) (2/(mu cs) + 1/((lambda+2mu) cp)) Int phi
    const TriangleMesh mesh = icosphere(1.0, 1);
    const Material m = validate_material(1.4, 0.9, 1.2);
    const double w = 1e-4;
    const MatXc Sw = assemble_single_layer(mesh, m, w).cx;
    const MatX S0 = assemble_single_layer(mesh, m, 0.0).re;
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    VecXc phi(3 * mesh.face_count());
    for (int i = 0; i < phi.size(); ++i) phi(i) = Complex(g(rng), g(rng));
    const VecXc lhs = (Sw * phi - S0 * phi) / w;
    const Complex coef =
        Complex(0, -1.0 / (12.0 * pi)) * (2.0 / (m.mu * m.cs()) + 1.0 / ((m.lambda_ + 2.0 * m.mu) * m.cp()));
    Vec3c integral = Vec3c::Zero();
    for (int f = 0; f < mesh.face_count(); ++f) integral += mesh.area(f) * phi.segment<3>(3 * f);
    VecXc rhs(lhs.size());
    for (int f = 0; f < mesh.face_count(); ++f) rhs.segment<3>(3 * f) = coef * integral;
    CHECK((lhs - rhs).norm() / rhs.norm() < 0.01);
}

TEST_CASE("np adjoint null-space structure") {
    const TriangleMesh mesh = icosphere(1.0, 1);
    const BoundaryOperator K0 = assemble_np_adjoint(mesh, unit, 0.0);
    // rotation diagnostic measured before the rigid-motion restoration
    CHECK(K0.rotation_residual > 0.0);
    CHECK(K0.rotation_residual < 0.02);
    // after restoration the six smallest singular values collapse
    MatX A = K0.re;
    A.diagonal().array() -= 0.5;
    const VecX sv = linalg::singular_values(A);
    const int n = int(sv.size());
    CHECK(sv(n - 6) / sv(n - 7) < 1e-10);
    CHECK_NOTHROW(nullspace_gap(K0));

    // sphere eigen-pattern: K*[T1m pattern] ~= pattern / 2
    const VecX w = face_weights(mesh);
    CHECK(rayleigh(K0.re, w, rotation_pattern(mesh, 1)) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(rayleigh(K0.re, w, translation_pattern(mesh, 1)) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("biorthogonal basis construction") {
    for (int subdiv : {1, 2}) {
        const TriangleMesh mesh = icosphere(1.0, subdiv);
        const BoundaryOperator S0 = assemble_single_layer(mesh, unit, 0.0);
        const BoundaryOperator K0 = assemble_np_adjoint(mesh, unit, 0.0);
        const BiorthogonalBasis basis = biorthogonal_basis(mesh, S0, K0);
        CHECK(basis.max_biorth_error < 1e-8);
        CHECK(basis.max_null_residual < 1e-6);
        for (double ci : basis.c) CHECK(ci > 0.0);

        const VecX w = face_weights(mesh);
        const Mat6 zz = basis.zeta.transpose() * (w.asDiagonal() * basis.zeta);
        CHECK((zz - Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-8);
        Mat6 xx = basis.xi.transpose() * (w.asDiagonal() * basis.xi);
        for (int i = 0; i < 6; ++i) xx(i, i) -= basis.c[i];
        CHECK(xx.cwiseAbs().maxCoeff() < 1e-8);

        // xi extension matches the sampled basis at centroids
        const MatX G = rigid_motion_basis(mesh).generators;
        CHECK((G * basis.xi_in_generators - basis.xi).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("sphere dual basis spans the harmonic patterns") {
    // on the sphere span{xi_i} equals span{I0m, T1m patterns}: all principal
    // angles below 2 degrees
    const TriangleMesh mesh = icosphere(1.0, 2);
    const BoundaryOperator K0 = assemble_np_adjoint(mesh, unit, 0.0);
    const BiorthogonalBasis basis = biorthogonal_basis_from_np(mesh, K0);
    const VecX w = face_weights(mesh);

    MatX P(3 * mesh.face_count(), 6);
    for (int a = 0; a < 3; ++a) {
        P.col(a) = translation_pattern(mesh, a);
        P.col(3 + a) = rotation_pattern(mesh, a);
    }
    // w-orthonormalize both families and take singular values of the overlap
    auto orthonormal = [&](MatX m) {
        for (int c = 0; c < m.cols(); ++c) {
            for (int p = 0; p < c; ++p) m.col(c) -= wdot(w, m.col(c), m.col(p)) * m.col(p);
            m.col(c) /= std::sqrt(wdot(w, m.col(c), m.col(c)));
        }
        return m;
    };
    const MatX Q1 = orthonormal(basis.xi), Q2 = orthonormal(P);
    const Mat6 overlap = Q1.transpose() * (w.asDiagonal() * Q2);
    Eigen::JacobiSVD<Mat6> svd(overlap);
    const double min_cos = svd.singularValues().minCoeff();
    CHECK(std::acos(std::min(1.0, min_cos)) < 2.0 * pi / 180.0);
}

TEST_CASE("dynamic np adjoint reduces to the static one") {
    const TriangleMesh mesh = icosphere(1.0, 1);
    const BoundaryOperator K0 = assemble_np_adjoint(mesh, unit, 0.0);
    const BoundaryOperator Kw = assemble_np_adjoint(mesh, unit, 1e-4);
    const double diff = (Kw.cx - K0.re.cast<Complex>()).cwiseAbs().maxCoeff();
    CHECK(diff < 1e-7); // K*_1 = 0, so the correction is O(w^2)
}
