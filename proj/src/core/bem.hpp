#ifndef ELASTODIPOLE_BEM_HPP
#define ELASTODIPOLE_BEM_HPP

#include <array>

#include "geometry.hpp"
#include "kernels.hpp"
#include "materials.hpp"
#include "types.hpp"

namespace edp {

/// Dense collocation discretization of a boundary operator: block (i, j) is
/// the integral of the kernel over face j, observed at the centroid of face
/// i, acting on piecewise-constant vector densities (3 unknowns per face).
struct BoundaryOperator {
    enum class Kind { SingleLayer, NpAdjoint };

    Kind kind;
    Material material;
    double omega = 0.0;
    MatX re;   ///< filled for omega == 0 (the static operators are real)
    MatXc cx;  ///< filled for omega > 0

    /// Largest relative residual of the adjoint identity on the three
    /// rotation generators, measured before the rigid-motion consistency
    /// correction. Meaningful for static NpAdjoint operators only.
    double rotation_residual = 0.0;

    bool is_static() const { return omega == 0.0; }
    Eigen::Index size() const { return is_static() ? re.rows() : cx.rows(); }
    VecXc apply(const VecXc& v) const { return is_static() ? VecXc(re * v) : VecXc(cx * v); }
};

/// Six rigid-motion generators sampled at face centroids, as the columns of
/// a 3N x 6 matrix: three translations, then (x2,-x1,0), (x3,0,-x1),
/// (0,x3,-x2).
struct RigidMotionBasis {
    MatX generators; ///< 3N x 6
};

RigidMotionBasis rigid_motion_basis(const TriangleMesh& mesh);

/// Rigid-motion generator field k (0..5) as a polynomial, evaluated at an
/// arbitrary point (the continuous extension of the columns above).
Vec3 rigid_generator(int k, const Vec3& p);

/// Face-area-weighted L2 pairing used throughout: (u, v) = sum_f area_f u_f . v_f.
VecX face_weights(const TriangleMesh& mesh); ///< length 3N, area per component

/// Discretized single-layer operator S^omega. Off-diagonal blocks use a
/// fixed-order triangle rule with adaptive subdivision for close pairs; the
/// diagonal 1/r singularity is resolved by a Duffy-type polar rule.
BoundaryOperator assemble_single_layer(const TriangleMesh& mesh, const Material& m, double omega);

/// Discretized Neumann-Poincare adjoint K^{omega,*}. The static part
/// completes the (hypersingular) diagonal through the translation identity
/// K^T_w t = t/2 and then restores the full six-dimensional rigid-motion
/// null structure by a minimal rank-6 correction; the frequency-dependent
/// part is the bounded difference kernel, integrated directly. The
/// pre-correction rotation residual is kept as an accuracy diagnostic.
BoundaryOperator assemble_np_adjoint(const TriangleMesh& mesh, const Material& m, double omega);

/// Biorthogonal bases of the discrete rigid-motion space and its dual:
/// (zeta_i, zeta_j) = delta_ij, (zeta_i, xi_j) = delta_ij,
/// (xi_i, xi_j) = c_i delta_ij in the face-area-weighted pairing.
struct BiorthogonalBasis {
    MatX xi;    ///< 3N x 6
    MatX zeta;  ///< 3N x 6
    std::array<double, 6> c;
    /// xi_j = sum_k generator_k * xi_in_generators(k, j); used to extend the
    /// xi fields into the interior.
    Mat6 xi_in_generators;
    double max_null_residual;    ///< max_i |(-1/2+K*) zeta_i| / |zeta_i|
    double max_biorth_error;     ///< max_{i != j} |(zeta_i, xi_j)|
    double bordered_multiplier;  ///< consistency defect absorbed by the bordered solve
};

/// Constructive procedure of the dual-basis lemma: orthonormalize the rigid
/// motions, solve (1/2 - K*) zeta_hat = (-1/2 + K*) xi_hat on the complement
/// of the null space (bordered system), shift, and rescale through the
/// eigendecomposition of the Gram matrix. S0 is accepted for interface
/// completeness; the construction itself only needs K0 (the right-hand side
/// equals the interior traction of the single layer by the jump relation).
BiorthogonalBasis biorthogonal_basis(const TriangleMesh& mesh, const BoundaryOperator& S0,
                                     const BoundaryOperator& K0star);

/// Same construction without requiring an assembled S0.
BiorthogonalBasis biorthogonal_basis_from_np(const TriangleMesh& mesh, const BoundaryOperator& K0star);

/// sigma_6 / sigma_7 of (-1/2 + K*); the SVD cross-check of the null-space
/// dimension. Throws NullSpaceDimensionMismatch when the gap exceeds tol.
double nullspace_gap(const BoundaryOperator& K0star, double tol = 1e-2);

} // namespace edp

#endif
