#ifndef ELASTODIPOLE_RESONANCE_HPP
#define ELASTODIPOLE_RESONANCE_HPP

#include <optional>
#include <vector>

#include "bem.hpp"
#include "geometry.hpp"
#include "materials.hpp"

namespace edp {

/// 6x6 coupling matrix m_ij = integral over the interior of
/// -xi_j(y) . S0[zeta_i](y), evaluated on the interior quadrature grid; its
/// eigenvalues set the resonant frequencies.
struct ResonanceMatrix {
    Mat6 M;
    int interior_points = 0;
    double volume_estimate = 0.0;
};

ResonanceMatrix assemble_M(const TriangleMesh& mesh, const BiorthogonalBasis& basis, const Material& background,
                           const InteriorQuadrature& iq);

struct ResonanceResult {
    std::array<double, 6> eigenvalues;  ///< real parts, descending
    std::array<double, 6> frequencies;  ///< sqrt(eps / (rho * rho_i)), ascending
    std::vector<int> multiplicities;    ///< cluster sizes at 10% relative gap, ascending frequency
    double max_imag_ratio = 0.0;        ///< |Im| of the eigenvalues relative to |M|
};

ResonanceResult resonant_frequencies(const ResonanceMatrix& M, const Material& background, const ContrastConfig& c);

struct IncidentPWave {
    Vec3 polarization; ///< unit vector; u^i = p exp(-i k_p p.x)
    double omega;
};

struct ScatteringSolution {
    VecXc phi; ///< interior density (inclusion single layer)
    VecXc psi; ///< exterior density
    double omega = 0.0;
    Vec3 polarization;
    double residual = 0.0; ///< |A Phi - F| / |F|
    double rcond = 0.0;
    bool used_lstsq = false;
};

/// Precomputed geometry-bound data reused across frequencies of a sweep.
struct SolverCache {
    const TriangleMesh* mesh = nullptr;
    MatX K_static; ///< completed + restored static np-adjoint core
    double rotation_residual = 0.0;
};

SolverCache make_solver_cache(const TriangleMesh& mesh, const Material& background);

/// Solves the transmission block system
///   [[S~^w, -S^w], [-I/2 + K~^{w,*}, -I/2 - K^{w,*}]] (phi, psi) = (u^i, dnu u^i)
/// by LU with a condition estimate; near resonance a truncated
/// least-squares factorization takes over instead of failing.
ScatteringSolution solve_scattering(const TriangleMesh& mesh, const Material& background, const ContrastConfig& c,
                                    const IncidentPWave& inc, const SolverCache* cache = nullptr);

/// Interior displacement u = S~^w[phi] evaluated by direct kernel summation
/// (adaptively refined near the surface). Throws OnSurface for points within
/// tolerance of the boundary.
std::vector<Vec3c> interior_field(const ScatteringSolution& sol, const TriangleMesh& mesh, const Material& inclusion,
                                  const std::vector<Vec3>& points);

/// Single-layer potential of a per-face-constant density at interior points.
std::vector<Vec3c> single_layer_interior(const TriangleMesh& mesh, const Material& m, double omega, const VecXc& density,
                                         const std::vector<Vec3>& points);

struct SweepRow {
    double omega;
    double amplitude;          ///< RMS of |u| over the interior quadrature
    double condition_estimate; ///< 1 / rcond of the block system
};

/// Amplitude curve over ascending frequencies; each row solves the full
/// system and integrates |u|^2 over the interior quadrature.
std::vector<SweepRow> amplitude_sweep(const TriangleMesh& mesh, const Material& background, const ContrastConfig& c,
                                      const Vec3& polarization, const std::vector<double>& omegas,
                                      const InteriorQuadrature& iq);

/// Fraction of the field's quadrature energy captured by its projection
/// onto the span of the six rigid-motion fields.
double rigid_energy_fraction(const std::vector<Vec3c>& values, const InteriorQuadrature& iq);

/// Everything the CLI surface emits for the `resonance` pipeline.
struct ResonancePipelineResult {
    ResonanceMatrix matrix;
    ResonanceResult result;
    double nullspace_gap = 0.0; ///< sigma6/sigma7 of (-1/2 + K*), 0 when skipped
    double rotation_residual = 0.0;
    double max_biorth_error = 0.0;
    double max_null_residual = 0.0;
    int mesh_faces = 0;
};

ResonancePipelineResult run_resonance_pipeline(const TriangleMesh& mesh, const Material& background,
                                               const ContrastConfig& c, int interior_resolution,
                                               bool compute_nullspace_gap);

} // namespace edp

#endif
