#include "resonance.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"
#include "quadrature.hpp"

namespace edp {

namespace {

constexpr double rcond_floor = 1e-13;
constexpr double tol_eig_imag = 1e-6;
constexpr double cluster_rel_gap = 0.10;

// Single-layer potential at interior points; adaptive subdivision keeps the
// near-surface evaluation accurate without any singular treatment (the
// points are strictly interior).
template <typename Scalar>
void interior_potential(const TriangleMesh& mesh, const Material& m, double omega,
                        const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& densities,
                        const std::vector<Vec3>& points,
                        std::vector<Eigen::Matrix<Complex, 3, Eigen::Dynamic>>& out) {
    const int n = mesh.face_count();
    const int ncols = int(densities.cols());
    out.assign(points.size(), Eigen::Matrix<Complex, 3, Eigen::Dynamic>::Zero(3, ncols));
#pragma omp parallel
    {
        quad::PointSet ps;
#pragma omp for schedule(dynamic, 16)
        for (size_t q = 0; q < points.size(); ++q) {
            const Vec3& y = points[q];
            Eigen::Matrix<Complex, 3, Eigen::Dynamic> acc = Eigen::Matrix<Complex, 3, Eigen::Dynamic>::Zero(3, ncols);
            for (int f = 0; f < n; ++f) {
                const double dist = (y - mesh.centroid(f)).norm();
                Mat3c kblk = Mat3c::Zero();
                if (dist > 2.0 * quad::near_ratio * mesh.diameter(f)) {
                    kblk = fundamental_dynamic(y - mesh.centroid(f), m, omega) * mesh.area(f);
                } else {
                    ps.points.clear();
                    ps.weights.clear();
                    quad::adaptive_rule(mesh.triangle(f), y, quad::near_ratio, quad::near_depth, ps);
                    for (size_t k = 0; k < ps.points.size(); ++k)
                        kblk += ps.weights[k] * fundamental_dynamic(y - ps.points[k], m, omega);
                }
                for (int c = 0; c < ncols; ++c) {
                    const Eigen::Matrix<Scalar, 3, 1> d = densities.template block<3, 1>(3 * f, c);
                    acc.col(c) += kblk * d.template cast<Complex>();
                }
            }
            out[q] = acc;
        }
    }
}

VecXc incident_trace(const TriangleMesh& mesh, const Material& bg, const IncidentPWave& inc, bool traction) {
    const auto [kp, ks] = wavenumbers(bg, inc.omega);
    (void)ks;
    const int n = mesh.face_count();
    const Complex I{0.0, 1.0};
    VecXc out(3 * n);
    const Vec3 p = inc.polarization;
    for (int f = 0; f < n; ++f) {
        const Complex phase = std::exp(-I * kp * p.dot(mesh.centroid(f)));
        if (!traction) {
            out.segment<3>(3 * f) = phase * p.cast<Complex>();
        } else {
            const Vec3& nu = mesh.normal(f);
            const Vec3 vec = bg.lambda_ * nu + 2.0 * bg.mu * p.dot(nu) * p;
            out.segment<3>(3 * f) = (-I * kp * phase) * vec.cast<Complex>();
        }
    }
    return out;
}

} // namespace

ResonanceMatrix assemble_M(const TriangleMesh& mesh, const BiorthogonalBasis& basis, const Material& background,
                           const InteriorQuadrature& iq) {
    if (iq.points.empty()) throw EmptyInterior("interior quadrature is empty");
    std::vector<Eigen::Matrix<Complex, 3, Eigen::Dynamic>> pot;
    interior_potential<double>(mesh, background, 0.0, basis.zeta, iq.points, pot);
    ResonanceMatrix out;
    out.interior_points = int(iq.points.size());
    out.volume_estimate = iq.volume();
    out.M.setZero();
    for (size_t q = 0; q < iq.points.size(); ++q) {
        Eigen::Matrix<double, 3, 6> xi_q;
        for (int k = 0; k < 6; ++k) xi_q.col(k) = rigid_generator(k, iq.points[q]);
        const Eigen::Matrix<double, 3, 6> xi = xi_q * basis.xi_in_generators;
        const Eigen::Matrix<double, 3, 6> s = pot[q].real();
        out.M.noalias() -= iq.weights[q] * (s.transpose() * xi); // m_ij = -(S[zeta_i], xi_j)
    }
    if (!out.M.allFinite()) throw QuadratureFailure("resonance matrix has non-finite entries");
    return out;
}

ResonanceResult resonant_frequencies(const ResonanceMatrix& rm, const Material& background, const ContrastConfig& c) {
    const VecXc ev = linalg::eigenvalues(rm.M);
    ResonanceResult out;
    const double scale = rm.M.cwiseAbs().maxCoeff();
    double max_imag = 0.0;
    std::array<double, 6> rho_i{};
    for (int i = 0; i < 6; ++i) {
        max_imag = std::max(max_imag, std::abs(std::imag(ev(i))));
        rho_i[i] = std::real(ev(i));
    }
    out.max_imag_ratio = max_imag / scale;
    if (out.max_imag_ratio > tol_eig_imag)
        throw NonPositiveEigenvalue("resonance matrix has significantly complex eigenvalues");
    std::sort(rho_i.begin(), rho_i.end(), std::greater<>());
    for (int i = 0; i < 6; ++i) {
        if (rho_i[i] <= 0.0) throw NonPositiveEigenvalue("resonance matrix eigenvalue is not positive");
        out.eigenvalues[i] = rho_i[i];
        out.frequencies[i] = std::sqrt(c.epsilon / (background.rho * rho_i[i]));
    }
    // eigenvalues descending <=> frequencies ascending
    out.multiplicities.clear();
    int run = 1;
    for (int i = 1; i < 6; ++i) {
        if ((out.eigenvalues[i - 1] - out.eigenvalues[i]) / out.eigenvalues[i - 1] < cluster_rel_gap) {
            ++run;
        } else {
            out.multiplicities.push_back(run);
            run = 1;
        }
    }
    out.multiplicities.push_back(run);
    return out;
}

SolverCache make_solver_cache(const TriangleMesh& mesh, const Material& background) {
    SolverCache cache;
    cache.mesh = &mesh;
    BoundaryOperator K0 = assemble_np_adjoint(mesh, background, 0.0);
    cache.rotation_residual = K0.rotation_residual;
    cache.K_static = std::move(K0.re);
    return cache;
}

ScatteringSolution solve_scattering(const TriangleMesh& mesh, const Material& background, const ContrastConfig& c,
                                    const IncidentPWave& inc, const SolverCache* cache) {
    if (inc.omega <= 0.0) throw InvalidArgument("scattering requires omega > 0");
    if (std::abs(inc.polarization.norm() - 1.0) > 1e-12) throw InvalidArgument("polarization must be a unit vector");
    const Material inclusion = inclusion_material(background, c);
    const int n3 = 3 * mesh.face_count();

    // The static traction kernel is invariant under the uniform modulus
    // scaling between background and inclusion, so one static core serves
    // both K^{w,*} operators; only the bounded difference parts depend on
    // the material.
    MatX K_static;
    if (cache && cache->mesh == &mesh) {
        K_static = cache->K_static;
    } else {
        K_static = assemble_np_adjoint(mesh, background, 0.0).re;
    }

    auto np_dynamic = [&](const Material& m) {
        MatXc D;
        const int n = mesh.face_count();
        D.setZero(n3, n3);
#pragma omp parallel
        {
            quad::PointSet ps;
#pragma omp for schedule(dynamic, 8)
            for (int i = 0; i < n; ++i) {
                const Vec3 x = mesh.centroid(i);
                const Vec3 nu = mesh.normal(i);
                for (int j = 0; j < n; ++j) {
                    ps.points.clear();
                    ps.weights.clear();
                    if (i == j) {
                        quad::duffy_rule(mesh.triangle(j), x, quad::duffy_order, ps);
                    } else if ((x - mesh.centroid(j)).norm() <= quad::near_ratio * mesh.diameter(j)) {
                        quad::adaptive_rule(mesh.triangle(j), x, quad::near_ratio, quad::near_depth, ps);
                    } else {
                        quad::triangle_rule(mesh.triangle(j), ps);
                    }
                    Mat3c blk = Mat3c::Zero();
                    for (size_t q = 0; q < ps.points.size(); ++q)
                        blk += ps.weights[q] * traction_dynamic_minus_static(x - ps.points[q], nu, m, inc.omega);
                    D.block<3, 3>(3 * i, 3 * j) = blk;
                }
            }
        }
        return D;
    };

    const MatXc S_bg = assemble_single_layer(mesh, background, inc.omega).cx;
    const MatXc S_inc = assemble_single_layer(mesh, inclusion, inc.omega).cx;
    const MatXc K_bg = K_static.cast<Complex>() + np_dynamic(background);
    const MatXc K_inc = K_static.cast<Complex>() + np_dynamic(inclusion);

    MatXc A(2 * n3, 2 * n3);
    A.topLeftCorner(n3, n3) = S_inc;
    A.topRightCorner(n3, n3) = -S_bg;
    A.bottomLeftCorner(n3, n3) = K_inc;
    A.bottomLeftCorner(n3, n3).diagonal().array() -= 0.5;
    A.bottomRightCorner(n3, n3) = -K_bg;
    A.bottomRightCorner(n3, n3).diagonal().array() -= 0.5;

    VecXc F(2 * n3);
    F.head(n3) = incident_trace(mesh, background, inc, false);
    F.tail(n3) = incident_trace(mesh, background, inc, true);

    VecXc x;
    const auto info = linalg::solve_lu_cond(A, F, x, rcond_floor);

    ScatteringSolution sol;
    sol.omega = inc.omega;
    sol.polarization = inc.polarization;
    sol.phi = x.head(n3);
    sol.psi = x.tail(n3);
    sol.residual = (A * x - F).norm() / F.norm();
    sol.rcond = info.rcond;
    sol.used_lstsq = info.used_lstsq;
    return sol;
}

std::vector<Vec3c> single_layer_interior(const TriangleMesh& mesh, const Material& m, double omega, const VecXc& density,
                                         const std::vector<Vec3>& points) {
    std::vector<Eigen::Matrix<Complex, 3, Eigen::Dynamic>> pot;
    interior_potential<Complex>(mesh, m, omega, density, points, pot);
    std::vector<Vec3c> out(points.size());
    for (size_t q = 0; q < points.size(); ++q) out[q] = pot[q].col(0);
    return out;
}

std::vector<Vec3c> interior_field(const ScatteringSolution& sol, const TriangleMesh& mesh, const Material& inclusion,
                                  const std::vector<Vec3>& points) {
    for (const auto& p : points) {
        if (!mesh.is_inside(p)) throw InvalidArgument("interior_field requires strictly interior points");
    }
    return single_layer_interior(mesh, inclusion, sol.omega, sol.phi, points);
}

double rigid_energy_fraction(const std::vector<Vec3c>& values, const InteriorQuadrature& iq) {
    Mat6 gram = Mat6::Zero();
    Eigen::Matrix<Complex, 6, 1> rhs = Eigen::Matrix<Complex, 6, 1>::Zero();
    double energy = 0.0;
    for (size_t q = 0; q < iq.points.size(); ++q) {
        Eigen::Matrix<double, 3, 6> g;
        for (int k = 0; k < 6; ++k) g.col(k) = rigid_generator(k, iq.points[q]);
        gram.noalias() += iq.weights[q] * (g.transpose() * g);
        rhs.noalias() += iq.weights[q] * (g.transpose() * values[q].matrix());
        energy += iq.weights[q] * values[q].squaredNorm();
    }
    const Eigen::Matrix<Complex, 6, 1> coef = gram.cast<Complex>().ldlt().solve(rhs);
    const double proj = std::real(coef.dot(gram.cast<Complex>() * coef));
    return proj / energy;
}

std::vector<SweepRow> amplitude_sweep(const TriangleMesh& mesh, const Material& background, const ContrastConfig& c,
                                      const Vec3& polarization, const std::vector<double>& omegas,
                                      const InteriorQuadrature& iq) {
    if (omegas.empty()) throw InvalidArgument("sweep needs at least one frequency");
    for (size_t i = 0; i + 1 < omegas.size(); ++i)
        if (!(omegas[i] < omegas[i + 1])) throw InvalidArgument("sweep frequencies must be ascending");
    if (omegas.front() <= 0.0) throw InvalidArgument("sweep frequencies must be positive");

    const SolverCache cache = make_solver_cache(mesh, background);
    const Material inclusion = inclusion_material(background, c);
    const double vol = iq.volume();
    std::vector<SweepRow> rows;
    rows.reserve(omegas.size());
    for (double w : omegas) {
        const ScatteringSolution sol = solve_scattering(mesh, background, c, {polarization, w}, &cache);
        const auto u = single_layer_interior(mesh, inclusion, w, sol.phi, iq.points);
        double e = 0.0;
        for (size_t q = 0; q < u.size(); ++q) e += iq.weights[q] * u[q].squaredNorm();
        rows.push_back({w, std::sqrt(e / vol), sol.rcond > 0.0 ? 1.0 / sol.rcond : std::numeric_limits<double>::infinity()});
    }
    return rows;
}

ResonancePipelineResult run_resonance_pipeline(const TriangleMesh& mesh, const Material& background,
                                               const ContrastConfig& c, int interior_resolution,
                                               bool compute_nullspace_gap) {
    ResonancePipelineResult out;
    out.mesh_faces = mesh.face_count();
    const BoundaryOperator K0 = assemble_np_adjoint(mesh, background, 0.0);
    out.rotation_residual = K0.rotation_residual;
    if (compute_nullspace_gap) out.nullspace_gap = nullspace_gap(K0);
    const BiorthogonalBasis basis = biorthogonal_basis_from_np(mesh, K0);
    out.max_biorth_error = basis.max_biorth_error;
    out.max_null_residual = basis.max_null_residual;
    const InteriorQuadrature iq = interior_quadrature(mesh, interior_resolution);
    out.matrix = assemble_M(mesh, basis, background, iq);
    out.result = resonant_frequencies(out.matrix, background, c);
    return out;
}

} // namespace edp
