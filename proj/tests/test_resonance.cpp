#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/resonance.hpp"
#include "core/sphere_oracle.hpp"

using namespace edp;

namespace {
const Material unit = validate_material(1.0, 1.0, 1.0);
const ContrastConfig contrast{1e-6, 1e-4};

ResonanceMatrix sphere_M(int subdiv, int resolution, double R = 1.0) {
    const TriangleMesh mesh = icosphere(R, subdiv);
    const BoundaryOperator K0 = assemble_np_adjoint(mesh, unit, 0.0);
    const BiorthogonalBasis basis = biorthogonal_basis_from_np(mesh, K0);
    const InteriorQuadrature iq = interior_quadrature(mesh, resolution);
    return assemble_M(mesh, basis, unit, iq);
}

} // namespace

TEST_CASE("resonance matrix eigenvalues on the sphere") {
    const ResonanceMatrix rm = sphere_M(2, 24);
    const ResonanceResult r = resonant_frequencies(rm, unit, contrast);
    // two clusters of three: rho1 = R^2/(15 mu), rho2 = (2l+5m)R^2/(9m(l+2m))
    REQUIRE(r.multiplicities.size() == 2);
    CHECK(r.multiplicities[0] == 3);
    CHECK(r.multiplicities[1] == 3);
    const double big = (r.eigenvalues[0] + r.eigenvalues[1] + r.eigenvalues[2]) / 3.0;
    const double small = (r.eigenvalues[3] + r.eigenvalues[4] + r.eigenvalues[5]) / 3.0;
    CHECK(big == doctest::Approx(7.0 / 27.0).epsilon(0.05));
    CHECK(small == doctest::Approx(1.0 / 15.0).epsilon(0.05));
    CHECK(r.max_imag_ratio < 1e-6);
    // invertibility
    CHECK(std::abs(rm.M.determinant()) > 0.0);
}

TEST_CASE("eigenvalues scale with the squared radius") {
    const ResonanceMatrix m1 = sphere_M(1, 16, 1.0);
    const ResonanceMatrix m2 = sphere_M(1, 16, 2.0);
    const ResonanceResult r1 = resonant_frequencies(m1, unit, contrast);
    const ResonanceResult r2 = resonant_frequencies(m2, unit, contrast);
    for (int i = 0; i < 6; ++i) CHECK(r2.eigenvalues[i] / r1.eigenvalues[i] == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("frequency formula") {
    ResonanceMatrix rm;
    rm.M = 0.25 * Mat6::Identity();
    rm.interior_points = 1;
    rm.volume_estimate = 1.0;
    const ResonanceResult r = resonant_frequencies(rm, unit, ContrastConfig{1.0, 1.0});
    for (int i = 0; i < 6; ++i) CHECK(r.frequencies[i] == doctest::Approx(2.0).epsilon(1e-12)); // 1/sqrt(0.25)
    REQUIRE(r.multiplicities.size() == 1);
    CHECK(r.multiplicities[0] == 6);

    // omega scales like sqrt(epsilon)
    const ResonanceResult a = resonant_frequencies(rm, unit, ContrastConfig{1e-6, 1e-4});
    const ResonanceResult b = resonant_frequencies(rm, unit, ContrastConfig{1e-6, 1e-2});
    for (int i = 0; i < 6; ++i) CHECK(b.frequencies[i] / a.frequencies[i] == doctest::Approx(10.0).epsilon(1e-12));

    // frequencies recompute from eigenvalues
    const ResonanceResult s = resonant_frequencies(sphere_M(1, 16), unit, contrast);
    for (int i = 0; i < 6; ++i) {
        const double recomputed = std::sqrt(contrast.epsilon / (unit.rho * s.eigenvalues[5 - i]));
        CHECK(s.frequencies[i] == doctest::Approx(recomputed).epsilon(1e-12));
    }

    rm.M = -Mat6::Identity();
    CHECK_THROWS_AS(resonant_frequencies(rm, unit, contrast), NonPositiveEigenvalue);
}

TEST_CASE("sphere frequencies approach the closed forms") {
    const ResonanceResult r = resonant_frequencies(sphere_M(2, 24), unit, contrast);
    const auto oracle = sphere::find_sphere_resonances(1.0, unit, contrast);
    for (int i = 0; i < 3; ++i) CHECK(r.frequencies[i] == doctest::Approx(oracle.omega2_closed).epsilon(0.05));
    for (int i = 3; i < 6; ++i) CHECK(r.frequencies[i] == doctest::Approx(oracle.omega1_closed).epsilon(0.05));
}

TEST_CASE("scattering far below resonance") {
    const TriangleMesh mesh = icosphere(1.0, 1);
    const auto oracle = sphere::find_sphere_resonances(1.0, unit, contrast);
    const double w = 1e-4 * oracle.omega1_closed;
    const ScatteringSolution sol = solve_scattering(mesh, unit, contrast, {Vec3(0, 0, 1), w});
    CHECK(sol.residual < 1e-8);
    CHECK_FALSE(sol.used_lstsq);
    const InteriorQuadrature iq = interior_quadrature(mesh, 16);
    const Material inc = inclusion_material(unit, contrast);
    const auto u = interior_field(sol, mesh, inc, iq.points);
    double e = 0.0;
    for (size_t q = 0; q < u.size(); ++q) e += iq.weights[q] * u[q].squaredNorm();
    const double rms = std::sqrt(e / iq.volume());
    CHECK(rms > 0.2); // O(1) interior field against the unit incident wave
    CHECK(rms < 5.0);
}

TEST_CASE("interior field is regular at the center and converges under refinement") {
    const std::vector<Vec3> probes = {Vec3(0, 0, 0), Vec3(0.2, 0.1, -0.3)};
    const double w = 0.01;
    std::vector<std::vector<Vec3c>> levels;
    for (int subdiv : {0, 1, 2}) {
        const TriangleMesh mesh = icosphere(1.0, subdiv);
        const ScatteringSolution sol = solve_scattering(mesh, unit, contrast, {Vec3(0, 0, 1), w});
        const auto u = interior_field(sol, mesh, inclusion_material(unit, contrast), probes);
        for (const auto& v : u) CHECK(v.allFinite());
        levels.push_back(u);
    }
    double d01 = 0.0, d12 = 0.0;
    for (size_t i = 0; i < probes.size(); ++i) {
        d01 += (levels[1][i] - levels[0][i]).norm();
        d12 += (levels[2][i] - levels[1][i]).norm();
    }
    CHECK(d12 / d01 < 0.5);
}

TEST_CASE("amplitude sweep brackets the compressional resonance") {
    const TriangleMesh mesh = icosphere(1.0, 2);
    const ResonanceResult pred = resonant_frequencies(sphere_M(2, 24), unit, contrast);
    const double w2 = pred.frequencies[0]; // compressional cluster (ascending order)
    std::vector<double> omegas;
    for (int i = -6; i <= 6; ++i) omegas.push_back(w2 * std::pow(1.025, i));
    const InteriorQuadrature iq = interior_quadrature(mesh, 16);
    const auto rows = amplitude_sweep(mesh, unit, contrast, Vec3(0, 0, 1), omegas, iq);
    REQUIRE(rows.size() == omegas.size());
    size_t peak = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].amplitude > rows[peak].amplitude) peak = i;
    // argmax within one grid step of the computed resonance
    CHECK(std::abs(rows[peak].omega - w2) / w2 < 1.025 - 1.0 + 1e-9);
    // amplitudes rise toward the peak from both ends
    CHECK(rows[peak].amplitude > 3.0 * rows.front().amplitude);
    CHECK(rows[peak].amplitude > 3.0 * rows.back().amplitude);
    // condition estimate spikes at resonance
    CHECK(rows[peak].condition_estimate > rows.front().condition_estimate);
}

TEST_CASE("sweep input validation") {
    const TriangleMesh mesh = icosphere(1.0, 0);
    const InteriorQuadrature iq = interior_quadrature(mesh, 8);
    CHECK_THROWS_AS(amplitude_sweep(mesh, unit, contrast, Vec3(0, 0, 1), {}, iq), InvalidArgument);
    CHECK_THROWS_AS(amplitude_sweep(mesh, unit, contrast, Vec3(0, 0, 1), {0.2, 0.1}, iq), InvalidArgument);
}
