#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/kernels.hpp"

using namespace edp;

namespace {

const Material unit = validate_material(1.0, 1.0, 1.0);

Vec3 random_dir(std::mt19937& rng) {
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    return v.normalized();
}

// Finite-difference traction oracle: column j is lam*div(g_j)*nu + 2*mu*sym(grad g_j)*nu
// with g_j(x) = Gamma(x - y) e_j differentiated numerically in x.
Mat3c traction_fd(const Vec3& x, const Vec3& y, const Vec3& nu, const Material& m, double omega) {
    const double h = 1e-6;
    Mat3c T;
    for (int j = 0; j < 3; ++j) {
        Mat3c jac;
        for (int k = 0; k < 3; ++k) {
            Vec3 e = Vec3::Zero();
            e(k) = h;
            const Mat3c gp = fundamental_dynamic(x + e - y, m, omega);
            const Mat3c gm = fundamental_dynamic(x - e - y, m, omega);
            jac.col(k) = (gp.col(j) - gm.col(j)) / (2.0 * h);
        }
        const Complex div = jac.trace();
        const Mat3c sym = 0.5 * (jac + jac.transpose());
        T.col(j) = m.lambda_ * div * nu.cast<Complex>() + 2.0 * m.mu * sym * nu.cast<Complex>();
    }
    return T;
}

} // namespace

TEST_CASE("Kelvin tensor closed form") {
    const Mat3 g = kelvin_static(Vec3(1, 0, 0), unit);
    CHECK(g(0, 0) == doctest::Approx(-1.0 / (4.0 * pi)).epsilon(1e-12));
    CHECK(g(1, 1) == doctest::Approx(-1.0 / (6.0 * pi)).epsilon(1e-12));
    CHECK(g(2, 2) == doctest::Approx(-1.0 / (6.0 * pi)).epsilon(1e-12));
    CHECK(std::abs(g(0, 1)) < 1e-15);
    CHECK(std::abs(g(1, 2)) < 1e-15);
}

TEST_CASE("kernel symmetry and evenness") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> rad(0.2, 3.0);
    for (int t = 0; t < 50; ++t) {
        const Vec3 x = rad(rng) * random_dir(rng);
        const Mat3 g = kelvin_static(x, unit);
        CHECK((g - kelvin_static(-x, unit)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        const double w = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        const Mat3c gd = fundamental_dynamic(x, unit, w);
        CHECK((gd - fundamental_dynamic(-x, unit, w)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((gd - gd.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("singular floor") {
    CHECK_THROWS_AS(kelvin_static(Vec3(0, 0, 0), unit), SingularPoint);
    CHECK_THROWS_AS(fundamental_dynamic(Vec3(1e-15, 0, 0), unit, 0.1), SingularPoint);
}

TEST_CASE("omega -> 0 limit is the Kelvin tensor") {
    const Vec3 x(0.3, -0.2, 0.5);
    const Mat3c g0 = fundamental_dynamic(x, unit, 0.0);
    CHECK((g0.real() - kelvin_static(x, unit)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(g0.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("series partial sums converge to the direct evaluation") {
    // at omega*|x| <= 0.1 the N = 8 partial sum matches to 1e-10 relatively
    const Vec3 x(0.3, -0.2, 0.5);
    const Material m = validate_material(1.7, 0.6, 1.3);
    for (double w : {0.1, 0.05, 0.01}) {
        Mat3c sum = Mat3c::Zero();
        for (int n = 0; n <= 8; ++n) sum += std::pow(w, n) * series_term(n, x, m);
        const Mat3c g = fundamental_dynamic(x, m, w); // direct path (w |x| above the switch)
        const double rel = (g - sum).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
        CHECK(rel < 1e-10);
    }
}

TEST_CASE("series truncation error decays at the expected rate") {
    // |Gamma^w - sum_{n<=N}| ~ w^{N+1}: log-log slope within 0.2 of N+1
    const Vec3 x(0.4, 0.1, -0.3);
    const int N = 2;
    auto err = [&](double w) {
        Mat3c sum = Mat3c::Zero();
        for (int n = 0; n <= N; ++n) sum += std::pow(w, n) * series_term(n, x, unit);
        return (fundamental_dynamic(x, unit, w) - sum).cwiseAbs().maxCoeff();
    };
    const double w1 = 2e-2, w2 = 2e-3;
    const double slope = std::log(err(w1) / err(w2)) / std::log(w1 / w2);
    CHECK(slope == doctest::Approx(N + 1.0).epsilon(0.2 / (N + 1.0)));
}

TEST_CASE("series term structure") {
    const Vec3 x(0.7, -0.1, 0.2);
    // n = 0 equals the Kelvin tensor
    CHECK((series_term(0, x, unit).real() - kelvin_static(x, unit)).cwiseAbs().maxCoeff() < 1e-15);
    // n = 1 is constant in x
    const Mat3c g1a = series_term(1, x, unit), g1b = series_term(1, Vec3(0.01, 1.5, -2.0), unit);
    CHECK((g1a - g1b).cwiseAbs().maxCoeff() < 1e-16);
    // value at lambda = mu = rho = 1: -(i/12pi)(2/(mu cs) + 1/((lambda+2mu) cp)) I
    // = -0.0581565449 i I, cross-checked against the finite difference
    // (Gamma^w - Gamma^0)/w below.
    CHECK(std::abs(g1a(0, 0) - Complex(0.0, -0.0581565449)) < 1e-9);
    CHECK(std::abs(g1a(0, 1)) < 1e-16);
    const double w = 1e-6;
    const Mat3c fd = (fundamental_dynamic(x, unit, w) - fundamental_dynamic(x, unit, 0.0)) / w;
    CHECK(std::abs(fd(0, 0) - g1a(0, 0)) < 1e-5);
}

TEST_CASE("traction kernel matches a finite-difference oracle") {
    std::mt19937 rng(11);
    const Material m = validate_material(1.3, 0.8, 1.1);
    for (int t = 0; t < 10; ++t) {
        const Vec3 y = 0.3 * random_dir(rng);
        const Vec3 x = y + std::uniform_real_distribution<double>(0.5, 2.0)(rng) * random_dir(rng);
        const Vec3 nu = random_dir(rng);
        for (double w : {0.0, 0.3}) {
            const Mat3c analytic = traction_kernel(x, y, nu, m, w);
            const Mat3c fd = traction_fd(x, y, nu, m, w);
            const double rel = (analytic - fd).cwiseAbs().maxCoeff() / analytic.cwiseAbs().maxCoeff();
            CHECK(rel < 1e-6);
        }
    }
}

TEST_CASE("static traction decays like 1/r^2") {
    const Vec3 z(0.5, 0.4, -0.3);
    const Vec3 nu = Vec3(1, 2, 2).normalized();
    const double n1 = traction_static(z, nu, unit).norm();
    const double n2 = traction_static(2.0 * z, nu, unit).norm();
    CHECK(n1 / n2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("traction is continuous at omega = 0") {
    const Vec3 x(0.9, 0.1, 0.2), y(0.1, -0.2, 0.0);
    const Vec3 nu = Vec3(0, 0, 1);
    const Mat3c a = traction_kernel(x, y, nu, unit, 0.0);
    const Mat3c b = traction_kernel(x, y, nu, unit, 1e-8);
    CHECK((a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("dynamic-minus-static traction stays bounded near the origin") {
    const Vec3 nu = Vec3(0, 0, 1);
    const double w = 0.05;
    double prev = 0.0;
    for (double r : {1e-1, 1e-3, 1e-5}) {
        const Mat3c d = traction_dynamic_minus_static(Vec3(r, 0, 0), nu, unit, w);
        CHECK(d.allFinite());
        if (prev > 0.0) CHECK(d.cwiseAbs().maxCoeff() < 10.0 * prev);
        prev = std::max(prev, d.cwiseAbs().maxCoeff());
    }
}
