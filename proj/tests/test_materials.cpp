#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/materials.hpp"

using namespace edp;

TEST_CASE("strong convexity gate") {
    CHECK_NOTHROW(validate_material(1.0, 1.0, 1.0));
    CHECK_NOTHROW(validate_material(-0.5, 1.0, 1.0)); // 3(-0.5) + 2 = 0.5 > 0
    CHECK_THROWS_AS(validate_material(-1.0, 1.0, 1.0), ConvexityViolation);
    CHECK_THROWS_AS(validate_material(1.0, 0.0, 1.0), ConvexityViolation);
    CHECK_THROWS_AS(validate_material(1.0, 1.0, 0.0), NonPositiveDensity);
    CHECK_THROWS_AS(validate_material(1.0, 1.0, -2.0), NonPositiveDensity);
}

TEST_CASE("wavenumbers") {
    const Material m = validate_material(1.0, 1.0, 1.0);
    auto [kp, ks] = wavenumbers(m, 1.0);
    CHECK(ks == doctest::Approx(1.0));
    CHECK(kp == doctest::Approx(1.0 / std::sqrt(3.0)));

    auto [kp0, ks0] = wavenumbers(m, 0.0);
    CHECK(kp0 == 0.0);
    CHECK(ks0 == 0.0);

    const Material m2 = validate_material(0.0, 1.0, 4.0);
    auto [kp2, ks2] = wavenumbers(m2, 1.0);
    CHECK(ks2 == doctest::Approx(2.0));
    CHECK(kp2 == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("inclusion scaling") {
    const Material bg = validate_material(1.0, 1.0, 1.0);
    const ContrastConfig c = validate_contrast(1e-3, 1e-4);
    const Material inc = inclusion_material(bg, c);
    CHECK(inc.lambda_ == doctest::Approx(1000.0));
    CHECK(inc.mu == doctest::Approx(1000.0));
    CHECK(inc.rho == doctest::Approx(10000.0));

    const Material same = inclusion_material(bg, validate_contrast(1.0, 1.0));
    CHECK(same.lambda_ == bg.lambda_);
    CHECK(same.mu == bg.mu);
    CHECK(same.rho == bg.rho);

    CHECK(validate_contrast(1e-6, 1e-4).tau() == doctest::Approx(0.1));
}

TEST_CASE("contrast validity and tau warning flag") {
    CHECK_THROWS_AS(validate_contrast(0.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(validate_contrast(0.5, 1.5), InvalidArgument);
    CHECK(validate_contrast(1e-2, 1e-4).tau_exceeds_unity()); // tau = 10
    CHECK_FALSE(validate_contrast(1e-4, 1e-2).tau_exceeds_unity());
}

TEST_CASE("wavenumber ordering and inclusion wave-speed contrast") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double lam = pos(rng), mu = pos(rng), rho = pos(rng);
        const Material m = validate_material(lam, mu, rho);
        auto [kp, ks] = wavenumbers(m, pos(rng));
        CHECK(kp <= ks); // lambda >= 0 here

        const ContrastConfig c{std::uniform_real_distribution<double>(1e-6, 1e-2)(rng),
                               std::uniform_real_distribution<double>(1e-4, 1e-2)(rng)};
        const Material inc = inclusion_material(m, c);
        const double omega = pos(rng);
        auto [kpi, ksi] = wavenumbers(inc, omega);
        auto [kpb, ksb] = wavenumbers(m, omega);
        CHECK(ksi == doctest::Approx(c.tau() * ksb).epsilon(1e-12));
        CHECK(kpi == doctest::Approx(c.tau() * kpb).epsilon(1e-12));
        CHECK(c.tau() * c.tau() * c.epsilon == doctest::Approx(c.delta).epsilon(1e-12));
    }
}
