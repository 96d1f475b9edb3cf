#include "materials.hpp"

#include <cmath>
#include <string>

namespace edp {

Material validate_material(double lambda_, double mu, double rho) {
    if (!std::isfinite(lambda_) || !std::isfinite(mu) || !std::isfinite(rho))
        throw InvalidArgument("material parameters must be finite");
    if (mu <= 0.0 || 3.0 * lambda_ + 2.0 * mu <= 0.0)
        throw ConvexityViolation("strong convexity requires mu > 0 and 3*lambda + 2*mu > 0 (got lambda=" +
                                 std::to_string(lambda_) + ", mu=" + std::to_string(mu) + ")");
    if (rho <= 0.0)
        throw NonPositiveDensity("density must be positive (got " + std::to_string(rho) + ")");
    return Material{lambda_, mu, rho};
}

ContrastConfig validate_contrast(double delta, double epsilon) {
    if (!std::isfinite(delta) || !std::isfinite(epsilon))
        throw InvalidArgument("contrast parameters must be finite");
    if (delta <= 0.0 || delta > 1.0)
        throw InvalidArgument("delta must lie in (0, 1], got " + std::to_string(delta));
    if (epsilon <= 0.0 || epsilon > 1.0)
        throw InvalidArgument("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    return ContrastConfig{delta, epsilon};
}

std::pair<double, double> wavenumbers(const Material& m, double omega) {
    if (omega < 0.0) throw InvalidArgument("omega must be nonnegative");
    const double kp = omega * std::sqrt(m.rho / (m.lambda_ + 2.0 * m.mu));
    const double ks = omega * std::sqrt(m.rho / m.mu);
    return {kp, ks};
}

Material inclusion_material(const Material& background, const ContrastConfig& c) {
    return Material{background.lambda_ / c.delta, background.mu / c.delta, background.rho / c.epsilon};
}

} // namespace edp
