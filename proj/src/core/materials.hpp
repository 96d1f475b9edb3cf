#ifndef ELASTODIPOLE_MATERIALS_HPP
#define ELASTODIPOLE_MATERIALS_HPP

#include <cmath>
#include <utility>

#include "errors.hpp"

namespace edp {

/// Isotropic elastic material described by the Lame parameters and density.
/// Units are caller-defined; every formula in the library is homogeneous,
/// so any internally consistent unit system works.
struct Material {
    double lambda_; ///< first Lame parameter
    double mu;      ///< shear modulus
    double rho;     ///< mass density

    double cs() const { return std::sqrt(mu / rho); }
    double cp() const { return std::sqrt((lambda_ + 2.0 * mu) / rho); }
};

/// High-contrast scaling between inclusion and background:
/// inclusion moduli are background/delta, inclusion density background/epsilon.
struct ContrastConfig {
    double delta;
    double epsilon;

    /// Wave-speed contrast tau = cs/cs~ = cp/cp~ = sqrt(delta/epsilon).
    double tau() const { return std::sqrt(delta / epsilon); }
    /// The asymptotic analysis assumes tau <= O(1); callers should surface
    /// a warning (not an error) when this returns true.
    bool tau_exceeds_unity() const { return tau() > 1.0; }
};

/// Checks strong convexity (mu > 0, 3*lambda + 2*mu > 0) and rho > 0.
/// Throws ConvexityViolation / NonPositiveDensity.
Material validate_material(double lambda_, double mu, double rho);

/// Validates 0 < delta <= 1 and 0 < epsilon <= 1.
ContrastConfig validate_contrast(double delta, double epsilon);

/// Wavenumbers (k_p, k_s) at angular frequency omega >= 0.
std::pair<double, double> wavenumbers(const Material& m, double omega);

/// The inclusion material (lambda/delta, mu/delta, rho/epsilon).
Material inclusion_material(const Material& background, const ContrastConfig& c);

} // namespace edp

#endif
