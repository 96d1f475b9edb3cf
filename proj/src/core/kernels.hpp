#ifndef ELASTODIPOLE_KERNELS_HPP
#define ELASTODIPOLE_KERNELS_HPP

#include "materials.hpp"
#include "types.hpp"

namespace edp {

/// Kernels are represented through the radial pair (A, B):
///   Gamma(z) = A(r) I + B(r) zhat zhat^T,  r = |z|,
/// and their radial derivatives, which is all the traction kernel needs.
struct KernelScalars {
    Complex A, B, Ap, Bp;
};

/// Floor under which an evaluation point counts as singular.
inline constexpr double singular_floor = 1e-14;

/// Static Kelvin tensor (omega = 0). Real-valued.
Mat3 kelvin_static(const Vec3& z, const Material& m);

/// Frequency-dependent fundamental solution. The omega -> 0 removable
/// singularity is handled by switching to the low-frequency series when
/// omega * |z| < series_switch.
Mat3c fundamental_dynamic(const Vec3& z, const Material& m, double omega);

/// n-th term of the low-frequency expansion:
///   Gamma_n(z) = a_n r^{n-1} I + b_n r^{n-3} z z^T.
/// Requires |z| > 0 for n <= 2; valid for any z when n >= 3.
Mat3c series_term(int n, const Vec3& z, const Material& m);

/// Coefficients (a_n, b_n) of the expansion above.
std::pair<Complex, Complex> series_coefficients(int n, const Material& m);

/// Traction (conormal-derivative) kernel: column j is the conormal
/// derivative, taken at x with unit normal nu_x, of the j-th column of
/// Gamma^omega(x - y).
Mat3c traction_kernel(const Vec3& x, const Vec3& y, const Vec3& nu_x, const Material& m, double omega);

/// Static traction kernel (real-valued).
Mat3 traction_static(const Vec3& z, const Vec3& nu_x, const Material& m);

/// Difference kernel traction(omega) - traction(0); bounded as |z| -> 0,
/// evaluated through the series when omega |z| is small to avoid
/// cancellation between the two strongly singular parts.
Mat3c traction_dynamic_minus_static(const Vec3& z, const Vec3& nu_x, const Material& m, double omega);

/// Scalar pairs for the three evaluation paths (exposed for tests).
KernelScalars scalars_static(double r, const Material& m);
KernelScalars scalars_dynamic(double r, const Material& m, double omega);
KernelScalars scalars_series(double r, const Material& m, double omega, int n_min = 0, int n_max = 8);

/// omega*|z| threshold below which the series path replaces the direct one.
inline constexpr double series_switch = 1e-3;
/// Number of series terms kept on the series path.
inline constexpr int series_terms = 8;

} // namespace edp

#endif
