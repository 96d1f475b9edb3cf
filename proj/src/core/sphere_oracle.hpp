#ifndef ELASTODIPOLE_SPHERE_ORACLE_HPP
#define ELASTODIPOLE_SPHERE_ORACLE_HPP

#include "materials.hpp"
#include "types.hpp"

namespace edp::sphere {

/// Spherical Bessel function j_n for n in 0..3, with an ascending-series
/// evaluation at small argument where the closed forms cancel.
Complex spherical_bessel_j(int n, Complex t);
/// Spherical Neumann function y_n, n in 0..3. Requires t != 0.
Complex spherical_bessel_y(int n, Complex t);
/// Spherical Hankel function of the first kind, h_n = j_n + i*y_n. t != 0.
Complex spherical_hankel_h1(int n, Complex t);
/// Derivatives via f_n' = f_{n-1} - (n+1)/t f_n.
Complex spherical_bessel_j_prime(int n, Complex t);
Complex spherical_hankel_h1_prime(int n, Complex t);

/// Boundary-operator coefficients on the sphere of radius R for one harmonic
/// order n: the single-layer potential maps
///   T_n^m       -> b_n T_n^m
///   I_{n-1}^m   -> c1n I_{n-1}^m + d1n N_{n+1}^m
///   N_{n+1}^m   -> c2n I_{n-1}^m + d2n N_{n+1}^m
/// and the traction operator (raw coefficients; the -1/2 jump shifts are
/// applied where the transmission matrices are built)
///   T_n^m       -> (fb_n - 1/2) T_n^m
///   I_{n-1}^m   -> (fc1n - 1/2) I_{n-1}^m + fd1n N_{n+1}^m
///   N_{n+1}^m   -> fc2n I_{n-1}^m + (fd2n - 1/2) N_{n+1}^m
struct SphereCoeffs {
    Complex b, c1, d1, c2, d2;      // single layer
    Complex fb, fc1, fd1, fc2, fd2; // traction (raw, no jump shift)
};

SphereCoeffs operator_coeffs(int n, double R, const Material& m, double omega);

/// Determinant of the 2x2 torsional-channel transmission matrix
///   [[b~, -b], [fb~ - 1, -fb]]
Complex det_M1(double omega, double R, const Material& background, const ContrastConfig& c);
/// Determinant of the 4x4 compressional-channel transmission matrix built
/// from the (c1, c2, d1, d2) and traction coefficient families.
Complex det_M2(double omega, double R, const Material& background, const ContrastConfig& c);

struct SphereResonances {
    double omega1_closed;  ///< sqrt(eps)/R * sqrt(15 mu / rho)
    double omega2_closed;  ///< sqrt(eps)/R * sqrt(9 mu (lambda+2mu) / ((2 lambda+5 mu) rho))
    double omega_torsional_root;      ///< minimizer of |det M1|
    double omega_compressional_root;  ///< minimizer of |det M2|
    double rel_gap_torsional;
    double rel_gap_compressional;
};

/// Locates the sub-wavelength roots of |det M1| and |det M2| by a log-grid
/// scan around the closed forms followed by golden-section refinement.
SphereResonances find_sphere_resonances(double R, const Material& background, const ContrastConfig& c);

/// Dipolar in-ball field of the single layer applied to a vector-harmonic
/// density channel (n = 1).
enum class Channel { I0m, T1m };

struct InBallField {
    Vec3c value;        ///< field at the evaluation point
    Complex coef_j1m1;  ///< coefficient on grad(j1(kp r) Y1m)
    Complex coef_j1m2;  ///< coefficient on curl(x j1(ks r) Y1m)
    Complex coef_j1m3;  ///< coefficient on curl curl(x j1(ks r) Y1m)
};

/// Evaluates S^omega[channel density](x) for |x| < R together with its
/// decomposition over the three dipolar ball modes. m in {-1, 0, 1}.
InBallField in_ball_field(Channel channel, int m, const Vec3& x, const Material& mat, double omega, double R);

/// Cartesian closed forms of the order-(n=1) vector spherical harmonics at a
/// unit direction xhat: I0m is constant, T1m = e_m x xhat, N2m = 3(e_m.xhat)xhat - e_m,
/// where e_m is the constant polarization vector of Y1m.
Vec3c vsh_I0(int m);
Vec3c vsh_T1(int m, const Vec3& xhat);
Vec3c vsh_N2(int m, const Vec3& xhat);

/// The dipolar ball modes themselves (n = 1 channel).
Vec3c mode_J1m1(int m, const Vec3& x, double kp);
Vec3c mode_J1m2(int m, const Vec3& x, double ks);
Vec3c mode_J1m3(int m, const Vec3& x, double ks);

} // namespace edp::sphere

#endif
