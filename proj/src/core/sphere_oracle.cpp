#include "sphere_oracle.hpp"

#include <array>
#include <cmath>

namespace edp::sphere {

namespace {

const Complex I{0.0, 1.0};

// Ascending series j_n(t) = sum_k (-1)^k t^{n+2k} / (2^k k! (2n+2k+1)!!).
Complex bessel_j_series(int n, Complex t) {
    double dfact = 1.0; // (2n+1)!!
    for (int q = 2 * n + 1; q > 1; q -= 2) dfact *= q;
    Complex t2 = t * t;
    Complex term = std::pow(t, n) / dfact;
    Complex sum = term;
    for (int k = 1; k < 12; ++k) {
        term *= -t2 / (2.0 * k * (2.0 * (n + k) + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

Complex spherical_bessel_j(int n, Complex t) {
    if (n < 0 || n > 3) throw InvalidArgument("spherical_bessel_j: order must be 0..3");
    if (std::abs(t) < 1e-2) return bessel_j_series(n, t);
    const Complex s = std::sin(t), c = std::cos(t);
    const Complex t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    switch (n) {
        case 0: return s / t;
        case 1: return s / t2 - c / t;
        case 2: return (3.0 / t3 - 1.0 / t) * s - 3.0 * c / t2;
        default: return (15.0 / t4 - 6.0 / t2) * s - (15.0 / t3 - 1.0 / t) * c;
    }
}

Complex spherical_bessel_y(int n, Complex t) {
    if (n < 0 || n > 3) throw InvalidArgument("spherical_bessel_y: order must be 0..3");
    if (t == 0.0) throw DomainError("spherical_bessel_y undefined at t = 0");
    const Complex s = std::sin(t), c = std::cos(t);
    const Complex t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    switch (n) {
        case 0: return -c / t;
        case 1: return -c / t2 - s / t;
        case 2: return (-3.0 / t3 + 1.0 / t) * c - 3.0 * s / t2;
        default: return (-15.0 / t4 + 6.0 / t2) * c - (15.0 / t3 - 1.0 / t) * s;
    }
}

Complex spherical_hankel_h1(int n, Complex t) {
    return spherical_bessel_j(n, t) + I * spherical_bessel_y(n, t);
}

Complex spherical_bessel_j_prime(int n, Complex t) {
    if (n == 0) return -spherical_bessel_j(1, t);
    return spherical_bessel_j(n - 1, t) - double(n + 1) / t * spherical_bessel_j(n, t);
}

Complex spherical_hankel_h1_prime(int n, Complex t) {
    if (n == 0) return -spherical_hankel_h1(1, t);
    return spherical_hankel_h1(n - 1, t) - double(n + 1) / t * spherical_hankel_h1(n, t);
}

SphereCoeffs operator_coeffs(int n, double R, const Material& m, double omega) {
    if (omega <= 0.0) throw InvalidArgument("operator_coeffs requires omega > 0");
    if (n < 1) throw InvalidArgument("operator_coeffs requires n >= 1");
    const auto [kp, ks] = wavenumbers(m, omega);
    const double lam = m.lambda_, mu = m.mu;
    const double l2m = lam + 2.0 * mu;
    const double R2 = R * R;
    const double nn = n, np1 = n + 1.0, tnp1 = 2.0 * n + 1.0;

    auto js = [&](int q) { return spherical_bessel_j(q, ks * R); };
    auto jp = [&](int q) { return spherical_bessel_j(q, kp * R); };
    auto hs = [&](int q) { return spherical_hankel_h1(q, ks * R); };
    auto hp = [&](int q) { return spherical_hankel_h1(q, kp * R); };

    SphereCoeffs o;
    o.b = -I * ks * R2 * js(n) * hs(n) / mu;
    o.c1 = -R2 * I * (js(n - 1) * hs(n - 1) * ks * np1 / (mu * tnp1) + jp(n - 1) * hp(n - 1) * kp * nn / (l2m * tnp1));
    o.d1 = -nn * R2 * I * (js(n - 1) * hs(n + 1) * ks / (mu * tnp1) - jp(n - 1) * hp(n + 1) * kp / (l2m * tnp1));
    o.c2 = -np1 * R2 * I * (js(n + 1) * hs(n - 1) * ks / (mu * tnp1) - jp(n + 1) * hp(n - 1) * kp / (l2m * tnp1));
    o.d2 = -R2 * I * (js(n + 1) * hs(n + 1) * ks * nn / (mu * tnp1) + jp(n + 1) * hp(n + 1) * kp * np1 / (l2m * tnp1));

    o.fb = -I * ks * R * js(n) * (ks * R * spherical_hankel_h1_prime(n, ks * R) - hs(n));
    o.fc1 = -2.0 * (nn - 1.0) * R * I *
                (js(n - 1) * hs(n - 1) * ks * np1 / tnp1 + jp(n - 1) * hp(n - 1) * kp * mu * nn / (l2m * tnp1)) +
            R2 * I * ((js(n - 1) * hs(n) * ks * ks * np1 + jp(n - 1) * hp(n) * kp * kp * nn) / tnp1);
    o.fd1 = 2.0 * nn * (nn + 2.0) * R * I *
                (js(n - 1) * hs(n + 1) * ks / tnp1 - jp(n - 1) * hp(n + 1) * kp * mu / (l2m * tnp1)) +
            nn * R2 * I * ((-js(n - 1) * hs(n) * ks * ks + jp(n - 1) * hp(n) * kp * kp) / tnp1);
    o.fc2 = -2.0 * (nn * nn - 1.0) * R * I *
                (js(n + 1) * hs(n - 1) * ks / tnp1 - jp(n + 1) * hp(n - 1) * kp * mu / (l2m * tnp1)) -
            np1 * R2 * I * ((-js(n - 1) * hs(n) * ks * ks + jp(n - 1) * hp(n) * kp * kp) / tnp1);
    o.fd2 = 2.0 * (nn + 2.0) * R * I *
                (js(n + 1) * hs(n + 1) * ks * nn / tnp1 + jp(n + 1) * hp(n + 1) * kp * mu * np1 / (l2m * tnp1)) -
            R2 * I * ((js(n + 1) * hs(n) * ks * ks * nn + jp(n + 1) * hp(n) * kp * kp * np1) / tnp1);
    return o;
}

Complex det_M1(double omega, double R, const Material& background, const ContrastConfig& c) {
    const Material inc = inclusion_material(background, c);
    const SphereCoeffs a = operator_coeffs(1, R, background, omega);
    const SphereCoeffs t = operator_coeffs(1, R, inc, omega);
    // [[b~, -b], [fb~ - 1, -fb]]
    return t.b * (-a.fb) - (-a.b) * (t.fb - 1.0);
}

Complex det_M2(double omega, double R, const Material& background, const ContrastConfig& c) {
    const Material inc = inclusion_material(background, c);
    const SphereCoeffs a = operator_coeffs(1, R, background, omega);
    const SphereCoeffs t = operator_coeffs(1, R, inc, omega);
    Eigen::Matrix4cd M;
    M << t.c1, -a.c1, t.c2, -a.c2,
         t.fc1 - 1.0, -a.fc1, t.fc2, -a.fc2,
         t.d1, -a.d1, t.d2, -a.d2,
         t.fd1, -a.fd1, t.fd2 - 1.0, -a.fd2;
    return M.determinant();
}

namespace {

// Golden-section minimization of |f| on [a, b].
template <typename F>
double golden_min(F&& f, double a, double b, double rel_tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = f(c1), f2 = f(c2);
    while ((b - a) > rel_tol * b) {
        if (f1 < f2) {
            b = c2; c2 = c1; f2 = f1;
            c1 = b - gr * (b - a); f1 = f(c1);
        } else {
            a = c1; c1 = c2; f1 = f2;
            c2 = a + gr * (b - a); f2 = f(c2);
        }
    }
    return 0.5 * (a + b);
}

template <typename F>
double locate_det_root(F&& det, double omega_closed) {
    const int n_scan = 600;
    const double lo = 0.1 * omega_closed, hi = 10.0 * omega_closed;
    double best_w = omega_closed, best_v = std::abs(det(omega_closed));
    double prev_re = 0.0;
    bool sign_change = false;
    for (int i = 0; i <= n_scan; ++i) {
        const double w = lo * std::pow(hi / lo, double(i) / n_scan);
        const Complex d = det(w);
        const double v = std::abs(d);
        if (v < best_v) { best_v = v; best_w = w; }
        if (i > 0 && std::real(d) * prev_re < 0.0) sign_change = true;
        prev_re = std::real(d);
    }
    if (!sign_change)
        throw RootNotBracketed("no sign change of Re(det) in the scan window around omega = " +
                               std::to_string(omega_closed));
    const double step = std::pow(hi / lo, 1.0 / n_scan);
    return golden_min([&](double w) { return std::abs(det(w)); }, best_w / step, best_w * step, 1e-10);
}

} // namespace

SphereResonances find_sphere_resonances(double R, const Material& background, const ContrastConfig& c) {
    if (R <= 0.0) throw InvalidArgument("radius must be positive");
    const double lam = background.lambda_, mu = background.mu, rho = background.rho;
    const double se = std::sqrt(c.epsilon);
    SphereResonances out;
    out.omega1_closed = se / R * std::sqrt(15.0 * mu / rho);
    out.omega2_closed = se / R * std::sqrt(9.0 * mu * (lam + 2.0 * mu) / ((2.0 * lam + 5.0 * mu) * rho));
    out.omega_torsional_root =
        locate_det_root([&](double w) { return det_M1(w, R, background, c); }, out.omega1_closed);
    out.omega_compressional_root =
        locate_det_root([&](double w) { return det_M2(w, R, background, c); }, out.omega2_closed);
    out.rel_gap_torsional = std::abs(out.omega_torsional_root - out.omega1_closed) / out.omega1_closed;
    out.rel_gap_compressional = std::abs(out.omega_compressional_root - out.omega2_closed) / out.omega2_closed;
    return out;
}

Vec3c vsh_I0(int m) {
    // Polarization vectors of Y1m: I0^{-1} = sqrt(3/8pi)(1,-i,0),
    // I0^0 = sqrt(3/4pi)(0,0,1), I0^{+1} = -sqrt(3/8pi)(1,i,0).
    const double c8 = std::sqrt(3.0 / (8.0 * pi)), c4 = std::sqrt(3.0 / (4.0 * pi));
    switch (m) {
        case -1: return Vec3c{Complex(c8, 0), Complex(0, -c8), 0.0};
        case 0: return Vec3c{0.0, 0.0, Complex(c4, 0)};
        case 1: return Vec3c{Complex(-c8, 0), Complex(0, -c8), 0.0};
        default: throw InvalidArgument("vector harmonic degree m must be -1, 0 or 1");
    }
}

Vec3c vsh_T1(int m, const Vec3& xhat) {
    const Vec3c e = vsh_I0(m);
    return e.cross(xhat.cast<Complex>());
}

Vec3c vsh_N2(int m, const Vec3& xhat) {
    const Vec3c e = vsh_I0(m);
    const Complex exh = e(0) * xhat(0) + e(1) * xhat(1) + e(2) * xhat(2);
    return 3.0 * exh * xhat.cast<Complex>() - e;
}

namespace {

// grad(G(r) (e.xhat)) = (G' - G/r)(e.xhat) xhat + (G/r) e
Vec3c grad_radial_times_y1(const Complex& G, const Complex& Gp, double r, const Vec3c& e, const Vec3& xhat) {
    const Complex exh = e(0) * xhat(0) + e(1) * xhat(1) + e(2) * xhat(2);
    return (Gp - G / r) * exh * xhat.cast<Complex>() + (G / r) * e;
}

} // namespace

Vec3c mode_J1m1(int m, const Vec3& x, double kp) {
    const double r = x.norm();
    const Vec3 xhat = x / r;
    const Vec3c e = vsh_I0(m);
    const Complex j1 = spherical_bessel_j(1, kp * r);
    const Complex j1p = spherical_bessel_j_prime(1, kp * r);
    return grad_radial_times_y1(j1, kp * j1p, r, e, xhat);
}

Vec3c mode_J1m2(int m, const Vec3& x, double ks) {
    const double r = x.norm();
    const Vec3 xhat = x / r;
    return spherical_bessel_j(1, ks * r) * vsh_T1(m, xhat);
}

Vec3c mode_J1m3(int m, const Vec3& x, double ks) {
    // curl curl (x w) = grad(d/dr(r w)) + ks^2 x w for w = j1(ks r) Y1m
    const double r = x.norm();
    const Vec3 xhat = x / r;
    const Vec3c e = vsh_I0(m);
    const Complex exh = e(0) * xhat(0) + e(1) * xhat(1) + e(2) * xhat(2);
    const Complex j1 = spherical_bessel_j(1, ks * r);
    const Complex j1p = spherical_bessel_j_prime(1, ks * r);
    const Complex G = j1 + ks * r * j1p; // d/dr (r j1(ks r))
    // G'(r) = 2 ks j1' + ks^2 r j1''; use j1'' from the ODE:
    // j1'' = -2/t j1' + (2/t^2 - 1) j1 at t = ks r
    const Complex t = ks * r;
    const Complex j1pp = -2.0 / t * j1p + (2.0 / (t * t) - 1.0) * j1;
    const Complex Gp = ks * (2.0 * j1p + t * j1pp);
    Vec3c out = grad_radial_times_y1(G, Gp, r, e, xhat);
    out += ks * ks * j1 * exh * (r * xhat).cast<Complex>();
    return out;
}

InBallField in_ball_field(Channel channel, int m, const Vec3& x, const Material& mat, double omega, double R) {
    const double r = x.norm();
    if (r >= R) throw DomainError("in_ball_field requires |x| < R");
    if (omega <= 0.0) throw InvalidArgument("in_ball_field requires omega > 0");
    const auto [kp, ks] = wavenumbers(mat, omega);
    const double mu = mat.mu, l2m = mat.lambda_ + 2.0 * mat.mu;

    InBallField out;
    out.coef_j1m1 = out.coef_j1m2 = out.coef_j1m3 = 0.0;
    if (channel == Channel::T1m) {
        out.coef_j1m2 = -I * ks * R * R * spherical_hankel_h1(1, ks * R) / mu;
        out.value = out.coef_j1m2 * mode_J1m2(m, x, ks);
    } else {
        const Complex hp1 = spherical_hankel_h1(1, kp * R);
        const Complex hs1 = spherical_hankel_h1(1, ks * R);
        const Complex hp1p = spherical_hankel_h1_prime(1, kp * R);
        const Complex hs1p = spherical_hankel_h1_prime(1, ks * R);
        out.coef_j1m1 = -I * (2.0 * hp1 + hp1p * kp * R) / (kp * R * l2m);
        out.coef_j1m3 = -I * (2.0 * hs1 + hs1p * ks * R) / (ks * R * mu);
        out.value = out.coef_j1m1 * mode_J1m1(m, x, kp) + out.coef_j1m3 * mode_J1m3(m, x, ks);
    }
    return out;
}

} // namespace edp::sphere
