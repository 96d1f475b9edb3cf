#include "kernels.hpp"

#include <cmath>

namespace edp {

namespace {

const Complex I{0.0, 1.0};

void check_not_singular(double r) {
    if (!(r > singular_floor)) throw SingularPoint("kernel evaluated within the singular floor of the source point");
}

Mat3c assemble_from_AB(const Complex& A, const Complex& B, const Vec3& zh) {
    Mat3c out = Mat3c::Zero();
    for (int i = 0; i < 3; ++i) {
        out(i, i) = A;
        for (int j = 0; j < 3; ++j) out(i, j) += B * zh(i) * zh(j);
    }
    return out;
}

// Traction of a kernel given by (A, B, A', B'):
//   G_ijk = d_k Gamma_ij = A' zh_k d_ij + (B' - 2B/r) zh_i zh_j zh_k
//           + (B/r)(d_ik zh_j + d_jk zh_i)
//   (T_j)_i = lam (sum_m G_mjm) nu_i + mu sum_k (G_ijk + G_kji) nu_k
Mat3c traction_from_scalars(const KernelScalars& s, double r, const Vec3& zh, const Vec3& nu, const Material& m) {
    const Complex Br = s.B / r;
    const Complex q = s.Bp - 2.0 * Br;
    const double zn = zh.dot(nu);
    const Complex divg_coef = s.Ap + s.Bp + 2.0 * Br; // div(column j) = divg_coef * zh_j
    Mat3c T;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // sum_k G_ijk nu_k
            Complex g1 = s.Ap * zn * (i == j ? 1.0 : 0.0) + q * zh(i) * zh(j) * zn + Br * (nu(i) * zh(j) + zh(i) * nu(j));
            // sum_k G_kji nu_k = A' zh_i d_kj nu_k + q zh_k zh_j zh_i nu_k + (B/r)(d_kk... ) expand:
            //   = A' zh_i nu_j + q zn zh_i zh_j + (B/r)(zh_j nu_i + d_ij zn ... )
            // G_kji = A' zh_i d_kj + q zh_k zh_j zh_i + (B/r)(d_ki zh_j + d_ji zh_k)
            Complex g2 = s.Ap * zh(i) * nu(j) + q * zn * zh(i) * zh(j) + Br * (nu(i) * zh(j) + (i == j ? zn : 0.0));
            T(i, j) = m.lambda_ * divg_coef * zh(j) * nu(i) + m.mu * (g1 + g2);
        }
    }
    return T;
}

} // namespace

std::pair<Complex, Complex> series_coefficients(int n, const Material& m) {
    if (n < 0) throw InvalidArgument("series term index must be nonnegative");
    const double mu = m.mu, l2m = m.lambda_ + 2.0 * m.mu;
    const double cs = m.cs(), cp = m.cp();
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    Complex in = std::pow(I, n);
    const double ws = 1.0 / (mu * std::pow(cs, n));
    const double wp = 1.0 / (l2m * std::pow(cp, n));
    const Complex a = -(in / (4.0 * pi * (n + 2) * fact)) * ((n + 1.0) * ws + wp);
    const Complex b = (in * (n - 1.0) / (4.0 * pi * (n + 2) * fact)) * (ws - wp);
    return {a, b};
}

KernelScalars scalars_static(double r, const Material& m) {
    const double mu = m.mu, l2m = m.lambda_ + 2.0 * m.mu;
    const double a1 = 1.0 / mu + 1.0 / l2m, a2 = 1.0 / mu - 1.0 / l2m;
    KernelScalars s;
    s.A = -a1 / (8.0 * pi * r);
    s.B = -a2 / (8.0 * pi * r);
    s.Ap = a1 / (8.0 * pi * r * r);
    s.Bp = a2 / (8.0 * pi * r * r);
    return s;
}

KernelScalars scalars_dynamic(double r, const Material& m, double omega) {
    const auto [kp, ks] = wavenumbers(m, omega);
    const double mu = m.mu, rho = m.rho;
    const Complex es = std::exp(I * ks * r), ep = std::exp(I * kp * r);
    const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    const Complex dF = ep - es;
    const Complex dF1 = I * kp * ep - I * ks * es;
    const Complex dF2 = -kp * kp * ep + ks * ks * es;
    const Complex dF3 = -I * kp * kp * kp * ep + I * ks * ks * ks * es;
    const Complex Fp = dF1 / r - dF / r2;
    const Complex Fpp = dF2 / r - 2.0 * dF1 / r2 + 2.0 * dF / r3;
    const Complex Fppp = dF3 / r - 3.0 * dF2 / r2 + 6.0 * dF1 / r3 - 6.0 * dF / r4;
    const double c = 1.0 / (4.0 * pi * omega * omega * rho);
    KernelScalars s;
    s.A = -es / (4.0 * pi * mu * r) + c * Fp / r;
    s.B = c * (Fpp - Fp / r);
    s.Ap = -es * (I * ks * r - 1.0) / (4.0 * pi * mu * r2) + c * (Fpp * r - Fp) / r2;
    s.Bp = c * (Fppp - Fpp / r + Fp / r2);
    return s;
}

KernelScalars scalars_series(double r, const Material& m, double omega, int n_min, int n_max) {
    KernelScalars s{0.0, 0.0, 0.0, 0.0};
    double wn = std::pow(omega, n_min);
    for (int n = n_min; n <= n_max; ++n) {
        const auto [a, b] = series_coefficients(n, m);
        const double rn1 = std::pow(r, n - 1), rn2 = std::pow(r, n - 2);
        s.A += a * wn * rn1;
        s.B += b * wn * rn1;
        s.Ap += a * wn * (n - 1.0) * rn2;
        s.Bp += b * wn * (n - 1.0) * rn2;
        wn *= omega;
    }
    return s;
}

Mat3 kelvin_static(const Vec3& z, const Material& m) {
    const double r = z.norm();
    check_not_singular(r);
    const KernelScalars s = scalars_static(r, m);
    const Vec3 zh = z / r;
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = std::real(s.A) * (i == j ? 1.0 : 0.0) + std::real(s.B) * zh(i) * zh(j);
    return out;
}

Mat3c fundamental_dynamic(const Vec3& z, const Material& m, double omega) {
    const double r = z.norm();
    check_not_singular(r);
    const Vec3 zh = z / r;
    if (omega == 0.0) {
        const KernelScalars s = scalars_static(r, m);
        return assemble_from_AB(s.A, s.B, zh);
    }
    const KernelScalars s =
        (omega * r < series_switch) ? scalars_series(r, m, omega, 0, series_terms) : scalars_dynamic(r, m, omega);
    return assemble_from_AB(s.A, s.B, zh);
}

Mat3c series_term(int n, const Vec3& z, const Material& m) {
    const double r = z.norm();
    if (n <= 2) check_not_singular(r);
    const auto [a, b] = series_coefficients(n, m);
    Mat3c out = Mat3c::Zero();
    const double rn1 = std::pow(r, n - 1), rn3 = std::pow(r, n - 3);
    for (int i = 0; i < 3; ++i) {
        out(i, i) = a * rn1;
        for (int j = 0; j < 3; ++j) out(i, j) += b * rn3 * z(i) * z(j);
    }
    return out;
}

Mat3 traction_static(const Vec3& z, const Vec3& nu_x, const Material& m) {
    const double r = z.norm();
    check_not_singular(r);
    const Mat3c t = traction_from_scalars(scalars_static(r, m), r, z / r, nu_x, m);
    return t.real();
}

Mat3c traction_kernel(const Vec3& x, const Vec3& y, const Vec3& nu_x, const Material& m, double omega) {
    const Vec3 z = x - y;
    const double r = z.norm();
    check_not_singular(r);
    if (omega == 0.0) return traction_from_scalars(scalars_static(r, m), r, z / r, nu_x, m);
    const KernelScalars s =
        (omega * r < series_switch) ? scalars_series(r, m, omega, 0, series_terms) : scalars_dynamic(r, m, omega);
    return traction_from_scalars(s, r, z / r, nu_x, m);
}

Mat3c traction_dynamic_minus_static(const Vec3& z, const Vec3& nu_x, const Material& m, double omega) {
    const double r = z.norm();
    check_not_singular(r);
    const Vec3 zh = z / r;
    if (omega == 0.0) return Mat3c::Zero();
    if (omega * r < series_switch) {
        // Gamma_1 is constant, so the n = 1 term has zero traction; start at n = 2.
        const KernelScalars s = scalars_series(r, m, omega, 2, series_terms);
        return traction_from_scalars(s, r, zh, nu_x, m);
    }
    const KernelScalars d = scalars_dynamic(r, m, omega);
    const KernelScalars st = scalars_static(r, m);
    const KernelScalars diff{d.A - st.A, d.B - st.B, d.Ap - st.Ap, d.Bp - st.Bp};
    return traction_from_scalars(diff, r, zh, nu_x, m);
}

} // namespace edp
