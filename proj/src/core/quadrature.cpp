#include "quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace edp::quad {

namespace {

struct Bary {
    double l0, l1, l2, w;
};

// degree-5 rule of Radon/Hammer-Marlowe-Stroud
constexpr double qa = 0.059715871789770, qb = 0.470142064105115;
constexpr double qc = 0.797426985353087, qd = 0.101286507323456;
constexpr double w1 = 0.225, w2 = 0.132394152788506, w3 = 0.125939180544827;
constexpr Bary tri7[7] = {
    {1.0 / 3, 1.0 / 3, 1.0 / 3, w1}, {qa, qb, qb, w2}, {qb, qa, qb, w2}, {qb, qb, qa, w2},
    {qc, qd, qd, w3},                {qd, qc, qd, w3}, {qd, qd, qc, w3},
};

double tri_area(const std::array<Vec3, 3>& t) { return 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm(); }

double tri_diameter(const std::array<Vec3, 3>& t) {
    return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    // Newton iteration on Legendre polynomials, mapped to (0, 1).
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = 0.5 * (1.0 + t);
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

} // namespace

void triangle_rule(const std::array<Vec3, 3>& tri, PointSet& out) {
    const double area = tri_area(tri);
    for (const auto& q : tri7) {
        out.points.push_back(q.l0 * tri[0] + q.l1 * tri[1] + q.l2 * tri[2]);
        out.weights.push_back(q.w * area);
    }
}

void adaptive_rule(const std::array<Vec3, 3>& tri, const Vec3& x, double ratio, int max_depth, PointSet& out) {
    const Vec3 cen = (tri[0] + tri[1] + tri[2]) / 3.0;
    if (max_depth <= 0 || (x - cen).norm() > ratio * tri_diameter(tri)) {
        triangle_rule(tri, out);
        return;
    }
    const Vec3 m01 = 0.5 * (tri[0] + tri[1]), m12 = 0.5 * (tri[1] + tri[2]), m20 = 0.5 * (tri[2] + tri[0]);
    adaptive_rule({tri[0], m01, m20}, x, ratio, max_depth - 1, out);
    adaptive_rule({tri[1], m12, m01}, x, ratio, max_depth - 1, out);
    adaptive_rule({tri[2], m20, m12}, x, ratio, max_depth - 1, out);
    adaptive_rule({m01, m12, m20}, x, ratio, max_depth - 1, out);
}

void duffy_rule(const std::array<Vec3, 3>& tri, const Vec3& x0, int n_gauss, PointSet& out) {
    std::vector<double> gx, gw;
    gauss_legendre_01(n_gauss, gx, gw);
    for (int e = 0; e < 3; ++e) {
        const Vec3 a = tri[e] - x0, b = tri[(e + 1) % 3] - x0;
        const double jac = a.cross(b).norm(); // twice the subtriangle area
        if (jac == 0.0) continue;
        for (int iu = 0; iu < n_gauss; ++iu) {
            for (int it = 0; it < n_gauss; ++it) {
                const double u = gx[iu], t = gx[it];
                out.points.push_back(x0 + u * ((1.0 - t) * a + t * b));
                out.weights.push_back(gw[iu] * gw[it] * u * jac);
            }
        }
    }
}

} // namespace edp::quad
