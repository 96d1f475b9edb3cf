#ifndef ELASTODIPOLE_QUADRATURE_HPP
#define ELASTODIPOLE_QUADRATURE_HPP

#include <array>
#include <vector>

#include "types.hpp"

namespace edp::quad {

struct PointSet {
    std::vector<Vec3> points;
    std::vector<double> weights; ///< include the triangle area factor
};

/// Degree-5 7-point rule on the triangle (a, b, c).
void triangle_rule(const std::array<Vec3, 3>& tri, PointSet& out);

/// Near-field rule: recursively splits the triangle until each leaf is
/// small relative to its distance from x (leaf_diameter * ratio < distance)
/// or max_depth is reached, then applies the 7-point rule per leaf.
void adaptive_rule(const std::array<Vec3, 3>& tri, const Vec3& x, double ratio, int max_depth, PointSet& out);

/// Weakly singular rule for a singularity at x0 inside the triangle:
/// splits at x0 into three subtriangles and applies a Duffy-type polar
/// transform with an (n_gauss x n_gauss) tensor Gauss grid on each, which
/// cancels the 1/r factor exactly.
void duffy_rule(const std::array<Vec3, 3>& tri, const Vec3& x0, int n_gauss, PointSet& out);

/// Defaults used by the assemblers.
inline constexpr double near_ratio = 2.0;
inline constexpr int near_depth = 3;
inline constexpr int duffy_order = 8;

} // namespace edp::quad

#endif
