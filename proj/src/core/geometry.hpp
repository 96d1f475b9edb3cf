#ifndef ELASTODIPOLE_GEOMETRY_HPP
#define ELASTODIPOLE_GEOMETRY_HPP

#include <array>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace edp {

/// Closed, consistently outward-oriented triangle surface with per-face
/// derived data. Immutable after construction.
class TriangleMesh {
public:
    /// Builds the mesh and validates it: watertightness (every undirected
    /// edge shared by exactly two faces, with opposite directions),
    /// nondegenerate faces, and positive signed volume (orientation is
    /// flipped automatically when the input winds inward).
    TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces);

    int face_count() const { return int(faces_.size()); }
    int vertex_count() const { return int(vertices_.size()); }

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }

    const Vec3& centroid(int f) const { return centroids_[f]; }
    const Vec3& normal(int f) const { return normals_[f]; }
    double area(int f) const { return areas_[f]; }
    double diameter(int f) const { return diameters_[f]; }
    std::array<Vec3, 3> triangle(int f) const {
        return {vertices_[faces_[f][0]], vertices_[faces_[f][1]], vertices_[faces_[f][2]]};
    }

    double total_area() const { return total_area_; }
    /// Divergence-theorem signed volume; positive for outward orientation.
    double volume() const { return volume_; }
    Vec3 bbox_min() const { return bbox_min_; }
    Vec3 bbox_max() const { return bbox_max_; }

    /// Generalized winding number (solid angle sum / 4pi) at p.
    double winding_number(const Vec3& p) const;
    /// Distance from p to the surface.
    double surface_distance(const Vec3& p) const;
    /// True iff the winding number rounds to 1. Throws OnSurface for points
    /// closer to the surface than tol (relative to the bbox diagonal).
    bool is_inside(const Vec3& p, double rel_tol = 1e-9) const;

    /// Anisotropically scaled copy (positive factors).
    TriangleMesh scaled(double sx, double sy, double sz) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<Vec3> centroids_, normals_;
    std::vector<double> areas_, diameters_;
    double total_area_ = 0.0, volume_ = 0.0;
    Vec3 bbox_min_, bbox_max_;

    void build_face_data();
    void validate();
};

/// Reads an OFF file: "OFF" header, "nV nF nE" counts, vertex lines, then
/// face lines "3 i j k" with 0-based indices.
TriangleMesh load_off(const std::string& path);

/// Writes the mesh in the same OFF dialect.
void save_off(const TriangleMesh& mesh, const std::string& path);

/// Geodesic icosphere: 20*4^subdivisions faces, vertices at distance R.
TriangleMesh icosphere(double R, int subdivisions);

/// Uniform-grid interior quadrature: cell centers classified by winding
/// number, each kept point weighted by the cell volume.
struct InteriorQuadrature {
    std::vector<Vec3> points;
    std::vector<double> weights;
    double volume() const;
};

InteriorQuadrature interior_quadrature(const TriangleMesh& mesh, int resolution);

} // namespace edp

#endif
