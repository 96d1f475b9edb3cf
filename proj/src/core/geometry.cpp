#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace edp {

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    if (vertices_.empty() || faces_.empty()) throw ParseError("mesh has no vertices or faces");
    for (const auto& f : faces_)
        for (int idx : f)
            if (idx < 0 || idx >= int(vertices_.size()))
                throw ParseError("face references vertex " + std::to_string(idx) + " out of range");
    build_face_data();
    if (volume_ < 0.0) {
        for (auto& f : faces_) std::swap(f[1], f[2]);
        build_face_data();
    }
    validate();
}

void TriangleMesh::build_face_data() {
    const int n = face_count();
    centroids_.resize(n);
    normals_.resize(n);
    areas_.resize(n);
    diameters_.resize(n);
    total_area_ = 0.0;
    volume_ = 0.0;
    bbox_min_ = vertices_[0];
    bbox_max_ = vertices_[0];
    for (const auto& v : vertices_) {
        bbox_min_ = bbox_min_.cwiseMin(v);
        bbox_max_ = bbox_max_.cwiseMax(v);
    }
    for (int i = 0; i < n; ++i) {
        const Vec3 &a = vertices_[faces_[i][0]], &b = vertices_[faces_[i][1]], &c = vertices_[faces_[i][2]];
        const Vec3 cr = (b - a).cross(c - a);
        const double nrm = cr.norm();
        areas_[i] = 0.5 * nrm;
        normals_[i] = nrm > 0.0 ? Vec3(cr / nrm) : Vec3(0, 0, 1);
        centroids_[i] = (a + b + c) / 3.0;
        diameters_[i] = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
        total_area_ += areas_[i];
        volume_ += cr.dot(a) / 6.0; // = area * (normal . a) / 3
    }
}

void TriangleMesh::validate() {
    const double diag = (bbox_max_ - bbox_min_).norm();
    for (int i = 0; i < face_count(); ++i)
        if (areas_[i] <= 1e-12 * diag * diag)
            throw DegenerateFace("face " + std::to_string(i) + " has area " + std::to_string(areas_[i]));
    // Watertight and consistently oriented: every directed edge appears
    // exactly once, paired with its reverse.
    std::map<std::pair<int, int>, int> directed;
    for (const auto& f : faces_) {
        for (int k = 0; k < 3; ++k) {
            const int u = f[k], v = f[(k + 1) % 3];
            if (u == v) throw DegenerateFace("face repeats a vertex");
            if (++directed[{u, v}] > 1)
                throw NonWatertight("directed edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") appears twice; mesh is non-manifold or inconsistently oriented");
        }
    }
    for (const auto& [e, cnt] : directed) {
        (void)cnt;
        if (!directed.count({e.second, e.first}))
            throw NonWatertight("boundary edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                ") has no partner face");
    }
}

double TriangleMesh::winding_number(const Vec3& p) const {
    // Van Oosterom--Strackee solid angle per triangle.
    double omega = 0.0;
    for (int i = 0; i < face_count(); ++i) {
        const Vec3 a = vertices_[faces_[i][0]] - p;
        const Vec3 b = vertices_[faces_[i][1]] - p;
        const Vec3 c = vertices_[faces_[i][2]] - p;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double num = a.dot(b.cross(c));
        const double den = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
        omega += 2.0 * std::atan2(num, den);
    }
    return omega / (4.0 * pi);
}

namespace {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, closest point on triangle.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();
    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return (p - (a + d1 / (d1 - d3) * ab)).norm();
    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return (p - (a + d2 / (d2 - d6) * ac)).norm();
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return (p - (b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b))).norm();
    const double denom = 1.0 / (va + vb + vc);
    return (p - (a + ab * vb * denom + ac * vc * denom)).norm();
}

} // namespace

double TriangleMesh::surface_distance(const Vec3& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < face_count(); ++i) {
        const auto t = triangle(i);
        best = std::min(best, point_triangle_distance(p, t[0], t[1], t[2]));
    }
    return best;
}

bool TriangleMesh::is_inside(const Vec3& p, double rel_tol) const {
    const double diag = (bbox_max_ - bbox_min_).norm();
    if (surface_distance(p) <= rel_tol * diag)
        throw OnSurface("point lies on the surface within tolerance");
    return winding_number(p) > 0.5;
}

TriangleMesh TriangleMesh::scaled(double sx, double sy, double sz) const {
    if (sx <= 0.0 || sy <= 0.0 || sz <= 0.0) throw InvalidArgument("scale factors must be positive");
    std::vector<Vec3> v = vertices_;
    for (auto& p : v) p = Vec3(p.x() * sx, p.y() * sy, p.z() * sz);
    return TriangleMesh(std::move(v), faces_);
}

TriangleMesh load_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);
    auto next_line = [&](std::string& line) {
        while (std::getline(in, line)) {
            const auto pos = line.find_first_not_of(" \t\r\n");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw ParseError(path + ": empty file");
    {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag != "OFF") throw ParseError(path + ": missing OFF header");
    }
    if (!next_line(line)) throw ParseError(path + ": missing counts line");
    int nv = 0, nf = 0, ne = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nv >> nf >> ne)) throw ParseError(path + ": bad counts line");
    }
    if (nv <= 0 || nf <= 0) throw ParseError(path + ": nonpositive vertex or face count");
    std::vector<Vec3> verts(nv);
    for (int i = 0; i < nv; ++i) {
        if (!next_line(line)) throw ParseError(path + ": truncated vertex list");
        std::istringstream ss(line);
        if (!(ss >> verts[i].x() >> verts[i].y() >> verts[i].z()))
            throw ParseError(path + ": bad vertex line " + std::to_string(i));
    }
    std::vector<std::array<int, 3>> faces(nf);
    for (int i = 0; i < nf; ++i) {
        if (!next_line(line)) throw ParseError(path + ": truncated face list");
        std::istringstream ss(line);
        int k = 0;
        if (!(ss >> k >> faces[i][0] >> faces[i][1] >> faces[i][2]) || k != 3)
            throw ParseError(path + ": face " + std::to_string(i) + " is not a triangle");
    }
    return TriangleMesh(std::move(verts), std::move(faces));
}

void save_off(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write mesh file: " + path);
    out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
    char buf[96];
    for (const auto& v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

TriangleMesh icosphere(double R, int subdivisions) {
    if (R <= 0.0) throw InvalidArgument("icosphere radius must be positive");
    if (subdivisions < 0) throw InvalidArgument("subdivisions must be nonnegative");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                           {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                           {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& p : v) p.normalize();
    std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 mp = (v[a] + v[b]).normalized();
            v.push_back(mp);
            const int idx = int(v.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> nf;
        nf.reserve(4 * f.size());
        for (const auto& t : f) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            nf.push_back({t[0], ab, ca});
            nf.push_back({t[1], bc, ab});
            nf.push_back({t[2], ca, bc});
            nf.push_back({ab, bc, ca});
        }
        f = std::move(nf);
    }
    for (auto& p : v) p *= R;
    return TriangleMesh(std::move(v), std::move(f));
}

double InteriorQuadrature::volume() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

InteriorQuadrature interior_quadrature(const TriangleMesh& mesh, int resolution) {
    if (resolution < 8) throw InvalidArgument("interior quadrature resolution must be >= 8");
    const Vec3 lo = mesh.bbox_min(), hi = mesh.bbox_max();
    const Vec3 h = (hi - lo) / double(resolution);
    const double cell_volume = h.x() * h.y() * h.z();
    InteriorQuadrature q;
    const int n = resolution;
    std::vector<Vec3> kept;
#pragma omp parallel
    {
        std::vector<Vec3> local;
#pragma omp for collapse(2) schedule(dynamic, 4)
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    const Vec3 p = lo + Vec3((i + 0.5) * h.x(), (j + 0.5) * h.y(), (k + 0.5) * h.z());
                    bool inside = false;
                    try {
                        inside = mesh.is_inside(p);
                    } catch (const OnSurface&) {
                        inside = false; // skip cells straddling the surface
                    }
                    if (inside) local.push_back(p);
                }
            }
        }
#pragma omp critical
        kept.insert(kept.end(), local.begin(), local.end());
    }
    if (kept.empty()) throw EmptyInterior("no grid cell centers classified inside the mesh");
    // deterministic ordering regardless of thread scheduling
    std::sort(kept.begin(), kept.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        if (a.y() != b.y()) return a.y() < b.y();
        return a.z() < b.z();
    });
    q.points = std::move(kept);
    q.weights.assign(q.points.size(), cell_volume);
    return q;
}

} // namespace edp
