#include "elastodipole.h"

#include <cstring>
#include <string>

#include "core/geometry.hpp"
#include "core/resonance.hpp"
#include "core/sphere_oracle.hpp"

struct ed_mesh {
    edp::TriangleMesh impl;
};

namespace {

thread_local std::string g_last_error;

ed_status set_error(ed_status code, const char* what) {
    g_last_error = what;
    return code;
}

ed_status status_from_exception() {
    try {
        throw;
    } catch (const edp::IoError& e) {
        return set_error(ED_ERR_IO, e.what());
    } catch (const edp::ParseError& e) {
        return set_error(ED_ERR_PARSE, e.what());
    } catch (const edp::NonWatertight& e) {
        return set_error(ED_ERR_MESH, e.what());
    } catch (const edp::DegenerateFace& e) {
        return set_error(ED_ERR_MESH, e.what());
    } catch (const edp::InvalidArgument& e) {
        return set_error(ED_ERR_INVALID_ARGUMENT, e.what());
    } catch (const edp::Error& e) {
        return set_error(ED_ERR_NUMERICAL, e.what());
    } catch (const std::exception& e) {
        return set_error(ED_ERR_NUMERICAL, e.what());
    }
}

edp::Material to_material(const ed_material* m) {
    if (!m) throw edp::InvalidArgument("material pointer is null");
    return edp::validate_material(m->lambda_, m->mu, m->rho);
}

edp::ContrastConfig to_contrast(const ed_contrast* c) {
    if (!c) throw edp::InvalidArgument("contrast pointer is null");
    return edp::validate_contrast(c->delta, c->epsilon);
}

} // namespace

extern "C" {

const char* ed_last_error(void) { return g_last_error.c_str(); }

ed_status ed_material_validate(const ed_material* m) {
    try {
        to_material(m);
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_contrast_validate(const ed_contrast* c) {
    try {
        to_contrast(c);
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_mesh_load_off(const char* path, ed_mesh** out) {
    try {
        if (!path || !out) throw edp::InvalidArgument("null argument");
        *out = new ed_mesh{edp::load_off(path)};
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_mesh_icosphere(double radius, int subdivisions, ed_mesh** out) {
    try {
        if (!out) throw edp::InvalidArgument("null output pointer");
        *out = new ed_mesh{edp::icosphere(radius, subdivisions)};
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_mesh_scaled(const ed_mesh* mesh, double sx, double sy, double sz, ed_mesh** out) {
    try {
        if (!mesh || !out) throw edp::InvalidArgument("null argument");
        *out = new ed_mesh{mesh->impl.scaled(sx, sy, sz)};
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

void ed_mesh_free(ed_mesh* mesh) { delete mesh; }

int ed_mesh_face_count(const ed_mesh* mesh) { return mesh ? mesh->impl.face_count() : 0; }
double ed_mesh_total_area(const ed_mesh* mesh) { return mesh ? mesh->impl.total_area() : 0.0; }
double ed_mesh_volume(const ed_mesh* mesh) { return mesh ? mesh->impl.volume() : 0.0; }

ed_status ed_resonance_compute(const ed_mesh* mesh, const ed_material* background, const ed_contrast* contrast,
                               int interior_resolution, int compute_nullspace_gap, ed_resonance_result* out) {
    try {
        if (!mesh || !out) throw edp::InvalidArgument("null argument");
        const edp::Material bg = to_material(background);
        const edp::ContrastConfig c = to_contrast(contrast);
        const auto r =
            edp::run_resonance_pipeline(mesh->impl, bg, c, interior_resolution, compute_nullspace_gap != 0);
        std::memset(out, 0, sizeof *out);
        for (int i = 0; i < 6; ++i) {
            out->eigenvalues[i] = r.result.eigenvalues[i];
            out->frequencies[i] = r.result.frequencies[i];
        }
        out->n_clusters = int(r.result.multiplicities.size());
        for (int i = 0; i < out->n_clusters && i < 6; ++i) out->multiplicities[i] = r.result.multiplicities[i];
        out->mesh_faces = r.mesh_faces;
        out->interior_points = r.matrix.interior_points;
        out->volume_estimate = r.matrix.volume_estimate;
        out->nullspace_gap = r.nullspace_gap;
        out->rotation_residual = r.rotation_residual;
        out->biorth_error = r.max_biorth_error;
        out->tau_warning = c.tau_exceeds_unity() ? 1 : 0;
        out->subwavelength_warning = r.result.frequencies[5] >= 0.5 ? 1 : 0;
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_sphere_oracle(double radius, const ed_material* background, const ed_contrast* contrast,
                           ed_sphere_result* out) {
    try {
        if (!out) throw edp::InvalidArgument("null output pointer");
        const edp::Material bg = to_material(background);
        const edp::ContrastConfig c = to_contrast(contrast);
        const auto r = edp::sphere::find_sphere_resonances(radius, bg, c);
        out->omega1_closed = r.omega1_closed;
        out->omega2_closed = r.omega2_closed;
        out->omega_torsional_root = r.omega_torsional_root;
        out->omega_compressional_root = r.omega_compressional_root;
        out->rel_gap_torsional = r.rel_gap_torsional;
        out->rel_gap_compressional = r.rel_gap_compressional;
        out->tau_warning = c.tau_exceeds_unity() ? 1 : 0;
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

ed_status ed_amplitude_sweep(const ed_mesh* mesh, const ed_material* background, const ed_contrast* contrast,
                             const double polarization[3], const double* omegas, int n, int interior_resolution,
                             double* amplitudes_out, double* conditions_out) {
    try {
        if (!mesh || !polarization || !omegas || !amplitudes_out || n <= 0)
            throw edp::InvalidArgument("null argument or empty grid");
        const edp::Material bg = to_material(background);
        const edp::ContrastConfig c = to_contrast(contrast);
        edp::Vec3 p(polarization[0], polarization[1], polarization[2]);
        if (p.norm() == 0.0) throw edp::InvalidArgument("polarization must be nonzero");
        p.normalize();
        const std::vector<double> ws(omegas, omegas + n);
        const auto iq = edp::interior_quadrature(mesh->impl, interior_resolution);
        const auto rows = edp::amplitude_sweep(mesh->impl, bg, c, p, ws, iq);
        for (int i = 0; i < n; ++i) {
            amplitudes_out[i] = rows[i].amplitude;
            if (conditions_out) conditions_out[i] = rows[i].condition_estimate;
        }
        return ED_OK;
    } catch (...) {
        return status_from_exception();
    }
}

} // extern "C"
