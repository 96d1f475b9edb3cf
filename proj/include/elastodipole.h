/* elastodipole: sub-wavelength dipolar resonances of a hard elastic
 * inclusion in a soft matrix.
 *
 * C interface to the boundary-element solver and the analytic
 * spherical-geometry reference. All functions return ed_status; handles are
 * opaque and must be released with the matching _free call. Error details
 * for the calling thread are available from ed_last_error().
 */
#ifndef ELASTODIPOLE_H
#define ELASTODIPOLE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ed_status {
    ED_OK = 0,
    ED_ERR_INVALID_ARGUMENT = 1,
    ED_ERR_IO = 2,
    ED_ERR_PARSE = 3,
    ED_ERR_MESH = 4,
    ED_ERR_NUMERICAL = 5
} ed_status;

/* Message describing the most recent failure on this thread. */
const char* ed_last_error(void);

typedef struct ed_material {
    double lambda_; /* first Lame parameter */
    double mu;      /* shear modulus */
    double rho;     /* density */
} ed_material;

typedef struct ed_contrast {
    double delta;   /* modulus contrast, inclusion moduli = background / delta */
    double epsilon; /* density contrast, inclusion density = background / epsilon */
} ed_contrast;

/* Validation helpers: strong convexity / positivity checks. */
ed_status ed_material_validate(const ed_material* m);
ed_status ed_contrast_validate(const ed_contrast* c);

/* ---- meshes ---- */

typedef struct ed_mesh ed_mesh;

ed_status ed_mesh_load_off(const char* path, ed_mesh** out);
ed_status ed_mesh_icosphere(double radius, int subdivisions, ed_mesh** out);
/* Anisotropically scaled copy of an existing mesh. */
ed_status ed_mesh_scaled(const ed_mesh* mesh, double sx, double sy, double sz, ed_mesh** out);
void ed_mesh_free(ed_mesh* mesh);

int ed_mesh_face_count(const ed_mesh* mesh);
double ed_mesh_total_area(const ed_mesh* mesh);
double ed_mesh_volume(const ed_mesh* mesh);

/* ---- resonance pipeline (boundary-element route) ---- */

typedef struct ed_resonance_result {
    double eigenvalues[6];  /* descending */
    double frequencies[6];  /* ascending */
    int multiplicities[6];  /* cluster sizes; first n_clusters entries valid */
    int n_clusters;
    int mesh_faces;
    int interior_points;
    double volume_estimate;
    double nullspace_gap;      /* sigma6/sigma7 of (-1/2+K*); 0 when skipped */
    double rotation_residual;  /* pre-correction rotation diagnostic */
    double biorth_error;       /* max offdiagonal of (zeta_i, xi_j) - delta_ij */
    int tau_warning;           /* 1 when sqrt(delta/epsilon) > 1 */
    int subwavelength_warning; /* 1 when a computed frequency violates omega << 1 */
} ed_resonance_result;

ed_status ed_resonance_compute(const ed_mesh* mesh, const ed_material* background, const ed_contrast* contrast,
                               int interior_resolution, int compute_nullspace_gap, ed_resonance_result* out);

/* ---- analytic sphere reference ---- */

typedef struct ed_sphere_result {
    double omega1_closed; /* torsional channel closed form */
    double omega2_closed; /* compressional channel closed form */
    double omega_torsional_root;
    double omega_compressional_root;
    double rel_gap_torsional;
    double rel_gap_compressional;
    int tau_warning;
} ed_sphere_result;

ed_status ed_sphere_oracle(double radius, const ed_material* background, const ed_contrast* contrast,
                           ed_sphere_result* out);

/* ---- frequency sweep ---- */

/* For each of the n ascending frequencies, solves the transmission system
 * with a p-wave of the given unit polarization and writes the interior RMS
 * amplitude and the block-system condition estimate. */
ed_status ed_amplitude_sweep(const ed_mesh* mesh, const ed_material* background, const ed_contrast* contrast,
                             const double polarization[3], const double* omegas, int n, int interior_resolution,
                             double* amplitudes_out, double* conditions_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ELASTODIPOLE_H */
