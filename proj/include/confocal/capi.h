/* Confocal -- C API for the discrete confocal coordinates library.
 *
 * All functions return a status code (CONFOCAL_OK on success) and report
 * results through out-parameters.  String outputs are heap-allocated by the
 * library and must be released with confocal_string_free.  On failure a
 * description is available from confocal_last_error (thread-local, valid
 * until the next API call on the same thread).
 */
#ifndef CONFOCAL_CAPI_H
#define CONFOCAL_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

#define CONFOCAL_OK 0
#define CONFOCAL_ERR_PARAM 1    /* invalid argument / bad schema */
#define CONFOCAL_ERR_DOMAIN 2   /* outside the mathematical domain */
#define CONFOCAL_ERR_GEOMETRY 3 /* degenerate geometric configuration */
#define CONFOCAL_ERR_SOLVER 4   /* iteration failed to converge */
#define CONFOCAL_ERR_IO 5       /* malformed input text */

const char* confocal_version(void);
const char* confocal_last_error(void);
void confocal_string_free(char* s);

/* ---- discrete confocal nets ---- */

typedef struct confocal_discrete confocal_discrete;

/* alpha: strictly decreasing integers, n >= 2 of them. */
int confocal_discrete_create(const long long* alpha, int n, confocal_discrete** out);
void confocal_discrete_free(confocal_discrete* h);
int confocal_discrete_dim(const confocal_discrete* h, int* out);
/* Normalization constant D_k, 0-based k. */
int confocal_discrete_scale(const confocal_discrete* h, int k, double* out);
/* Net point for doubled lattice coordinates m = 2n (all even: integer
 * sublattice, all odd: half-integer).  out must hold dim doubles. */
int confocal_discrete_eval(const confocal_discrete* h, const int* m_doubled, double* out);

/* Window bounds lo[i]..hi[i] in lattice units.  parity: 0 integer lattice,
 * 1 half-integer, 2 both.  Output: net JSON document. */
int confocal_discrete_net_json(const confocal_discrete* h, const int* lo, const int* hi,
                               int parity, char** out_json);

/* Identity verification over a window.  tolerances_json: optional (may be
 * NULL) object {"suite name": tolerance, ...}.  *pass is 1 when every suite
 * passed.  The report is always produced. */
int confocal_discrete_verify(const confocal_discrete* h, const int* lo, const int* hi,
                             int parity, const char* tolerances_json,
                             char** report_json, int* pass);

/* Verify a stored net document (schema of confocal_discrete_net_json). */
int confocal_net_verify_json(const char* net_json, const char* tolerances_json,
                             char** report_json, int* pass);

/* Quad mesh of one coordinate layer (N=3 only).  axis: 0-based fixed
 * direction; level_m: doubled coordinate of that direction; lo/hi: window
 * over the two free axes; reflect: mirror into all 8 orthants; format: 0
 * JSON, 1 OBJ. */
int confocal_discrete_mesh(const confocal_discrete* h, int axis, int level_m,
                           const int* lo, const int* hi, int reflect, int format,
                           char** out);

/* Focal curve polyline JSON (N=3 only).  kind: 0 focal hyperbola
 * (n1=n2=-beta), 1 focal ellipse (n2=n3=-gamma).  m_lo..m_hi: doubled range
 * of the running coordinate. */
int confocal_discrete_focal_curve(const confocal_discrete* h, int kind,
                                  int m_lo, int m_hi, char** out_json);

/* ---- continuous reference system ---- */

typedef struct confocal_continuous confocal_continuous;

int confocal_continuous_create(const double* a, int n, confocal_continuous** out);
void confocal_continuous_free(confocal_continuous* h);
int confocal_continuous_eval(const confocal_continuous* h, const double* u, double* out);
int confocal_continuous_invert(const confocal_continuous* h, const double* x, double* out);
/* grid: samples per axis (dim entries). */
int confocal_continuous_sample_json(const confocal_continuous* h, const int* grid,
                                    char** out_json);
int confocal_continuous_verify(const confocal_continuous* h, const int* grid,
                               const char* tolerances_json, char** report_json,
                               int* pass);

/* ---- IC-nets ---- */

/* name: currently "rhombic".  Output: line-grid JSON {"rows": [[a,b,c]...],
 * "cols": [...]} with unit normals. */
int confocal_icnet_builtin(const char* name, int rows, int cols, double theta,
                           double phi, double spacing, char** grid_json);
/* Deterministic perturbation of all line parameters. */
int confocal_icnet_perturb(const char* grid_json, double magnitude,
                           unsigned long long seed, char** out_json);
/* Verify the IC-net theorem properties; report JSON mirrors the library's
 * verification reports. */
int confocal_icnet_verify(const char* grid_json, const char* tolerances_json,
                          char** report_json, int* pass);
/* Gauss-Newton projection onto the IC constraint set. */
int confocal_icnet_solve(const char* grid_json, double tol, int max_iter,
                         char** solved_json, double* max_pitot, int* iterations,
                         int* converged);

#ifdef __cplusplus
}
#endif

#endif /* CONFOCAL_CAPI_H */
