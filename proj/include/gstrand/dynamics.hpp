#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gstrand/algebra.hpp"
#include "gstrand/sectional.hpp"
#include "gstrand/vec3.hpp"

namespace gstrand {

enum class SystemKind { normal, compact, chiral };

const char* system_tag(SystemKind k);
SystemKind parse_system_tag(const std::string& tag);

/// Periodic grid of (mu, gamma) field pairs. Fields are stored flat,
/// row-major n x dim; index arithmetic wraps mod n. For the chiral system
/// the mu array holds xi.
struct StrandState {
    AlgebraId algebra_id{};
    int n = 0;
    double length = 0.0;  // domain length Ls
    double ds = 0.0;
    double t = 0.0;
    std::vector<double> mu;
    std::vector<double> gamma;

    int dim() const { return n > 0 ? static_cast<int>(mu.size()) / n : 0; }
    double* mu_at(int j) { return mu.data() + static_cast<std::size_t>(j) * dim(); }
    const double* mu_at(int j) const { return mu.data() + static_cast<std::size_t>(j) * dim(); }
    double* gamma_at(int j) { return gamma.data() + static_cast<std::size_t>(j) * dim(); }
    const double* gamma_at(int j) const { return gamma.data() + static_cast<std::size_t>(j) * dim(); }
    double grid_s(int j) const { return ds * j; }

    AlgebraElement mu_element(int j) const;
    AlgebraElement gamma_element(int j) const;
    void set_mu(int j, const AlgebraElement& x);
    void set_gamma(int j, const AlgebraElement& x);

    double max_point_norm_mu() const;
    double max_point_norm_gamma() const;
};

StrandState make_state(const AlgebraTable& tbl, int n, double length);

/// Which form is evolved and with which constants. b = r*a is implied
/// throughout and never stored, so [a, b] = 0 holds by construction.
struct ModelSpec {
    AlgebraId algebra_id{};
    SystemKind system{};
    double r = 0.0;
    AlgebraElement a;  // Cartan-valued; for the compact form this is the
    AlgebraElement c;  // realized Cartan element (coefficients on i*h_j)
    std::optional<SectionalSpec> sectional;  // phi_{a,c}: ratios <alpha,c>/<alpha,a>

    // Closed-form so(3) path (any axis); used when so3_closed_form is set.
    bool so3_closed_form = false;
    Vec3 axis{0.0, 0.0, 1.0};
    double a_scalar = 0.0;
    double c_scalar = 0.0;
};

/// Hamiltonian model on the normal real form; a must be regular.
ModelSpec make_model_normal(const AlgebraTable& tbl, double r, const std::vector<double>& a_cartan,
                            const std::vector<double>& c_cartan);

/// Hamiltonian model on the compact real form (root-space path); a regular.
ModelSpec make_model_compact(const AlgebraTable& tbl, double r, const std::vector<double>& a_cartan,
                             const std::vector<double>& c_cartan);

/// Compact so(3) model in cross-product form; the axis may be any nonzero
/// vector and is normalized. a = a_scalar*A, c = c_scalar*A.
ModelSpec make_model_so3(double r, double a_scalar, double c_scalar, const Vec3& axis);

ModelSpec make_model_chiral(const AlgebraTable& tbl);

/// phi_{a,c}(x): the sectional operator entering the Hamiltonian equations.
AlgebraElement apply_phi(const ModelSpec& model, const AlgebraTable& tbl, const AlgebraElement& x);
void apply_phi_raw(const ModelSpec& model, const double* x, double* out, int dim);

/// 4th-order central difference with periodic wrap on a flat n x dim field.
void spatial_derivative_raw(const double* f, int n, int dim, double ds, double* out);
std::vector<AlgebraElement> spatial_derivative(const std::vector<AlgebraElement>& field, double ds);

/// Right-hand sides; dmu/dgamma are resized to n x dim.
/// normal/compact:  d_t mu    = r d_s mu + [phi(mu), mu] + [gamma, c]
///                  d_t gamma = r d_s gamma - d_s phi(mu) + [phi(mu), gamma]
/// chiral:          d_t xi    = d_s gamma
///                  d_t gamma = d_s xi - [xi, gamma]
void eval_rhs(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
              std::vector<double>& dmu, std::vector<double>& dgamma, int threads = 1);

void rhs_normal(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                std::vector<double>& dmu, std::vector<double>& dgamma);
void rhs_compact(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                 std::vector<double>& dmu, std::vector<double>& dgamma);
void rhs_chiral(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                std::vector<double>& dxi, std::vector<double>& dgamma);

struct BlowupError : std::runtime_error {
    double time;
    double max_norm;
    BlowupError(double t, double m)
        : std::runtime_error("solution blew up at t = " + std::to_string(t) +
                             " (max coefficient " + std::to_string(m) + ")"),
          time(t),
          max_norm(m) {}
};

/// Classical 4-stage Runge-Kutta step. Throws BlowupError when non-finite
/// values appear in the updated state.
void step_rk4(const AlgebraTable& tbl, const ModelSpec& model, StrandState& state, double dt,
              int threads = 1);

/// Heuristic stable step: cfl * ds / (|r| + S*(max|mu| + max|gamma| + s0)),
/// with S the largest sectional ratio (|c/a| for so(3)) and s0 the constant
/// forcing scale.
double suggest_dt(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state, double cfl);

/// Constant so(3)-family equilibrium mu = m*A, gamma = n*A on a fresh grid.
StrandState equilibrium_state(double m, double n, const Vec3& axis, int grid_n, double length);

enum class FieldSelect { mu, gamma, both };

/// Adds amplitude * cos(2*pi*k*s/Ls) * direction to the selected fields.
/// k must be an integer grid mode in [0, n/2].
void perturb(StrandState& state, FieldSelect field, int k_mode, double amplitude,
             const std::vector<double>& direction);

/// Recorded evolution: states captured every `cadence` steps (plus the
/// initial one); snapshot times are exactly t0 + i*cadence*dt.
struct Trajectory {
    ModelSpec model;
    std::vector<StrandState> states;
    double snapshot_dt = 0.0;
};

Trajectory run_recorded(const AlgebraTable& tbl, const ModelSpec& model, StrandState state, double dt,
                        int steps, int cadence, int threads = 1);

/// Periodic cubic (4-point Lagrange) interpolation of a flat field component.
double periodic_cubic_interp(const double* f, int n, int stride, double length, double x);

}  // namespace gstrand
