#include "gstrand/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gstrand/parallel.hpp"

namespace gstrand {

namespace {
constexpr int kMaxDim = 16;  // largest catalog algebra is 14-dimensional
}

const char* system_tag(SystemKind k) {
    switch (k) {
        case SystemKind::normal: return "normal";
        case SystemKind::compact: return "compact";
        case SystemKind::chiral: return "chiral";
    }
    return "?";
}

SystemKind parse_system_tag(const std::string& tag) {
    if (tag == "normal") return SystemKind::normal;
    if (tag == "compact") return SystemKind::compact;
    if (tag == "chiral") return SystemKind::chiral;
    throw std::invalid_argument("unknown system '" + tag + "' (valid: normal, compact, chiral)");
}

AlgebraElement StrandState::mu_element(int j) const {
    return AlgebraElement{algebra_id, std::vector<double>(mu_at(j), mu_at(j) + dim())};
}

AlgebraElement StrandState::gamma_element(int j) const {
    return AlgebraElement{algebra_id, std::vector<double>(gamma_at(j), gamma_at(j) + dim())};
}

void StrandState::set_mu(int j, const AlgebraElement& x) {
    std::copy(x.coeffs.begin(), x.coeffs.end(), mu_at(j));
}

void StrandState::set_gamma(int j, const AlgebraElement& x) {
    std::copy(x.coeffs.begin(), x.coeffs.end(), gamma_at(j));
}

namespace {
double max_point_norm(const std::vector<double>& f, int n, int dim) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) {
            double v = f[static_cast<std::size_t>(j) * dim + d];
            s += v * v;
        }
        best = std::max(best, s);
    }
    return std::sqrt(best);
}
}  // namespace

double StrandState::max_point_norm_mu() const { return max_point_norm(mu, n, dim()); }
double StrandState::max_point_norm_gamma() const { return max_point_norm(gamma, n, dim()); }

StrandState make_state(const AlgebraTable& tbl, int n, double length) {
    if (n < 8) throw std::invalid_argument("make_state: grid needs at least 8 points");
    if (!(length > 0.0)) throw std::invalid_argument("make_state: domain length must be positive");
    StrandState s;
    s.algebra_id = tbl.id;
    s.n = n;
    s.length = length;
    s.ds = length / n;
    s.t = 0.0;
    s.mu.assign(static_cast<std::size_t>(n) * tbl.dim, 0.0);
    s.gamma.assign(static_cast<std::size_t>(n) * tbl.dim, 0.0);
    return s;
}

ModelSpec make_model_normal(const AlgebraTable& tbl, double r, const std::vector<double>& a_cartan,
                            const std::vector<double>& c_cartan) {
    ModelSpec m;
    m.algebra_id = tbl.id;
    m.system = SystemKind::normal;
    m.r = r;
    m.a = cartan_element(tbl, a_cartan);
    m.c = cartan_element(tbl, c_cartan);
    // phi_{a,c} = ad_a^{-1} ad_c scales root coordinates by <alpha,c>/<alpha,a>.
    m.sectional = make_sectional(tbl, RealForm::normal, c_cartan, a_cartan);
    return m;
}

ModelSpec make_model_compact(const AlgebraTable& tbl, double r, const std::vector<double>& a_cartan,
                             const std::vector<double>& c_cartan) {
    ModelSpec m;
    m.algebra_id = tbl.id;
    m.system = SystemKind::compact;
    m.r = r;
    m.a = cartan_element(tbl, a_cartan);
    m.c = cartan_element(tbl, c_cartan);
    m.sectional = make_sectional(tbl, RealForm::compact, c_cartan, a_cartan);
    return m;
}

ModelSpec make_model_so3(double r, double a_scalar, double c_scalar, const Vec3& axis) {
    if (a_scalar == 0.0) throw std::invalid_argument("make_model_so3: a must be nonzero");
    double na = norm(axis);
    if (na <= 0.0) throw std::invalid_argument("make_model_so3: axis must be nonzero");
    ModelSpec m;
    m.algebra_id = AlgebraId::so3;
    m.system = SystemKind::compact;
    m.r = r;
    m.so3_closed_form = true;
    m.axis = (1.0 / na) * axis;
    m.a_scalar = a_scalar;
    m.c_scalar = c_scalar;
    m.a = AlgebraElement{AlgebraId::so3, {a_scalar * m.axis[0], a_scalar * m.axis[1], a_scalar * m.axis[2]}};
    m.c = AlgebraElement{AlgebraId::so3, {c_scalar * m.axis[0], c_scalar * m.axis[1], c_scalar * m.axis[2]}};
    return m;
}

ModelSpec make_model_chiral(const AlgebraTable& tbl) {
    ModelSpec m;
    m.algebra_id = tbl.id;
    m.system = SystemKind::chiral;
    m.a = zero_element(tbl);
    m.c = zero_element(tbl);
    return m;
}

void apply_phi_raw(const ModelSpec& model, const double* x, double* out, int dim) {
    if (model.so3_closed_form) {
        Vec3 z{x[0], x[1], x[2]};
        Vec3 p = (model.c_scalar / model.a_scalar) * perp(z, model.axis);
        out[0] = p[0];
        out[1] = p[1];
        out[2] = p[2];
        return;
    }
    if (!model.sectional) throw std::invalid_argument("model carries no sectional operator");
    for (int i = 0; i < dim; ++i) out[i] = model.sectional->diag[i] * x[i];
}

AlgebraElement apply_phi(const ModelSpec& model, const AlgebraTable& tbl, const AlgebraElement& x) {
    AlgebraElement r = zero_element(tbl);
    apply_phi_raw(model, x.coeffs.data(), r.coeffs.data(), tbl.dim);
    return r;
}

void spatial_derivative_raw(const double* f, int n, int dim, double ds, double* out) {
    if (n < 5) throw std::invalid_argument("spatial derivative needs at least 5 grid points");
    const double inv = 1.0 / (12.0 * ds);
    for (int j = 0; j < n; ++j) {
        int jm2 = j - 2 < 0 ? j - 2 + n : j - 2;
        int jm1 = j - 1 < 0 ? j - 1 + n : j - 1;
        int jp1 = j + 1 >= n ? j + 1 - n : j + 1;
        int jp2 = j + 2 >= n ? j + 2 - n : j + 2;
        const double* fm2 = f + static_cast<std::size_t>(jm2) * dim;
        const double* fm1 = f + static_cast<std::size_t>(jm1) * dim;
        const double* fp1 = f + static_cast<std::size_t>(jp1) * dim;
        const double* fp2 = f + static_cast<std::size_t>(jp2) * dim;
        double* o = out + static_cast<std::size_t>(j) * dim;
        for (int d = 0; d < dim; ++d) o[d] = (-fp2[d] + 8.0 * fp1[d] - 8.0 * fm1[d] + fm2[d]) * inv;
    }
}

std::vector<AlgebraElement> spatial_derivative(const std::vector<AlgebraElement>& field, double ds) {
    int n = static_cast<int>(field.size());
    if (n < 5) throw std::invalid_argument("spatial derivative needs at least 5 grid points");
    int dim = static_cast<int>(field[0].coeffs.size());
    std::vector<double> flat(static_cast<std::size_t>(n) * dim), dflat(flat.size());
    for (int j = 0; j < n; ++j)
        std::copy(field[j].coeffs.begin(), field[j].coeffs.end(), flat.begin() + static_cast<std::size_t>(j) * dim);
    spatial_derivative_raw(flat.data(), n, dim, ds, dflat.data());
    std::vector<AlgebraElement> out(n);
    for (int j = 0; j < n; ++j) {
        out[j].id = field[j].id;
        out[j].coeffs.assign(dflat.begin() + static_cast<std::size_t>(j) * dim,
                             dflat.begin() + static_cast<std::size_t>(j + 1) * dim);
    }
    return out;
}

namespace {

// d_t mu    = r d_s mu + [phi(mu), mu] + [gamma, c]
// d_t gamma = r d_s gamma - phi(d_s mu) + [phi(mu), gamma]
// (phi is a constant diagonal, so d_s phi(mu) = phi(d_s mu) exactly)
void rhs_hamiltonian(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                     std::vector<double>& dmu, std::vector<double>& dgamma, int threads) {
    const int n = state.n;
    const int dim = tbl.dim;
    const double r = model.r;

    static thread_local std::vector<double> dsm, dsg;
    dsm.resize(state.mu.size());
    dsg.resize(state.gamma.size());
    spatial_derivative_raw(state.mu.data(), n, dim, state.ds, dsm.data());
    spatial_derivative_raw(state.gamma.data(), n, dim, state.ds, dsg.data());

    dmu.resize(state.mu.size());
    dgamma.resize(state.gamma.size());
    const double* cvec = model.c.coeffs.data();

    parallel_for_chunks(n, threads, [&](int j0, int j1) {
        double phi_mu[kMaxDim], br[kMaxDim], brc[kMaxDim], phi_dmu[kMaxDim];
        for (int j = j0; j < j1; ++j) {
            const double* mu = state.mu_at(j);
            const double* ga = state.gamma_at(j);
            const double* dm = &dsm[static_cast<std::size_t>(j) * dim];
            const double* dg = &dsg[static_cast<std::size_t>(j) * dim];
            double* om = &dmu[static_cast<std::size_t>(j) * dim];
            double* og = &dgamma[static_cast<std::size_t>(j) * dim];

            apply_phi_raw(model, mu, phi_mu, dim);
            apply_phi_raw(model, dm, phi_dmu, dim);

            bracket_into(tbl, phi_mu, mu, br);
            bracket_into(tbl, ga, cvec, brc);
            for (int d = 0; d < dim; ++d) om[d] = r * dm[d] + br[d] + brc[d];

            bracket_into(tbl, phi_mu, ga, br);
            for (int d = 0; d < dim; ++d) og[d] = r * dg[d] - phi_dmu[d] + br[d];
        }
    });
}

// d_t xi = d_s gamma;  d_t gamma = d_s xi - [xi, gamma]
void rhs_chiral_impl(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                     std::vector<double>& dxi, std::vector<double>& dgamma, int threads) {
    (void)model;
    const int n = state.n;
    const int dim = tbl.dim;

    static thread_local std::vector<double> dsx, dsg;
    dsx.resize(state.mu.size());
    dsg.resize(state.gamma.size());
    spatial_derivative_raw(state.mu.data(), n, dim, state.ds, dsx.data());
    spatial_derivative_raw(state.gamma.data(), n, dim, state.ds, dsg.data());

    dxi.resize(state.mu.size());
    dgamma.resize(state.gamma.size());

    parallel_for_chunks(n, threads, [&](int j0, int j1) {
        double br[kMaxDim];
        for (int j = j0; j < j1; ++j) {
            const double* xi = state.mu_at(j);
            const double* ga = state.gamma_at(j);
            double* ox = &dxi[static_cast<std::size_t>(j) * dim];
            double* og = &dgamma[static_cast<std::size_t>(j) * dim];
            bracket_into(tbl, xi, ga, br);
            for (int d = 0; d < dim; ++d) {
                ox[d] = dsg[static_cast<std::size_t>(j) * dim + d];
                og[d] = dsx[static_cast<std::size_t>(j) * dim + d] - br[d];
            }
        }
    });
}

void check_state_shape(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state) {
    if (state.algebra_id != tbl.id || model.algebra_id != tbl.id)
        throw std::invalid_argument("state/model/table algebra mismatch");
    if (state.dim() != tbl.dim) throw std::invalid_argument("state dimension does not match the algebra");
}

}  // namespace

void eval_rhs(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
              std::vector<double>& dmu, std::vector<double>& dgamma, int threads) {
    check_state_shape(tbl, model, state);
    if (model.system == SystemKind::chiral)
        rhs_chiral_impl(tbl, model, state, dmu, dgamma, threads);
    else
        rhs_hamiltonian(tbl, model, state, dmu, dgamma, threads);
}

void rhs_normal(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                std::vector<double>& dmu, std::vector<double>& dgamma) {
    if (model.system != SystemKind::normal) throw std::invalid_argument("rhs_normal: model is not normal-form");
    if (!model.sectional) throw std::invalid_argument("rhs_normal: model carries no sectional operator");
    eval_rhs(tbl, model, state, dmu, dgamma);
}

void rhs_compact(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                 std::vector<double>& dmu, std::vector<double>& dgamma) {
    if (model.system != SystemKind::compact)
        throw std::invalid_argument("rhs_compact: model is not compact-form");
    if (!model.sectional && !model.so3_closed_form)
        throw std::invalid_argument("rhs_compact: model carries no sectional operator");
    eval_rhs(tbl, model, state, dmu, dgamma);
}

void rhs_chiral(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state,
                std::vector<double>& dxi, std::vector<double>& dgamma) {
    if (model.system != SystemKind::chiral) throw std::invalid_argument("rhs_chiral: model is not chiral");
    eval_rhs(tbl, model, state, dxi, dgamma);
}

void step_rk4(const AlgebraTable& tbl, const ModelSpec& model, StrandState& state, double dt,
              int threads) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be positive");
    check_state_shape(tbl, model, state);

    const std::size_t sz = state.mu.size();
    static thread_local std::vector<double> k1m, k1g, k2m, k2g, k3m, k3g, k4m, k4g;
    StrandState stage = state;

    eval_rhs(tbl, model, state, k1m, k1g, threads);

    for (std::size_t i = 0; i < sz; ++i) {
        stage.mu[i] = state.mu[i] + 0.5 * dt * k1m[i];
        stage.gamma[i] = state.gamma[i] + 0.5 * dt * k1g[i];
    }
    eval_rhs(tbl, model, stage, k2m, k2g, threads);

    for (std::size_t i = 0; i < sz; ++i) {
        stage.mu[i] = state.mu[i] + 0.5 * dt * k2m[i];
        stage.gamma[i] = state.gamma[i] + 0.5 * dt * k2g[i];
    }
    eval_rhs(tbl, model, stage, k3m, k3g, threads);

    for (std::size_t i = 0; i < sz; ++i) {
        stage.mu[i] = state.mu[i] + dt * k3m[i];
        stage.gamma[i] = state.gamma[i] + dt * k3g[i];
    }
    eval_rhs(tbl, model, stage, k4m, k4g, threads);

    const double w = dt / 6.0;
    for (std::size_t i = 0; i < sz; ++i) {
        state.mu[i] += w * (k1m[i] + 2.0 * (k2m[i] + k3m[i]) + k4m[i]);
        state.gamma[i] += w * (k1g[i] + 2.0 * (k2g[i] + k3g[i]) + k4g[i]);
    }
    state.t += dt;

    double worst = 0.0;
    bool bad = false;
    for (std::size_t i = 0; i < sz; ++i) {
        double m = std::abs(state.mu[i]), g = std::abs(state.gamma[i]);
        worst = std::max(worst, std::max(m, g));
        if (!std::isfinite(m) || !std::isfinite(g)) bad = true;
    }
    if (bad) throw BlowupError(state.t, worst);
}

double suggest_dt(const AlgebraTable& tbl, const ModelSpec& model, const StrandState& state, double cfl) {
    check_state_shape(tbl, model, state);
    double field = state.max_point_norm_mu() + state.max_point_norm_gamma();
    double speed;
    if (model.system == SystemKind::chiral) {
        speed = 1.0 + field;
    } else if (model.so3_closed_form) {
        speed = std::abs(model.r) + std::abs(model.c_scalar / model.a_scalar) * (field + 1.0);
    } else {
        double s = 0.0;
        for (double d : model.sectional->diag) s = std::max(s, std::abs(d));
        speed = std::abs(model.r) + s * (field + model.c.norm());
    }
    return cfl * state.ds / std::max(speed, 1e-12);
}

StrandState equilibrium_state(double m, double n, const Vec3& axis, int grid_n, double length) {
    double na = norm(axis);
    if (na <= 0.0) throw std::invalid_argument("equilibrium_state: axis must be nonzero");
    Vec3 unit = (1.0 / na) * axis;
    AlgebraTable tbl = build_algebra(AlgebraId::so3);
    StrandState s = make_state(tbl, grid_n, length);
    for (int j = 0; j < grid_n; ++j)
        for (int d = 0; d < 3; ++d) {
            s.mu_at(j)[d] = m * unit[d];
            s.gamma_at(j)[d] = n * unit[d];
        }
    return s;
}

void perturb(StrandState& state, FieldSelect field, int k_mode, double amplitude,
             const std::vector<double>& direction) {
    if (k_mode < 0 || k_mode > state.n / 2)
        throw std::invalid_argument("perturb: mode must be an integer in [0, n/2]");
    if (static_cast<int>(direction.size()) != state.dim())
        throw std::invalid_argument("perturb: direction size does not match the algebra dimension");
    const double w = 2.0 * M_PI * k_mode / state.length;
    for (int j = 0; j < state.n; ++j) {
        double amp = amplitude * std::cos(w * state.grid_s(j));
        for (int d = 0; d < state.dim(); ++d) {
            if (field != FieldSelect::gamma) state.mu_at(j)[d] += amp * direction[d];
            if (field != FieldSelect::mu) state.gamma_at(j)[d] += amp * direction[d];
        }
    }
}

Trajectory run_recorded(const AlgebraTable& tbl, const ModelSpec& model, StrandState state, double dt,
                        int steps, int cadence, int threads) {
    if (cadence <= 0 || steps % cadence != 0)
        throw std::invalid_argument("run_recorded: cadence must divide the step count");
    Trajectory traj;
    traj.model = model;
    traj.snapshot_dt = cadence * dt;
    traj.states.reserve(steps / cadence + 1);
    const double t0 = state.t;
    traj.states.push_back(state);
    for (int i = 1; i <= steps; ++i) {
        step_rk4(tbl, model, state, dt, threads);
        state.t = t0 + i * dt;  // avoid accumulated roundoff in snapshot times
        if (i % cadence == 0) traj.states.push_back(state);
    }
    return traj;
}

double periodic_cubic_interp(const double* f, int n, int stride, double length, double x) {
    double u = x / (length / n);
    double base = std::floor(u);
    double frac = u - base;
    int j0 = static_cast<int>(base) % n;
    if (j0 < 0) j0 += n;
    int jm1 = (j0 - 1 + n) % n;
    int jp1 = (j0 + 1) % n;
    int jp2 = (j0 + 2) % n;
    double wm1 = -frac * (frac - 1.0) * (frac - 2.0) / 6.0;
    double w0 = (frac + 1.0) * (frac - 1.0) * (frac - 2.0) / 2.0;
    double w1 = -(frac + 1.0) * frac * (frac - 2.0) / 2.0;
    double w2 = (frac + 1.0) * frac * (frac - 1.0) / 6.0;
    return wm1 * f[static_cast<std::size_t>(jm1) * stride] + w0 * f[static_cast<std::size_t>(j0) * stride] +
           w1 * f[static_cast<std::size_t>(jp1) * stride] + w2 * f[static_cast<std::size_t>(jp2) * stride];
}

}  // namespace gstrand
