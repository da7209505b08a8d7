#include "gstrand/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gstrand {

namespace {

const Rational kZero{0};

int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    if ((i + 1) % 3 == j) return 1;  // cyclic (0,1,2)
    return -1;
}

// ---------------------------------------------------------------------------
// Exact 3x3 / 3-vector helpers used to generate the g2 structure constants
// from its (A, u, v) block bracket.

using RVec = std::array<Rational, 3>;
using RMat = std::array<std::array<Rational, 3>, 3>;

RVec rv_zero() { return {kZero, kZero, kZero}; }
RMat rm_zero() {
    RMat m;
    for (auto& row : m) row = rv_zero();
    return m;
}

RVec rv_add(const RVec& a, const RVec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
RVec rv_sub(const RVec& a, const RVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
RVec rv_cross(const RVec& a, const RVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Rational rv_dot(const RVec& a, const RVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

RMat rm_add(const RMat& a, const RMat& b) {
    RMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] + b[i][j];
    return m;
}
RMat rm_sub(const RMat& a, const RMat& b) {
    RMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] - b[i][j];
    return m;
}
RMat rm_scale(const Rational& s, const RMat& a) {
    RMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = s * a[i][j];
    return m;
}
RMat rm_mul(const RMat& a, const RMat& b) {
    RMat m = rm_zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
    return m;
}
RMat rm_comm(const RMat& a, const RMat& b) { return rm_sub(rm_mul(a, b), rm_mul(b, a)); }
RMat rm_outer(const RVec& a, const RVec& b) {
    RMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i] * b[j];
    return m;
}
RMat rm_hat(const RVec& w) {
    RMat m = rm_zero();
    m[0][1] = -w[2];
    m[0][2] = w[1];
    m[1][0] = w[2];
    m[1][2] = -w[0];
    m[2][0] = -w[1];
    m[2][1] = w[0];
    return m;
}
RMat rm_transpose(const RMat& a) {
    RMat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[j][i];
    return m;
}
RMat rm_sym(const RMat& a) { return rm_scale(Rational(1, 2), rm_add(a, rm_transpose(a))); }
RMat rm_skew(const RMat& a) { return rm_scale(Rational(1, 2), rm_sub(a, rm_transpose(a))); }
RVec rm_apply(const RMat& a, const RVec& x) {
    RVec y = rv_zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i] += a[i][j] * x[j];
    return y;
}
Rational rm_trace_prod(const RMat& a, const RMat& b) {
    Rational t{0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t += a[i][j] * b[j][i];
    return t;
}

struct G2Blocks {
    RMat A;  // traceless 3x3
    RVec u;
    RVec v;
};

// Coordinate layout: (a11, a22, a12, a13, a21, a23, a31, a32, u1, u2, u3,
// v1, v2, v3) with a33 = -a11 - a22 implicit.
G2Blocks g2_blocks_from_coords(const std::array<Rational, 14>& q) {
    G2Blocks b;
    b.A = rm_zero();
    b.A[0][0] = q[0];
    b.A[1][1] = q[1];
    b.A[2][2] = -q[0] - q[1];
    b.A[0][1] = q[2];
    b.A[0][2] = q[3];
    b.A[1][0] = q[4];
    b.A[1][2] = q[5];
    b.A[2][0] = q[6];
    b.A[2][1] = q[7];
    b.u = {q[8], q[9], q[10]};
    b.v = {q[11], q[12], q[13]};
    return b;
}

std::array<Rational, 14> g2_coords_from_blocks(const G2Blocks& b) {
    if (b.A[0][0] + b.A[1][1] + b.A[2][2] != kZero)
        throw std::logic_error("g2 block bracket produced a non-traceless A part");
    return {b.A[0][0], b.A[1][1], b.A[0][1], b.A[0][2], b.A[1][0], b.A[1][2], b.A[2][0],
            b.A[2][1], b.u[0],    b.u[1],    b.u[2],    b.v[0],    b.v[1],    b.v[2]};
}

// Closed-form bracket of two g2 elements in (A, u, v) blocks.
G2Blocks g2_block_bracket(const G2Blocks& x, const G2Blocks& y) {
    const Rational th(3, 4);
    const Rational half(1, 2);

    G2Blocks r;
    RMat outer = rm_add(rm_outer(y.u, x.v), rm_outer(x.v, y.u));
    outer = rm_sub(outer, rm_add(rm_outer(y.v, x.u), rm_outer(x.u, y.v)));
    r.A = rm_comm(x.A, y.A);
    r.A = rm_add(r.A, rm_scale(th, outer));
    r.A = rm_add(r.A, rm_scale(th, rm_hat(rv_cross(x.u, y.u))));
    r.A = rm_sub(r.A, rm_scale(th, rm_hat(rv_cross(x.v, y.v))));
    Rational tr_coef = half * (rv_dot(y.v, x.u) - rv_dot(x.v, y.u));
    for (int i = 0; i < 3; ++i) r.A[i][i] += tr_coef;

    RMat x_sym = rm_sym(x.A), x_skew = rm_skew(x.A);
    RMat y_sym = rm_sym(y.A), y_skew = rm_skew(y.A);

    r.u = rv_add(rv_cross(x.u, y.u), rv_cross(x.v, y.v));
    r.u = rv_sub(r.u, rm_apply(x_sym, y.v));
    r.u = rv_add(r.u, rm_apply(x_skew, y.u));
    r.u = rv_add(r.u, rm_apply(y_sym, x.v));
    r.u = rv_sub(r.u, rm_apply(y_skew, x.u));

    r.v = rv_add(rv_cross(y.u, x.v), rv_cross(y.v, x.u));
    r.v = rv_add(r.v, rm_apply(x_skew, y.v));
    r.v = rv_sub(r.v, rm_apply(x_sym, y.u));
    r.v = rv_sub(r.v, rm_apply(y_skew, x.v));
    r.v = rv_add(r.v, rm_apply(y_sym, x.u));
    return r;
}

// Trace form of the 7x7 realization: -3 u.u' + 3 v.v' + 2 tr(A A').
Rational g2_trace_form(const G2Blocks& x, const G2Blocks& y) {
    return Rational(-3) * rv_dot(x.u, y.u) + Rational(3) * rv_dot(x.v, y.v) +
           Rational(2) * rm_trace_prod(x.A, y.A);
}

void init_tensors(AlgebraTable& t) {
    t.c_exact.assign(static_cast<std::size_t>(t.dim) * t.dim * t.dim, kZero);
    t.k_exact.assign(static_cast<std::size_t>(t.dim) * t.dim, kZero);
}

void set_bracket(AlgebraTable& t, int i, int j, int k, Rational v) {
    t.c(i, j, k) = v;
    t.c(j, i, k) = -v;
}

AlgebraTable build_so3() {
    AlgebraTable t;
    t.id = AlgebraId::so3;
    t.dim = 3;
    t.basis_labels = {"e1", "e2", "e3"};
    init_tensors(t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (int e = levi_civita(i, j, k)) t.c(i, j, k) = Rational(e);
    for (int i = 0; i < 3; ++i) t.K(i, i) = Rational(-2);
    t.cartan_indices = {2};
    t.roots = {RootFunctional{{Rational(1)}}};
    t.root_of_basis = {0, 0, -1};
    return t;
}

AlgebraTable build_sl2r() {
    AlgebraTable t;
    t.id = AlgebraId::sl2r;
    t.dim = 3;
    t.basis_labels = {"h", "e+", "e-"};
    init_tensors(t);
    set_bracket(t, 0, 1, 1, Rational(2));   // [h, e+] = 2 e+
    set_bracket(t, 0, 2, 2, Rational(-2));  // [h, e-] = -2 e-
    set_bracket(t, 1, 2, 0, Rational(1));   // [e+, e-] = h
    // kappa(x, y) = 4 tr(xy) on the matrix realization.
    t.K(0, 0) = Rational(8);
    t.K(1, 2) = Rational(4);
    t.K(2, 1) = Rational(4);
    t.cartan_indices = {0};
    t.roots = {RootFunctional{{Rational(2)}}};
    t.root_of_basis = {-1, 0, 0};
    return t;
}

AlgebraTable build_so4() {
    AlgebraTable t;
    t.id = AlgebraId::so4;
    t.dim = 6;
    t.basis_labels = {"x1", "x2", "x3", "y1", "y2", "y3"};
    init_tensors(t);
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    if (int e = levi_civita(i, j, k)) t.c(3 * b + i, 3 * b + j, 3 * b + k) = Rational(e);
    for (int i = 0; i < 6; ++i) t.K(i, i) = Rational(-2);
    t.cartan_indices = {2, 5};
    t.roots = {RootFunctional{{Rational(1), Rational(0)}}, RootFunctional{{Rational(0), Rational(1)}}};
    t.root_of_basis = {0, 0, -1, 1, 1, -1};
    return t;
}

AlgebraTable build_se3() {
    AlgebraTable t;
    t.id = AlgebraId::se3;
    t.dim = 6;
    t.basis_labels = {"om1", "om2", "om3", "ga1", "ga2", "ga3"};
    init_tensors(t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (int e = levi_civita(i, j, k)) {
                    t.c(i, j, k) = Rational(e);          // [om_i, om_j] = e om_k
                    t.c(i, 3 + j, 3 + k) = Rational(e);  // [om_i, ga_j] = e ga_k
                    t.c(3 + i, j, 3 + k) = Rational(e);  // [ga_i, om_j] = e ga_k
                }
    // <(Om1,Ga1),(Om2,Ga2)> = Om1.Ga2 + Ga1.Om2
    for (int i = 0; i < 3; ++i) {
        t.K(i, 3 + i) = Rational(1);
        t.K(3 + i, i) = Rational(1);
    }
    t.cartan_indices = {};
    t.roots = {};
    t.root_of_basis = {-1, -1, -1, -1, -1, -1};
    return t;
}

AlgebraTable build_g2r() {
    AlgebraTable t;
    t.id = AlgebraId::g2r;
    t.dim = 14;
    t.basis_labels = {"a11", "a22", "a12", "a13", "a21", "a23", "a31",
                      "a32", "u1",  "u2",  "u3",  "v1",  "v2",  "v3"};
    init_tensors(t);

    std::array<std::array<Rational, 14>, 14> basis{};
    for (int i = 0; i < 14; ++i) {
        for (int j = 0; j < 14; ++j) basis[i][j] = kZero;
        basis[i][i] = Rational(1);
    }
    for (int i = 0; i < 14; ++i) {
        G2Blocks bi = g2_blocks_from_coords(basis[i]);
        for (int j = 0; j < 14; ++j) {
            if (i == j) continue;
            G2Blocks bj = g2_blocks_from_coords(basis[j]);
            auto coords = g2_coords_from_blocks(g2_block_bracket(bi, bj));
            for (int k = 0; k < 14; ++k) t.c(i, j, k) = coords[k];
        }
        for (int j = 0; j < 14; ++j) {
            G2Blocks bj = g2_blocks_from_coords(basis[j]);
            t.K(i, j) = g2_trace_form(bi, bj);
        }
    }

    t.cartan_indices = {0, 1};
    // Functionals on the raw (a11, a22) coordinates; with the Cartan matrix
    // diag(h1, h2, h3) = diag(a11, a22, -a11-a22) these are the eigenvalue
    // differences h_i - h_j on the off-diagonal entries and the diagonal
    // entries h_k on the (u_k, v_k) pairs.
    auto root = [](long long w1, long long w2) {
        return RootFunctional{{Rational(w1), Rational(w2)}};
    };
    t.roots = {root(1, -1), root(2, 1), root(1, 2), root(1, 0), root(0, 1), root(1, 1)};
    t.root_of_basis = {-1, -1, 0, 1, 0, 2, 1, 2, 3, 4, 5, 3, 4, 5};
    return t;
}

}  // namespace

const char* algebra_tag(AlgebraId id) {
    switch (id) {
        case AlgebraId::so3: return "so3";
        case AlgebraId::sl2r: return "sl2r";
        case AlgebraId::so4: return "so4";
        case AlgebraId::se3: return "se3";
        case AlgebraId::g2r: return "g2r";
    }
    return "?";
}

std::string known_algebra_tags() { return "so3, sl2r, so4, se3, g2r"; }

AlgebraId parse_algebra_tag(const std::string& tag) {
    if (tag == "so3") return AlgebraId::so3;
    if (tag == "sl2r") return AlgebraId::sl2r;
    if (tag == "so4") return AlgebraId::so4;
    if (tag == "se3") return AlgebraId::se3;
    if (tag == "g2r") return AlgebraId::g2r;
    throw std::invalid_argument("unknown algebra tag '" + tag + "' (valid: " + known_algebra_tags() + ")");
}

void AlgebraTable::refresh_mirrors() {
    k_dense.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) k_dense[i * dim + j] = to_double(K(i, j));
    c_nonzero.clear();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (c(i, j, k) != kZero) c_nonzero.push_back({i, j, k, to_double(c(i, j, k))});
}

AlgebraTable build_algebra(AlgebraId id) {
    AlgebraTable t;
    switch (id) {
        case AlgebraId::so3: t = build_so3(); break;
        case AlgebraId::sl2r: t = build_sl2r(); break;
        case AlgebraId::so4: t = build_so4(); break;
        case AlgebraId::se3: t = build_se3(); break;
        case AlgebraId::g2r: t = build_g2r(); break;
    }
    t.refresh_mirrors();
    return t;
}

AlgebraTable build_algebra(const std::string& tag) { return build_algebra(parse_algebra_tag(tag)); }

double AlgebraElement::norm() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return std::sqrt(s);
}

double AlgebraElement::max_abs() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

AlgebraElement zero_element(const AlgebraTable& tbl) {
    return AlgebraElement{tbl.id, std::vector<double>(tbl.dim, 0.0)};
}

AlgebraElement basis_element(const AlgebraTable& tbl, int i) {
    AlgebraElement e = zero_element(tbl);
    e.coeffs.at(i) = 1.0;
    return e;
}

AlgebraElement make_element(const AlgebraTable& tbl, std::vector<double> coeffs) {
    if (static_cast<int>(coeffs.size()) != tbl.dim)
        throw std::invalid_argument("coefficient count does not match the algebra dimension");
    return AlgebraElement{tbl.id, std::move(coeffs)};
}

AlgebraElement cartan_element(const AlgebraTable& tbl, const std::vector<double>& cartan_coords) {
    if (cartan_coords.size() != tbl.cartan_indices.size())
        throw std::invalid_argument("Cartan coordinate count does not match the algebra rank");
    AlgebraElement e = zero_element(tbl);
    for (std::size_t i = 0; i < cartan_coords.size(); ++i)
        e.coeffs[tbl.cartan_indices[i]] = cartan_coords[i];
    return e;
}

std::vector<double> cartan_coords(const AlgebraTable& tbl, const AlgebraElement& x) {
    std::vector<double> out(tbl.cartan_indices.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.coeffs[tbl.cartan_indices[i]];
    return out;
}

AlgebraElement cartan_part(const AlgebraTable& tbl, const AlgebraElement& x) {
    AlgebraElement e = zero_element(tbl);
    for (int i : tbl.cartan_indices) e.coeffs[i] = x.coeffs[i];
    return e;
}

namespace {
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y, const AlgebraTable& tbl,
                          const char* op) {
    if (x.id != tbl.id || y.id != tbl.id)
        throw std::invalid_argument(std::string(op) + ": algebra id mismatch (table is " +
                                    algebra_tag(tbl.id) + ")");
    if (static_cast<int>(x.coeffs.size()) != tbl.dim || static_cast<int>(y.coeffs.size()) != tbl.dim)
        throw std::invalid_argument(std::string(op) + ": element size does not match algebra dimension");
}
}  // namespace

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += y.coeffs[i];
    return r;
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= y.coeffs[i];
    return r;
}

AlgebraElement scale(double s, const AlgebraElement& x) {
    AlgebraElement r = x;
    for (double& c : r.coeffs) c *= s;
    return r;
}

void bracket_into(const AlgebraTable& tbl, const double* x, const double* y, double* out) {
    for (int k = 0; k < tbl.dim; ++k) out[k] = 0.0;
    for (const auto& e : tbl.c_nonzero) out[e.k] += e.v * x[e.i] * y[e.j];
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y, const AlgebraTable& tbl) {
    require_same_algebra(x, y, tbl, "bracket");
    AlgebraElement r = zero_element(tbl);
    bracket_into(tbl, x.coeffs.data(), y.coeffs.data(), r.coeffs.data());
    return r;
}

double pairing_raw(const AlgebraTable& tbl, const double* x, const double* y) {
    double s = 0.0;
    for (int i = 0; i < tbl.dim; ++i) {
        if (x[i] == 0.0) continue;
        const double* row = &tbl.k_dense[i * tbl.dim];
        double acc = 0.0;
        for (int j = 0; j < tbl.dim; ++j) acc += row[j] * y[j];
        s += x[i] * acc;
    }
    return s;
}

double pairing(const AlgebraElement& x, const AlgebraElement& y, const AlgebraTable& tbl) {
    require_same_algebra(x, y, tbl, "pairing");
    return pairing_raw(tbl, x.coeffs.data(), y.coeffs.data());
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << "algebra " << algebra_tag(id) << " (dim " << dim << ")\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  max residual " << c.max_residual;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

// Exact determinant by fraction-free elimination on a rational copy.
Rational rational_determinant(std::vector<Rational> m, int n) {
    Rational det{1};
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r * n + col] != kZero) {
                pivot = r;
                break;
            }
        if (pivot < 0) return kZero;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
            det = -det;
        }
        det *= m[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r * n + col] == kZero) continue;
            Rational f = m[r * n + col] / m[col * n + col];
            for (int j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
        }
    }
    return det;
}

Rational rational_abs(const Rational& r) { return r < kZero ? -r : r; }

}  // namespace

ValidationReport validate_algebra(const AlgebraTable& tbl) {
    ValidationReport rep;
    rep.id = tbl.id;
    rep.dim = tbl.dim;
    const int n = tbl.dim;

    {
        ValidationCheck chk{"antisymmetry", true, 0.0, ""};
        Rational worst{0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Rational r = rational_abs(tbl.c(i, j, k) + tbl.c(j, i, k));
                    if (r > worst) {
                        worst = r;
                        chk.detail = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                     std::to_string(k) + ")";
                    }
                }
        chk.pass = (worst == kZero);
        chk.max_residual = to_double(worst);
        if (chk.pass) chk.detail.clear();
        rep.checks.push_back(chk);
    }

    {
        ValidationCheck chk{"jacobi", true, 0.0, ""};
        Rational worst{0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int m = 0; m < n; ++m) {
                        Rational s{0};
                        for (int l = 0; l < n; ++l)
                            s += tbl.c(i, j, l) * tbl.c(l, k, m) + tbl.c(j, k, l) * tbl.c(l, i, m) +
                                 tbl.c(k, i, l) * tbl.c(l, j, m);
                        Rational r = rational_abs(s);
                        if (r > worst) {
                            worst = r;
                            chk.detail = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                         std::to_string(k) + ")";
                        }
                    }
        chk.pass = (worst == kZero);
        chk.max_residual = to_double(worst);
        if (chk.pass) chk.detail.clear();
        rep.checks.push_back(chk);
    }

    {
        ValidationCheck chk{"pairing symmetry", true, 0.0, ""};
        Rational worst{0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational r = rational_abs(tbl.K(i, j) - tbl.K(j, i));
                if (r > worst) worst = r;
            }
        chk.pass = (worst == kZero);
        chk.max_residual = to_double(worst);
        rep.checks.push_back(chk);
    }

    {
        ValidationCheck chk{"pairing non-degeneracy", true, 0.0, ""};
        Rational det = rational_determinant(tbl.k_exact, n);
        chk.pass = (det != kZero);
        chk.detail = "det K = " + std::to_string(to_double(det));
        rep.checks.push_back(chk);
    }

    {
        // K([e_i,e_j], e_k) + K(e_j, [e_i,e_k]) = 0
        ValidationCheck chk{"pairing invariance", true, 0.0, ""};
        Rational worst{0};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Rational s{0};
                    for (int l = 0; l < n; ++l) s += tbl.c(i, j, l) * tbl.K(l, k) + tbl.c(i, k, l) * tbl.K(j, l);
                    Rational r = rational_abs(s);
                    if (r > worst) {
                        worst = r;
                        chk.detail = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                     std::to_string(k) + ")";
                    }
                }
        chk.pass = (worst == kZero);
        chk.max_residual = to_double(worst);
        if (chk.pass) chk.detail.clear();
        rep.checks.push_back(chk);
    }

    {
        ValidationCheck chk{"cartan commutativity", true, 0.0, ""};
        Rational worst{0};
        for (int i : tbl.cartan_indices)
            for (int j : tbl.cartan_indices)
                for (int k = 0; k < n; ++k) {
                    Rational r = rational_abs(tbl.c(i, j, k));
                    if (r > worst) {
                        worst = r;
                        chk.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    }
                }
        chk.pass = (worst == kZero);
        chk.max_residual = to_double(worst);
        if (chk.pass) chk.detail.clear();
        rep.checks.push_back(chk);
    }

    return rep;
}

std::pair<AlgebraElement, AlgebraElement> so4_split(const AlgebraElement& x) {
    if (x.id != AlgebraId::so4 || x.coeffs.size() != 6)
        throw std::invalid_argument("so4_split: element is not in so(4)");
    AlgebraElement a{AlgebraId::so3, {x.coeffs[0], x.coeffs[1], x.coeffs[2]}};
    AlgebraElement b{AlgebraId::so3, {x.coeffs[3], x.coeffs[4], x.coeffs[5]}};
    return {a, b};
}

AlgebraElement so4_join(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.id != AlgebraId::so3 || y.id != AlgebraId::so3 || x.coeffs.size() != 3 || y.coeffs.size() != 3)
        throw std::invalid_argument("so4_join: inputs must be so(3) elements");
    return AlgebraElement{AlgebraId::so4,
                          {x.coeffs[0], x.coeffs[1], x.coeffs[2], y.coeffs[0], y.coeffs[1], y.coeffs[2]}};
}

}  // namespace gstrand
