#include "gstrand/sectional.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gstrand {

SectionalSpec make_sectional(const AlgebraTable& tbl, RealForm form, const std::vector<double>& a_cartan,
                             const std::vector<double>& c_cartan) {
    if (tbl.roots.empty() || tbl.cartan_indices.empty())
        throw std::invalid_argument(std::string("make_sectional: algebra ") + algebra_tag(tbl.id) +
                                    " carries no Cartan/root data");
    if (a_cartan.size() != tbl.cartan_indices.size() || c_cartan.size() != tbl.cartan_indices.size())
        throw std::invalid_argument("make_sectional: Cartan coefficient count does not match the rank");

    double c_norm = 0.0;
    for (double v : c_cartan) c_norm += v * v;
    c_norm = std::sqrt(c_norm);

    std::vector<double> ratios(tbl.roots.size());
    for (std::size_t ri = 0; ri < tbl.roots.size(); ++ri) {
        double den = tbl.roots[ri].eval(c_cartan);
        if (std::abs(den) <= 1e-12 * c_norm) {
            std::ostringstream os;
            os << "make_sectional: denominator element is not regular; root #" << ri << " (weights";
            for (const auto& w : tbl.roots[ri].weights) os << " " << to_double(w);
            os << ") annihilates it";
            throw std::invalid_argument(os.str());
        }
        ratios[ri] = tbl.roots[ri].eval(a_cartan) / den;
    }

    SectionalSpec spec;
    spec.algebra_id = tbl.id;
    spec.form = form;
    spec.a_cartan = a_cartan;
    spec.c_cartan = c_cartan;
    spec.diag.assign(tbl.dim, 0.0);
    for (int i = 0; i < tbl.dim; ++i)
        if (tbl.root_of_basis[i] >= 0) spec.diag[i] = ratios[tbl.root_of_basis[i]];
    return spec;
}

void apply_sectional_raw(const SectionalSpec& spec, const double* x, double* out) {
    for (std::size_t i = 0; i < spec.diag.size(); ++i) out[i] = spec.diag[i] * x[i];
}

AlgebraElement apply_sectional(const SectionalSpec& spec, const AlgebraElement& x) {
    if (x.id != spec.algebra_id || x.coeffs.size() != spec.diag.size())
        throw std::invalid_argument("apply_sectional: algebra mismatch");
    AlgebraElement r{x.id, std::vector<double>(x.coeffs.size())};
    apply_sectional_raw(spec, x.coeffs.data(), r.coeffs.data());
    return r;
}

Vec3 sectional_so3(double a_scalar, double c_scalar, const Vec3& axis, const Vec3& zeta) {
    if (a_scalar == 0.0) throw std::invalid_argument("sectional_so3: a must be nonzero");
    double nA = norm(axis);
    if (nA <= 0.0) throw std::invalid_argument("sectional_so3: axis must be nonzero");
    Vec3 unit = (1.0 / nA) * axis;
    return (c_scalar / a_scalar) * perp(zeta, unit);
}

double check_intertwining(const SectionalSpec& spec, const AlgebraTable& tbl, const AlgebraElement& x) {
    AlgebraElement a_elem = cartan_element(tbl, spec.a_cartan);
    AlgebraElement c_elem = cartan_element(tbl, spec.c_cartan);
    AlgebraElement lhs = bracket(c_elem, apply_sectional(spec, x), tbl);
    AlgebraElement rhs = bracket(a_elem, sub(x, cartan_part(tbl, x)), tbl);
    return sub(lhs, rhs).norm();
}

}  // namespace gstrand
