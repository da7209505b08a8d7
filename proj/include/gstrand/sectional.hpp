#pragma once

#include "gstrand/algebra.hpp"
#include "gstrand/vec3.hpp"

namespace gstrand {

enum class RealForm { normal, compact };

/// Diagonal realization of the sectional operator ad_c^{-1} ad_a over
/// root-space coordinates: factor <alpha,a>/<alpha,c> on every coordinate
/// belonging to the root alpha, zero on the Cartan directions. The same
/// factor applies to a +/- root pair of the normal form and to the paired
/// coordinates of the compact form.
struct SectionalSpec {
    AlgebraId algebra_id{};
    RealForm form{};
    std::vector<double> a_cartan;  // numerator Cartan coefficients
    std::vector<double> c_cartan;  // denominator Cartan coefficients, regular
    std::vector<double> diag;      // one factor per basis coordinate
};

/// Builds the diagonal factors. Rejects a denominator c with <alpha,c> = 0
/// (non-regular, naming the vanishing root) and algebras without root data.
SectionalSpec make_sectional(const AlgebraTable& tbl, RealForm form, const std::vector<double>& a_cartan,
                             const std::vector<double>& c_cartan);

AlgebraElement apply_sectional(const SectionalSpec& spec, const AlgebraElement& x);
void apply_sectional_raw(const SectionalSpec& spec, const double* x, double* out);

/// Closed-form so(3) sectional operator: (c/a) * projection of zeta onto the
/// plane perpendicular to the axis.
Vec3 sectional_so3(double a_scalar, double c_scalar, const Vec3& axis, const Vec3& zeta);

/// Residual of the defining intertwining identity
///   [c, phi(x)] = [a, x - x_cartan]
/// where phi scales root coordinates by <alpha,a>/<alpha,c>.
double check_intertwining(const SectionalSpec& spec, const AlgebraTable& tbl, const AlgebraElement& x);

}  // namespace gstrand
