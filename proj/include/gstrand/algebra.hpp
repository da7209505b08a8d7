#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace gstrand {

/// Exact scalar type for structure constants and pairing matrices.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

enum class AlgebraId { so3, sl2r, so4, se3, g2r };

const char* algebra_tag(AlgebraId id);
AlgebraId parse_algebra_tag(const std::string& tag);  // throws std::invalid_argument
std::string known_algebra_tags();

/// A positive root, stored as a rational linear functional on the raw Cartan
/// coordinates of an element (ordered as in AlgebraTable::cartan_indices).
struct RootFunctional {
    std::vector<Rational> weights;

    double eval(const std::vector<double>& cartan_coords) const {
        double s = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            s += to_double(weights[i]) * cartan_coords[i];
        return s;
    }
};

/// Basis-indexed description of one catalog Lie algebra.
///
/// Structure constants satisfy [e_i, e_j] = sum_k c[i][j][k] e_k and the
/// pairing is K[i][j] = K(e_i, e_j); both are kept in exact rational form
/// (for structural validation) with double-precision mirrors used by the
/// runtime element arithmetic.
struct AlgebraTable {
    AlgebraId id{};
    int dim = 0;
    std::vector<std::string> basis_labels;

    std::vector<Rational> c_exact;  // dim^3, layout (i*dim + j)*dim + k
    std::vector<Rational> k_exact;  // dim^2, layout i*dim + j

    struct CEntry {
        int i, j, k;
        double v;
    };
    std::vector<CEntry> c_nonzero;  // every nonzero entry, both (i,j) orders
    std::vector<double> k_dense;    // dim^2 double mirror of k_exact

    std::vector<int> cartan_indices;          // empty for se(3)
    std::vector<RootFunctional> roots;        // positive roots, empty for se(3)
    std::vector<int> root_of_basis;           // -1 on Cartan indices

    const Rational& c(int i, int j, int k) const { return c_exact[(i * dim + j) * dim + k]; }
    Rational& c(int i, int j, int k) { return c_exact[(i * dim + j) * dim + k]; }
    const Rational& K(int i, int j) const { return k_exact[i * dim + j]; }
    Rational& K(int i, int j) { return k_exact[i * dim + j]; }

    bool is_cartan_index(int i) const { return root_of_basis[i] < 0; }

    /// Rebuild the double-precision mirrors after editing the exact tables.
    void refresh_mirrors();
};

/// Element of one catalog algebra: real coefficients over the fixed basis.
struct AlgebraElement {
    AlgebraId id{};
    std::vector<double> coeffs;

    double norm() const;
    double max_abs() const;
};

AlgebraElement zero_element(const AlgebraTable& tbl);
AlgebraElement basis_element(const AlgebraTable& tbl, int i);
AlgebraElement make_element(const AlgebraTable& tbl, std::vector<double> coeffs);

/// Element with the given coefficients placed on the Cartan indices, zero elsewhere.
AlgebraElement cartan_element(const AlgebraTable& tbl, const std::vector<double>& cartan_coords);

/// Raw coordinates of x on the Cartan indices.
std::vector<double> cartan_coords(const AlgebraTable& tbl, const AlgebraElement& x);

/// Projection of x onto the Cartan subalgebra (coefficients elsewhere zeroed).
AlgebraElement cartan_part(const AlgebraTable& tbl, const AlgebraElement& x);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(double s, const AlgebraElement& x);

/// Structure-constant contraction [x, y].
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y, const AlgebraTable& tbl);

/// Low-level bracket on raw coefficient spans (out is overwritten).
void bracket_into(const AlgebraTable& tbl, const double* x, const double* y, double* out);

/// Bi-invariant pairing x^T K y.
double pairing(const AlgebraElement& x, const AlgebraElement& y, const AlgebraTable& tbl);
double pairing_raw(const AlgebraTable& tbl, const double* x, const double* y);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    std::string detail;  // names the worst offending index tuple on failure
};

struct ValidationReport {
    AlgebraId id{};
    int dim = 0;
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
    std::string summary() const;
};

/// Exact-arithmetic structural validation: antisymmetry, Jacobi, pairing
/// symmetry and non-degeneracy, pairing invariance, Cartan commutativity.
ValidationReport validate_algebra(const AlgebraTable& tbl);

/// Builds one catalog algebra. Throws std::invalid_argument on an unknown tag.
AlgebraTable build_algebra(AlgebraId id);
AlgebraTable build_algebra(const std::string& tag);

/// so(4) <-> so(3) x so(3) under the standard isomorphism; componentwise brackets.
std::pair<AlgebraElement, AlgebraElement> so4_split(const AlgebraElement& x);
AlgebraElement so4_join(const AlgebraElement& x, const AlgebraElement& y);

}  // namespace gstrand
