// The positive half of the quantized enveloping algebra presented by the
// quantized Serre relations on the simple-root letters along the defining
// path, together with the bracket construction of the matrix-algebra
// generators and the certification that they satisfy the quadratic PBW
// relations modulo the Serre ideal.
//
// Letters are indexed 0..2n-2 along the path: letter l < n-1 is mu_{n-1-l},
// letter n-1 is beta, letter l > n-1 is nu_{l-n+1}; adjacency in the Dynkin
// diagram is adjacency of letter indices.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qweyl/linalg.hpp"
#include "qweyl/matrixalg.hpp"
#include "qweyl/qrat.hpp"

namespace qweyl {

using FreeWord = std::vector<int>;
using FreeElement = std::map<FreeWord, QRat>;

struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline int path_letters(int n) { return 2 * n - 1; }

WeightVector path_root(int n, int letter);
std::string letter_str(int n, int letter);

FreeElement free_letter(int letter);
FreeElement free_mul(const FreeElement& a, const FreeElement& b);
FreeElement& free_add_scaled(FreeElement& a, const QRat& c, const FreeElement& b);

// 2(2n-2) cubic relators (one per adjacent ordered pair) plus the commutators
// of the non-adjacent pairs
std::vector<FreeElement> serre_relators(int n);

// The generator Z_ij realized by iterated twisted brackets:
//   Z_11 = E_beta,  Z_{i+1,1} = ad(E_{mu_i}) Z_{i1},  Z_{i,j+1} = ad(E_{nu_j}) Z_ij
// with ad(E)(x) = E x - q^{-1} x E.  Homogeneous of path degree i + j - 1.
FreeElement z_generator(int n, int i, int j);

// Degreewise reduction modulo the two-sided Serre ideal; slices of the ideal
// are materialized lazily as row echelon forms.
class SerreQuotient {
public:
    explicit SerreQuotient(int n);

    // residual of e modulo the ideal slice of its degree; empty residual
    // means membership.  Throws DegreeMismatch if e mixes degrees.
    FreeElement reduce(const FreeElement& e);

    long quotient_dim(int d);  // letters^d minus the rank of the ideal slice

private:
    RowEchelon& slice(int d);

    int n_;
    std::vector<FreeElement> relators_;
    std::map<int, RowEchelon> slices_;
};

// Independent dimension oracle: the degree-d slice of the positive part has
// one basis monomial per multiset of positive roots of A_{2n-1} whose
// heights sum to d.
long positive_part_dim(int n, int d);

struct SerreCertItem {
    int gi, gj, xi, xj;
    std::string status;  // "pass", "fail", or "skipped" (degree above the cap)
};

// For every ordered pair of generators, expand the product in the matrix
// algebra and check that the corresponding free-algebra combination lies in
// the Serre ideal.  Pairs of path degree above max_degree are skipped.
std::vector<SerreCertItem> certify_pbw_instances(int n, int max_degree);

}  // namespace qweyl
