// The compact-subalgebra module structure on the quantized matrix algebras:
//
//  * the skew derivations r_alpha / r'_alpha defined by twisted Leibniz rules
//    from their values on generators (degree-lowering, weight-raising);
//  * the crossing action of the compact generators E, F on PBW monomials,
//    split into an absorbed part and a pass-through tail, realized exactly by
//    Weyl-algebra elements (diagonal H-dressings around a single M D hop
//    between adjacent rows, or columns for the mirrored family);
//  * K_alpha acting diagonally by q^{(alpha, weight)}, realized by explicit
//    H-monomials;
//  * finite-dimensional highest-weight modules for the compact part (scalar
//    for every n, a tensor of two quantized sl2 modules for n = 2) and the
//    induced module A_q^- tensor V with its generator action, where the
//    noncompact raising operator acts through the r-calculus:
//      E y - y E = (K r(y) - r'(y) K^{-1}) / (q - q^{-1}).

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qweyl/matrixalg.hpp"
#include "qweyl/pairing.hpp"
#include "qweyl/qrat.hpp"
#include "qweyl/weyl.hpp"

namespace qweyl {

struct SimpleRoot {
    enum Kind { Mu, Nu, Beta } kind = Beta;
    int index = 0;  // 1..n-1 for Mu/Nu rungs, unused for Beta
    friend bool operator==(const SimpleRoot& a, const SimpleRoot& b) {
        return a.kind == b.kind && (a.kind == Beta || a.index == b.index);
    }
};
inline SimpleRoot mu_root(int k) { return {SimpleRoot::Mu, k}; }
inline SimpleRoot nu_root(int k) { return {SimpleRoot::Nu, k}; }
inline SimpleRoot beta_root() { return {SimpleRoot::Beta, 0}; }

WeightVector root_vector(int n, SimpleRoot alpha);

// skew derivation with the twisted Leibniz rule; on the minus side
//   r(yy') = r(y)y' + q^{(alpha, |wt y|)} y r(y'),
//   r'(yy') = q^{(alpha, |wt y'|)} r'(y)y' + y r'(y'),
// and with the primed/unprimed twists swapped on the plus side.
//
// Two families leave the matrix subalgebra: the primed derivation at the
// noncompact root on the minus side takes letter values in the compact
// lowering part (r'_beta W_21 = -(q-q^{-1}) F_mu1), and mirrored for the
// unprimed one on the plus side.  For those, r_op returns the component back
// inside the subalgebra (compact letters reabsorbed through the crossing
// rules); the discarded complement pairs to zero against the opposite side.
AlgElement r_op(SimpleRoot alpha, bool primed, const AlgElement& x);

enum class GenKind { E, F };

// E_alpha u = absorbed K_alpha + passed E_alpha  (minus side)
// F_alpha u = absorbed         + passed F_alpha  (minus side)
// E_alpha u = absorbed         + passed E_alpha  (plus side)
// F_alpha u = absorbed K_alpha^{-1} + passed F_alpha  (plus side)
struct CrossedAction {
    AlgElement absorbed;
    AlgElement passed;
};
CrossedAction cross_action(GenKind g, SimpleRoot alpha, const AlgElement& u);

// Weyl-element realization of the absorbed part (the trailing K factor of the
// minus-side E and the plus-side F is left off), and of the pass-through
// coefficient in front of the trailing generator
WeylElement weyl_compact_main(GenKind g, SimpleRoot alpha, Side side, int n);
WeylElement weyl_compact_tail(GenKind g, SimpleRoot alpha, Side side, int n);

// H-monomial realization of K_alpha on either side (alpha may be Beta)
WeylElement k_diagonal(SimpleRoot alpha, Side side, int n);

// the row/column mirror (i,j) -> (j,i): an algebra automorphism fixing PBW
// monomials, swapping the two compact families
AlgElement sigma_mirror(const AlgElement& a);
WeylElement sigma_mirror(const WeylElement& e);

// ---------------------------------------------------------------------------
// finite-dimensional modules of the compact part and the induced module
// ---------------------------------------------------------------------------

struct UnsupportedRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HighestWeight {
    std::vector<int> lambda_mu;   // n-1 nonnegative integers
    std::vector<int> lambda_nu;   // n-1 nonnegative integers
    std::optional<long> lambda;   // empty = formal (the t parameter)
};

using SmallMatrix = std::vector<std::vector<QRat>>;  // [row][col], column = source

struct FiniteModule {
    int n = 1;
    int dim = 1;
    HighestWeight hw;
    // indexed by rung k-1; scalar modules hold 1x1 identities
    std::vector<SmallMatrix> E_mu, F_mu, K_mu, K_mu_inv;
    std::vector<SmallMatrix> E_nu, F_nu, K_nu, K_nu_inv;
    SmallMatrix K_beta, K_beta_inv;

    const SmallMatrix& matrix(GenKind g, SimpleRoot alpha) const;  // compact only
    const SmallMatrix& k_matrix(SimpleRoot alpha, int sign) const;
};

// scalar module (lambda only) for any n; tensor of two quantized sl2
// highest-weight modules for n = 2; throws UnsupportedRank otherwise
FiniteModule build_VLambda(int n, const HighestWeight& hw);

struct UqGenerator {
    enum Kind { E, F, K, Kinv } kind = E;
    SimpleRoot root;
};

// left action on (minus algebra) tensor (module); slots index the module basis
ModuleVector verma_action(const UqGenerator& u, const ModuleVector& m, int n,
                          const FiniteModule& v);

}  // namespace qweyl
