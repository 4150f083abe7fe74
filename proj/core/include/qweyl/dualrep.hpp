// The dual representation on (plus matrix algebra) tensor (dual module).
//
// For a generator u, the operator O(u) is the transpose, across the module
// pairing, of the generalized Verma action composed with the antipode,
//     (O(u)(z v'), w v)_X = (z v', S(u)(w v))_X,
// with S(E_alpha) = -K_alpha^{-1} E_alpha, S(F_alpha) = -F_alpha K_alpha,
// S(K_alpha) = K_alpha^{-1}.  Both Gram matrices are diagonal (monomials pair
// only with their mirror, module slots pair dual-to-dual), so the column of
// O(u) at Z^a v'_s collects, over the minus basis W^c v_t, the coefficient of
// Z^a v'_s in S(u)(W^c v_t) scaled by gram(a)/gram(c).
//
// For u = E_beta under form J the operator has a closed five-part expansion:
// with Ad(K_beta) the diagonal q^{(beta, wt)} on monomials, Kd the inverse
// K_beta eigenvalue diagonal on dual slots (the transposed antipode action),
// and X_i = F_{mu_i}, Y_j = F_{nu_j} the compact lowering operators in the
// finite module (their duals are plain matrix transposes),
//     O(E_beta) =  (left mult Z_11) (x) 1
//                - (right mult Z_11) Ad(K_beta) (x) Kd^2
//                + sum_i (q-q^{-1}) q^{-1} (right mult Z_{i+1,1}) Ad(K_beta) (x) Kd^2 X_i^T
//                + sum_j (q-q^{-1}) q^{-1} (right mult Z_{1,j+1}) Ad(K_beta) (x) Kd^2 Y_j^T
//                - sum_{i,j} (q-q^{-1})^2 q^{-2} (right mult Z_{i+1,j+1}) Ad(K_beta) (x) Kd^2 X_i^T Y_j^T.
//
// Conjugating by the degree rescaling (-(q-q^{-1}))^{|.|} makes every entry
// regular at q = 1 once the highest weight is an integer; the limit of the
// rescaled E_beta operator on scalar weights is the classical first-order
// operator  sum_{i,j} Z_{i1} Z_{1j} d/dZ_{ij} - lambda Z_11.

#pragma once

#include <map>
#include <string>
#include <utility>

#include "qweyl/kaction.hpp"
#include "qweyl/matrixalg.hpp"
#include "qweyl/pairing.hpp"
#include "qweyl/qrat.hpp"
#include "qweyl/weyl.hpp"

namespace qweyl {

struct DualRepSpec {
    int n = 1;
    PairingForm form{};        // raw J/K/L
    HighestWeight hw{};        // matrix-valued weights only for n <= 2
    int degree = 2;            // truncation: columns for all sources of degree <= degree
    bool rescaled = false;     // conjugate by the degree rescaling (-(q-q^{-1}))^{|.|}
};

// operator columns on (plus algebra) tensor (dual module): source basis
// element (monomial, dual slot) -> image vector; zero columns are kept empty
using DualColumns = std::map<std::pair<Mono, int>, ModuleVector>;

// the transpose pipeline, valid for every generator
DualColumns dual_rep_matrix(const DualRepSpec& spec, const UqGenerator& u);

// the explicit five-part expansion of O(E_beta); form J only
DualColumns actJ_formula_matrix(const DualRepSpec& spec);

// Exact Weyl-element realization of O(E_beta) on scalar weights: the two
// multiplication operators are taken from the fitted multiplication elements,
// Ad(K_beta) is an H-monomial, and forms L/K are the A-power conjugates of
// the J-element.  Throws UnsupportedRank for matrix-valued weights.
WeylElement dual_rep_element(const DualRepSpec& spec);

// Entrywise q -> 1 comparison of the rescaled J-form E_beta operator on the
// scalar weight lambda against the classical operator above, over all source
// monomials of degree <= d.  A singular entry raises PoleError.
struct ClassicalLimitReport {
    bool pass = true;
    int entries = 0;           // nonzero image coefficients compared
    std::string first_mismatch;
};
ClassicalLimitReport classical_limit_check(int n, long lambda, int d);

}  // namespace qweyl
