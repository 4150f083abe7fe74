// The three diagonal bilinear pairings between the plus and minus matrix
// algebras, indexed by the q-integer flavor of their Gram factorials:
//   (Z^a, W^b)_X = (-1/(q - q^{-1}))^{|a|} delta_{a,b} fact_X(a),
// with fact_J = [[a]]!, fact_L = [a]!, fact_K = {{a}}!.  "Raw" keeps the
// (-1/gamma)^{|a|} prefactor, "normalized" drops it.
//
// Transposes of operators with respect to a pairing turn multiplication
// operators into quantized differential operators: at a single node the
// transpose of M is kappa (H)^{gamma_X} D with gamma = (1, 0, -1) for
// (J, L, K) and the global scalar kappa = -1/(q - q^{-1}) (1 when
// normalized).  The diagonal rescaling A W^alpha = q^{-alpha(alpha-1)/2}
// W^alpha intertwines the forms: (.,.)_L = (., A .)_J and conjugation by A
// realizes the Weyl-algebra automorphism M -> M H, D -> H^{-1} D.

#pragma once

#include <functional>
#include <map>
#include <utility>

#include "qweyl/matrixalg.hpp"
#include "qweyl/qrat.hpp"
#include "qweyl/weyl.hpp"

namespace qweyl {

struct PairingForm {
    Form kind = FormJ;
    bool normalized = false;
};

// the H-exponent picked up by the transpose of a node M under each form
inline int gamma_exponent(Form X) { return X == FormJ ? 1 : (X == FormK ? -1 : 0); }

// diagonal Gram value (Z^a, W^a)_X
QRat gram(const Mono& a, const PairingForm& form);

// full bilinear pairing; z must be a plus-side and w a minus-side element
QRat pair(const AlgElement& z, const AlgElement& w, const PairingForm& form);

// Transpose of an operator matrix across the pairing: if T acts on the minus
// side, transpose(T) is the plus-side operator with (T^ v, u)_X = (v, T u)_X.
// Entrywise: the (dst, src) entry of T contributes gram(dst)/gram(src) times
// its value to the (src, dst) entry of the transpose.  An involution.
OperatorMatrix transpose(const OperatorMatrix& t, const PairingForm& form);

// Transpose on exact Weyl elements: the anti-automorphism fixing H with
//   M -> kappa q^{-g} D H^{g},   D -> kappa^{-1} M H^{-g},   g = gamma_X
// per node (kappa = 1 normalized, -1/gamma raw); matrices of element and
// transposed element satisfy the adjunction above.
WeylElement element_transpose(const WeylElement& e, const PairingForm& form);

// ---------------------------------------------------------------------------
// change-of-basis rescalings
// ---------------------------------------------------------------------------

enum class Rescaling { A, B };

// per-monomial diagonal scale: A^p -> q^{-p sum_ij a_ij (a_ij - 1)/2},
// B^p -> (-gamma)^{p |a|}
QRat basis_scale(Rescaling which, int power, const Mono& a);

// the diagonal matrix of the rescaling on the degree-d basis
OperatorMatrix change_of_basis(Rescaling which, int power, int n, int d);

// conj_a_power(E, p) = A^{-p} E A^{p} as an exact Weyl element: per node,
// M^m D^d H^h -> q^{p (m-d)(m-d-1)/2} M^m D^d H^{h + p(m-d)}
WeylElement conj_a_power(const WeylElement& e, int power);

// ---------------------------------------------------------------------------
// module-level pairing
// ---------------------------------------------------------------------------

// vectors in (algebra) tensor (finite module): monomial exponents + basis slot
using ModuleVector = std::map<std::pair<Mono, int>, QRat>;

// pairing matrix of the module factors: (v'_k, v_l)
using ModulePairing = std::function<QRat(int, int)>;
ModulePairing delta_pairing();

// (u^- v_l, u^+ v'_k)_X = (u^+, u^-)_X (v'_k, v_l): minus-side vector first
QRat module_pair(const ModuleVector& minus_vec, const ModuleVector& plus_vec, int n,
                 const PairingForm& form, const ModulePairing& vpair = delta_pairing());

}  // namespace qweyl
