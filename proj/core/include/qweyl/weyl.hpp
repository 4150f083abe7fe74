// The quantized Weyl algebra on n^2 nodes.  Each node (i,j) carries operators
// M, D, H acting on exponents of the corresponding matrix-algebra generator:
//   M: a -> a+1 (coefficient 1),  D: a -> a-1 (coefficient [a]),  H: q^a.
// Different nodes commute; within a node,
//   D M - q M D = H^{-1},  D M - q^{-1} M D = H,  H D = q^{-1} D H,  H M = q M H.
//
// Normal form: per node M^m D^d H^h with min(m,d) = 0 and h any integer, the
// mixed case being rewritten by M D = (H - H^{-1})/(q - q^{-1}).  Elements
// are stored as maps from per-node (m,d,h) triples (flattened, column-major
// node order) to coefficients, and multiplication is operator composition
// with the right factor acting first.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qweyl/matrixalg.hpp"
#include "qweyl/qrat.hpp"

namespace qweyl {

using WeylKey = std::vector<int>;  // 3 ints (m,d,h) per node

struct WeylElement {
    int n = 0;
    std::map<WeylKey, QRat> terms;

    bool is_zero() const { return terms.empty(); }
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    WeylElement& operator*=(const QRat& c);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(WeylElement a, const QRat& c) { return a *= c; }
    friend WeylElement operator*(const QRat& c, WeylElement a) { return a *= c; }
    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.n == b.n && a.terms == b.terms;
    }
    friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

    std::string str() const;
};

WeylElement weyl_zero(int n);
WeylElement weyl_one(int n);
// accepts any (m,d,h) triples and contracts mixed MD pairs into normal form
WeylElement weyl_monomial(int n, const WeylKey& key, QRat coeff = QRat(1));
WeylElement weyl_M(int n, int i, int j);
WeylElement weyl_D(int n, int i, int j);
WeylElement weyl_H(int n, int i, int j, int power = 1);

// the rescaled lowering operators: H D acts by [[a]], H^{-1} D acts by {{a}}
WeylElement weyl_Dbb(int n, int i, int j);
WeylElement weyl_Dsc(int n, int i, int j);

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement weyl_pow(const WeylElement& a, int k);  // k >= 0

// relabel every node (i,j) -> (n+1-i, n+1-j); an involution on elements
WeylElement flip_weyl(const WeylElement& a);

// action on an exponent vector (positions as in matrixalg); the result maps
// target exponent vectors to coefficients
std::map<Mono, QRat> act(const WeylElement& op, const Mono& exps);

// matrix of the operator restricted to the span of the source monomials,
// keyed (destination, source); destinations may fall outside the source list
using OperatorMatrix = std::map<std::pair<Mono, Mono>, QRat>;
OperatorMatrix operator_matrix(const WeylElement& op, const std::vector<Mono>& sources);

// ---------------------------------------------------------------------------
// diagonal (H-monomial) toolkit
// ---------------------------------------------------------------------------

// forms are tagged by their bracket flavor: J <-> [[.]], L <-> [.], K <-> {{.}}
using Form = QIntFlavor;
inline constexpr Form FormJ = QIntFlavor::BracketJ;
inline constexpr Form FormL = QIntFlavor::BracketL;
inline constexpr Form FormK = QIntFlavor::BracketK;

// H_ij bias exponent carried by the dressed V-element of each form
inline int alpha_bias(Form X) { return X == FormJ ? 0 : (X == FormK ? -2 : -1); }

WeylElement h_monomial(int n, const std::map<std::pair<int, int>, int>& exps);
WeylElement v_nw(int n, int i, int j);                 // prod_{k<i} H_kj prod_{s<j} H_is
WeylElement v_se(int n, int i, int j);                 // prod_{k>i} H_kj prod_{s>j} H_is
WeylElement v_form(int n, int i, int j, Form X);       // V^NW V^SE H_ij^{alpha_X}
WeylElement v_script(int n, int i, int j, Form X);     // V_ij prod_{a<i} V-script_aj prod_{b>j} V-script_ib
WeylElement y_script(int n, int i, int j);             // (V^SE_ij)^2 (prod_{a>i} Y-script_aj)^2

}  // namespace qweyl
