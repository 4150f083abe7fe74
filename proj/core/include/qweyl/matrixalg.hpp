// The two quantized matrix algebras on n x n generators: the plus side with
// generators Z_ij and the minus side with W_ij.  Both satisfy the same
// quadratic rewriting rules; the side only changes weights and how the
// algebra interacts with pairings and module actions.
//
// PBW basis: monomials are exponent vectors over the n^2 generators listed in
// column-major position order pos(i,j) = (j-1)n + (i-1); a PBW monomial is
// the product of its letters by ascending position.  For a letter g directly
// left of a letter x with pos(g) > pos(x):
//   same row or same column          g x = q x g
//   g below-left of x (i>, j<): impossible with pos(g) > pos(x)
//   g above-right    (i<, j>)        g x = x g
//   g below-right    (i>, j>)        g x = x g + (q - q^{-1}) u v
// where u, v are the cross letters on the anti-diagonal of the 2x2 minor
// spanned by x and g (u in x's row, v in g's row).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qweyl/qrat.hpp"

namespace qweyl {

enum class Side { Plus, Minus };

inline int alg_pos(int n, int i, int j) { return (j - 1) * n + (i - 1); }  // 1-based i, j
inline int alg_row(int n, int pos) { return pos % n + 1; }
inline int alg_col(int n, int pos) { return pos / n + 1; }

using Mono = std::vector<int>;  // exponent vector indexed by position, length n^2

struct AlgElement {
    int n = 0;
    Side side = Side::Plus;
    std::map<Mono, QRat> terms;

    bool is_zero() const { return terms.empty(); }
    AlgElement& operator+=(const AlgElement& o);
    AlgElement& operator-=(const AlgElement& o);
    AlgElement& operator*=(const QRat& c);
    friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
    friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
    friend AlgElement operator*(AlgElement a, const QRat& c) { return a *= c; }
    friend AlgElement operator*(const QRat& c, AlgElement a) { return a *= c; }
    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        return a.n == b.n && a.side == b.side && a.terms == b.terms;
    }
    friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

    std::string str() const;
};

AlgElement alg_zero(int n, Side side);
AlgElement alg_one(int n, Side side);
AlgElement alg_monomial(int n, Side side, Mono exps, QRat coeff = QRat(1));
AlgElement generator(int n, Side side, int i, int j);

// product in the quantized matrix algebra; operands must share n and side
AlgElement multiply(const AlgElement& a, const AlgElement& b);

// the 180-degree rotation (i,j) -> (n+1-i, n+1-j); an involutive algebra
// anti-automorphism fixing PBW monomials up to index relabeling
AlgElement flip(const AlgElement& a);

// all exponent vectors of total degree d, lexicographically ascending
std::vector<Mono> basis_of_degree(int n, int d);

int degree(const Mono& m);
bool is_homogeneous_degree(const AlgElement& a);  // all terms same total degree

// ---------------------------------------------------------------------------
// weights
//
// Weights live in Z^{2n} with orthonormal coordinates.  The generator Z_ij
// has weight gamma_ij = e_{n+1-i} - e_{n+j}; W_ij has weight -gamma_ij.
// Simple roots along the defining path: mu_k = e_{n-k} - e_{n-k+1} (rows),
// beta = e_n - e_{n+1}, nu_k = e_{n+k} - e_{n+k+1} (columns).
// ---------------------------------------------------------------------------

using WeightVector = std::vector<int>;  // length 2n

WeightVector weight_gamma(int n, int i, int j);
WeightVector root_mu(int n, int k);    // 1 <= k <= n-1
WeightVector root_nu(int n, int k);    // 1 <= k <= n-1
WeightVector root_beta(int n);
int weight_dot(const WeightVector& a, const WeightVector& b);

WeightVector weight_of_mono(int n, Side side, const Mono& m);
WeightVector weight(const AlgElement& a);  // throws std::invalid_argument if mixed

// ---------------------------------------------------------------------------
// word rewriting (used to check the normal form is strategy-independent)
// ---------------------------------------------------------------------------

enum class RewriteStrategy { LeftmostInversion, RightmostInversion };

// Rewrites an arbitrary word of generator positions to the PBW normal form by
// repeatedly resolving one inversion per step.  fuel bounds the number of
// single-term rewrite steps; throws std::runtime_error when exhausted.
AlgElement rewrite_word(int n, Side side, const std::vector<int>& word,
                        RewriteStrategy strategy, long fuel = 1'000'000);

}  // namespace qweyl
