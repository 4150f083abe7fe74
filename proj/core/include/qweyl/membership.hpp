// Constructive membership derivations for algebras of quantized differential
// operators.
//
// The operators of interest are the multiplication operators by the matrix
// generators (acting on either side) together with their pairing transposes.
// The subalgebra of the quantized Weyl algebra they generate is computed
// constructively: an eigenvalue-separation engine peels a normally-ordered
// operator down to a single dressed summand, and every derived member carries
// a replayable straight-line derivation trace.
//
// The separation engine exploits that conjugation by a diagonal Laurent
// monomial phi rescales every normal-form monomial x by an integer power of
// q: phi x = q^k x phi, where k is the phi-weighted sum of the M/D exponent
// differences of x (the Ad-eigenvalue).  Repeatedly forming
//     work <- phi * work - q^k * work * phi
// annihilates the eigencomponent of eigenvalue k, rescales the others, and
// right-dresses everything by phi; a summand whose full eigenvalue signature
// is unique can therefore be isolated, at the price of the accumulated
// product of the phis on the right.
//
// On top of the engine sit the case scripts (derive_case): for each matrix
// position, in a fixed induction order, they isolate the leading summand of
// the left/right multiplication operator and of its transpose, verify the
// result against the closed dressed form, and extract the diagonal members
// (hook monomials, their squares, inverse powers) that later positions use
// as separators.  A bounded word search (span_membership) provides explicit
// linear-combination certificates for individual membership claims.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qweyl/pairing.hpp"
#include "qweyl/qrat.hpp"
#include "qweyl/weyl.hpp"

namespace qweyl {

// ---------------------------------------------------------------------------
// diagonal separators and Ad-eigenvalues
// ---------------------------------------------------------------------------

// A Laurent monomial in the diagonal generators H_ij, used as a separator.
struct HMonomial {
    int n = 0;
    std::map<std::pair<int, int>, int> exps;  // (i,j) -> exponent, zero omitted
    WeylElement element() const;
};

// The integer k with phi * x = q^k * x * phi for the normal-form monomial x:
// sum over nodes of exponent * (m - d).
int ad_eigenvalue(const HMonomial& phi, const WeylKey& key);

// ---------------------------------------------------------------------------
// derivation traces
// ---------------------------------------------------------------------------

// One step of a straight-line derivation.  Operands are indices of earlier
// steps; Input steps carry their value, so a trace replays self-contained.
struct TraceStep {
    enum class Kind { Input, Commutator, Product, Scalar, Sum };
    Kind kind = Kind::Input;
    std::string note;    // human-readable label
    WeylElement input;   // Input only
    int src = -1;        // first operand
    int src2 = -1;       // second operand (Product, Sum)
    HMonomial phi;       // Commutator: src -> phi*src - q^k*src*phi
    int k = 0;           // Commutator exponent
    QRat scalar;         // Scalar: scalar*src;  Sum: src + scalar*src2
};

struct DerivationTrace {
    std::vector<TraceStep> steps;
    int result = -1;  // index of the step holding the derived element

    // Re-executes every step with exact arithmetic and returns the result
    // value; equality with the claimed element is the replay invariant.
    WeylElement replay() const;

    std::string str() const;  // text form, one line per step

    // builders; each returns the index of the appended step
    int add_input(WeylElement value, std::string note);
    int add_commutator(HMonomial phi, int src, int k, std::string note = {});
    int add_product(int src, int src2, std::string note = {});
    int add_scalar(QRat c, int src, std::string note = {});
    int add_sum(int src, QRat c, int src2, std::string note = {});
};

// Thrown when the separator family cannot isolate the requested summand
// (two summands share all eigenvalues, or some summand survives the sweep).
struct NotSeparated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Elimination {
    WeylElement element;    // the isolated summand, right-dressed by the phis
    DerivationTrace trace;  // Input, one Commutator per sweep step, Scalar
};

// Isolates the summand of o with normal-form key `keep` using the separator
// family, in order.  Each phi contributes one commutator step aimed at the
// smallest eigenvalue distinct from the kept summand's (a vacuous step if
// none remains), so the result is exactly
//     (kept summand) * phi_1 * ... * phi_N
// after the trailing scalar normalization.  With exhaust = true each phi is
// instead swept until it separates nothing further (several steps per phi,
// increasing eigenvalue order); the kept summand then carries the
// correspondingly higher dressing powers.  Throws NotSeparated if another
// summand shares the kept summand's full eigenvalue signature or survives
// the sweep; throws std::invalid_argument if keep is not a key of o.
Elimination eliminate(const WeylElement& o, const std::vector<HMonomial>& phis,
                      const WeylKey& keep, bool exhaust = false);

// Convenience overload: keeps the summand whose eigenvalue signature vector
// is lexicographically greatest.
Elimination eliminate(const WeylElement& o, const std::vector<HMonomial>& phis);

// The raising/lowering squeeze at node (i,j): given members
//   a = (diagonal) * M_ij * (diagonal)   and   b = (diagonal) * D_ij * (diagonal),
// both products ab and ba are diagonal, and their span contains the two
// monomials (diag_a * diag_b) * H_ij^{+1} and (diag_a * diag_b) * H_ij^{-1}.
// Returns the requested branch (sign = +1 or -1) with coefficient one,
// together with the Input/Product/Scalar/Sum trace of the 2x2 solve.
Elimination lem_pm(const WeylElement& a, const WeylElement& b, int i, int j,
                   int sign);

// ---------------------------------------------------------------------------
// generator sets
// ---------------------------------------------------------------------------

struct GeneratorSet {
    int n = 0;
    std::string name;
    struct Entry {
        std::string name;
        WeylElement element;
        std::string provenance;
    };
    std::vector<Entry> entries;

    void add(std::string entry_name, WeylElement element, std::string provenance);
    const WeylElement* find(const std::string& entry_name) const;
};

// Which multiplication side feeds the derivation: RightRight uses the right
// multiplication operators together with their transposes; RightLeft uses
// the left multiplication operators together with the transposes of the
// right ones.
enum class DerivationCase { RightLeft, RightRight };

// The input operators of a case: exact Weyl realizations of the
// multiplication operators ("lmult(i,j)" / "rmult(i,j)") and of the
// normalized transposes of the right multiplications ("dual(i,j)").
GeneratorSet case_generators(DerivationCase kind, Form form, int n);

// The distinguished generator family of the form-K operator algebra: for
// every position, the northwest-hook-dressed lowering operator
// V^NW_ij H_ij^{-1} D_ij and the two dressed raising operators V^NW_ij M_ij
// and V^SE_ij M_ij.
GeneratorSet kweyl_generators(int n);

// ---------------------------------------------------------------------------
// case derivations
// ---------------------------------------------------------------------------

struct DerivedElement {
    std::string name;  // e.g. "M(2,1)", "H^-2(1,1)", "Vscript(2,2)"
    int i = 0, j = 0;  // the position whose processing produced it
    WeylElement claimed;  // independently assembled closed form
    WeylElement derived;  // what the script actually produced
    DerivationTrace trace;
    bool ok = false;  // claimed == derived
};

struct CaseReport {
    DerivationCase kind = DerivationCase::RightRight;
    Form form = FormJ;
    int n = 0;
    std::vector<DerivedElement> elements;
    std::vector<std::string> failures;  // one message per failed position
    bool ok() const { return failures.empty(); }

    // all successfully derived elements, as a generator set for span searches
    GeneratorSet members(const std::string& set_name = "derived") const;

    const DerivedElement* find(const std::string& element_name) const;
};

// Replays the inductive derivation script of the given case at rank n (2 or
// 3; throws std::invalid_argument otherwise).
//
// RightRight runs over positions (n,n) > (n,n-1) > ... > (n,1) > (n-1,n) >
// ... > (1,1) and derives, per position:
//   form L: the bare M_ij and D_ij plus both H_ij^{+1}, H_ij^{-1};
//   form K: V^SE_ij M_ij and V^SE_ij H_ij^{-1} D_ij, the inverse squares
//            H_ij^{-2} everywhere, and the squares H_ij^{+2} for every
//            position except (1,1) (whose square never appears in any
//            southeast hook);
//   form J: V^SE_ij M_ij and V^SE_ij H_ij D_ij dressed by the square-hook
//            products of the rows below, plus those square hooks themselves.
//
// RightLeft runs over positions (1,n) > ... > (n,n) > (1,n-1) > ... > (n,1)
// and derives the northwest-dressed raising and southeast-dressed lowering
// operators, each right-dressed by the previously established recursive
// hooks of its column (resp. row), plus the recursive hook of the position.
//
// Every element is verified against its independently assembled closed form;
// mismatches and separation failures are collected per position in
// CaseReport::failures (nothing throws for a failed identity).  Closed forms
// involving a raising/lowering letter times separator dressings are
// assembled in derivation order, i.e. the letter first and the dressings
// appended on the right, which fixes the otherwise ambiguous q-power.
CaseReport derive_case(DerivationCase kind, Form form, int n);

// ---------------------------------------------------------------------------
// bounded span search
// ---------------------------------------------------------------------------

struct SpanCertificate {
    bool found = false;
    int cap = 0;   // word-length bound that was searched
    int rank = 0;  // dimension of the searched span
    struct Term {
        QRat coeff;
        std::vector<std::string> word;  // generator names, product left to right
    };
    std::vector<Term> terms;  // target = sum of coeff * product(word)
    std::string str() const;
};

// Decides whether target lies in the linear span of all words of length at
// most cap in the generators, by an exact incremental echelon closure (the
// span of words of length k+1 equals the span of generator * basis-element
// products, so pruning to a basis per level is lossless).  A found
// certificate is an exact linear combination; not found only means not found
// within the cap.  degree_limit >= 0 additionally discards intermediate
// products whose total raising/lowering degree exceeds the limit — sound for
// positive findings but may lose certificates that pass through high degree.
SpanCertificate span_membership(const WeylElement& target,
                                const GeneratorSet& gens, int cap,
                                int degree_limit = -1);

// ---------------------------------------------------------------------------
// the corner-square obstruction
// ---------------------------------------------------------------------------

// Grading of a normal-form key at the corner node (1,1): h + d.  Under
// multiplication the grading of every summand of a product is at most the
// sum of the factors' gradings: normal ordering at one node only converts
// D,M pairs into H^{+1} or H^{-1}, so h + d never grows.  Consequently, if
// every key of every generator has grading <= 0, so does every element of
// the generated algebra — and H_11^{+2}, of grading +2, cannot belong.
int h11_grading(const WeylKey& key, int n);

struct GradingReport {
    bool generators_bounded = false;  // all generator keys have grading <= 0
    int max_generator_grading = 0;
    int target_grading = 2;           // grading of H_11^{+2}
    bool products_subadditive = false;  // pairwise product check
    std::string detail;
};

GradingReport h11_obstruction(const GeneratorSet& gens);

}  // namespace qweyl
