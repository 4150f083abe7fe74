// Exact arithmetic in Q(q, t): rational functions in the quantum parameter q
// and one formal invertible parameter t standing for q^lambda.  This is the
// coefficient field for everything else in the library.
//
// Canonical form: num/den are polynomials with nonnegative exponents (negative
// powers of q or t are normalized away by clearing a common monomial), the
// gcd of num and den is 1, and the leading coefficient of den — w.r.t. the
// (t, q)-lexicographic term order — is 1.  Equality is plain structural
// equality of the canonical form.

#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace qweyl {

using Rational = mpq_class;

// Thrown by eval_at when the reduced denominator vanishes at the point.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent pair of a monomial q^eq * t^et; ordered (t, q)-lexicographically.
struct QTExp {
    int eq = 0;
    int et = 0;
    friend bool operator<(const QTExp& a, const QTExp& b) {
        if (a.et != b.et) return a.et < b.et;
        return a.eq < b.eq;
    }
    friend bool operator==(const QTExp& a, const QTExp& b) {
        return a.eq == b.eq && a.et == b.et;
    }
};

// Polynomial in q, t over Q with nonnegative exponents.
class QPoly {
public:
    // term order = map order = (t, q)-lex ascending; rbegin() is the leading term
    std::map<QTExp, Rational> terms;

    QPoly() = default;
    explicit QPoly(const Rational& c) {
        if (c != 0) terms[{0, 0}] = c;
    }
    static QPoly monomial(const Rational& c, int eq, int et);

    bool is_zero() const { return terms.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms.size() == 1; }
    bool is_constant() const;

    int deg_q() const;   // max q-exponent (0 for the zero polynomial)
    int deg_t() const;   // max t-exponent
    int min_q() const;
    int min_t() const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator-() const;
    QPoly& mul_scalar(const Rational& c);
    QPoly& mul_monomial(int eq, int et);   // exponents may be negative if the result stays >= 0

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // substitute t := q^lambda; exponents can go negative, so the caller gets
    // the pair (polynomial, shift) with polynomial = q^shift * substituted value
    std::pair<QPoly, int> substitute_t_qpow(long lambda) const;

    Rational eval_q(const Rational& q0) const;   // requires deg_t() == 0

    std::string str() const;
};

QPoly poly_gcd(const QPoly& a, const QPoly& b);
QPoly poly_div_exact(const QPoly& a, const QPoly& b);   // throws std::logic_error if not exact

// The fraction field element.  Always canonical (see file header).
class QRat {
public:
    QRat() : num_(), den_(Rational(1)) {}
    QRat(int v) : num_(Rational(v)), den_(Rational(1)) {}                    // NOLINT: implicit by design
    QRat(const Rational& v) : num_(v), den_(Rational(1)) {}                  // NOLINT
    QRat(QPoly num, QPoly den);

    static QRat q_power(int k);  // q^k, any sign
    static QRat t_power(int k);  // t^k, any sign
    static QRat q() { return q_power(1); }
    static QRat t() { return t_power(1); }
    static QRat gamma() { return q_power(1) - q_power(-1); }   // q - q^{-1}

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool depends_on_t() const { return num_.deg_t() > 0 || den_.deg_t() > 0; }

    QRat operator-() const;
    QRat& operator+=(const QRat& o);
    QRat& operator-=(const QRat& o);
    QRat& operator*=(const QRat& o);
    QRat& operator/=(const QRat& o);
    friend QRat operator+(QRat a, const QRat& b) { return a += b; }
    friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
    friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
    friend QRat operator/(QRat a, const QRat& b) { return a /= b; }

    QRat inverse() const;
    QRat pow(int k) const;   // any sign; 0^0 = 1

    friend bool operator==(const QRat& a, const QRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

    // t := q^lambda (result is t-free); exact
    QRat substitute_lambda(long lambda) const;

    // full evaluation; lambda is only consulted when the value depends on t
    Rational eval_at(const Rational& q_value, long lambda = 0) const;

    std::string str() const;   // canonical "p(q,t)" or "(p(q,t))/(r(q,t))"

private:
    void normalize(bool known_reduced = false);
    QPoly num_, den_;
};

// q-integer flavors: BracketJ [[a]] = 1+q^2+...+q^{2a-2},
// BracketL [a] = q^{1-a}+...+q^{a-1}, BracketK {{a}} = 1+q^{-2}+...+q^{-(2a-2)}.
enum class QIntFlavor { BracketJ, BracketL, BracketK };

QRat qint(int a, QIntFlavor flavor);
QRat qfactorial(int a, QIntFlavor flavor);

}  // namespace qweyl
