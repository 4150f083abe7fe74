#include "qweyl/qrat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <vector>

namespace qweyl {

// ---------------------------------------------------------------------------
// QPoly
// ---------------------------------------------------------------------------

QPoly QPoly::monomial(const Rational& c, int eq, int et) {
    QPoly p;
    if (c != 0) p.terms[{eq, et}] = c;
    return p;
}

bool QPoly::is_one() const {
    return terms.size() == 1 && terms.begin()->first == QTExp{0, 0} &&
           terms.begin()->second == 1;
}

bool QPoly::is_constant() const {
    return terms.empty() ||
           (terms.size() == 1 && terms.begin()->first == QTExp{0, 0});
}

int QPoly::deg_q() const {
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.eq);
    return d;
}

int QPoly::deg_t() const { return terms.empty() ? 0 : terms.rbegin()->first.et; }

int QPoly::min_q() const {
    if (terms.empty()) return 0;
    int d = terms.begin()->first.eq;
    for (const auto& [e, c] : terms) d = std::min(d, e.eq);
    return d;
}

int QPoly::min_t() const { return terms.empty() ? 0 : terms.begin()->first.et; }

QPoly& QPoly::operator+=(const QPoly& o) {
    for (const auto& [e, c] : o.terms) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    for (const auto& [e, c] : o.terms) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly out;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            QTExp e{ea.eq + eb.eq, ea.et + eb.et};
            auto it = out.terms.find(e);
            if (it == out.terms.end()) {
                out.terms.emplace(e, ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.terms.erase(it);
            }
        }
    }
    return out;
}

QPoly QPoly::operator-() const {
    QPoly out;
    for (const auto& [e, c] : terms) out.terms.emplace(e, -c);
    return out;
}

QPoly& QPoly::mul_scalar(const Rational& c) {
    if (c == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [e, v] : terms) v *= c;
    return *this;
}

QPoly& QPoly::mul_monomial(int eq, int et) {
    if (eq == 0 && et == 0) return *this;
    std::map<QTExp, Rational> shifted;
    for (const auto& [e, c] : terms) shifted.emplace(QTExp{e.eq + eq, e.et + et}, c);
    terms = std::move(shifted);
    return *this;
}

std::pair<QPoly, int> QPoly::substitute_t_qpow(long lambda) const {
    std::map<long, Rational> acc;
    long lo = 0;
    for (const auto& [e, c] : terms) {
        long k = e.eq + lambda * e.et;
        acc[k] += c;
        lo = std::min(lo, k);
    }
    QPoly out;
    for (const auto& [k, c] : acc) {
        if (c == 0) continue;
        long shifted = k - lo;
        assert(shifted <= 1'000'000 && "q-exponent blow-up in t substitution");
        out.terms[{static_cast<int>(shifted), 0}] = c;
    }
    if (out.is_zero()) return {out, 0};
    return {out, static_cast<int>(lo)};
}

Rational QPoly::eval_q(const Rational& q0) const {
    Rational total = 0;
    for (const auto& [e, c] : terms) {
        if (e.et != 0) throw std::logic_error("eval_q: polynomial still depends on t");
        Rational p = 1;
        for (int k = 0; k < e.eq; ++k) p *= q0;
        if (e.eq < 0) throw std::logic_error("eval_q: negative exponent");
        total += c * p;
    }
    return total;
}

std::string QPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            if (a < 0) {
                os << " - ";
                a = -a;
            } else {
                os << " + ";
            }
        }
        bool has_var = (e.eq != 0 || e.et != 0);
        bool coeff_shown = (a != 1 || !has_var);
        if (coeff_shown) os << a.get_str();
        if (e.eq != 0) {
            if (coeff_shown) os << "*";
            os << "q";
            if (e.eq != 1) os << "^" << e.eq;
            coeff_shown = true;
        }
        if (e.et != 0) {
            if (coeff_shown) os << "*";
            os << "t";
            if (e.et != 1) os << "^" << e.et;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd machinery
// ---------------------------------------------------------------------------

namespace {

// Univariate gcd in q runs over Z with a primitive polynomial remainder
// sequence: rational coefficients are cleared up front and every remainder is
// divided by its integer content, so coefficient growth stays tame.
using ZPoly = std::vector<mpz_class>;  // dense, ascending exponents

void ztrim(ZPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

void zstrip_content(ZPoly& v) {
    mpz_class g = 0;
    for (const auto& c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZPoly to_zpoly(const QPoly& p) {
    mpz_class den_lcm = 1;
    for (const auto& [e, c] : p.terms)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly v(static_cast<size_t>(p.deg_q()) + 1, mpz_class(0));
    for (const auto& [e, c] : p.terms) {
        assert(e.et == 0 && e.eq >= 0);
        v[static_cast<size_t>(e.eq)] = c.get_num() * (den_lcm / c.get_den());
    }
    ztrim(v);
    zstrip_content(v);
    return v;
}

// one pseudo-division pass: a <- (multiple of a) mod b, multipliers reduced
// by their gcd at every step to keep the integers small
void zpseudo_mod(ZPoly& a, const ZPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
        mpz_class ca = b.back() / g;  // scale all of a
        mpz_class cb = a.back() / g;  // subtract cb * q^shift * b
        if (ca != 1)
            for (auto& c : a) c *= ca;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= cb * b[i];
        ztrim(a);
    }
}

QPoly gcd_univariate(const QPoly& pa, const QPoly& pb) {
    ZPoly a = to_zpoly(pa), b = to_zpoly(pb);
    while (!b.empty()) {
        zpseudo_mod(a, b);
        zstrip_content(a);
        std::swap(a, b);
    }
    QPoly out;
    if (a.empty()) return out;
    Rational lead(a.back());
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) out.terms[{static_cast<int>(i), 0}] = Rational(a[i]) / lead;
    return out;  // monic
}

// leading coefficient of p viewed as a polynomial in t (a q-polynomial)
QPoly lc_t(const QPoly& p, int degt) {
    QPoly out;
    for (const auto& [e, c] : p.terms)
        if (e.et == degt) out.terms[{e.eq, 0}] = c;
    return out;
}

// gcd over Q[q] of all t-coefficient slices
QPoly content_q(const QPoly& p) {
    std::map<int, QPoly> slices;
    for (const auto& [e, c] : p.terms) slices[e.et].terms[{e.eq, 0}] = c;
    QPoly g;
    for (const auto& [et, slice] : slices) {
        g = g.is_zero() ? slice : gcd_univariate(g, slice);
        if (g.is_one()) break;
    }
    return g;
}

// pseudo-remainder of a by b w.r.t. t, with the q-content stripped after
// every step to keep coefficient growth in check (the result is only ever
// used up to a t-free factor, so rescaling mid-loop is harmless)
QPoly prem_t(QPoly a, const QPoly& b) {
    int db = b.deg_t();
    QPoly lcb = lc_t(b, db);
    while (!a.is_zero() && a.deg_t() >= db) {
        int da = a.deg_t();
        QPoly lca = lc_t(a, da);
        lca.mul_monomial(0, da - db);
        a = a * lcb - lca * b;
        if (!a.is_zero()) {
            QPoly c = content_q(a);
            if (!c.is_one()) a = poly_div_exact(a, c);
            a.mul_scalar(1 / a.terms.rbegin()->second);
        }
    }
    return a;
}

}  // namespace

QPoly poly_div_exact(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::logic_error("poly_div_exact: division by zero");
    QPoly rem = a, quot;
    while (!rem.is_zero()) {
        const auto& [er, cr] = *rem.terms.rbegin();
        const auto& [eb, cb] = *b.terms.rbegin();
        int eq = er.eq - eb.eq, et = er.et - eb.et;
        if (eq < 0 || et < 0) throw std::logic_error("poly_div_exact: not divisible");
        QPoly m = QPoly::monomial(cr / cb, eq, et);
        quot += m;
        rem -= m * b;
    }
    return quot;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const bool at = a.deg_t() > 0, bt = b.deg_t() > 0;
    if (!at && !bt) return gcd_univariate(a, b);
    if (!at) return gcd_univariate(a, content_q(b));
    if (!bt) return gcd_univariate(content_q(a), b);

    // primitive polynomial remainder sequence in t
    QPoly ca = content_q(a), cb = content_q(b);
    QPoly u = poly_div_exact(a, ca), v = poly_div_exact(b, cb);
    if (u.deg_t() < v.deg_t()) std::swap(u, v);
    while (!v.is_zero()) {
        QPoly r = prem_t(u, v);
        if (!r.is_zero()) r = poly_div_exact(r, content_q(r));
        u = std::move(v);
        v = std::move(r);
    }
    QPoly cont = gcd_univariate(ca, cb);
    if (u.deg_t() == 0) return cont;  // primitive parts were coprime in t
    return cont * u;
}

// ---------------------------------------------------------------------------
// QRat
// ---------------------------------------------------------------------------

QRat::QRat(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("QRat: zero denominator");
    normalize();
}

void QRat::normalize(bool known_reduced) {
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    // clear the common monomial so all exponents are >= 0 with joint minimum 0
    // (this cannot introduce a new common polynomial factor)
    int mq = std::min(num_.min_q(), den_.min_q());
    int mt = std::min(num_.min_t(), den_.min_t());
    if (mq != 0 || mt != 0) {
        num_.mul_monomial(-mq, -mt);
        den_.mul_monomial(-mq, -mt);
    }
    // after joint clearing, a monomial denominator (or numerator) shares no
    // further polynomial factor with the other side, so the gcd is scalar
    if (!known_reduced && !den_.is_monomial() && !num_.is_monomial()) {
        QPoly g = poly_gcd(num_, den_);
        if (!g.is_one() && !g.is_constant()) {
            num_ = poly_div_exact(num_, g);
            den_ = poly_div_exact(den_, g);
        }
    }
    Rational lead = den_.terms.rbegin()->second;
    if (lead != 1) {
        num_.mul_scalar(1 / lead);
        den_.mul_scalar(1 / lead);
    }
}

QRat QRat::q_power(int k) {
    QRat r;
    r.num_ = QPoly::monomial(1, k, 0);
    r.den_ = QPoly(Rational(1));
    r.normalize();
    return r;
}

QRat QRat::t_power(int k) {
    QRat r;
    r.num_ = QPoly::monomial(1, 0, k);
    r.den_ = QPoly(Rational(1));
    r.normalize();
    return r;
}

QRat QRat::operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat& QRat::operator+=(const QRat& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

QRat& QRat::operator-=(const QRat& o) {
    if (den_ == o.den_) {
        num_ -= o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

namespace {

// divides the shared factor out of a and b in place (cross-cancellation,
// skipped when a monomial makes the later normalize cheap anyway)
void cancel_common(QPoly& a, QPoly& b) {
    if (a.is_zero() || a.is_monomial() || b.is_monomial()) return;
    QPoly g = poly_gcd(a, b);
    if (g.is_one() || g.is_constant()) return;
    a = poly_div_exact(a, g);
    b = poly_div_exact(b, g);
}

}  // namespace

QRat& QRat::operator*=(const QRat& o) {
    // num_/den_ and o.num_/o.den_ are each already reduced, so after the two
    // cross-cancellations the product is reduced too
    QPoly on = o.num_, od = o.den_;
    cancel_common(num_, od);
    cancel_common(on, den_);
    num_ = num_ * on;
    den_ = den_ * od;
    normalize(/*known_reduced=*/true);
    return *this;
}

QRat& QRat::operator/=(const QRat& o) {
    if (o.is_zero()) throw std::invalid_argument("QRat: division by zero");
    QPoly on = o.num_, od = o.den_;
    cancel_common(num_, on);
    cancel_common(od, den_);
    num_ = num_ * od;
    den_ = den_ * on;
    normalize(/*known_reduced=*/true);
    return *this;
}

QRat QRat::inverse() const {
    if (is_zero()) throw std::invalid_argument("QRat: inverse of zero");
    QRat r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize(/*known_reduced=*/true);
    return r;
}

QRat QRat::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    QRat acc(1), base = *this;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

QRat QRat::substitute_lambda(long lambda) const {
    if (!depends_on_t()) return *this;
    auto [pn, sn] = num_.substitute_t_qpow(lambda);
    auto [pd, sd] = den_.substitute_t_qpow(lambda);
    QRat r(std::move(pn), std::move(pd));
    return r * q_power(sn - sd);
}

Rational QRat::eval_at(const Rational& q_value, long lambda) const {
    const QRat* target = this;
    QRat reduced;
    if (depends_on_t()) {
        reduced = substitute_lambda(lambda);
        target = &reduced;
    }
    Rational d = target->den_.eval_q(q_value);
    if (d == 0)
        throw PoleError("eval_at: denominator vanishes at q = " + q_value.get_str());
    return target->num_.eval_q(q_value) / d;
}

std::string QRat::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// q-integers
// ---------------------------------------------------------------------------

QRat qint(int a, QIntFlavor flavor) {
    if (a < 0) {
        // [[-a]] = -q^{-2a} [[a]],  [-a] = -[a],  {{-a}} = -q^{2a} {{a}}
        switch (flavor) {
            case QIntFlavor::BracketJ: return -(QRat::q_power(2 * a) * qint(-a, flavor));
            case QIntFlavor::BracketL: return -qint(-a, flavor);
            case QIntFlavor::BracketK: return -(QRat::q_power(-2 * a) * qint(-a, flavor));
        }
    }
    QRat s(0);
    for (int k = 0; k < a; ++k) {
        switch (flavor) {
            case QIntFlavor::BracketJ: s += QRat::q_power(2 * k); break;
            case QIntFlavor::BracketL: s += QRat::q_power(1 - a + 2 * k); break;
            case QIntFlavor::BracketK: s += QRat::q_power(-2 * k); break;
        }
    }
    return s;
}

QRat qfactorial(int a, QIntFlavor flavor) {
    if (a < 0) throw std::invalid_argument("qfactorial: negative argument");
    QRat p(1);
    for (int k = 1; k <= a; ++k) p *= qint(k, flavor);
    return p;
}

}  // namespace qweyl
