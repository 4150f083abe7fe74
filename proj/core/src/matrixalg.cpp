#include "qweyl/matrixalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qweyl {

namespace {

void add_term(std::map<Mono, QRat>& out, Mono m, QRat c) {
    if (c.is_zero()) return;
    auto it = out.find(m);
    if (it == out.end()) {
        out.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

int min_letter(const Mono& m) {
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) return static_cast<int>(i);
    return -1;
}

// Multiplies the single generator at position gpos onto the left of the PBW
// monomial `mono` and accumulates the normal form, scaled by coeff, into out.
//
// Recursion: peel the lowest letter x of mono.  If pos(g) <= pos(x) the word
// is already ordered.  Otherwise commute g past x (picking up q on a shared
// row or column) and recurse into the tail; the diagonal crossing case adds
// the gamma-weighted anti-diagonal correction.  Every letter produced on the
// way has position >= pos(x), so re-attaching x is a plain increment.
void insert_letter(int n, int gpos, const Mono& mono, const QRat& coeff,
                   std::map<Mono, QRat>& out) {
    int x = min_letter(mono);
    if (x < 0 || gpos <= x) {
        Mono m2 = mono;
        m2[static_cast<size_t>(gpos)]++;
        add_term(out, std::move(m2), coeff);
        return;
    }
    Mono rest = mono;
    rest[static_cast<size_t>(x)]--;
    const int gi = alg_row(n, gpos), gj = alg_col(n, gpos);
    const int xi = alg_row(n, x), xj = alg_col(n, x);

    const bool shared_line = (gi == xi || gj == xj);
    std::map<Mono, QRat> sub;
    insert_letter(n, gpos, rest, shared_line ? coeff * QRat::q() : coeff, sub);
    for (auto& [m, c] : sub) {
        Mono m2 = m;
        m2[static_cast<size_t>(x)]++;
        add_term(out, std::move(m2), std::move(c));
    }
    if (gi > xi && gj > xj) {
        const int u = alg_pos(n, xi, gj), v = alg_pos(n, gi, xj);
        std::map<Mono, QRat> tail;
        insert_letter(n, v, rest, coeff * QRat::gamma(), tail);
        for (const auto& [m, c] : tail) insert_letter(n, u, m, c, out);
    }
}

char letter_name(Side side) { return side == Side::Plus ? 'Z' : 'W'; }

}  // namespace

AlgElement& AlgElement::operator+=(const AlgElement& o) {
    for (const auto& [m, c] : o.terms) add_term(terms, m, c);
    return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
    for (const auto& [m, c] : o.terms) add_term(terms, m, -c);
    return *this;
}

AlgElement& AlgElement::operator*=(const QRat& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [m, v] : terms) v *= c;
    return *this;
}

std::string AlgElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        first = false;
        bool unit_mono = degree(m) == 0;
        if (!c.is_one() || unit_mono) {
            os << "(" << c.str() << ")";
            if (!unit_mono) os << "*";
        }
        bool started = false;
        for (size_t p = 0; p < m.size(); ++p) {
            if (m[p] == 0) continue;
            if (started) os << "*";
            started = true;
            os << letter_name(side) << "[" << alg_row(n, static_cast<int>(p)) << ","
               << alg_col(n, static_cast<int>(p)) << "]";
            if (m[p] > 1) os << "^" << m[p];
        }
    }
    return os.str();
}

AlgElement alg_zero(int n, Side side) { return AlgElement{n, side, {}}; }

AlgElement alg_one(int n, Side side) {
    AlgElement e{n, side, {}};
    e.terms.emplace(Mono(static_cast<size_t>(n) * n, 0), QRat(1));
    return e;
}

AlgElement alg_monomial(int n, Side side, Mono exps, QRat coeff) {
    AlgElement e{n, side, {}};
    if (!coeff.is_zero()) e.terms.emplace(std::move(exps), std::move(coeff));
    return e;
}

AlgElement generator(int n, Side side, int i, int j) {
    Mono m(static_cast<size_t>(n) * n, 0);
    m[static_cast<size_t>(alg_pos(n, i, j))] = 1;
    return alg_monomial(n, side, std::move(m));
}

AlgElement multiply(const AlgElement& a, const AlgElement& b) {
    if (a.n != b.n || a.side != b.side)
        throw std::invalid_argument("multiply: mismatched algebras");
    AlgElement out = alg_zero(a.n, a.side);
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            // feed the letters of ma in from the right (highest position first)
            std::map<Mono, QRat> cur;
            cur.emplace(mb, ca * cb);
            for (int p = static_cast<int>(ma.size()) - 1; p >= 0; --p) {
                for (int rep = 0; rep < ma[static_cast<size_t>(p)]; ++rep) {
                    std::map<Mono, QRat> next;
                    for (const auto& [m, c] : cur) insert_letter(a.n, p, m, c, next);
                    cur = std::move(next);
                }
            }
            for (auto& [m, c] : cur) add_term(out.terms, std::move(m), std::move(c));
        }
    }
    return out;
}

AlgElement flip(const AlgElement& a) {
    AlgElement out = alg_zero(a.n, a.side);
    const int n = a.n;
    for (const auto& [m, c] : a.terms) {
        Mono f(m.size(), 0);
        for (size_t p = 0; p < m.size(); ++p) {
            if (m[p] == 0) continue;
            int i = alg_row(n, static_cast<int>(p)), j = alg_col(n, static_cast<int>(p));
            f[static_cast<size_t>(alg_pos(n, n + 1 - i, n + 1 - j))] = m[p];
        }
        out.terms.emplace(std::move(f), c);
    }
    return out;
}

namespace {

void enumerate(int slots, int d, Mono& acc, std::vector<Mono>& out) {
    if (slots == 1) {
        acc.push_back(d);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (int k = 0; k <= d; ++k) {
        acc.push_back(k);
        enumerate(slots - 1, d - k, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Mono> basis_of_degree(int n, int d) {
    std::vector<Mono> out;
    Mono acc;
    enumerate(n * n, d, acc, out);
    return out;
}

int degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool is_homogeneous_degree(const AlgElement& a) {
    if (a.terms.empty()) return true;
    int d = degree(a.terms.begin()->first);
    for (const auto& [m, c] : a.terms)
        if (degree(m) != d) return false;
    return true;
}

WeightVector weight_gamma(int n, int i, int j) {
    WeightVector v(static_cast<size_t>(2 * n), 0);
    v[static_cast<size_t>(n - i)] += 1;        // e_{n+1-i}
    v[static_cast<size_t>(n + j - 1)] -= 1;    // -e_{n+j}
    return v;
}

WeightVector root_mu(int n, int k) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("root_mu: k out of range");
    WeightVector v(static_cast<size_t>(2 * n), 0);
    v[static_cast<size_t>(n - k - 1)] = 1;   // e_{n-k}
    v[static_cast<size_t>(n - k)] = -1;      // -e_{n-k+1}
    return v;
}

WeightVector root_nu(int n, int k) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("root_nu: k out of range");
    WeightVector v(static_cast<size_t>(2 * n), 0);
    v[static_cast<size_t>(n + k - 1)] = 1;   // e_{n+k}
    v[static_cast<size_t>(n + k)] = -1;      // -e_{n+k+1}
    return v;
}

WeightVector root_beta(int n) {
    WeightVector v(static_cast<size_t>(2 * n), 0);
    v[static_cast<size_t>(n - 1)] = 1;   // e_n
    v[static_cast<size_t>(n)] = -1;      // -e_{n+1}
    return v;
}

int weight_dot(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("weight_dot: size mismatch");
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

WeightVector weight_of_mono(int n, Side side, const Mono& m) {
    WeightVector v(static_cast<size_t>(2 * n), 0);
    for (size_t p = 0; p < m.size(); ++p) {
        if (m[p] == 0) continue;
        WeightVector g = weight_gamma(n, alg_row(n, static_cast<int>(p)),
                                      alg_col(n, static_cast<int>(p)));
        for (size_t c = 0; c < v.size(); ++c) v[c] += m[p] * g[c];
    }
    if (side == Side::Minus)
        for (auto& c : v) c = -c;
    return v;
}

WeightVector weight(const AlgElement& a) {
    if (a.terms.empty()) throw std::invalid_argument("weight: zero element");
    WeightVector w = weight_of_mono(a.n, a.side, a.terms.begin()->first);
    for (const auto& [m, c] : a.terms)
        if (weight_of_mono(a.n, a.side, m) != w)
            throw std::invalid_argument("weight: element is not weight-homogeneous");
    return w;
}

AlgElement rewrite_word(int n, Side side, const std::vector<int>& word,
                        RewriteStrategy strategy, long fuel) {
    struct Item {
        QRat coeff;
        std::vector<int> w;
    };
    std::vector<Item> stack{{QRat(1), word}};
    AlgElement out = alg_zero(n, side);

    while (!stack.empty()) {
        if (--fuel < 0) throw std::runtime_error("rewrite_word: fuel exhausted");
        Item it = std::move(stack.back());
        stack.pop_back();

        int hit = -1;
        if (strategy == RewriteStrategy::LeftmostInversion) {
            for (size_t k = 0; k + 1 < it.w.size(); ++k)
                if (it.w[k] > it.w[k + 1]) {
                    hit = static_cast<int>(k);
                    break;
                }
        } else {
            for (int k = static_cast<int>(it.w.size()) - 2; k >= 0; --k)
                if (it.w[static_cast<size_t>(k)] > it.w[static_cast<size_t>(k) + 1]) {
                    hit = k;
                    break;
                }
        }

        if (hit < 0) {
            Mono m(static_cast<size_t>(n) * n, 0);
            for (int p : it.w) m[static_cast<size_t>(p)]++;
            add_term(out.terms, std::move(m), std::move(it.coeff));
            continue;
        }

        const size_t k = static_cast<size_t>(hit);
        const int g = it.w[k], x = it.w[k + 1];
        const int gi = alg_row(n, g), gj = alg_col(n, g);
        const int xi = alg_row(n, x), xj = alg_col(n, x);

        Item swapped = it;
        std::swap(swapped.w[k], swapped.w[k + 1]);
        if (gi == xi || gj == xj) swapped.coeff *= QRat::q();
        stack.push_back(std::move(swapped));

        if (gi > xi && gj > xj) {
            Item cross = std::move(it);
            cross.coeff *= QRat::gamma();
            cross.w[k] = alg_pos(n, xi, gj);
            cross.w[k + 1] = alg_pos(n, gi, xj);
            stack.push_back(std::move(cross));
        }
    }
    return out;
}

}  // namespace qweyl
