#include "qweyl/weyl.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qweyl {

namespace {

void check_node(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("weyl: node index out of range");
}

void add_term(std::map<WeylKey, QRat>& terms, const WeylKey& key, const QRat& c) {
    if (c.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

// Rewrite every node to min(m,d) = 0 using
//   M^m D^d H^h = gamma^{-1} (q^{-(d-1)} M^{m-1} D^{d-1} H^{h+1}
//                             - q^{d-1}  M^{m-1} D^{d-1} H^{h-1}),
// which is M D = gamma^{-1}(H - H^{-1}) commuted through the D^{d-1} tail.
void contract_into(std::map<WeylKey, QRat>& out, WeylKey key, QRat coeff) {
    if (coeff.is_zero()) return;
    const int nodes = static_cast<int>(key.size()) / 3;
    for (int p = 0; p < nodes; ++p) {
        int& m = key[3 * p];
        int& d = key[3 * p + 1];
        int& h = key[3 * p + 2];
        if (m > 0 && d > 0) {
            const QRat g = QRat::gamma().inverse();
            --m;
            --d;
            WeylKey up = key;
            up[3 * p + 2] = h + 1;
            contract_into(out, std::move(up), coeff * g * QRat::q_power(-d));
            h -= 1;
            contract_into(out, std::move(key), coeff * g * QRat::q_power(d) * QRat(-1));
            return;
        }
    }
    add_term(out, key, coeff);
}

struct NodeTriple {
    int m, d, h;
    friend bool operator<(const NodeTriple& a, const NodeTriple& b) {
        if (a.m != b.m) return a.m < b.m;
        if (a.d != b.d) return a.d < b.d;
        return a.h < b.h;
    }
};

using NodeTerms = std::map<NodeTriple, QRat>;

void node_add(NodeTerms& out, const NodeTriple& t, const QRat& c) {
    if (c.is_zero()) return;
    auto it = out.find(t);
    if (it == out.end()) {
        out.emplace(t, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

void node_contract(NodeTerms& out, NodeTriple t, QRat coeff) {
    if (coeff.is_zero()) return;
    if (t.m > 0 && t.d > 0) {
        const QRat g = QRat::gamma().inverse();
        --t.m;
        --t.d;
        node_contract(out, {t.m, t.d, t.h + 1}, coeff * g * QRat::q_power(-t.d));
        node_contract(out, {t.m, t.d, t.h - 1}, coeff * g * QRat::q_power(t.d) * QRat(-1));
        return;
    }
    node_add(out, t, coeff);
}

// normal form of D^a M^b at one node; recursion on the leading M:
//   D^a M^b = q^a M (D^a M^{b-1}) + q^{a-b} [a] (D^{a-1} M^{b-1}) H^{-1}
// (from D^a M = q^a M D^a + q^{a-1} [a] D^{a-1} H^{-1}, pushed left past M^{b-1}).
const NodeTerms& dm_compute(std::map<std::pair<int, int>, NodeTerms>& memo, int a, int b) {
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;

    NodeTerms result;
    if (a == 0) {
        result.emplace(NodeTriple{b, 0, 0}, QRat(1));
    } else if (b == 0) {
        result.emplace(NodeTriple{0, a, 0}, QRat(1));
    } else {
        const NodeTerms first = dm_compute(memo, a, b - 1);
        const NodeTerms second = dm_compute(memo, a - 1, b - 1);
        const QRat qa = QRat::q_power(a);
        for (const auto& [t, c] : first)
            node_contract(result, {t.m + 1, t.d, t.h}, c * qa);
        const QRat tail = QRat::q_power(a - b) * qint(a, QIntFlavor::BracketL);
        for (const auto& [t, c] : second)
            node_add(result, {t.m, t.d, t.h - 1}, c * tail);
    }
    return memo.emplace(std::make_pair(a, b), std::move(result)).first->second;
}

NodeTerms dm_normal(int a, int b) {
    static std::map<std::pair<int, int>, NodeTerms> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    return dm_compute(memo, a, b);
}

// product of two normal-form node factors, right factor acting first:
//   (M^{m1} D^{d1} H^{h1}) (M^{m2} D^{d2} H^{h2})
// H^{h1} past M^{m2} D^{d2} gives q^{h1 (m2 - d2)}; then D^{d1} M^{m2} is
// expanded by dm_normal and its H^eta moved past D^{d2} at cost q^{-eta d2}.
NodeTerms node_mul(const NodeTriple& t1, const NodeTriple& t2) {
    NodeTerms out;
    const QRat swap = QRat::q_power(t1.h * (t2.m - t2.d));
    for (const auto& [t, c] : dm_normal(t1.d, t2.m)) {
        NodeTriple raw{t1.m + t.m, t.d + t2.d, t.h + t1.h + t2.h};
        node_contract(out, raw, swap * c * QRat::q_power(-t.h * t2.d));
    }
    return out;
}

}  // namespace

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    if (n != o.n) throw std::invalid_argument("weyl: size mismatch");
    for (const auto& [k, c] : o.terms) add_term(terms, k, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    if (n != o.n) throw std::invalid_argument("weyl: size mismatch");
    for (const auto& [k, c] : o.terms) add_term(terms, k, QRat(-1) * c);
    return *this;
}

WeylElement& WeylElement::operator*=(const QRat& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [k, v] : terms) v *= c;
    return *this;
}

std::string WeylElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [key, c] : terms) {
        if (!first_term) os << " + ";
        first_term = false;
        std::ostringstream body;
        const int nodes = n * n;
        for (int p = 0; p < nodes; ++p) {
            const int i = alg_row(n, p), j = alg_col(n, p);
            const int m = key[3 * p], d = key[3 * p + 1], h = key[3 * p + 2];
            const char* names[3] = {"M", "D", "H"};
            const int exps[3] = {m, d, h};
            for (int s = 0; s < 3; ++s) {
                if (exps[s] == 0) continue;
                if (body.tellp() > 0) body << "*";
                body << names[s] << "[" << i << "," << j << "]";
                if (exps[s] != 1) body << "^" << exps[s];
            }
        }
        const std::string b = body.str();
        if (b.empty()) {
            os << "(" << c.str() << ")";
        } else if (c.is_one()) {
            os << b;
        } else {
            os << "(" << c.str() << ")*" << b;
        }
    }
    return os.str();
}

WeylElement weyl_zero(int n) {
    if (n < 1) throw std::invalid_argument("weyl: n must be positive");
    return WeylElement{n, {}};
}

WeylElement weyl_one(int n) {
    WeylElement e = weyl_zero(n);
    e.terms.emplace(WeylKey(3 * n * n, 0), QRat(1));
    return e;
}

WeylElement weyl_monomial(int n, const WeylKey& key, QRat coeff) {
    WeylElement e = weyl_zero(n);
    if (static_cast<int>(key.size()) != 3 * n * n)
        throw std::invalid_argument("weyl: key size mismatch");
    for (std::size_t p = 0; p < key.size(); p += 3)
        if (key[p] < 0 || key[p + 1] < 0)
            throw std::invalid_argument("weyl: negative M/D exponent");
    contract_into(e.terms, key, std::move(coeff));
    return e;
}

namespace {
WeylElement single_node(int n, int i, int j, int m, int d, int h, QRat coeff = QRat(1)) {
    check_node(n, i, j);
    WeylKey key(3 * n * n, 0);
    const int p = alg_pos(n, i, j);
    key[3 * p] = m;
    key[3 * p + 1] = d;
    key[3 * p + 2] = h;
    return weyl_monomial(n, key, std::move(coeff));
}
}  // namespace

WeylElement weyl_M(int n, int i, int j) { return single_node(n, i, j, 1, 0, 0); }
WeylElement weyl_D(int n, int i, int j) { return single_node(n, i, j, 0, 1, 0); }
WeylElement weyl_H(int n, int i, int j, int power) { return single_node(n, i, j, 0, 0, power); }

// H D = q^{-1} D H as stored monomials; acts by [[a]] on exponent a
WeylElement weyl_Dbb(int n, int i, int j) {
    return single_node(n, i, j, 0, 1, 1, QRat::q_power(-1));
}

// H^{-1} D = q D H^{-1}; acts by {{a}}
WeylElement weyl_Dsc(int n, int i, int j) {
    return single_node(n, i, j, 0, 1, -1, QRat::q_power(1));
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
    if (a.n != b.n) throw std::invalid_argument("weyl: size mismatch");
    const int nodes = a.n * a.n;
    WeylElement out = weyl_zero(a.n);
    for (const auto& [k1, c1] : a.terms) {
        for (const auto& [k2, c2] : b.terms) {
            // nodes commute, so the product is assembled per node
            std::vector<std::pair<WeylKey, QRat>> partial;
            partial.emplace_back(WeylKey{}, c1 * c2);
            for (int p = 0; p < nodes && !partial.empty(); ++p) {
                NodeTriple t1{k1[3 * p], k1[3 * p + 1], k1[3 * p + 2]};
                NodeTriple t2{k2[3 * p], k2[3 * p + 1], k2[3 * p + 2]};
                const NodeTerms prod = node_mul(t1, t2);
                std::vector<std::pair<WeylKey, QRat>> next;
                next.reserve(partial.size() * prod.size());
                for (const auto& [key, c] : partial) {
                    for (const auto& [t, pc] : prod) {
                        WeylKey ext = key;
                        ext.push_back(t.m);
                        ext.push_back(t.d);
                        ext.push_back(t.h);
                        next.emplace_back(std::move(ext), c * pc);
                    }
                }
                partial = std::move(next);
            }
            for (auto& [key, c] : partial) add_term(out.terms, key, c);
        }
    }
    return out;
}

WeylElement weyl_pow(const WeylElement& a, int k) {
    if (k < 0) throw std::invalid_argument("weyl_pow: negative exponent");
    WeylElement result = weyl_one(a.n);
    WeylElement base = a;
    while (k > 0) {
        if (k & 1) result = multiply(result, base);
        base = (k >>= 1) ? multiply(base, base) : base;
    }
    return result;
}

WeylElement flip_weyl(const WeylElement& a) {
    const int n = a.n;
    WeylElement out = weyl_zero(n);
    for (const auto& [key, c] : a.terms) {
        WeylKey flipped(key.size(), 0);
        for (int p = 0; p < n * n; ++p) {
            const int fp = alg_pos(n, n + 1 - alg_row(n, p), n + 1 - alg_col(n, p));
            for (int s = 0; s < 3; ++s) flipped[3 * fp + s] = key[3 * p + s];
        }
        add_term(out.terms, flipped, c);
    }
    return out;
}

std::map<Mono, QRat> act(const WeylElement& op, const Mono& exps) {
    const int nodes = op.n * op.n;
    if (static_cast<int>(exps.size()) != nodes)
        throw std::invalid_argument("weyl: exponent vector size mismatch");
    std::map<Mono, QRat> out;
    for (const auto& [key, coeff] : op.terms) {
        QRat c = coeff;
        Mono target = exps;
        bool dead = false;
        for (int p = 0; p < nodes; ++p) {
            const int m = key[3 * p], d = key[3 * p + 1], h = key[3 * p + 2];
            int a = target[p];
            // rightmost factor acts first: H^h, then D^d, then M^m
            if (h != 0) c *= QRat::q_power(h * a);
            for (int k = 0; k < d; ++k) c *= qint(a - k, QIntFlavor::BracketL);
            if (c.is_zero()) {
                dead = true;
                break;
            }
            target[p] = a - d + m;
        }
        if (dead) continue;
        auto it = out.find(target);
        if (it == out.end()) {
            out.emplace(std::move(target), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

OperatorMatrix operator_matrix(const WeylElement& op, const std::vector<Mono>& sources) {
    OperatorMatrix mat;
    for (const Mono& src : sources) {
        for (auto& [dst, c] : act(op, src)) mat[{dst, src}] = c;
    }
    return mat;
}

WeylElement h_monomial(int n, const std::map<std::pair<int, int>, int>& exps) {
    WeylKey key(3 * n * n, 0);
    for (const auto& [node, h] : exps) {
        check_node(n, node.first, node.second);
        key[3 * alg_pos(n, node.first, node.second) + 2] += h;
    }
    return weyl_monomial(n, key);
}

WeylElement v_nw(int n, int i, int j) {
    check_node(n, i, j);
    std::map<std::pair<int, int>, int> exps;
    for (int k = 1; k < i; ++k) exps[{k, j}] += 1;
    for (int s = 1; s < j; ++s) exps[{i, s}] += 1;
    return h_monomial(n, exps);
}

WeylElement v_se(int n, int i, int j) {
    check_node(n, i, j);
    std::map<std::pair<int, int>, int> exps;
    for (int k = i + 1; k <= n; ++k) exps[{k, j}] += 1;
    for (int s = j + 1; s <= n; ++s) exps[{i, s}] += 1;
    return h_monomial(n, exps);
}

WeylElement v_form(int n, int i, int j, Form X) {
    WeylElement v = multiply(v_nw(n, i, j), v_se(n, i, j));
    return multiply(v, weyl_H(n, i, j, alpha_bias(X)));
}

WeylElement v_script(int n, int i, int j, Form X) {
    WeylElement out = v_form(n, i, j, X);
    for (int a = 1; a < i; ++a) out = multiply(out, v_script(n, a, j, X));
    for (int b = j + 1; b <= n; ++b) out = multiply(out, v_script(n, i, b, X));
    return out;
}

WeylElement y_script(int n, int i, int j) {
    check_node(n, i, j);
    WeylElement out = weyl_pow(v_se(n, i, j), 2);
    for (int a = i + 1; a <= n; ++a) out = multiply(out, weyl_pow(y_script(n, a, j), 2));
    return out;
}

}  // namespace qweyl
