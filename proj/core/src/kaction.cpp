#include "qweyl/kaction.hpp"

#include <utility>

namespace qweyl {

namespace {

void check_root(int n, SimpleRoot alpha) {
    if (alpha.kind == SimpleRoot::Beta) return;
    if (alpha.index < 1 || alpha.index > n - 1)
        throw std::invalid_argument("rung index out of range for rank");
}

void check_compact(int n, SimpleRoot alpha) {
    if (alpha.kind == SimpleRoot::Beta)
        throw std::invalid_argument("expected a compact simple root");
    check_root(n, alpha);
}

// total positive root content of a monomial (the weight itself on the plus
// side, its negative on the minus side)
WeightVector content_of(int n, const Mono& m) {
    return weight_of_mono(n, Side::Plus, m);
}

int lowest_position(const Mono& m) {
    for (int p = 0; p < static_cast<int>(m.size()); ++p)
        if (m[p] > 0) return p;
    return -1;
}

// value of the skew derivation on a single generator
AlgElement r_letter(int n, Side side, SimpleRoot alpha, bool primed, int i, int j) {
    if (alpha.kind == SimpleRoot::Beta) {
        if (i == 1 && j == 1) return alg_one(n, side);
        return alg_zero(n, side);
    }
    // on the minus side only the unprimed family sees the compact roots; on
    // the plus side only the primed family does
    const bool active = (side == Side::Minus) ? !primed : primed;
    if (!active) return alg_zero(n, side);
    const QRat scale = (side == Side::Minus)
                           ? -QRat::gamma()
                           : QRat::q_power(-1) * QRat::gamma();
    if (alpha.kind == SimpleRoot::Mu) {
        if (i != alpha.index + 1) return alg_zero(n, side);
        return scale * generator(n, side, alpha.index, j);
    }
    if (j != alpha.index + 1) return alg_zero(n, side);
    return scale * generator(n, side, i, alpha.index);
}

// Letter values of the subalgebra-leaving derivations: the primed one at beta
// on the minus side and the unprimed one at beta on the plus side take values
// in words of compact lowering/raising generators.  A word is stored as root
// labels, +k for the mu-family rung k and -k for the nu rung.
using CompactWord = std::vector<int>;

std::vector<std::pair<QRat, CompactWord>> beta_letter_value(int n, Side side, int i,
                                                            int j) {
    std::vector<std::pair<QRat, CompactWord>> val = {{QRat(1), {}}};
    const WeightVector beta = root_beta(n);
    // generators are built from the corner by rung brackets, rows then columns
    auto bracket = [&](int label) {
        const WeightVector rho = label > 0 ? root_mu(n, label) : root_nu(n, -label);
        const int tw = weight_dot(beta, rho);
        std::vector<std::pair<QRat, CompactWord>> next;
        for (const auto& [c, w] : val) {
            CompactWord pre = w;
            pre.insert(pre.begin(), label);
            CompactWord post = w;
            post.push_back(label);
            if (side == Side::Minus) {
                next.emplace_back(-QRat::q() * c, pre);
                next.emplace_back(QRat::q_power(tw) * c, post);
            } else {
                next.emplace_back(c, pre);
                next.emplace_back(-QRat::q_power(tw - 1) * c, post);
            }
        }
        val = std::move(next);
    };
    for (int r = 2; r <= i; ++r) bracket(r - 1);
    for (int c = 2; c <= j; ++c) bracket(-(c - 1));
    return val;
}

// subalgebra component of (compact word) * x, folding each compact letter in
// through its crossing rule; pass-through terms end in a compact generator
// and have no component in the subalgebra
AlgElement word_absorb(const CompactWord& w, AlgElement x) {
    const GenKind g = x.side == Side::Minus ? GenKind::F : GenKind::E;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const SimpleRoot rho = *it > 0 ? mu_root(*it) : nu_root(-*it);
        x = cross_action(g, rho, x).absorbed;
        if (x.is_zero()) break;
    }
    return x;
}

// the projected derivation on one bare monomial: twist on the left term by
// the right factor's content, compact letter values reabsorbed
AlgElement rbeta_projected_mono(int n, Side side, const WeightVector& bvec,
                                const Mono& m) {
    AlgElement out = alg_zero(n, side);
    const int p = lowest_position(m);
    if (p < 0) return out;
    const int i = alg_row(n, p);
    const int j = alg_col(n, p);
    Mono rest = m;
    rest[p] -= 1;

    const int e = weight_dot(bvec, content_of(n, rest));
    const AlgElement rest_elem = alg_monomial(n, side, rest);
    for (const auto& [c, w] : beta_letter_value(n, side, i, j)) {
        const AlgElement a = word_absorb(w, rest_elem);
        if (!a.is_zero()) out += QRat::q_power(e) * c * a;
    }
    AlgElement rest_val = rbeta_projected_mono(n, side, bvec, rest);
    if (!rest_val.is_zero()) out += multiply(generator(n, side, i, j), rest_val);
    return out;
}

AlgElement r_mono(int n, Side side, SimpleRoot alpha, bool primed,
                  const WeightVector& avec, const Mono& m) {
    AlgElement out = alg_zero(n, side);
    const int p = lowest_position(m);
    if (p < 0) return out;
    const int i = alg_row(n, p);
    const int j = alg_col(n, p);
    Mono rest = m;
    rest[p] -= 1;

    AlgElement letter_val = r_letter(n, side, alpha, primed, i, j);
    AlgElement rest_val = r_mono(n, side, alpha, primed, avec, rest);

    // twist on the right term by the left factor's content, or on the left
    // term by the right factor's content, depending on the family
    const bool twist_right = (side == Side::Minus) ? !primed : primed;
    if (twist_right) {
        if (!letter_val.is_zero())
            out += multiply(letter_val, alg_monomial(n, side, rest));
        if (!rest_val.is_zero()) {
            const int e = weight_dot(avec, weight_gamma(n, i, j));
            out += QRat::q_power(e) * multiply(generator(n, side, i, j), rest_val);
        }
    } else {
        if (!letter_val.is_zero()) {
            const int e = weight_dot(avec, content_of(n, rest));
            out += QRat::q_power(e) * multiply(letter_val, alg_monomial(n, side, rest));
        }
        if (!rest_val.is_zero())
            out += multiply(generator(n, side, i, j), rest_val);
    }
    return out;
}

// single-letter crossing rule: g letter = abs_coeff rep K^{k_emit} + pass letter g
struct LetterRule {
    bool absorbs = false;
    QRat abs_coeff;
    int rep_i = 0, rep_j = 0;
    int k_emit = 0;  // power of K_alpha emitted right of the replacement
    QRat pass = QRat(1);
};

LetterRule letter_rule(GenKind g, Side side, SimpleRoot alpha, int i, int j) {
    LetterRule r;
    const int k = alpha.index;
    const bool mu = alpha.kind == SimpleRoot::Mu;
    const int line = mu ? i : j;  // the row (mu family) or column (nu family)
    if (side == Side::Minus) {
        if (g == GenKind::E) {
            // E w_{line,*}: absorbs on line k+1, lifting it to line k
            if (line == k + 1) {
                r.absorbs = true;
                r.abs_coeff = -QRat::q();
                r.rep_i = mu ? k : i;
                r.rep_j = mu ? j : k;
                r.k_emit = 1;
            }
        } else {
            // F w: absorbs on line k, lowering it to line k+1
            if (line == k) {
                r.absorbs = true;
                r.abs_coeff = -QRat::q_power(-1);
                r.rep_i = mu ? k + 1 : i;
                r.rep_j = mu ? j : k + 1;
                r.pass = QRat::q_power(-1);
            } else if (line == k + 1) {
                r.pass = QRat::q();
            }
        }
    } else {
        if (g == GenKind::E) {
            // E z: absorbs on line k, lowering it to line k+1
            if (line == k) {
                r.absorbs = true;
                r.abs_coeff = QRat(1);
                r.rep_i = mu ? k + 1 : i;
                r.rep_j = mu ? j : k + 1;
                r.pass = QRat::q_power(-1);
            } else if (line == k + 1) {
                r.pass = QRat::q();
            }
        } else {
            // F z: absorbs on line k+1, lifting it to line k, emitting K^{-1}
            if (line == k + 1) {
                r.absorbs = true;
                r.abs_coeff = QRat(1);
                r.rep_i = mu ? k : i;
                r.rep_j = mu ? j : k;
                r.k_emit = -1;
            }
        }
    }
    return r;
}

// absorbed element and pass-through scalar for one bare monomial
std::pair<AlgElement, QRat> cross_mono(int n, Side side, GenKind g, SimpleRoot alpha,
                                       const WeightVector& avec, const Mono& m) {
    const int p = lowest_position(m);
    if (p < 0) return {alg_zero(n, side), QRat(1)};
    const int i = alg_row(n, p);
    const int j = alg_col(n, p);
    Mono rest = m;
    rest[p] -= 1;

    auto [abs_rest, pass_rest] = cross_mono(n, side, g, alpha, avec, rest);
    const LetterRule rule = letter_rule(g, side, alpha, i, j);

    AlgElement absorbed = alg_zero(n, side);
    if (!abs_rest.is_zero())
        absorbed += rule.pass * multiply(generator(n, side, i, j), abs_rest);
    if (rule.absorbs) {
        QRat c = rule.abs_coeff;
        if (rule.k_emit != 0) {
            const int e = weight_dot(avec, weight_of_mono(n, side, rest));
            c *= QRat::q_power(rule.k_emit * e);
        }
        absorbed += c * multiply(generator(n, side, rule.rep_i, rule.rep_j),
                                 alg_monomial(n, side, rest));
    }
    return {absorbed, rule.pass * pass_rest};
}

SmallMatrix small_zero(int dim) {
    return SmallMatrix(dim, std::vector<QRat>(dim, QRat(0)));
}

SmallMatrix small_identity(int dim) {
    SmallMatrix m = small_zero(dim);
    for (int i = 0; i < dim; ++i) m[i][i] = QRat(1);
    return m;
}

void apply_small(const SmallMatrix& m, int slot, const QRat& c, const Mono& mono,
                 ModuleVector& out) {
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
        const QRat& entry = m[r][slot];
        if (entry.is_zero()) continue;
        QRat& cell = out[{mono, r}];
        cell += c * entry;
        if (cell.is_zero()) out.erase({mono, r});
    }
}

void mv_accumulate(ModuleVector& out, const ModuleVector& add) {
    for (const auto& [k, c] : add) {
        QRat& cell = out[k];
        cell += c;
        if (cell.is_zero()) out.erase(k);
    }
}

// E_beta on (monomial x v), one leading letter at a time:
//   E (w rest x v) = [E, w] (rest x v) + w E (rest x v),
//   [E, w] = (K_beta r(w) - r'(w) K_beta^{-1}) / (q - q^{-1}),
// where r(w) is 1 on the corner letter and 0 otherwise, and r'(w) is a sum of
// compact lowering words that act on the module factor
ModuleVector ebeta_mono(int n, const FiniteModule& v, const Mono& m, int slot,
                        const QRat& coeff) {
    ModuleVector out;
    const int p = lowest_position(m);
    if (p < 0) return out;  // the raising generator kills the module factor
    const int i = alg_row(n, p);
    const int j = alg_col(n, p);
    Mono rest = m;
    rest[p] -= 1;
    const QRat invg = QRat::gamma().inverse();

    if (i == 1 && j == 1) {
        ModuleVector tmp{{{rest, slot}, coeff * invg}};
        mv_accumulate(out, verma_action({UqGenerator::K, beta_root()}, tmp, n, v));
    }
    for (const auto& [c, w] : beta_letter_value(n, Side::Minus, i, j)) {
        ModuleVector tmp{{{rest, slot}, -coeff * invg * c}};
        tmp = verma_action({UqGenerator::Kinv, beta_root()}, tmp, n, v);
        for (auto it = w.rbegin(); it != w.rend() && !tmp.empty(); ++it) {
            const SimpleRoot rho = *it > 0 ? mu_root(*it) : nu_root(-*it);
            tmp = verma_action({UqGenerator::F, rho}, tmp, n, v);
        }
        mv_accumulate(out, tmp);
    }

    const ModuleVector sub = ebeta_mono(n, v, rest, slot, coeff);
    for (const auto& [k2, c2] : sub) {
        const AlgElement prod = multiply(generator(n, Side::Minus, i, j),
                                         alg_monomial(n, Side::Minus, k2.first, c2));
        for (const auto& [m3, c3] : prod.terms) {
            QRat& cell = out[{m3, k2.second}];
            cell += c3;
            if (cell.is_zero()) out.erase({m3, k2.second});
        }
    }
    return out;
}

}  // namespace

WeightVector root_vector(int n, SimpleRoot alpha) {
    check_root(n, alpha);
    switch (alpha.kind) {
        case SimpleRoot::Mu: return root_mu(n, alpha.index);
        case SimpleRoot::Nu: return root_nu(n, alpha.index);
        default: return root_beta(n);
    }
}

AlgElement r_op(SimpleRoot alpha, bool primed, const AlgElement& x) {
    check_root(x.n, alpha);
    const WeightVector avec = root_vector(x.n, alpha);
    const bool projected = alpha.kind == SimpleRoot::Beta &&
                           (primed == (x.side == Side::Minus));
    AlgElement out = alg_zero(x.n, x.side);
    for (const auto& [mono, coeff] : x.terms)
        out += coeff * (projected
                            ? rbeta_projected_mono(x.n, x.side, avec, mono)
                            : r_mono(x.n, x.side, alpha, primed, avec, mono));
    return out;
}

CrossedAction cross_action(GenKind g, SimpleRoot alpha, const AlgElement& u) {
    check_compact(u.n, alpha);
    const WeightVector avec = root_vector(u.n, alpha);
    CrossedAction out{alg_zero(u.n, u.side), alg_zero(u.n, u.side)};
    for (const auto& [mono, coeff] : u.terms) {
        auto [abs_part, pass_scalar] = cross_mono(u.n, u.side, g, alpha, avec, mono);
        out.absorbed += coeff * abs_part;
        out.passed += alg_monomial(u.n, u.side, mono, coeff * pass_scalar);
    }
    return out;
}

WeylElement weyl_compact_main(GenKind g, SimpleRoot alpha, Side side, int n) {
    check_compact(n, alpha);
    if (alpha.kind == SimpleRoot::Nu)
        return sigma_mirror(weyl_compact_main(g, mu_root(alpha.index), side, n));
    const int k = alpha.index;
    WeylElement sum = weyl_zero(n);
    for (int j = 1; j <= n; ++j) {
        std::map<std::pair<int, int>, int> dress;
        WeylElement hop(weyl_one(n));
        QRat coeff(1);
        if (side == Side::Minus && g == GenKind::E) {
            hop = multiply(weyl_M(n, k, j), weyl_D(n, k + 1, j));
            coeff = -QRat::q();
            for (int s = j + 1; s <= n; ++s) {
                dress[{k, s}] += 1;
                dress[{k + 1, s}] -= 1;
            }
        } else if (side == Side::Minus && g == GenKind::F) {
            hop = multiply(weyl_M(n, k + 1, j), weyl_D(n, k, j));
            coeff = -QRat::q_power(-1);
            for (int s = 1; s < j; ++s) {
                dress[{k + 1, s}] += 1;
                dress[{k, s}] -= 1;
            }
        } else if (side == Side::Plus && g == GenKind::E) {
            hop = multiply(weyl_D(n, k, j), weyl_M(n, k + 1, j));
            for (int s = 1; s < j; ++s) {
                dress[{k, s}] -= 1;
                dress[{k + 1, s}] += 1;
            }
        } else {
            hop = multiply(weyl_D(n, k + 1, j), weyl_M(n, k, j));
            for (int s = j + 1; s <= n; ++s) {
                dress[{k + 1, s}] -= 1;
                dress[{k, s}] += 1;
            }
        }
        sum += coeff * multiply(hop, h_monomial(n, dress));
    }
    return sum;
}

WeylElement weyl_compact_tail(GenKind g, SimpleRoot alpha, Side side, int n) {
    check_compact(n, alpha);
    if (alpha.kind == SimpleRoot::Nu)
        return sigma_mirror(weyl_compact_tail(g, mu_root(alpha.index), side, n));
    const bool trivial = (side == Side::Minus && g == GenKind::E) ||
                         (side == Side::Plus && g == GenKind::F);
    if (trivial) return weyl_one(n);
    const int k = alpha.index;
    std::map<std::pair<int, int>, int> dress;
    for (int j = 1; j <= n; ++j) {
        dress[{k, j}] -= 1;
        dress[{k + 1, j}] += 1;
    }
    return h_monomial(n, dress);
}

WeylElement k_diagonal(SimpleRoot alpha, Side side, int n) {
    check_root(n, alpha);
    const int sign = side == Side::Minus ? -1 : 1;
    std::map<std::pair<int, int>, int> dress;
    if (alpha.kind == SimpleRoot::Beta) {
        for (int j = 1; j <= n; ++j) dress[{1, j}] += sign;
        for (int i = 1; i <= n; ++i) dress[{i, 1}] += sign;
    } else {
        const int k = alpha.index;
        for (int s = 1; s <= n; ++s) {
            if (alpha.kind == SimpleRoot::Mu) {
                dress[{k, s}] -= sign;
                dress[{k + 1, s}] += sign;
            } else {
                dress[{s, k}] -= sign;
                dress[{s, k + 1}] += sign;
            }
        }
    }
    return h_monomial(n, dress);
}

AlgElement sigma_mirror(const AlgElement& a) {
    AlgElement out = alg_zero(a.n, a.side);
    for (const auto& [mono, coeff] : a.terms) {
        Mono m(mono.size(), 0);
        for (int p = 0; p < static_cast<int>(mono.size()); ++p)
            m[alg_pos(a.n, alg_col(a.n, p), alg_row(a.n, p))] = mono[p];
        out.terms[m] = coeff;
    }
    return out;
}

WeylElement sigma_mirror(const WeylElement& e) {
    WeylElement out = weyl_zero(e.n);
    for (const auto& [key, coeff] : e.terms) {
        WeylKey k(key.size(), 0);
        for (int p = 0; p < e.n * e.n; ++p) {
            const int p2 = alg_pos(e.n, alg_col(e.n, p), alg_row(e.n, p));
            for (int c = 0; c < 3; ++c) k[3 * p2 + c] = key[3 * p + c];
        }
        out.terms[k] = coeff;
    }
    return out;
}

const SmallMatrix& FiniteModule::matrix(GenKind g, SimpleRoot alpha) const {
    check_compact(n, alpha);
    const int k = alpha.index - 1;
    if (alpha.kind == SimpleRoot::Mu) return g == GenKind::E ? E_mu[k] : F_mu[k];
    return g == GenKind::E ? E_nu[k] : F_nu[k];
}

const SmallMatrix& FiniteModule::k_matrix(SimpleRoot alpha, int sign) const {
    check_root(n, alpha);
    if (alpha.kind == SimpleRoot::Beta) return sign >= 0 ? K_beta : K_beta_inv;
    const int k = alpha.index - 1;
    if (alpha.kind == SimpleRoot::Mu) return sign >= 0 ? K_mu[k] : K_mu_inv[k];
    return sign >= 0 ? K_nu[k] : K_nu_inv[k];
}

FiniteModule build_VLambda(int n, const HighestWeight& hw) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    auto padded = [&](const std::vector<int>& v) {
        std::vector<int> out(static_cast<size_t>(n - 1), 0);
        if (static_cast<int>(v.size()) > n - 1)
            throw std::invalid_argument("too many rung weights for rank");
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0) throw std::invalid_argument("rung weights must be nonnegative");
            out[i] = v[i];
        }
        return out;
    };
    const std::vector<int> lmu = padded(hw.lambda_mu);
    const std::vector<int> lnu = padded(hw.lambda_nu);
    bool scalar = true;
    for (int v : lmu) scalar = scalar && v == 0;
    for (int v : lnu) scalar = scalar && v == 0;
    if (!scalar && n != 2)
        throw UnsupportedRank("nontrivial compact highest weights are only supported at rank 2");

    FiniteModule mod;
    mod.n = n;
    mod.hw = hw;
    mod.hw.lambda_mu = lmu;
    mod.hw.lambda_nu = lnu;
    const QRat t = hw.lambda ? QRat::q_power(static_cast<int>(*hw.lambda)) : QRat::t();

    const int a = n == 2 ? lmu[0] : 0;
    const int b = n == 2 ? lnu[0] : 0;
    const int dim = (a + 1) * (b + 1);
    mod.dim = dim;
    const auto slot = [&](int ku, int lv) { return ku * (b + 1) + lv; };

    mod.E_mu.assign(static_cast<size_t>(n - 1), small_zero(dim));
    mod.F_mu.assign(static_cast<size_t>(n - 1), small_zero(dim));
    mod.K_mu.assign(static_cast<size_t>(n - 1), small_identity(dim));
    mod.K_mu_inv.assign(static_cast<size_t>(n - 1), small_identity(dim));
    mod.E_nu = mod.E_mu;
    mod.F_nu = mod.F_mu;
    mod.K_nu = mod.K_mu;
    mod.K_nu_inv = mod.K_mu_inv;
    mod.K_beta = small_zero(dim);
    mod.K_beta_inv = small_zero(dim);

    for (int ku = 0; ku <= a; ++ku) {
        for (int lv = 0; lv <= b; ++lv) {
            const int s = slot(ku, lv);
            mod.K_beta[s][s] = t * QRat::q_power(ku + lv);
            mod.K_beta_inv[s][s] = mod.K_beta[s][s].inverse();
            if (n != 2) continue;
            if (ku > 0) mod.E_mu[0][slot(ku - 1, lv)][s] = qint(a - ku + 1, QIntFlavor::BracketL);
            if (ku < a) mod.F_mu[0][slot(ku + 1, lv)][s] = qint(ku + 1, QIntFlavor::BracketL);
            mod.K_mu[0][s][s] = QRat::q_power(a - 2 * ku);
            mod.K_mu_inv[0][s][s] = QRat::q_power(2 * ku - a);
            if (lv > 0) mod.E_nu[0][slot(ku, lv - 1)][s] = qint(b - lv + 1, QIntFlavor::BracketL);
            if (lv < b) mod.F_nu[0][slot(ku, lv + 1)][s] = qint(lv + 1, QIntFlavor::BracketL);
            mod.K_nu[0][s][s] = QRat::q_power(b - 2 * lv);
            mod.K_nu_inv[0][s][s] = QRat::q_power(2 * lv - b);
        }
    }
    return mod;
}

ModuleVector verma_action(const UqGenerator& u, const ModuleVector& m, int n,
                          const FiniteModule& v) {
    check_root(n, u.root);
    if (v.n != n) throw std::invalid_argument("module rank mismatch");
    ModuleVector out;
    const WeightVector avec = root_vector(n, u.root);

    for (const auto& [key, coeff] : m) {
        const auto& [mono, slot] = key;
        if (static_cast<int>(mono.size()) != n * n || slot < 0 || slot >= v.dim)
            throw std::invalid_argument("malformed module vector entry");

        if (u.kind == UqGenerator::K || u.kind == UqGenerator::Kinv) {
            const int sign = u.kind == UqGenerator::K ? 1 : -1;
            const int e = weight_dot(avec, weight_of_mono(n, Side::Minus, mono));
            apply_small(v.k_matrix(u.root, sign), slot,
                        coeff * QRat::q_power(sign * e), mono, out);
            continue;
        }

        if (u.root.kind == SimpleRoot::Beta) {
            if (u.kind == UqGenerator::F) {
                const AlgElement prod =
                    multiply(generator(n, Side::Minus, 1, 1),
                             alg_monomial(n, Side::Minus, mono, coeff));
                for (const auto& [m2, c2] : prod.terms)
                    apply_small(small_identity(v.dim), slot, c2, m2, out);
                continue;
            }
            mv_accumulate(out, ebeta_mono(n, v, mono, slot, coeff));
            continue;
        }

        // compact E/F: absorbed part with its K tail on the module, plus the
        // pass-through acting on the module factor
        const GenKind g = u.kind == UqGenerator::E ? GenKind::E : GenKind::F;
        const CrossedAction cr =
            cross_action(g, u.root, alg_monomial(n, Side::Minus, mono, coeff));
        const int k_emit = g == GenKind::E ? 1 : 0;
        for (const auto& [m2, c2] : cr.absorbed.terms) {
            if (k_emit != 0)
                apply_small(v.k_matrix(u.root, k_emit), slot, c2, m2, out);
            else
                apply_small(small_identity(v.dim), slot, c2, m2, out);
        }
        for (const auto& [m2, c2] : cr.passed.terms)
            apply_small(v.matrix(g, u.root), slot, c2, m2, out);
    }
    return out;
}

}  // namespace qweyl
