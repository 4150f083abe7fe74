#include "qweyl/dualrep.hpp"

#include <stdexcept>
#include <vector>

#include "qweyl/multop.hpp"

namespace qweyl {

namespace {

// all plus/minus monomials of degree 0..dmax
std::vector<Mono> basis_window(int n, int dmax) {
    std::vector<Mono> out;
    for (int d = 0; d <= dmax; ++d) {
        auto level = basis_of_degree(n, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

void add_term(ModuleVector& acc, const Mono& m, int slot, const QRat& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(m, slot);
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

// Verma action of the antipode S(u): a composition of generator actions with
// a global sign (E and F pick up -1, the K's only invert).
ModuleVector antipode_action(const UqGenerator& u, const ModuleVector& m, int n,
                             const FiniteModule& v) {
    switch (u.kind) {
        case UqGenerator::E: {
            ModuleVector step = verma_action({UqGenerator::E, u.root}, m, n, v);
            step = verma_action({UqGenerator::Kinv, u.root}, step, n, v);
            ModuleVector out;
            for (auto& [key, c] : step) add_term(out, key.first, key.second, QRat(-1) * c);
            return out;
        }
        case UqGenerator::F: {
            ModuleVector step = verma_action({UqGenerator::K, u.root}, m, n, v);
            step = verma_action({UqGenerator::F, u.root}, step, n, v);
            ModuleVector out;
            for (auto& [key, c] : step) add_term(out, key.first, key.second, QRat(-1) * c);
            return out;
        }
        case UqGenerator::K:
            return verma_action({UqGenerator::Kinv, u.root}, m, n, v);
        case UqGenerator::Kinv:
            return verma_action({UqGenerator::K, u.root}, m, n, v);
    }
    throw std::logic_error("unreachable generator kind");
}

QRat beta_weight_power(int n, const Mono& a, int scale) {
    const WeightVector beta = root_vector(n, beta_root());
    const WeightVector wt = weight_of_mono(n, Side::Plus, a);
    return QRat::q_power(scale * weight_dot(beta, wt));
}

SmallMatrix matmul(const SmallMatrix& a, const SmallMatrix& b) {
    const int nr = static_cast<int>(a.size());
    const int nc = static_cast<int>(b.front().size());
    const int mid = static_cast<int>(b.size());
    SmallMatrix out(nr, std::vector<QRat>(nc, QRat(0)));
    for (int r = 0; r < nr; ++r)
        for (int k = 0; k < mid; ++k) {
            if (a[r][k].is_zero()) continue;
            for (int c = 0; c < nc; ++c) out[r][c] += a[r][k] * b[k][c];
        }
    return out;
}

}  // namespace

DualColumns dual_rep_matrix(const DualRepSpec& spec, const UqGenerator& u) {
    const int n = spec.n;
    const FiniteModule v = build_VLambda(n, spec.hw);
    DualColumns cols;
    for (const Mono& a : basis_window(n, spec.degree))
        for (int s = 0; s < v.dim; ++s) cols[{a, s}];

    // sweep the minus basis one degree past the sources: E_beta raises the
    // dual degree by one and every other generator preserves or lowers it
    for (const Mono& c : basis_window(n, spec.degree + 1)) {
        const QRat gram_c = gram(c, spec.form);
        for (int t = 0; t < v.dim; ++t) {
            ModuleVector unit{{{c, t}, QRat(1)}};
            ModuleVector img = antipode_action(u, unit, n, v);
            for (auto& [key, coeff] : img) {
                const Mono& a = key.first;
                if (degree(a) > spec.degree) continue;
                QRat entry = coeff * gram(a, spec.form) / gram_c;
                if (spec.rescaled)
                    entry *= basis_scale(Rescaling::B, 1, a) / basis_scale(Rescaling::B, 1, c);
                add_term(cols[{a, key.second}], c, t, entry);
            }
        }
    }
    return cols;
}

DualColumns actJ_formula_matrix(const DualRepSpec& spec) {
    if (spec.form.kind != FormJ)
        throw std::invalid_argument("the five-part expansion is stated for form J");
    const int n = spec.n;
    const FiniteModule v = build_VLambda(n, spec.hw);

    // dual-slot endomorphisms: the tail elements are compact lowering
    // operators, so their duals are plain transposes of the F-matrices, and
    // the squared inverse K_beta eigenvalue rides the destination slot
    const SmallMatrix kd2 = matmul(v.K_beta_inv, v.K_beta_inv);
    auto slot_factor = [&](int i, int j) {
        // Kd^2 X_i^T Y_j^T with i or j = 0 meaning "absent"; the two legs
        // commute, so [t][s] = kd2[t][t] * (X_i Y_j)[s][t]
        SmallMatrix m(v.dim, std::vector<QRat>(v.dim, QRat(0)));
        SmallMatrix xy(v.dim, std::vector<QRat>(v.dim, QRat(0)));
        for (int d = 0; d < v.dim; ++d) xy[d][d] = QRat(1);
        if (i > 0) xy = matmul(xy, v.F_mu[i - 1]);
        if (j > 0) xy = matmul(xy, v.F_nu[j - 1]);
        for (int t = 0; t < v.dim; ++t)
            for (int s = 0; s < v.dim; ++s) m[t][s] = kd2[t][t] * xy[s][t];
        return m;
    };

    const QRat g = QRat::gamma();
    DualColumns cols;
    for (const Mono& a : basis_window(n, spec.degree)) {
        const QRat adk = beta_weight_power(n, a, 1);
        const AlgElement za = alg_monomial(n, Side::Plus, a);
        const AlgElement left11 = multiply(generator(n, Side::Plus, 1, 1), za);

        // per-source list of (algebra part, slot endomorphism, scalar)
        struct Part {
            AlgElement alg;
            SmallMatrix endo;
            QRat scalar;
        };
        std::vector<Part> parts;
        SmallMatrix ident(v.dim, std::vector<QRat>(v.dim, QRat(0)));
        for (int d = 0; d < v.dim; ++d) ident[d][d] = QRat(1);
        parts.push_back({left11, ident, QRat(1)});
        parts.push_back({multiply(za, generator(n, Side::Plus, 1, 1)), slot_factor(0, 0),
                         QRat(-1) * adk});
        for (int i = 1; i < n; ++i)
            parts.push_back({multiply(za, generator(n, Side::Plus, i + 1, 1)),
                             slot_factor(i, 0), g * QRat::q_power(-1) * adk});
        for (int j = 1; j < n; ++j)
            parts.push_back({multiply(za, generator(n, Side::Plus, 1, j + 1)),
                             slot_factor(0, j), g * QRat::q_power(-1) * adk});
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                parts.push_back({multiply(za, generator(n, Side::Plus, i + 1, j + 1)),
                                 slot_factor(i, j),
                                 QRat(-1) * g * g * QRat::q_power(-2) * adk});

        for (int s = 0; s < v.dim; ++s) {
            ModuleVector& col = cols[{a, s}];
            for (const Part& p : parts)
                for (int t = 0; t < v.dim; ++t) {
                    const QRat w = p.scalar * p.endo[t][s];
                    if (w.is_zero()) continue;
                    for (auto& [m, c] : p.alg.terms) add_term(col, m, t, c * w);
                }
            if (spec.rescaled) {
                const QRat ba = basis_scale(Rescaling::B, 1, a);
                for (auto& [key, c] : col)
                    c *= ba / basis_scale(Rescaling::B, 1, key.first);
            }
        }
    }
    return cols;
}

WeylElement dual_rep_element(const DualRepSpec& spec) {
    const int n = spec.n;
    const FiniteModule v = build_VLambda(n, spec.hw);
    if (v.dim != 1)
        throw UnsupportedRank("dual_rep_element is defined on scalar weights only");
    const QRat kd2 = v.K_beta_inv[0][0] * v.K_beta_inv[0][0];

    // left mult by the corner generator is already normally ordered; right
    // mult needs the fitted element with its crossing corrections
    const WeylElement left11 = weyl_M(n, 1, 1);
    const WeylElement right11 = fit_weyl_skeleton({1, 1, Side::Plus, Chirality::RightMult}, n,
                                                  spec.degree < 3 ? 3 : spec.degree);
    WeylElement e =
        left11 - kd2 * multiply(right11, k_diagonal(beta_root(), Side::Plus, n));
    const int a_power = gamma_exponent(FormJ) - gamma_exponent(spec.form.kind);
    if (a_power != 0) e = conj_a_power(e, a_power);
    if (spec.rescaled) e = QRat(-1) / QRat::gamma() * e;
    return e;
}

ClassicalLimitReport classical_limit_check(int n, long lambda, int d) {
    DualRepSpec spec;
    spec.n = n;
    spec.form = PairingForm{FormJ, false};
    spec.hw.lambda_mu.assign(n - 1, 0);
    spec.hw.lambda_nu.assign(n - 1, 0);
    spec.hw.lambda = lambda;
    spec.degree = d;
    spec.rescaled = true;

    const DualColumns cols = dual_rep_matrix(spec, {UqGenerator::E, beta_root()});
    ClassicalLimitReport report;
    for (auto& [src, col] : cols) {
        const Mono& a = src.first;
        // classical image: sum_{i,j} a_ij Z^{a - e_ij + e_i1 + e_1j} - lambda Z^{a + e_11}
        std::map<Mono, Rational> expected;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const int aij = a[alg_pos(n, i, j)];
                if (aij == 0) continue;
                Mono dst = a;
                dst[alg_pos(n, i, j)] -= 1;
                dst[alg_pos(n, i, 1)] += 1;
                dst[alg_pos(n, 1, j)] += 1;
                expected[dst] += Rational(aij);
            }
        {
            Mono dst = a;
            dst[alg_pos(n, 1, 1)] += 1;
            expected[dst] += Rational(-lambda);
        }
        std::erase_if(expected, [](const auto& kv) { return kv.second == Rational(0); });

        std::map<Mono, Rational> got;
        for (auto& [key, c] : col) {
            const Rational value = c.eval_at(Rational(1), lambda);
            if (value == Rational(0)) continue;
            got[key.first] += value;
        }
        report.entries += static_cast<int>(got.size());
        if (got != expected && report.pass) {
            report.pass = false;
            report.first_mismatch = "limit mismatch on a source of degree " +
                                    std::to_string(degree(a));
        }
    }
    return report;
}

}  // namespace qweyl
