#include "qweyl/pairing.hpp"

#include <stdexcept>

namespace qweyl {

namespace {

QRat minus_inverse_gamma() { return QRat(-1) / QRat::gamma(); }

}  // namespace

QRat gram(const Mono& a, const PairingForm& form) {
    QRat value(1);
    int total = 0;
    for (int e : a) {
        if (e < 0) throw std::invalid_argument("gram: negative exponent");
        value *= qfactorial(e, form.kind);
        total += e;
    }
    if (!form.normalized) value *= minus_inverse_gamma().pow(total);
    return value;
}

QRat pair(const AlgElement& z, const AlgElement& w, const PairingForm& form) {
    if (z.side != Side::Plus || w.side != Side::Minus)
        throw std::invalid_argument("pair: expected a plus-side and a minus-side element");
    if (z.n != w.n) throw std::invalid_argument("pair: size mismatch");
    QRat value(0);
    for (const auto& [mono, cz] : z.terms) {
        auto it = w.terms.find(mono);
        if (it == w.terms.end()) continue;
        value += cz * it->second * gram(mono, form);
    }
    return value;
}

OperatorMatrix transpose(const OperatorMatrix& t, const PairingForm& form) {
    OperatorMatrix out;
    for (const auto& [key, value] : t) {
        if (value.is_zero()) continue;
        const auto& [dst, src] = key;
        out[{src, dst}] = value * gram(dst, form) / gram(src, form);
    }
    return out;
}

WeylElement element_transpose(const WeylElement& e, const PairingForm& form) {
    const int n = e.n;
    const int g = gamma_exponent(form.kind);
    const QRat kappa = form.normalized ? QRat(1) : minus_inverse_gamma();
    WeylElement out = weyl_zero(n);
    for (const auto& [key, coeff] : e.terms) {
        WeylElement term = weyl_one(n);
        int kappa_exp = 0;
        for (int p = 0; p < n * n; ++p) {
            const int m = key[3 * p], d = key[3 * p + 1], h = key[3 * p + 2];
            const int i = alg_row(n, p), j = alg_col(n, p);
            // transpose reverses the node word M^m D^d H^h
            WeylElement node = weyl_H(n, i, j, h);
            // D^ = M H^{-g}
            WeylKey dk(3 * n * n, 0);
            dk[3 * p] = 1;
            dk[3 * p + 2] = -g;
            node = multiply(node, weyl_pow(weyl_monomial(n, dk, QRat(1)), d));
            // M^ = q^{-g} D H^{g}
            WeylKey mk(3 * n * n, 0);
            mk[3 * p + 1] = 1;
            mk[3 * p + 2] = g;
            node = multiply(node, weyl_pow(weyl_monomial(n, mk, QRat::q_power(-g)), m));
            term = multiply(term, node);
            kappa_exp += m - d;
        }
        term *= coeff * kappa.pow(kappa_exp);
        out += term;
    }
    return out;
}

QRat basis_scale(Rescaling which, int power, const Mono& a) {
    if (which == Rescaling::A) {
        long exp = 0;
        for (int e : a) exp -= static_cast<long>(power) * e * (e - 1) / 2;
        return QRat::q_power(static_cast<int>(exp));
    }
    return (-QRat::gamma()).pow(power * degree(a));
}

OperatorMatrix change_of_basis(Rescaling which, int power, int n, int d) {
    OperatorMatrix out;
    for (const Mono& a : basis_of_degree(n, d)) out[{a, a}] = basis_scale(which, power, a);
    return out;
}

WeylElement conj_a_power(const WeylElement& e, int power) {
    WeylElement out = weyl_zero(e.n);
    for (const auto& [key, coeff] : e.terms) {
        WeylKey moved = key;
        long exp = 0;
        for (int p = 0; p < e.n * e.n; ++p) {
            const int s = key[3 * p] - key[3 * p + 1];  // m - d
            exp += static_cast<long>(power) * s * (s - 1) / 2;
            moved[3 * p + 2] += power * s;
        }
        out += weyl_monomial(e.n, moved, coeff * QRat::q_power(static_cast<int>(exp)));
    }
    return out;
}

ModulePairing delta_pairing() {
    return [](int k, int l) { return QRat(k == l ? 1 : 0); };
}

QRat module_pair(const ModuleVector& minus_vec, const ModuleVector& plus_vec, int n,
                 const PairingForm& form, const ModulePairing& vpair) {
    QRat value(0);
    for (const auto& [mk, cm] : minus_vec) {
        if (static_cast<int>(mk.first.size()) != n * n)
            throw std::invalid_argument("module_pair: size mismatch");
        for (const auto& [pk, cp] : plus_vec) {
            if (pk.first != mk.first) continue;
            const QRat factor = vpair(pk.second, mk.second);
            if (factor.is_zero()) continue;
            value += cm * cp * factor * gram(mk.first, form);
        }
    }
    return value;
}

}  // namespace qweyl
