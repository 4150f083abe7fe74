#include "qweyl/membership.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qweyl/linalg.hpp"
#include "qweyl/multop.hpp"

namespace qweyl {

namespace {

int node_base(int n, int i, int j) { return 3 * alg_pos(n, i, j); }

std::string pos_name(const char* base, int i, int j) {
    std::ostringstream os;
    os << base << "(" << i << "," << j << ")";
    return os.str();
}

std::string h_power_name(int i, int j, int power) {
    std::ostringstream os;
    os << "H(" << i << "," << j << ")^{" << (power > 0 ? "+" : "") << power << "}";
    return os.str();
}

const WeylKey& only_key(const WeylElement& e, const char* what) {
    if (e.terms.size() != 1)
        throw std::invalid_argument(std::string(what) + ": expected a single summand");
    return e.terms.begin()->first;
}

// extracts the exponents of a coefficient-one diagonal monomial
HMonomial to_hmono(const WeylElement& e, const char* what) {
    const WeylKey& key = only_key(e, what);
    if (!e.terms.begin()->second.is_one())
        throw std::invalid_argument(std::string(what) + ": separator coefficient is not one");
    HMonomial phi;
    phi.n = e.n;
    for (int j = 1; j <= e.n; ++j)
        for (int i = 1; i <= e.n; ++i) {
            const int b = node_base(e.n, i, j);
            if (key[b] != 0 || key[b + 1] != 0)
                throw std::invalid_argument(std::string(what) + ": separator is not diagonal");
            if (key[b + 2] != 0) phi.exps[{i, j}] = key[b + 2];
        }
    return phi;
}

std::vector<int> signature_of(const std::vector<HMonomial>& phis, const WeylKey& key) {
    std::vector<int> s;
    s.reserve(phis.size());
    for (const auto& phi : phis) s.push_back(ad_eigenvalue(phi, key));
    return s;
}

std::string h_mono_str(const HMonomial& phi) {
    if (phi.exps.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [node, e] : phi.exps) {
        if (!first) os << " ";
        os << "H(" << node.first << "," << node.second << ")";
        if (e != 1) os << "^" << e;
        first = false;
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// separators and traces
// ---------------------------------------------------------------------------

WeylElement HMonomial::element() const { return h_monomial(n, exps); }

int ad_eigenvalue(const HMonomial& phi, const WeylKey& key) {
    int k = 0;
    for (const auto& [node, e] : phi.exps) {
        const int b = node_base(phi.n, node.first, node.second);
        k += e * (key[b] - key[b + 1]);
    }
    return k;
}

WeylElement DerivationTrace::replay() const {
    std::vector<WeylElement> vals(steps.size());
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const TraceStep& st = steps[s];
        switch (st.kind) {
            case TraceStep::Kind::Input:
                vals[s] = st.input;
                break;
            case TraceStep::Kind::Commutator: {
                const WeylElement p = st.phi.element();
                vals[s] = multiply(p, vals[st.src]) -
                          QRat::q_power(st.k) * multiply(vals[st.src], p);
                break;
            }
            case TraceStep::Kind::Product:
                vals[s] = multiply(vals[st.src], vals[st.src2]);
                break;
            case TraceStep::Kind::Scalar:
                vals[s] = vals[st.src] * st.scalar;
                break;
            case TraceStep::Kind::Sum:
                vals[s] = vals[st.src] + st.scalar * vals[st.src2];
                break;
        }
    }
    if (result < 0 || result >= static_cast<int>(steps.size()))
        throw std::logic_error("trace has no result step");
    return vals[result];
}

std::string DerivationTrace::str() const {
    std::ostringstream os;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const TraceStep& st = steps[s];
        os << s << ": ";
        switch (st.kind) {
            case TraceStep::Kind::Input:
                os << "input [" << st.input.terms.size() << " terms]";
                break;
            case TraceStep::Kind::Commutator:
                os << "commutator phi = " << h_mono_str(st.phi) << ", k = " << st.k
                   << ", on " << st.src;
                break;
            case TraceStep::Kind::Product:
                os << "product " << st.src << " * " << st.src2;
                break;
            case TraceStep::Kind::Scalar:
                os << "scalar (" << st.scalar.str() << ") * " << st.src;
                break;
            case TraceStep::Kind::Sum:
                os << "sum " << st.src << " + (" << st.scalar.str() << ") * " << st.src2;
                break;
        }
        if (!st.note.empty()) os << "   ; " << st.note;
        os << "\n";
    }
    os << "result: " << result << "\n";
    return os.str();
}

int DerivationTrace::add_input(WeylElement value, std::string note) {
    TraceStep st;
    st.kind = TraceStep::Kind::Input;
    st.input = std::move(value);
    st.note = std::move(note);
    steps.push_back(std::move(st));
    return static_cast<int>(steps.size()) - 1;
}

int DerivationTrace::add_commutator(HMonomial phi, int src, int k, std::string note) {
    TraceStep st;
    st.kind = TraceStep::Kind::Commutator;
    st.phi = std::move(phi);
    st.src = src;
    st.k = k;
    st.note = std::move(note);
    steps.push_back(std::move(st));
    return static_cast<int>(steps.size()) - 1;
}

int DerivationTrace::add_product(int src, int src2, std::string note) {
    TraceStep st;
    st.kind = TraceStep::Kind::Product;
    st.src = src;
    st.src2 = src2;
    st.note = std::move(note);
    steps.push_back(std::move(st));
    return static_cast<int>(steps.size()) - 1;
}

int DerivationTrace::add_scalar(QRat c, int src, std::string note) {
    TraceStep st;
    st.kind = TraceStep::Kind::Scalar;
    st.scalar = std::move(c);
    st.src = src;
    st.note = std::move(note);
    steps.push_back(std::move(st));
    return static_cast<int>(steps.size()) - 1;
}

int DerivationTrace::add_sum(int src, QRat c, int src2, std::string note) {
    TraceStep st;
    st.kind = TraceStep::Kind::Sum;
    st.src = src;
    st.scalar = std::move(c);
    st.src2 = src2;
    st.note = std::move(note);
    steps.push_back(std::move(st));
    return static_cast<int>(steps.size()) - 1;
}

// ---------------------------------------------------------------------------
// the separation engine
// ---------------------------------------------------------------------------

Elimination eliminate(const WeylElement& o, const std::vector<HMonomial>& phis,
                      const WeylKey& keep, bool exhaust) {
    const auto kept = o.terms.find(keep);
    if (kept == o.terms.end())
        throw std::invalid_argument("eliminate: kept key is not a summand of the input");

    const std::vector<int> keep_sig = signature_of(phis, keep);
    for (const auto& [key, coeff] : o.terms) {
        (void)coeff;
        if (key != keep && signature_of(phis, key) == keep_sig)
            throw NotSeparated("two summands share all eigenvalues of the separator family");
    }

    DerivationTrace tr;
    int cur = tr.add_input(o, "start");
    WeylElement work = o;
    WeylKey keep_cur = keep;
    QRat acc(1);

    for (const auto& phi : phis) {
        const int e0 = ad_eigenvalue(phi, keep_cur);
        std::set<int> others;
        for (const auto& [key, coeff] : work.terms) {
            (void)coeff;
            const int e = ad_eigenvalue(phi, key);
            if (e != e0) others.insert(e);
        }
        std::vector<int> kills;
        if (exhaust)
            kills.assign(others.begin(), others.end());
        else
            kills.push_back(others.empty() ? e0 + 1 : *others.begin());
        for (const int k : kills) {
            const WeylElement p = phi.element();
            work = multiply(p, work) - QRat::q_power(k) * multiply(work, p);
            cur = tr.add_commutator(phi, cur, k);
            acc = acc * (QRat::q_power(e0) - QRat::q_power(k));
            for (const auto& [node, e] : phi.exps)
                keep_cur[node_base(phi.n, node.first, node.second) + 2] += e;
        }
    }

    if (work.terms.size() != 1 || work.terms.begin()->first != keep_cur)
        throw NotSeparated("separator family leaves summands beyond the kept one");

    const QRat inv = acc.inverse();
    cur = tr.add_scalar(inv, cur, "normalize the sweep scalars");
    work *= inv;
    tr.result = cur;
    return {std::move(work), std::move(tr)};
}

Elimination eliminate(const WeylElement& o, const std::vector<HMonomial>& phis) {
    if (o.terms.empty()) throw std::invalid_argument("eliminate: zero element");
    const WeylKey* best = nullptr;
    std::vector<int> best_sig;
    for (const auto& [key, coeff] : o.terms) {
        (void)coeff;
        std::vector<int> sig = signature_of(phis, key);
        if (best == nullptr || sig > best_sig) {
            best = &key;
            best_sig = std::move(sig);
        }
    }
    return eliminate(o, phis, *best, false);
}

// ---------------------------------------------------------------------------
// the raising/lowering squeeze
// ---------------------------------------------------------------------------

namespace {

// validates that key is (diagonal) * letter at (i,j) * (diagonal)
void check_letter(const WeylKey& key, int n, int i, int j, bool raising,
                  const char* what) {
    for (int jj = 1; jj <= n; ++jj)
        for (int ii = 1; ii <= n; ++ii) {
            const int b = node_base(n, ii, jj);
            const int want_m = (raising && ii == i && jj == j) ? 1 : 0;
            const int want_d = (!raising && ii == i && jj == j) ? 1 : 0;
            if (key[b] != want_m || key[b + 1] != want_d)
                throw std::invalid_argument(
                    std::string(what) +
                    ": member is not a dressed single letter at the node");
        }
}

}  // namespace

Elimination lem_pm(const WeylElement& a, const WeylElement& b, int i, int j,
                   int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("lem_pm: sign must be +1 or -1");
    const int n = a.n;
    const WeylKey& ka = only_key(a, "lem_pm raising member");
    const WeylKey& kb = only_key(b, "lem_pm lowering member");
    check_letter(ka, n, i, j, true, "lem_pm");
    check_letter(kb, n, i, j, false, "lem_pm");

    WeylKey t(static_cast<std::size_t>(3) * n * n, 0);
    for (int jj = 1; jj <= n; ++jj)
        for (int ii = 1; ii <= n; ++ii) {
            const int bse = node_base(n, ii, jj);
            t[bse + 2] = ka[bse + 2] + kb[bse + 2];
        }
    t[node_base(n, i, j) + 2] += sign;
    const WeylElement target = weyl_monomial(n, t);

    const WeylElement ab = multiply(a, b);
    const WeylElement ba = multiply(b, a);

    std::map<WeylKey, int> dict;
    const auto tosv = [&dict](const WeylElement& e) {
        SparseVec v;
        for (const auto& [key, c] : e.terms) {
            const auto [it, inserted] = dict.try_emplace(key, static_cast<int>(dict.size()));
            (void)inserted;
            v[it->second] = c;
        }
        return v;
    };
    RowEchelon re;
    re.add(tosv(ab), SparseVec{{0, QRat(1)}});
    re.add(tosv(ba), SparseVec{{1, QRat(1)}});
    auto [residual, comb] = re.reduce(tosv(target));
    if (!residual.empty())
        throw NotSeparated("squeeze target lies outside the span of the two products");
    const QRat c1 = comb.count(0) ? comb.at(0) : QRat(0);
    const QRat c2 = comb.count(1) ? comb.at(1) : QRat(0);

    if (ab * c1 + ba * c2 != target)
        throw std::logic_error("lem_pm: exact solve verification failed");

    DerivationTrace tr;
    const int ia = tr.add_input(a, "dressed raising member");
    const int ib = tr.add_input(b, "dressed lowering member");
    const int pab = tr.add_product(ia, ib);
    const int pba = tr.add_product(ib, ia);
    const int sc = tr.add_scalar(c1, pab);
    tr.result = tr.add_sum(sc, c2, pba, "solve for the diagonal monomial");
    return {target, tr};
}

// ---------------------------------------------------------------------------
// generator sets
// ---------------------------------------------------------------------------

void GeneratorSet::add(std::string entry_name, WeylElement element,
                       std::string provenance) {
    entries.push_back({std::move(entry_name), std::move(element), std::move(provenance)});
}

const WeylElement* GeneratorSet::find(const std::string& entry_name) const {
    for (const auto& e : entries)
        if (e.name == entry_name) return &e.element;
    return nullptr;
}

GeneratorSet case_generators(DerivationCase kind, Form form, int n) {
    if (n < 1) throw std::invalid_argument("case_generators: n must be positive");
    GeneratorSet g;
    g.n = n;
    g.name = (kind == DerivationCase::RightRight ? "right multiplications"
                                                 : "left multiplications");
    g.name += " with transposed right multiplications";
    const int d_max = n + 1;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            MultOperator rm{i, j, Side::Plus, Chirality::RightMult};
            const WeylElement rme = fit_weyl_skeleton(rm, n, d_max);
            if (kind == DerivationCase::RightRight) {
                g.add(pos_name("rmult", i, j), rme,
                      "right multiplication by the (i,j) generator");
            } else {
                MultOperator lm{i, j, Side::Plus, Chirality::LeftMult};
                g.add(pos_name("lmult", i, j), fit_weyl_skeleton(lm, n, d_max),
                      "left multiplication by the (i,j) generator");
            }
            g.add(pos_name("dual", i, j),
                  element_transpose(rme, PairingForm{form, true}),
                  "normalized transpose of the right multiplication");
        }
    return g;
}

GeneratorSet kweyl_generators(int n) {
    if (n < 1) throw std::invalid_argument("kweyl_generators: n must be positive");
    GeneratorSet g;
    g.n = n;
    g.name = "kweyl";
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            g.add(pos_name("nwD", i, j),
                  multiply(v_nw(n, i, j),
                           multiply(weyl_H(n, i, j, -1), weyl_D(n, i, j))),
                  "northwest hook times H^{-1} D");
            g.add(pos_name("nwM", i, j), multiply(v_nw(n, i, j), weyl_M(n, i, j)),
                  "northwest hook times M");
            g.add(pos_name("seM", i, j), multiply(v_se(n, i, j), weyl_M(n, i, j)),
                  "southeast hook times M");
        }
    return g;
}

// ---------------------------------------------------------------------------
// case derivations
// ---------------------------------------------------------------------------

GeneratorSet CaseReport::members(const std::string& set_name) const {
    GeneratorSet g;
    g.n = n;
    g.name = set_name;
    for (const auto& e : elements)
        if (e.ok) g.add(e.name, e.derived, pos_name("derived at", e.i, e.j));
    return g;
}

const DerivedElement* CaseReport::find(const std::string& element_name) const {
    for (const auto& e : elements)
        if (e.name == element_name) return &e;
    return nullptr;
}

namespace {

struct ScriptState {
    CaseReport report;
    std::map<std::string, WeylElement> members;

    bool record(std::string name, int i, int j, WeylElement claimed,
                WeylElement derived, DerivationTrace tr) {
        const bool ok = claimed == derived;
        if (ok)
            members.emplace(name, derived);
        else
            report.failures.push_back(name + ": derived element differs from the claimed form");
        report.elements.push_back({name, i, j, std::move(claimed), std::move(derived),
                                   std::move(tr), ok});
        return ok;
    }

    void fail(std::string msg) { report.failures.push_back(std::move(msg)); }

    const WeylElement* member(const std::string& name) const {
        const auto it = members.find(name);
        return it == members.end() ? nullptr : &it->second;
    }
};

// a trace under construction together with its current value
struct Builder {
    DerivationTrace tr;
    int idx = -1;
    WeylElement val;

    explicit Builder(Elimination e) : tr(std::move(e.trace)), val(std::move(e.element)) {
        idx = tr.result;
    }

    // right-multiplies by a previously derived member (recorded by value)
    void times_member(const WeylElement& m, const std::string& note) {
        const int im = tr.add_input(m, note);
        idx = tr.add_product(idx, im);
        val = multiply(val, m);
        tr.result = idx;
    }
};

// strips the diagonal dressing of the single-summand element down to the
// target key, multiplying by inverse members named h_power_name(a, b, +-unit)
// from the state; returns false (and records a failure) if a member is
// missing.  unit is 1 or 2 and must divide every exponent difference.
bool strip_to(Builder& b, const WeylKey& want, int n, int unit, ScriptState& st,
              const std::string& who) {
    const WeylKey have = only_key(b.val, "strip_to");
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            const int base = node_base(n, i, j);
            int diff = have[base + 2] - want[base + 2];
            if (diff % unit != 0) {
                st.fail(who + ": dressing exponent not a multiple of the battery unit");
                return false;
            }
            while (diff != 0) {
                const int step = diff > 0 ? -unit : unit;
                const WeylElement* m = st.member(h_power_name(i, j, step));
                if (m == nullptr) {
                    st.fail(who + ": missing battery member " + h_power_name(i, j, step));
                    return false;
                }
                b.times_member(*m, h_power_name(i, j, step));
                diff += step;
            }
        }
    return true;
}

std::vector<std::pair<int, int>> se_support(int n, int i, int j) {
    std::vector<std::pair<int, int>> s;
    for (int k = i + 1; k <= n; ++k) s.push_back({k, j});
    for (int t = j + 1; t <= n; ++t) s.push_back({i, t});
    return s;
}

WeylElement dressed_lead(int n, int i, int j, const WeylElement& hook, int h_power,
                         bool raising) {
    WeylElement letter = raising ? weyl_M(n, i, j) : weyl_D(n, i, j);
    if (h_power != 0) letter = multiply(weyl_H(n, i, j, h_power), letter);
    return multiply(hook, letter);
}

void run_rr(Form X, int n, ScriptState& st) {
    const int g = gamma_exponent(X);
    std::map<std::pair<int, int>, WeylElement> rmult, dual;
    const int d_max = n + 1;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            MultOperator rm{i, j, Side::Plus, Chirality::RightMult};
            rmult[{i, j}] = fit_weyl_skeleton(rm, n, d_max);
            dual[{i, j}] = element_transpose(rmult[{i, j}], PairingForm{X, true});
        }

    std::vector<std::pair<int, int>> done;

    for (int i = n; i >= 1; --i)
        for (int j = n; j >= 1; --j) {
            const std::string here = pos_name("", i, j);
            try {
                if (X == FormL || X == FormK) {
                    const int unit = X == FormL ? 1 : 2;
                    std::vector<HMonomial> seps;
                    for (const auto& [a, b] : done) {
                        HMonomial phi;
                        phi.n = n;
                        phi.exps[{a, b}] = unit;
                        seps.push_back(std::move(phi));
                    }

                    // raising side
                    const WeylElement lead_m = dressed_lead(n, i, j, v_se(n, i, j), 0, true);
                    Builder bm(eliminate(rmult[{i, j}], seps, only_key(lead_m, "lead"), true));
                    const WeylElement claimed_m =
                        X == FormL ? weyl_M(n, i, j) : lead_m;
                    if (!strip_to(bm, only_key(claimed_m, "claim"), n, unit, st,
                                  "raise" + here))
                        continue;
                    const bool ok_m = st.record(pos_name("raise", i, j), i, j, claimed_m,
                                                bm.val, std::move(bm.tr));

                    // lowering side
                    const WeylElement lead_d = dressed_lead(n, i, j, v_se(n, i, j), g, false);
                    Builder bd(eliminate(dual[{i, j}], seps, only_key(lead_d, "lead"), true));
                    const WeylElement claimed_d =
                        X == FormL ? weyl_D(n, i, j) : lead_d;
                    if (!strip_to(bd, only_key(claimed_d, "claim"), n, unit, st,
                                  "lower" + here))
                        continue;
                    const bool ok_d = st.record(pos_name("lower", i, j), i, j, claimed_d,
                                                bd.val, std::move(bd.tr));
                    if (!ok_m || !ok_d) continue;

                    if (X == FormL) {
                        Elimination plus = lem_pm(claimed_m, claimed_d, i, j, +1);
                        st.record(h_power_name(i, j, 1), i, j, weyl_H(n, i, j, 1),
                                  plus.element, std::move(plus.trace));
                        Elimination minus = lem_pm(claimed_m, claimed_d, i, j, -1);
                        st.record(h_power_name(i, j, -1), i, j, weyl_H(n, i, j, -1),
                                  minus.element, std::move(minus.trace));
                    } else {
                        // K: squeeze gives (V^SE)^2 and (V^SE)^2 H^{-2}
                        const auto support = se_support(n, i, j);
                        Elimination minus = lem_pm(claimed_m, claimed_d, i, j, -1);
                        Builder bneg(std::move(minus));
                        WeylKey want(static_cast<std::size_t>(3) * n * n, 0);
                        want[node_base(n, i, j) + 2] = -2;
                        if (!strip_to(bneg, want, n, 2, st, "square" + here)) continue;
                        st.record(h_power_name(i, j, -2), i, j, weyl_H(n, i, j, -2),
                                  bneg.val, std::move(bneg.tr));

                        Elimination plus = lem_pm(claimed_m, claimed_d, i, j, +1);
                        for (const auto& [a, b] : support) {
                            if (st.member(h_power_name(a, b, 2)) != nullptr) continue;
                            Builder bsq(plus);  // copy: reused per missing square
                            WeylKey wantp(static_cast<std::size_t>(3) * n * n, 0);
                            wantp[node_base(n, a, b) + 2] = 2;
                            if (!strip_to(bsq, wantp, n, 2, st, "square" + here)) break;
                            st.record(h_power_name(a, b, 2), i, j, weyl_H(n, a, b, 2),
                                      bsq.val, std::move(bsq.tr));
                        }
                    }
                } else {
                    // form J: separators are the square hooks of the rows below
                    std::vector<HMonomial> seps;
                    WeylElement dressing = weyl_one(n);
                    for (int a = i + 1; a <= n; ++a) {
                        const WeylElement y = y_script(n, a, j);
                        seps.push_back(to_hmono(y, "square hook"));
                        dressing = multiply(dressing, y);
                    }

                    const WeylElement lead_m = dressed_lead(n, i, j, v_se(n, i, j), 0, true);
                    Elimination em = eliminate(rmult[{i, j}], seps, only_key(lead_m, "lead"));
                    const WeylElement claimed_m = multiply(lead_m, dressing);
                    const bool ok_m = st.record(pos_name("raise", i, j), i, j, claimed_m,
                                                em.element, std::move(em.trace));

                    const WeylElement lead_d = dressed_lead(n, i, j, v_se(n, i, j), g, false);
                    Elimination ed = eliminate(dual[{i, j}], seps, only_key(lead_d, "lead"));
                    const WeylElement claimed_d = multiply(lead_d, dressing);
                    const bool ok_d = st.record(pos_name("lower", i, j), i, j, claimed_d,
                                                ed.element, std::move(ed.trace));
                    if (!ok_m || !ok_d) continue;

                    Elimination minus = lem_pm(claimed_m, claimed_d, i, j, -1);
                    st.record(pos_name("Yscript", i, j), i, j, y_script(n, i, j),
                              minus.element, std::move(minus.trace));
                    Elimination plus = lem_pm(claimed_m, claimed_d, i, j, +1);
                    st.record(pos_name("YscriptH2", i, j), i, j,
                              multiply(y_script(n, i, j), weyl_H(n, i, j, 2)),
                              plus.element, std::move(plus.trace));
                }
            } catch (const NotSeparated& ex) {
                st.fail("position " + here + ": " + ex.what());
            } catch (const std::invalid_argument& ex) {
                st.fail("position " + here + ": " + ex.what());
            }
            done.push_back({i, j});
        }

    // the form-K square inventory: both signs everywhere except the corner,
    // whose positive square never appears in any southeast hook
    if (X == FormK) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const bool corner = i == 1 && j == 1;
                if (st.member(h_power_name(i, j, -2)) == nullptr)
                    st.fail(h_power_name(i, j, -2) + ": inverse square not derived");
                const bool have_plus = st.member(h_power_name(i, j, 2)) != nullptr;
                if (corner && have_plus)
                    st.fail("corner square H(1,1)^{+2} unexpectedly derived");
                if (!corner && !have_plus)
                    st.fail(h_power_name(i, j, 2) + ": square not derived");
            }
    }
}

void run_rl(Form X, int n, ScriptState& st) {
    const int g = gamma_exponent(X);
    std::map<std::pair<int, int>, WeylElement> lmult, dual;
    const int d_max = n + 1;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            MultOperator lm{i, j, Side::Plus, Chirality::LeftMult};
            lmult[{i, j}] = fit_weyl_skeleton(lm, n, d_max);
            MultOperator rm{i, j, Side::Plus, Chirality::RightMult};
            dual[{i, j}] = element_transpose(fit_weyl_skeleton(rm, n, d_max),
                                             PairingForm{X, true});
        }

    for (int j = n; j >= 1; --j)
        for (int i = 1; i <= n; ++i) {
            const std::string here = pos_name("", i, j);
            try {
                // raising side: separators are the recursive hooks above in
                // the same column
                std::vector<HMonomial> seps_m;
                WeylElement dress_m = weyl_one(n);
                for (int a = 1; a < i; ++a) {
                    const WeylElement v = v_script(n, a, j, X);
                    seps_m.push_back(to_hmono(v, "recursive hook"));
                    dress_m = multiply(dress_m, v);
                }
                const WeylElement lead_m = dressed_lead(n, i, j, v_nw(n, i, j), 0, true);
                Elimination em = eliminate(lmult[{i, j}], seps_m, only_key(lead_m, "lead"));
                const WeylElement claimed_m = multiply(lead_m, dress_m);
                const bool ok_m = st.record(pos_name("raise", i, j), i, j, claimed_m,
                                            em.element, std::move(em.trace));

                // lowering side: separators are the recursive hooks to the
                // right in the same row
                std::vector<HMonomial> seps_d;
                WeylElement dress_d = weyl_one(n);
                for (int b = j + 1; b <= n; ++b) {
                    const WeylElement v = v_script(n, i, b, X);
                    seps_d.push_back(to_hmono(v, "recursive hook"));
                    dress_d = multiply(dress_d, v);
                }
                const WeylElement lead_d = dressed_lead(n, i, j, v_se(n, i, j), g, false);
                Elimination ed = eliminate(dual[{i, j}], seps_d, only_key(lead_d, "lead"));
                const WeylElement claimed_d = multiply(lead_d, dress_d);
                const bool ok_d = st.record(pos_name("lower", i, j), i, j, claimed_d,
                                            ed.element, std::move(ed.trace));
                if (!ok_m || !ok_d) continue;

                Elimination minus = lem_pm(claimed_m, claimed_d, i, j, -1);
                st.record(pos_name("Vscript", i, j), i, j, v_script(n, i, j, X),
                          minus.element, std::move(minus.trace));
            } catch (const NotSeparated& ex) {
                st.fail("position " + here + ": " + ex.what());
            } catch (const std::invalid_argument& ex) {
                st.fail("position " + here + ": " + ex.what());
            }
        }
}

}  // namespace

CaseReport derive_case(DerivationCase kind, Form form, int n) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("derive_case: n must be 2 or 3");
    ScriptState st;
    st.report.kind = kind;
    st.report.form = form;
    st.report.n = n;
    if (kind == DerivationCase::RightRight)
        run_rr(form, n, st);
    else
        run_rl(form, n, st);
    return std::move(st.report);
}

// ---------------------------------------------------------------------------
// bounded span search
// ---------------------------------------------------------------------------

std::string SpanCertificate::str() const {
    std::ostringstream os;
    if (!found) {
        os << "not found within word length " << cap << " (span rank " << rank << ")";
        return os.str();
    }
    bool first = true;
    for (const auto& t : terms) {
        if (!first) os << " + ";
        os << "(" << t.coeff.str() << ")";
        for (const auto& w : t.word) os << " * " << w;
        if (t.word.empty()) os << " * 1";
        first = false;
    }
    return os.str();
}

SpanCertificate span_membership(const WeylElement& target,
                                const GeneratorSet& gens, int cap,
                                int degree_limit) {
    SpanCertificate cert;
    cert.cap = cap;
    const int n = target.n;

    std::map<WeylKey, int> dict;
    const auto tosv = [&dict](const WeylElement& e) {
        SparseVec v;
        for (const auto& [key, c] : e.terms) {
            const auto [it, inserted] = dict.try_emplace(key, static_cast<int>(dict.size()));
            (void)inserted;
            v[it->second] = c;
        }
        return v;
    };
    const auto raising_degree = [n](const WeylElement& e) {
        int d = 0;
        for (const auto& [key, c] : e.terms) {
            (void)c;
            int s = 0;
            for (int p = 0; p < n * n; ++p) s += key[3 * p] + key[3 * p + 1];
            d = std::max(d, s);
        }
        return d;
    };

    RowEchelon re;
    std::vector<std::vector<int>> words;  // augmentation id -> generator indices
    std::vector<WeylElement> frontier;
    std::vector<int> frontier_word;

    const WeylElement one = weyl_one(n);
    words.push_back({});
    re.add(tosv(one), SparseVec{{0, QRat(1)}});
    frontier.push_back(one);
    frontier_word.push_back(0);

    const auto try_finish = [&]() {
        auto [residual, comb] = re.reduce(tosv(target));
        if (!residual.empty()) return false;
        cert.found = true;
        for (const auto& [wid, c] : comb) {
            SpanCertificate::Term t;
            t.coeff = c;
            for (const int gi : words[wid]) t.word.push_back(gens.entries[gi].name);
            cert.terms.push_back(std::move(t));
        }
        return true;
    };

    for (int lvl = 0;; ++lvl) {
        cert.rank = re.rank();
        if (try_finish()) return cert;
        if (lvl == cap || frontier.empty()) break;

        std::vector<WeylElement> next;
        std::vector<int> next_word;
        for (std::size_t gi = 0; gi < gens.entries.size(); ++gi)
            for (std::size_t fi = 0; fi < frontier.size(); ++fi) {
                WeylElement p = multiply(gens.entries[gi].element, frontier[fi]);
                if (p.terms.empty()) continue;
                if (degree_limit >= 0 && raising_degree(p) > degree_limit) continue;
                const int wid = static_cast<int>(words.size());
                if (re.add(tosv(p), SparseVec{{wid, QRat(1)}})) {
                    std::vector<int> w;
                    w.reserve(words[frontier_word[fi]].size() + 1);
                    w.push_back(static_cast<int>(gi));
                    for (const int x : words[frontier_word[fi]]) w.push_back(x);
                    words.push_back(std::move(w));
                    next.push_back(std::move(p));
                    next_word.push_back(wid);
                }
            }
        frontier = std::move(next);
        frontier_word = std::move(next_word);
    }
    cert.rank = re.rank();
    return cert;
}

// ---------------------------------------------------------------------------
// the corner-square obstruction
// ---------------------------------------------------------------------------

int h11_grading(const WeylKey& key, int n) {
    const int b = node_base(n, 1, 1);
    return key[b + 1] + key[b + 2];
}

GradingReport h11_obstruction(const GeneratorSet& gens) {
    GradingReport r;
    r.target_grading = 2;
    const int n = gens.n;
    const auto gmax = [n](const WeylElement& e) {
        int m = 0;
        bool first = true;
        for (const auto& [key, c] : e.terms) {
            (void)c;
            const int v = h11_grading(key, n);
            m = first ? v : std::max(m, v);
            first = false;
        }
        return m;
    };

    int mx = 0;
    bool first = true;
    for (const auto& e : gens.entries) {
        const int v = gmax(e.element);
        mx = first ? v : std::max(mx, v);
        first = false;
    }
    r.max_generator_grading = mx;
    r.generators_bounded = mx <= 0;

    bool sub = true;
    for (const auto& x : gens.entries)
        for (const auto& y : gens.entries) {
            const WeylElement p = multiply(x.element, y.element);
            if (!p.terms.empty() && gmax(p) > gmax(x.element) + gmax(y.element)) {
                sub = false;
                break;
            }
        }
    r.products_subadditive = sub;

    std::ostringstream os;
    os << "max generator grading " << mx << "; target grading " << r.target_grading
       << "; products " << (sub ? "subadditive" : "NOT subadditive");
    r.detail = os.str();
    return r;
}

}  // namespace qweyl
