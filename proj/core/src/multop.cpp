#include "qweyl/multop.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace qweyl {

namespace {

std::string op_label(const MultOperator& op) {
    std::ostringstream os;
    os << (op.chirality == Chirality::LeftMult ? "left" : "right") << "-mult("
       << op.i << "," << op.j << ")";
    return os.str();
}

// v == q^e for some integer e?
std::optional<int> as_q_power(const QRat& v) {
    if (v.is_zero() || v.depends_on_t()) return std::nullopt;
    if (v.num().terms.size() != 1 || v.den().terms.size() != 1) return std::nullopt;
    const int e = v.num().deg_q() - v.den().deg_q();
    if (v == QRat::q_power(e)) return e;
    return std::nullopt;
}

// all strictly increasing r-element sequences inside [lo, hi]
std::vector<std::vector<int>> increasing_sequences(int lo, int hi, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        const int still_needed = r - static_cast<int>(cur.size());
        for (int v = next; v + still_needed - 1 <= hi; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, lo);
    return out;
}

Mono displacement(int n, const PartitionSkeleton& s, const MultOperator& op) {
    Mono delta(n * n, 0);
    if (s.r == 0) {
        delta[alg_pos(n, op.i, op.j)] += 1;
    } else {
        for (int p : s.m_nodes) delta[p] += 1;
        for (int p : s.d_nodes) delta[p] -= 1;
    }
    return delta;
}

Mono mono_add(const Mono& a, const Mono& b) {
    Mono out = a;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += b[p];
    return out;
}

}  // namespace

OperatorMatrix mult_matrix(const MultOperator& op, int n, int d) {
    if (d < 0) throw std::invalid_argument("mult_matrix: negative degree");
    const AlgElement g = generator(n, op.side, op.i, op.j);
    OperatorMatrix out;
    for (const Mono& src : basis_of_degree(n, d)) {
        const AlgElement v = alg_monomial(n, op.side, src);
        const AlgElement prod =
            op.chirality == Chirality::LeftMult ? multiply(g, v) : multiply(v, g);
        for (const auto& [dst, c] : prod.terms) out[{dst, src}] = c;
    }
    return out;
}

std::vector<PartitionSkeleton> partition_skeletons(const MultOperator& op, int n) {
    const bool left = op.chirality == Chirality::LeftMult;
    const int alo = left ? 1 : op.i + 1;
    const int ahi = left ? op.i - 1 : n;
    const int blo = left ? 1 : op.j + 1;
    const int bhi = left ? op.j - 1 : n;

    std::vector<PartitionSkeleton> out;
    const int rmax = std::min(ahi - alo + 1, bhi - blo + 1);
    for (int r = 1; r <= rmax; ++r) {
        for (const auto& a : increasing_sequences(alo, ahi, r)) {
            for (const auto& b : increasing_sequences(blo, bhi, r)) {
                PartitionSkeleton s;
                s.r = r;
                s.a = a;
                s.b = b;
                if (left) {
                    // M_{i,b_1} prod_{k=1..r} D_{a_k, b_{r-k+1}} M_{a_k, b_{r-k+2}},
                    // with b_{r+1} = j
                    s.m_nodes.push_back(alg_pos(n, op.i, b[0]));
                    for (int k = 1; k <= r; ++k) {
                        s.d_nodes.push_back(alg_pos(n, a[k - 1], b[r - k]));
                        const int bcol = (k == 1) ? op.j : b[r - k + 1];
                        s.m_nodes.push_back(alg_pos(n, a[k - 1], bcol));
                    }
                } else {
                    // M_{a_r,j} prod_{x=0..r-1} D_{a_{r-x}, b_{x+1}} M_{a_{r-x-1}, b_{x+1}},
                    // with a_0 = i
                    s.m_nodes.push_back(alg_pos(n, a[r - 1], op.j));
                    for (int x = 0; x < r; ++x) {
                        s.d_nodes.push_back(alg_pos(n, a[r - x - 1], b[x]));
                        const int arow = (r - x - 1 == 0) ? op.i : a[r - x - 2];
                        s.m_nodes.push_back(alg_pos(n, arow, b[x]));
                    }
                }
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

WeylElement leading_term(const MultOperator& op, int n) {
    const WeylElement hook = op.chirality == Chirality::LeftMult ? v_nw(n, op.i, op.j)
                                                                 : v_se(n, op.i, op.j);
    return multiply(weyl_M(n, op.i, op.j), hook);
}

WeylElement fit_weyl_skeleton(const MultOperator& op, int n, int d_max) {
    const auto skeletons = partition_skeletons(op, n);
    int rmax = 0;
    for (const auto& s : skeletons) rmax = std::max(rmax, s.r);
    if (d_max < rmax + 1)
        throw std::invalid_argument("fit_weyl_skeleton: d_max too small to probe");

    // ground truth over all needed degrees
    OperatorMatrix oracle;
    for (int d = 0; d <= d_max; ++d) {
        for (auto& [key, c] : mult_matrix(op, n, d)) oracle.emplace(key, c);
    }

    // displacements must be pairwise distinct so entries decouple by skeleton
    std::vector<std::pair<Mono, const PartitionSkeleton*>> shifts;
    const PartitionSkeleton lead{};  // r = 0 stand-in
    shifts.emplace_back(displacement(n, lead, op), &lead);
    for (const auto& s : skeletons) shifts.emplace_back(displacement(n, s, op), &s);
    for (std::size_t x = 0; x < shifts.size(); ++x)
        for (std::size_t y = x + 1; y < shifts.size(); ++y)
            if (shifts[x].first == shifts[y].first)
                throw FitError("fit " + op_label(op) + ": ambiguous skeleton displacements");

    WeylElement result = weyl_zero(n);
    for (const auto& [delta, skel] : shifts) {
        // probe family: the indicator of the D-nodes, then each node bumped once
        Mono src0(n * n, 0);
        for (int p : skel->d_nodes) src0[p] = 1;

        auto probe = [&](const Mono& src) -> std::optional<QRat> {
            const auto it = oracle.find({mono_add(src, delta), src});
            if (it == oracle.end()) return std::nullopt;
            QRat val = it->second;
            for (int p : skel->d_nodes) val /= qint(src[p], QIntFlavor::BracketL);
            return val;
        };

        const auto f0 = probe(src0);
        if (!f0.has_value()) continue;  // skeleton not present; full check below

        WeylKey key(3 * n * n, 0);
        for (int p : skel->m_nodes) key[3 * p] += 1;
        for (int p : skel->d_nodes) key[3 * p + 1] += 1;
        if (skel->r == 0) key[3 * alg_pos(n, op.i, op.j)] += 1;

        int hshift = 0;  // accumulates sum_p h_p * (src0)_p; H acts on the source
        for (int p = 0; p < n * n; ++p) {
            Mono bumped = src0;
            bumped[p] += 1;
            const auto fp = probe(bumped);
            if (!fp.has_value())
                throw FitError("fit " + op_label(op) + ": oracle entry missing at probe");
            const auto h = as_q_power(*fp / *f0);
            if (!h.has_value())
                throw FitError("fit " + op_label(op) + ": probe ratio is not a q-power");
            key[3 * p + 2] = *h;
            hshift += *h * src0[p];
        }

        const QRat coeff = *f0 * QRat::q_power(-hshift);
        // structural claim: the scalar is gamma^r times a single q-power
        const QRat reduced = coeff / QRat::gamma().pow(skel->r);
        if (!as_q_power(reduced).has_value())
            throw FitError("fit " + op_label(op) + ": scalar is not gamma^r * q-power");
        result += weyl_monomial(n, key, coeff);
    }

    // entrywise re-verification against the engine on every fitted degree
    for (int d = 0; d <= d_max; ++d) {
        OperatorMatrix assembled = operator_matrix(result, basis_of_degree(n, d));
        if (assembled != mult_matrix(op, n, d)) {
            std::ostringstream os;
            os << "fit " << op_label(op) << ": fitted element disagrees with the engine"
               << " at degree " << d;
            throw FitError(os.str());
        }
    }
    return result;
}

ObservationReport check_observations(const WeylElement& fitted, const MultOperator& op) {
    const int n = fitted.n;
    const bool left = op.chirality == Chirality::LeftMult;
    ObservationReport report;

    const auto complain = [&](const WeylKey& key, const std::string& what) {
        std::ostringstream os;
        os << op_label(op) << ": " << what << " in term "
           << WeylElement{n, {{key, QRat(1)}}}.str();
        report.violations.push_back(os.str());
    };

    for (const auto& [key, c] : fitted.terms) {
        // identify the leading term: exactly one M, at (i,j), and no D
        bool leading = key[3 * alg_pos(n, op.i, op.j)] == 1;
        for (int p = 0; p < n * n && leading; ++p) {
            if (key[3 * p + 1] != 0) leading = false;
            if (key[3 * p] != 0 && p != alg_pos(n, op.i, op.j)) leading = false;
        }
        if (leading) continue;
        ++report.checked;

        std::vector<std::vector<int>> m_in_row(n + 1), d_in_row(n + 1);
        std::vector<std::vector<int>> m_in_col(n + 1), d_in_col(n + 1);
        for (int p = 0; p < n * n; ++p) {
            const int i = alg_row(n, p), j = alg_col(n, p);
            if (key[3 * p] > 1 || key[3 * p + 1] > 1) complain(key, "repeated M/D factor");
            if (key[3 * p] == 1) {
                m_in_row[i].push_back(j);
                m_in_col[j].push_back(i);
            }
            if (key[3 * p + 1] == 1) {
                d_in_row[i].push_back(j);
                d_in_col[j].push_back(i);
            }
        }

        auto check_line = [&](const std::vector<int>& ms, const std::vector<int>& ds,
                              bool exempt, const std::string& line) {
            if (exempt) {
                if (ms.size() != 1 || !ds.empty())
                    complain(key, "expected exactly one M and no D in " + line);
                return;
            }
            if (ms.empty() && ds.empty()) return;
            if (ms.size() != 1 || ds.size() != 1) {
                complain(key, "expected one M and one D in " + line);
                return;
            }
            const bool ordered = left ? ds[0] < ms[0] : ds[0] > ms[0];
            if (!ordered) complain(key, "M/D pair misordered in " + line);
        };

        for (int i = 1; i <= n; ++i)
            check_line(m_in_row[i], d_in_row[i], i == op.i, "row " + std::to_string(i));
        for (int j = 1; j <= n; ++j)
            check_line(m_in_col[j], d_in_col[j], j == op.j, "column " + std::to_string(j));
    }
    return report;
}

}  // namespace qweyl
