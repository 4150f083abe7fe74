#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qweyl/linalg.hpp"
#include "qweyl/weyl.hpp"

using namespace qweyl;

namespace {

WeylElement node_mono(int n, int i, int j, int m, int d, int h, QRat c = QRat(1)) {
    WeylKey key(3 * n * n, 0);
    const int p = alg_pos(n, i, j);
    key[3 * p] = m;
    key[3 * p + 1] = d;
    key[3 * p + 2] = h;
    return weyl_monomial(n, key, std::move(c));
}

WeylElement random_weyl(std::mt19937& rng, int n, int nterms) {
    std::uniform_int_distribution<int> md(0, 2), hh(-2, 2), cc(-3, 3);
    WeylElement e = weyl_zero(n);
    for (int t = 0; t < nterms; ++t) {
        WeylKey key(3 * n * n, 0);
        for (int p = 0; p < n * n; ++p) {
            key[3 * p] = md(rng);
            key[3 * p + 1] = md(rng);
            key[3 * p + 2] = hh(rng);
        }
        int c = cc(rng);
        e += weyl_monomial(n, key, QRat(c == 0 ? 1 : c));
    }
    return e;
}

std::map<Mono, QRat> apply_state(const WeylElement& op, const std::map<Mono, QRat>& state) {
    std::map<Mono, QRat> out;
    for (const auto& [mono, c] : state) {
        for (const auto& [dst, c2] : act(op, mono)) {
            auto it = out.find(dst);
            if (it == out.end()) {
                out.emplace(dst, c * c2);
            } else {
                it->second += c * c2;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("single-node defining relations") {
    const auto M = weyl_M(1, 1, 1);
    const auto D = weyl_D(1, 1, 1);
    const auto H = weyl_H(1, 1, 1);
    const auto Hi = weyl_H(1, 1, 1, -1);

    CHECK(multiply(D, M) - QRat::q() * multiply(M, D) == Hi);
    CHECK(multiply(D, M) - QRat::q_power(-1) * multiply(M, D) == H);
    CHECK(multiply(H, D) == QRat::q_power(-1) * multiply(D, H));
    CHECK(multiply(H, M) == QRat::q() * multiply(M, H));

    // frozen normal form: D M = gamma^{-1} (q H - q^{-1} H^{-1})
    const QRat gi = QRat::gamma().inverse();
    WeylElement expect = weyl_zero(1);
    expect += (QRat::q() * gi) * H;
    expect += (QRat(1) - QRat::q() * gi) * Hi;
    CHECK(multiply(D, M) == expect);
    CHECK(multiply(D, M) == gi * (QRat::q() * H - QRat::q_power(-1) * Hi));

    // M D itself contracts
    CHECK(multiply(M, D) == gi * (H - Hi));
    CHECK(weyl_monomial(1, {1, 1, 0}) == gi * (H - Hi));
    CHECK(multiply(H, Hi) == weyl_one(1));
}

TEST_CASE("rescaled lowering operators") {
    const auto M = weyl_M(1, 1, 1);
    const auto D = weyl_D(1, 1, 1);
    const auto H = weyl_H(1, 1, 1);
    const auto Hi = weyl_H(1, 1, 1, -1);
    const auto one = weyl_one(1);
    const auto Dbb = weyl_Dbb(1, 1, 1);
    const auto Dsc = weyl_Dsc(1, 1, 1);

    CHECK(Dbb == multiply(H, D));
    CHECK(Dbb == QRat::q_power(-1) * multiply(D, H));
    CHECK(Dsc == multiply(Hi, D));
    CHECK(Dsc == QRat::q() * multiply(D, Hi));

    // [[.]]-normalized family
    CHECK(multiply(Dbb, M) - QRat::q_power(2) * multiply(M, Dbb) == one);
    CHECK(multiply(Dbb, M) - multiply(M, Dbb) == weyl_H(1, 1, 1, 2));
    CHECK(multiply(H, Dbb) == QRat::q_power(-1) * multiply(Dbb, H));

    // {{.}}-normalized family
    CHECK(multiply(Dsc, M) - QRat::q_power(-2) * multiply(M, Dsc) == one);
    CHECK(multiply(Dsc, M) - multiply(M, Dsc) == weyl_H(1, 1, 1, -2));
    CHECK(multiply(H, Dsc) == QRat::q_power(-1) * multiply(Dsc, H));
}

TEST_CASE("distinct nodes commute") {
    const int n = 2;
    std::vector<WeylElement> at11 = {weyl_M(n, 1, 1), weyl_D(n, 1, 1), weyl_H(n, 1, 1)};
    std::vector<WeylElement> at22 = {weyl_M(n, 2, 2), weyl_D(n, 2, 2), weyl_H(n, 2, 2, -1)};
    for (const auto& a : at11)
        for (const auto& b : at22) CHECK(multiply(a, b) == multiply(b, a));
    CHECK(multiply(weyl_M(n, 1, 2), weyl_D(n, 2, 1)) == multiply(weyl_D(n, 2, 1), weyl_M(n, 1, 2)));
}

TEST_CASE("action on exponents") {
    const auto M = weyl_M(1, 1, 1);
    const auto D = weyl_D(1, 1, 1);
    const auto Dbb = weyl_Dbb(1, 1, 1);
    const auto Dsc = weyl_Dsc(1, 1, 1);

    for (int a = 0; a <= 6; ++a) {
        const Mono src{a};
        auto up = act(M, src);
        REQUIRE(up.size() == 1);
        CHECK(up.at(Mono{a + 1}) == QRat(1));

        auto down = act(D, src);
        if (a == 0) {
            CHECK(down.empty());
        } else {
            REQUIRE(down.size() == 1);
            CHECK(down.at(Mono{a - 1}) == qint(a, QIntFlavor::BracketL));
        }

        for (int h : {1, -1, 3}) {
            auto diag = act(weyl_H(1, 1, 1, h), src);
            REQUIRE(diag.size() == 1);
            CHECK(diag.at(src) == QRat::q_power(h * a));
        }

        auto bb = act(Dbb, src);
        auto sc = act(Dsc, src);
        if (a == 0) {
            CHECK(bb.empty());
            CHECK(sc.empty());
        } else {
            CHECK(bb.at(Mono{a - 1}) == qint(a, QIntFlavor::BracketJ));
            CHECK(sc.at(Mono{a - 1}) == qint(a, QIntFlavor::BracketK));
        }
    }

    // iterated lowering picks up q-factorials
    CHECK(act(weyl_pow(Dbb, 4), Mono{4}).at(Mono{0}) == qfactorial(4, QIntFlavor::BracketJ));
    CHECK(act(weyl_pow(Dsc, 3), Mono{3}).at(Mono{0}) == qfactorial(3, QIntFlavor::BracketK));
    CHECK(act(weyl_pow(D, 5), Mono{5}).at(Mono{0}) == qfactorial(5, QIntFlavor::BracketL));

    CHECK_THROWS_AS(act(M, Mono{1, 2}), std::invalid_argument);
}

TEST_CASE("multiplication matches composition of actions") {
    std::mt19937 rng(615001);
    for (int n : {1, 2}) {
        std::vector<Mono> sources;
        if (n == 1) {
            for (int a = 0; a <= 5; ++a) sources.push_back(Mono{a});
        } else {
            std::uniform_int_distribution<int> ed(0, 2);
            for (int s = 0; s < 6; ++s) {
                Mono mono(n * n);
                for (auto& e : mono) e = ed(rng);
                sources.push_back(mono);
            }
        }
        for (int trial = 0; trial < 6; ++trial) {
            const WeylElement X = random_weyl(rng, n, 3);
            const WeylElement Y = random_weyl(rng, n, 3);
            const WeylElement XY = multiply(X, Y);
            for (const Mono& src : sources) {
                std::map<Mono, QRat> via_product = apply_state(XY, {{src, QRat(1)}});
                std::map<Mono, QRat> via_compose = apply_state(X, apply_state(Y, {{src, QRat(1)}}));
                CHECK(via_product == via_compose);
            }
            // canonical form: no key mixes M and D at a node
            for (const auto& [key, c] : XY.terms) {
                for (std::size_t p = 0; p < key.size(); p += 3)
                    CHECK((key[p] == 0 || key[p + 1] == 0));
            }
        }
    }
}

TEST_CASE("canonical atoms act independently") {
    const std::vector<std::pair<int, int>> shapes = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}};
    std::vector<Mono> sources;
    for (int a = 0; a <= 12; ++a) sources.push_back(Mono{a});

    RowEchelon re;
    std::map<std::pair<Mono, Mono>, int> idx;
    int next_index = 0;
    int count = 0;
    for (const auto& [m, d] : shapes) {
        for (int h = -2; h <= 2; ++h) {
            const auto mat = operator_matrix(weyl_monomial(1, {m, d, h}), sources);
            SparseVec v;
            for (const auto& [key, c] : mat) {
                auto [it, inserted] = idx.emplace(key, next_index);
                if (inserted) ++next_index;
                v[it->second] = c;
            }
            CHECK(re.add(v));
            ++count;
        }
    }
    CHECK(count == 25);
    CHECK(re.rank() == 25);
}

TEST_CASE("diagonal conjugation law") {
    // for a pure H-monomial phi, phi X = q^k X phi with k = sum phi_ij (m_ij - d_ij)
    std::mt19937 rng(77002);
    const int n = 2;
    std::uniform_int_distribution<int> hd(-2, 2), md(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<std::pair<int, int>, int> exps;
        WeylKey key(3 * n * n, 0);
        int k = 0;
        for (int p = 0; p < n * n; ++p) {
            const int i = alg_row(n, p), j = alg_col(n, p);
            exps[{i, j}] = hd(rng);
            int m = md(rng), d = md(rng);
            if (m > 0 && d > 0) (trial % 2 ? m : d) = 0;
            key[3 * p] = m;
            key[3 * p + 1] = d;
            key[3 * p + 2] = hd(rng);
            k += exps[{i, j}] * (m - d);
        }
        const WeylElement phi = h_monomial(n, exps);
        const WeylElement X = weyl_monomial(n, key);
        CHECK(multiply(phi, X) == QRat::q_power(k) * multiply(X, phi));
    }
}

TEST_CASE("power helper") {
    std::mt19937 rng(9003);
    const WeylElement X = random_weyl(rng, 1, 2);
    WeylElement acc = weyl_one(1);
    for (int k = 0; k <= 4; ++k) {
        CHECK(weyl_pow(X, k) == acc);
        acc = multiply(acc, X);
    }
    CHECK_THROWS_AS(weyl_pow(X, -1), std::invalid_argument);
}

TEST_CASE("operator matrices") {
    const auto Dbb = weyl_Dbb(1, 1, 1);
    std::vector<Mono> sources;
    for (int a = 0; a <= 3; ++a) sources.push_back(Mono{a});
    const auto mat = operator_matrix(Dbb, sources);
    CHECK(mat.size() == 3);
    for (int a = 1; a <= 3; ++a)
        CHECK(mat.at({Mono{a - 1}, Mono{a}}) == qint(a, QIntFlavor::BracketJ));
}

TEST_CASE("diagonal toolkit elements") {
    CHECK(alpha_bias(FormJ) == 0);
    CHECK(alpha_bias(FormL) == -1);
    CHECK(alpha_bias(FormK) == -2);

    CHECK(v_nw(2, 1, 1) == weyl_one(2));
    CHECK(v_nw(2, 2, 2) == h_monomial(2, {{{1, 2}, 1}, {{2, 1}, 1}}));
    CHECK(v_se(2, 2, 2) == weyl_one(2));
    CHECK(v_se(2, 1, 1) == h_monomial(2, {{{2, 1}, 1}, {{1, 2}, 1}}));
    CHECK(v_nw(3, 2, 2) == h_monomial(3, {{{1, 2}, 1}, {{2, 1}, 1}}));
    CHECK(v_se(3, 2, 2) == h_monomial(3, {{{3, 2}, 1}, {{2, 3}, 1}}));

    CHECK(v_form(2, 1, 1, FormJ) == multiply(v_nw(2, 1, 1), v_se(2, 1, 1)));
    CHECK(v_form(2, 1, 1, FormL) ==
          h_monomial(2, {{{2, 1}, 1}, {{1, 2}, 1}, {{1, 1}, -1}}));
    CHECK(v_form(2, 1, 1, FormK) ==
          h_monomial(2, {{{2, 1}, 1}, {{1, 2}, 1}, {{1, 1}, -2}}));
}

TEST_CASE("nested diagonal elements: last column and first row") {
    for (int n : {2, 3}) {
        for (Form X : {FormJ, FormL, FormK}) {
            for (int i = 1; i <= n; ++i) {
                WeylElement expect = weyl_one(n);
                for (int s = 1; s < i; ++s)
                    expect = multiply(expect, weyl_pow(v_form(n, s, n, X), 1 << (i - 1 - s)));
                expect = multiply(expect, v_form(n, i, n, X));
                CHECK(v_script(n, i, n, X) == expect);
            }
            for (int j = 1; j <= n; ++j) {
                WeylElement expect = weyl_one(n);
                for (int s = 1; s <= n - j; ++s)
                    expect = multiply(expect, weyl_pow(v_form(n, 1, j + s, X), 1 << (s - 1)));
                expect = multiply(expect, v_form(n, 1, j, X));
                CHECK(v_script(n, 1, j, X) == expect);
            }
        }
    }
}

TEST_CASE("southeast ladder elements") {
    CHECK(y_script(1, 1, 1) == weyl_one(1));

    CHECK(y_script(2, 2, 2) == weyl_one(2));
    CHECK(y_script(2, 2, 1) == h_monomial(2, {{{2, 2}, 2}}));
    CHECK(y_script(2, 1, 2) == h_monomial(2, {{{2, 2}, 2}}));
    CHECK(y_script(2, 1, 1) ==
          h_monomial(2, {{{2, 1}, 2}, {{1, 2}, 2}, {{2, 2}, 4}}));

    // bottom row: squares of the southeast row tails
    for (int j = 1; j <= 3; ++j) CHECK(y_script(3, 3, j) == weyl_pow(v_se(3, 3, j), 2));

    // one step up the ladder (n = 3, i = 2) in closed form
    auto closed_row2 = [](int j) {
        std::map<std::pair<int, int>, int> exps;
        exps[{3, j}] += 2;
        for (int y = j + 1; y <= 3; ++y) exps[{2, y}] += 2;
        for (int y = j + 1; y <= 3; ++y) exps[{3, y}] += 4;
        return h_monomial(3, exps);
    };
    for (int j = 1; j <= 3; ++j) CHECK(y_script(3, 2, j) == closed_row2(j));

    // the two-step element is genuinely nested: its (3,1) exponent is 6, not
    // the 2 a single-pass product of row tails would give
    const WeylElement y11 = y_script(3, 1, 1);
    REQUIRE(y11.terms.size() == 1);
    const WeylKey key = y11.terms.begin()->first;
    auto hexp = [&](int i, int j) { return key[3 * alg_pos(3, i, j) + 2]; };
    CHECK(hexp(3, 1) == 6);
    CHECK(y11 == h_monomial(3, {{{2, 1}, 2},
                                {{3, 1}, 6},
                                {{1, 2}, 2},
                                {{1, 3}, 2},
                                {{2, 2}, 4},
                                {{2, 3}, 4},
                                {{3, 2}, 12},
                                {{3, 3}, 12}}));
    const WeylElement single_pass = h_monomial(3, {{{2, 1}, 2},
                                                   {{3, 1}, 2},
                                                   {{1, 2}, 2},
                                                   {{1, 3}, 2},
                                                   {{2, 2}, 4},
                                                   {{2, 3}, 4},
                                                   {{3, 2}, 12},
                                                   {{3, 3}, 12}});
    CHECK(y11 != single_pass);
}

TEST_CASE("rendering and validation") {
    CHECK(weyl_zero(1).str() == "0");
    CHECK(weyl_one(1).str() == "(1)");
    CHECK(weyl_M(1, 1, 1).str() == "M[1,1]");
    CHECK(node_mono(2, 2, 1, 2, 0, -1).str() == "M[2,1]^2*H[2,1]^-1");
    CHECK((QRat(3) * weyl_D(1, 1, 1)).str() == "(3)*D[1,1]");
    CHECK(weyl_Dbb(1, 1, 1).str() == "((1)/(q))*D[1,1]*H[1,1]");
    CHECK(weyl_Dsc(1, 1, 1).str() == "(q)*D[1,1]*H[1,1]^-1");

    CHECK_THROWS_AS(weyl_monomial(1, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(weyl_monomial(1, {-1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(weyl_H(1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(multiply(weyl_one(1), weyl_one(2)), std::invalid_argument);
}
