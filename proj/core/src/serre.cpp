#include "qweyl/serre.hpp"

#include <stdexcept>

namespace qweyl {

namespace {

void free_insert(FreeElement& e, FreeWord w, QRat c) {
    if (c.is_zero()) return;
    auto it = e.find(w);
    if (it == e.end()) {
        e.emplace(std::move(w), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

// mixed-radix encoding of a fixed-length word for the sparse-vector channel
int word_index(const FreeWord& w, int base) {
    long idx = 0;
    for (int letter : w) idx = idx * base + letter;
    if (idx > 2'000'000'000) throw std::runtime_error("word_index: slice too large");
    return static_cast<int>(idx);
}

int element_degree(const FreeElement& e) {
    if (e.empty()) return -1;
    size_t d = e.begin()->first.size();
    for (const auto& [w, c] : e)
        if (w.size() != d)
            throw DegreeMismatch("free element mixes path degrees");
    return static_cast<int>(d);
}

// E x - q^{-1} x E for the letter's generator
FreeElement ad_letter(int letter, const FreeElement& x) {
    FreeElement left = free_mul(free_letter(letter), x);
    free_add_scaled(left, -QRat::q_power(-1), free_mul(x, free_letter(letter)));
    return left;
}

}  // namespace

WeightVector path_root(int n, int letter) {
    if (letter < n - 1) return root_mu(n, n - 1 - letter);
    if (letter == n - 1) return root_beta(n);
    return root_nu(n, letter - n + 1);
}

std::string letter_str(int n, int letter) {
    if (letter < n - 1) return "mu" + std::to_string(n - 1 - letter);
    if (letter == n - 1) return "beta";
    return "nu" + std::to_string(letter - n + 1);
}

FreeElement free_letter(int letter) {
    FreeElement e;
    e.emplace(FreeWord{letter}, QRat(1));
    return e;
}

FreeElement free_mul(const FreeElement& a, const FreeElement& b) {
    FreeElement out;
    for (const auto& [wa, ca] : a) {
        for (const auto& [wb, cb] : b) {
            FreeWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            free_insert(out, std::move(w), ca * cb);
        }
    }
    return out;
}

FreeElement& free_add_scaled(FreeElement& a, const QRat& c, const FreeElement& b) {
    for (const auto& [w, v] : b) free_insert(a, w, c * v);
    return a;
}

std::vector<FreeElement> serre_relators(int n) {
    const int m = path_letters(n);
    const QRat two = QRat::q() + QRat::q_power(-1);
    std::vector<FreeElement> rel;
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            if (y == x + 1 || x == y + 1) {
                // x^2 y - (q + q^{-1}) x y x + y x^2, one per ordered adjacent pair
                FreeElement r;
                free_insert(r, FreeWord{x, x, y}, QRat(1));
                free_insert(r, FreeWord{x, y, x}, -two);
                free_insert(r, FreeWord{y, x, x}, QRat(1));
                rel.push_back(std::move(r));
            } else if (x < y) {
                FreeElement r;
                free_insert(r, FreeWord{x, y}, QRat(1));
                free_insert(r, FreeWord{y, x}, QRat(-1));
                rel.push_back(std::move(r));
            }
        }
    }
    return rel;
}

FreeElement z_generator(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("z_generator: index out of range");
    FreeElement z = free_letter(n - 1);  // beta
    for (int k = 1; k < i; ++k) z = ad_letter(n - 1 - k, z);      // mu_k
    for (int l = 1; l < j; ++l) z = ad_letter(n - 1 + l, z);      // nu_l
    return z;
}

SerreQuotient::SerreQuotient(int n) : n_(n), relators_(serre_relators(n)) {}

RowEchelon& SerreQuotient::slice(int d) {
    auto it = slices_.find(d);
    if (it != slices_.end()) return it->second;

    const int m = path_letters(n_);
    RowEchelon ech;
    // every x * relator * y with matching total degree
    std::vector<std::vector<FreeWord>> words(static_cast<size_t>(d) + 1);
    words[0] = {FreeWord{}};
    for (int len = 1; len <= d; ++len)
        for (const auto& w : words[static_cast<size_t>(len - 1)])
            for (int letter = 0; letter < m; ++letter) {
                FreeWord w2 = w;
                w2.push_back(letter);
                words[static_cast<size_t>(len)].push_back(std::move(w2));
            }
    for (const auto& r : relators_) {
        const int dr = static_cast<int>(r.begin()->first.size());
        if (dr > d) continue;
        for (int a = 0; a + dr <= d; ++a) {
            const int b = d - dr - a;
            for (const auto& wx : words[static_cast<size_t>(a)]) {
                for (const auto& wy : words[static_cast<size_t>(b)]) {
                    SparseVec row;
                    for (const auto& [ws, cs] : r) {
                        FreeWord w = wx;
                        w.insert(w.end(), ws.begin(), ws.end());
                        w.insert(w.end(), wy.begin(), wy.end());
                        row[word_index(w, m)] += cs;
                    }
                    ech.add(std::move(row));
                }
            }
        }
    }
    return slices_.emplace(d, std::move(ech)).first->second;
}

FreeElement SerreQuotient::reduce(const FreeElement& e) {
    int d = element_degree(e);
    if (d < 0) return {};
    const int m = path_letters(n_);
    SparseVec v;
    std::map<int, FreeWord> decode;
    for (const auto& [w, c] : e) {
        int idx = word_index(w, m);
        v[idx] += c;
        decode.emplace(idx, w);
    }
    SparseVec residual = slice(d).reduce(std::move(v)).first;
    FreeElement out;
    for (const auto& [idx, c] : residual) {
        if (c.is_zero()) continue;
        auto it = decode.find(idx);
        FreeWord w;
        if (it != decode.end()) {
            w = it->second;
        } else {
            // reconstruct the word from the index
            w.assign(static_cast<size_t>(d), 0);
            int rem = idx;
            for (int k = d - 1; k >= 0; --k) {
                w[static_cast<size_t>(k)] = rem % m;
                rem /= m;
            }
        }
        out.emplace(std::move(w), c);
    }
    return out;
}

long SerreQuotient::quotient_dim(int d) {
    long full = 1;
    for (int k = 0; k < d; ++k) full *= path_letters(n_);
    return full - slice(d).rank();
}

long positive_part_dim(int n, int d) {
    const int m = path_letters(n);
    // heights of positive roots of A_m: m - h + 1 roots of height h
    std::vector<long> dim(static_cast<size_t>(d) + 1, 0);
    dim[0] = 1;
    for (int h = 1; h <= m; ++h) {
        int count = m - h + 1;
        for (int rep = 0; rep < count; ++rep)
            for (int k = h; k <= d; ++k)
                dim[static_cast<size_t>(k)] += dim[static_cast<size_t>(k - h)];
    }
    return dim[static_cast<size_t>(d)];
}

std::vector<SerreCertItem> certify_pbw_instances(int n, int max_degree) {
    SerreQuotient quot(n);
    std::vector<SerreCertItem> items;

    // free-algebra image of a PBW monomial: ascending-position letter product
    auto free_image = [&](const Mono& mono) {
        FreeElement img;
        img.emplace(FreeWord{}, QRat(1));
        for (size_t p = 0; p < mono.size(); ++p)
            for (int rep = 0; rep < mono[p]; ++rep)
                img = free_mul(img, z_generator(n, alg_row(n, static_cast<int>(p)),
                                                alg_col(n, static_cast<int>(p))));
        return img;
    };

    for (int gi = 1; gi <= n; ++gi)
        for (int gj = 1; gj <= n; ++gj)
            for (int xi = 1; xi <= n; ++xi)
                for (int xj = 1; xj <= n; ++xj) {
                    SerreCertItem item{gi, gj, xi, xj, ""};
                    const int deg = (gi + gj - 1) + (xi + xj - 1);
                    if (deg > max_degree) {
                        item.status = "skipped";
                        items.push_back(item);
                        continue;
                    }
                    AlgElement prod =
                        multiply(generator(n, Side::Plus, gi, gj),
                                 generator(n, Side::Plus, xi, xj));
                    FreeElement instance =
                        free_mul(z_generator(n, gi, gj), z_generator(n, xi, xj));
                    for (const auto& [m, c] : prod.terms)
                        free_add_scaled(instance, -c, free_image(m));
                    item.status = quot.reduce(instance).empty() ? "pass" : "fail";
                    items.push_back(item);
                }
    return items;
}

}  // namespace qweyl
