// Sparse exact linear algebra over Q(q, t), just enough for the rest of the
// library: incremental reduced row echelon form with an augmentation channel,
// so that membership tests come with explicit coordinates in the input spans.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qweyl/qrat.hpp"

namespace qweyl {

using SparseVec = std::map<int, QRat>;

SparseVec& axpy(SparseVec& y, const QRat& a, const SparseVec& x);  // y += a*x
void scale(SparseVec& v, const QRat& a);

// Incremental reduced row echelon form.  Rows are inserted one at a time;
// each kept row remembers an augmentation vector (its expression in terms of
// the inserted rows), which `reduce` uses to report combinations.
class RowEchelon {
public:
    // Inserts a row; aug is caller-defined bookkeeping carried along linearly.
    // Returns true if the row enlarged the span (i.e. was not already in it).
    bool add(SparseVec v, SparseVec aug = {});

    // Reduces v against the current span.  Returns the (residual, combination)
    // pair: residual empty means v was in the span and the combination gives
    // v = sum_i comb_i * row_i in terms of the augmentation channel.
    std::pair<SparseVec, SparseVec> reduce(SparseVec v) const;

    bool contains(const SparseVec& v) const { return reduce(v).first.empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    // pivot column -> (row with pivot coefficient 1, its augmentation)
    std::map<int, std::pair<SparseVec, SparseVec>> rows_;
};

// Runs fn(i) for i in [0, count), distributing over `jobs` threads.
// jobs <= 1 runs inline.  Exceptions propagate (first one wins).
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

int default_jobs();  // from QWEYL_JOBS if set, else 1

}  // namespace qweyl
