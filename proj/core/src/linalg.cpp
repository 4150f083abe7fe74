#include "qweyl/linalg.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace qweyl {

SparseVec& axpy(SparseVec& y, const QRat& a, const SparseVec& x) {
    if (a.is_zero()) return y;
    for (const auto& [k, c] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            QRat v = a * c;
            if (!v.is_zero()) y.emplace(k, std::move(v));
        } else {
            it->second += a * c;
            if (it->second.is_zero()) y.erase(it);
        }
    }
    return y;
}

void scale(SparseVec& v, const QRat& a) {
    if (a.is_zero()) {
        v.clear();
        return;
    }
    for (auto& [k, c] : v) c *= a;
}

bool RowEchelon::add(SparseVec v, SparseVec aug) {
    // forward elimination against existing pivots
    for (auto it = v.begin(); it != v.end();) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        QRat factor = -it->second;
        axpy(v, factor, row->second.first);
        axpy(aug, factor, row->second.second);
        it = v.upper_bound(row->first);
    }
    if (v.empty()) return false;

    // normalize pivot to 1
    QRat inv = v.begin()->second.inverse();
    scale(v, inv);
    scale(aug, inv);
    int pivot = v.begin()->first;

    // back-substitute into rows that mention the new pivot (reduced REF)
    for (auto& [p, row] : rows_) {
        auto hit = row.first.find(pivot);
        if (hit == row.first.end()) continue;
        QRat factor = -hit->second;
        axpy(row.first, factor, v);
        axpy(row.second, factor, aug);
    }
    rows_.emplace(pivot, std::make_pair(std::move(v), std::move(aug)));
    return true;
}

std::pair<SparseVec, SparseVec> RowEchelon::reduce(SparseVec v) const {
    SparseVec comb;
    for (auto it = v.begin(); it != v.end();) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        QRat factor = it->second;
        axpy(comb, factor, row->second.second);
        axpy(v, -factor, row->second.first);
        it = v.upper_bound(row->first);
    }
    return {std::move(v), std::move(comb)};
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (jobs <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    jobs = std::min(jobs, count);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mtx;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int default_jobs() {
    if (const char* env = std::getenv("QWEYL_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

}  // namespace qweyl
