#include <benchmark/benchmark.h>

#include "qweyl/qrat.hpp"

namespace {

using namespace qweyl;

void BM_qrat_multiply(benchmark::State& state) {
    QRat a = qint(static_cast<int>(state.range(0)), QIntFlavor::BracketL);
    QRat b = QRat::gamma().inverse() * (QRat(1) - QRat::t_power(-2));
    for (auto _ : state) {
        QRat c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_qrat_multiply)->Arg(4)->Arg(16);

void BM_qrat_normalize_gcd(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    QRat num = (QRat::q_power(2 * k) - 1) * (QRat::t_power(2) - 1);
    QRat den = (QRat::q_power(2) - 1) * (QRat::t() - 1);
    for (auto _ : state) {
        QRat c = num / den;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_qrat_normalize_gcd)->Arg(4)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
