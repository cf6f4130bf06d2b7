#include <benchmark/benchmark.h>
#include <omp.h>

#include <string>
#include <vector>

#include "k3/monodromy.hpp"
#include "k3/rational.hpp"
#include "k3/real.hpp"

using namespace k3;

namespace {

// Mellin-Barnes quadrature over the panel nodes; Arg(0): 0 serial, 1 parallel.
void BM_MellinBarnes(benchmark::State& st) {
  HypergeometricParams p{{ratio(1, 4), ratio(1, 2), ratio(3, 4)}, 1};
  MellinBarnesOptions opt;
  opt.parallel = st.range(0) != 0;
  mpfr_prec_t bits = digits_to_bits(opt.digits);
  Complex t(Real(std::string("-0.1"), bits));
  for (auto _ : st) benchmark::DoNotOptimize(mellin_barnes_eval(p, t, -p.rho[0] / 2, opt));
}

// Transport along the three standard loops, one loop per thread when parallel.
void BM_OdeLoops(benchmark::State& st) {
  HypergeometricParams p = HypergeometricParams::mirror(static_cast<int>(st.range(1)));
  std::vector<Loop> loops{Loop::standard(LoopKind::around_zero), Loop::standard(LoopKind::around_1overC),
                          Loop::standard(LoopKind::around_infinity)};
  OdeOptions opt;
  opt.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(ode_transport_all(p, loops, opt));
}

// Many independent evaluations; the outer loop is the parallel region.
void BM_MultiPoint(benchmark::State& st) {
  HypergeometricParams p = HypergeometricParams::mirror(3);
  mpfr_prec_t bits = digits_to_bits(40);
  std::vector<Complex> pts;
  for (int k = 1; k <= 32; ++k) pts.emplace_back(Real(ratio(k, 64), bits));
  bool par = st.range(0) != 0;
  for (auto _ : st) {
    std::vector<Complex> out(pts.size(), Complex(bits));
#pragma omp parallel for schedule(dynamic) if (par)
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) out[i] = hypergeometric_eval(p.rho, pts[i], bits);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_MellinBarnes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OdeLoops)->Args({0, 2})->Args({1, 2})->Args({0, 4})->Args({1, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
