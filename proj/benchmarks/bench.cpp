#include <benchmark/benchmark.h>

#include "cofermion/composite.hpp"
#include "cofermion/deformation.hpp"
#include "cofermion/entanglement.hpp"
#include "cofermion/fock.hpp"
#include "cofermion/solutions.hpp"

using namespace cofermion;

static void BM_BuildConstituents(benchmark::State& state) {
  fock::ModeSpace space(static_cast<int>(state.range(0)), 2, 3);
  auto chi = deformation::StructureFunction::linear(5);
  for (auto _ : state) {
    auto ops = composite::make_constituents(space, chi);
    benchmark::DoNotOptimize(ops.a.front().create.mat(0, 0));
  }
}
BENCHMARK(BM_BuildConstituents)->Arg(2)->Arg(3);

static void BM_BuildCfOps(benchmark::State& state) {
  fock::ModeSpace space(2, 2, static_cast<int>(state.range(0)));
  auto chi = deformation::StructureFunction::linear(state.range(0) + 2);
  auto ops = composite::make_constituents(space, chi);
  Rng rng(1);
  auto fam = composite::random_family(2, 2, 2, rng);
  for (auto _ : state) {
    auto cf = composite::build_cf_ops(fam, ops);
    benchmark::DoNotOptimize(cf.front().A.mat(0, 0));
  }
}
BENCHMARK(BM_BuildCfOps)->Arg(3)->Arg(5);

static void BM_VerifyRealization(benchmark::State& state) {
  fock::ModeSpace space(2, 2, 3);
  auto chi = deformation::StructureFunction::linear(5);
  Rng rng(2);
  solutions::TwoModeParams p;
  p.theta = 0.3;
  p.U = random_unitary(2, rng);
  p.V = random_unitary(2, rng);
  auto fam = solutions::two_mode_family(p);
  composite::StateSet all{true, true, true};
  for (auto _ : state) {
    auto rep = composite::verify_realization(fam, chi, space, all);
    benchmark::DoNotOptimize(rep.residuals);
  }
}
BENCHMARK(BM_VerifyRealization);

static void BM_CreatorAnticommutator(benchmark::State& state) {
  fock::ModeSpace space(3, 3, 3);
  auto chi = deformation::StructureFunction::linear(5);
  auto ops = composite::make_constituents(space, chi);
  Rng rng(3);
  auto fam = composite::random_family(3, 3, 2, rng);
  for (auto _ : state) {
    Matrix m = composite::creator_anticommutator_matrix(fam, 0, 1, ops);
    benchmark::DoNotOptimize(m(0, 0));
  }
}
BENCHMARK(BM_CreatorAnticommutator);

static void BM_SchmidtSweep(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < 64; ++i) {
      double theta = -M_PI / 4 + (M_PI / 2) * i / 63.0;
      solutions::TwoModeParams p;
      p.theta = theta;
      auto fam = solutions::two_mode_family(p);
      acc += entanglement::entropy(entanglement::schmidt(fam[0]));
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SchmidtSweep);

static void BM_Su3ClosedForm(benchmark::State& state) {
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.05, M_PI / 2 - 0.05);
  for (auto _ : state) {
    double th1 = u(rng), th2 = u(rng), ph2 = u(rng);
    auto sh = solutions::shift_angles(th1, th2, ph2);
    auto sq = solutions::schmidt_sq_closed_form(1, th1, 0.1, sh);
    benchmark::DoNotOptimize(sq[0]);
  }
}
BENCHMARK(BM_Su3ClosedForm);

BENCHMARK_MAIN();
