#include <benchmark/benchmark.h>

#include "lieherm/catalog_io.hpp"
#include "lieherm/chern_geometry.hpp"
#include "lieherm/lie_structure.hpp"
#include "lieherm/metric_search.hpp"
#include "lieherm/theorem_checker.hpp"

namespace {

lieherm::RealLieAlgebra catalog_algebra(const char* name) {
  return lieherm::to_real_algebra(lieherm::builtin(name));
}

void BM_BuildFrameAndExtract(benchmark::State& state, const char* name) {
  const lieherm::RealLieAlgebra spec = catalog_algebra(name);
  for (auto _ : state) {
    const lieherm::UnitaryFrame frame = lieherm::build_unitary_frame(spec);
    lieherm::CDTensors cd = lieherm::extract_structure_constants(spec, frame);
    benchmark::DoNotOptimize(cd);
  }
}
BENCHMARK_CAPTURE(BM_BuildFrameAndExtract, kodaira_thurston, "kodaira_thurston");
BENCHMARK_CAPTURE(BM_BuildFrameAndExtract, iwasawa_real6, "iwasawa_real6");
BENCHMARK_CAPTURE(BM_BuildFrameAndExtract, abelian_4, "abelian_4");

void BM_CurvatureAndFit(benchmark::State& state, const char* name) {
  const lieherm::RealLieAlgebra spec = catalog_algebra(name);
  const lieherm::UnitaryFrame frame = lieherm::build_unitary_frame(spec);
  const lieherm::CDTensors cd = lieherm::extract_structure_constants(spec, frame);
  for (auto _ : state) {
    const lieherm::CurvatureTensor rt = lieherm::symmetrize(lieherm::chern_curvature(cd));
    lieherm::ConstantHFit fit = lieherm::constant_h_fit(rt, 1e-10);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK_CAPTURE(BM_CurvatureAndFit, kodaira_thurston, "kodaira_thurston");
BENCHMARK_CAPTURE(BM_CurvatureAndFit, iwasawa_real6, "iwasawa_real6");

void BM_ResidualObjective(benchmark::State& state) {
  const lieherm::RealLieAlgebra spec = catalog_algebra("kodaira_thurston");
  const lieherm::MetricParams params = lieherm::identity_params(2);
  for (auto _ : state) {
    double r = lieherm::residual_objective(spec, params);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ResidualObjective);

void BM_SalamonRotation(benchmark::State& state) {
  const lieherm::RealLieAlgebra spec = catalog_algebra("iwasawa_real6");
  const lieherm::UnitaryFrame frame = lieherm::build_unitary_frame(spec);
  const lieherm::CDTensors cd = lieherm::extract_structure_constants(spec, frame);
  for (auto _ : state) {
    Eigen::MatrixXcd u = lieherm::salamon_rotation(cd);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_SalamonRotation);

}  // namespace

BENCHMARK_MAIN();
