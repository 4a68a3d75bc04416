#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/lie_structure.hpp"

namespace lieherm {

/// Parametrizes a Hermitian positive-definite matrix h = L L^* through its
/// lower-triangular factor with strictly positive real diagonal, which in turn
/// induces a compatible metric on the fixed reference frame.
struct MetricParams {
  int n = 0;
  Eigen::MatrixXcd L;
};

struct SearchConfig {
  int restarts = 8;
  int max_iters = 200;
  double step_init = 0.1;
  double fd_epsilon = 1e-5;
  std::uint64_t seed = 0;
  double tol = 1e-10;
};

struct TracePoint {
  int iter = 0;
  double residual = 0.0;
};

struct SearchResult {
  MetricParams best_params;
  double best_residual = 0.0;
  double best_c = 0.0;
  std::vector<TracePoint> trace;  // best-so-far of the winning restart
  bool converged = false;
};

MetricParams identity_params(int n);

/// Real coordinates of L: per row, log of the diagonal entry followed by the
/// real and imaginary parts of the strictly-lower entries. Length n^2.
std::vector<double> params_to_vector(const MetricParams& params);
MetricParams params_from_vector(int n, const std::vector<double>& p);

/// The J-compatible positive-definite real metric induced on the algebra by
/// h = L L^* read in the reference frame.
Eigen::MatrixXd metric_from_params(const RealLieAlgebra& spec, const UnitaryFrame& ref,
                                   const MetricParams& params);

/// Squared Frobenius deviation of the symmetrized curvature from the best-fit
/// constant pattern, for the metric induced by params. Zero exactly when the
/// holomorphic sectional curvature of that metric is constant.
double residual_objective(const RealLieAlgebra& spec, const MetricParams& params);

/// Central finite differences of an arbitrary objective over real coordinates.
std::vector<double> central_difference_gradient(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& p, double epsilon);

/// Central finite differences of residual_objective over the coordinates of
/// params_to_vector.
std::vector<double> fd_gradient(const RealLieAlgebra& spec, const MetricParams& params,
                                double epsilon);

/// Multi-start gradient descent with backtracking line search on
/// residual_objective, with iterates projected into a fixed coordinate box
/// (the objective vanishes along metric degenerations, so an unconstrained
/// descent would chase that tail). Restarts are independent and run
/// concurrently unless LIEHERM_NO_PARALLEL=1; the merge picks the best
/// residual, ties by restart index. Identical seed and config give identical
/// results.
SearchResult search(const RealLieAlgebra& spec, const SearchConfig& config);

}  // namespace lieherm
