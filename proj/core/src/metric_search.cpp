#include "lieherm/metric_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "lieherm/chern_geometry.hpp"
#include "lieherm/errors.hpp"

namespace lieherm {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kConditionLimit = 1e12;
constexpr double kArmijo = 1e-4;

// Half-width of the coordinate box the descent is projected into. The raw
// objective decays to zero along metric degenerations (uniform rescaling and
// collapsing the derived directions), so an unconstrained descent would walk
// down that tail forever and report spurious near-convergence on algebras
// where no constant-curvature metric exists. Restricting the iterates to a
// box keeps the reported minimum meaningful; the objective itself is left
// unnormalized.
constexpr double kSearchBoxHalfWidth = 1.5;

void check_params(const MetricParams& params) {
  const int n = params.n;
  if (n <= 0 || params.L.rows() != n || params.L.cols() != n)
    throw StructuralError("metric parameters have the wrong size");
  for (int i = 0; i < n; ++i) {
    if (params.L(i, i).imag() != 0.0 || params.L(i, i).real() <= 0.0)
      throw StructuralError("triangular factor diagonal must be real and positive");
    for (int j = i + 1; j < n; ++j)
      if (params.L(i, j) != Complex{})
        throw StructuralError("triangular factor must be lower triangular");
  }
}

double uniform_pm(std::mt19937_64& rng, double half_width) {
  // top 53 bits -> [0,1), mapped to [-half_width, half_width)
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * half_width;
}

struct FitEval {
  double frobenius_sq = 0.0;
  double c = 0.0;
};

FitEval eval_objective(const RealLieAlgebra& spec, const UnitaryFrame& ref,
                       const MetricParams& params) {
  check_params(params);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(params.L);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kConditionLimit)
    throw NumericalError("triangular factor is ill-conditioned (condition number above " +
                         std::to_string(kConditionLimit) + ")");

  RealLieAlgebra varied = spec;
  varied.g = metric_from_params(spec, ref, params);
  const UnitaryFrame frame = build_unitary_frame(varied);
  const CDTensors cd = extract_structure_constants(varied, frame);
  const CurvatureTensor rt = symmetrize(chern_curvature(cd));
  const ConstantHLeastSquares ls = constant_h_least_squares(rt);
  return FitEval{ls.frobenius_sq, ls.c};
}

struct RestartOutcome {
  std::vector<double> best_p;
  double best_f = std::numeric_limits<double>::infinity();
  double best_c = 0.0;
  std::vector<TracePoint> trace;
};

RestartOutcome run_restart(const RealLieAlgebra& spec, const UnitaryFrame& ref,
                           const SearchConfig& config, int restart) {
  const int n = ref.n;
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
  if (restart > 0) {
    std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(restart));
    for (double& x : p) x = uniform_pm(rng, 0.5);
  }

  auto objective = [&spec, &ref, n](const std::vector<double>& q) {
    return eval_objective(spec, ref, params_from_vector(n, q)).frobenius_sq;
  };

  RestartOutcome out;
  auto record = [&out](int iter, const std::vector<double>& q, double f) {
    out.best_p = q;
    out.best_f = f;
    out.trace.push_back({iter, f});
  };

  double fp = objective(p);
  record(0, p, fp);

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    if (out.best_f <= config.tol) break;
    const std::vector<double> grad = central_difference_gradient(objective, p, config.fd_epsilon);
    double gnorm_sq = 0.0;
    for (double gi : grad) gnorm_sq += gi * gi;
    if (gnorm_sq < 1e-30) break;

    double alpha = config.step_init;
    bool accepted = false;
    std::vector<double> q(p.size());
    double fq = 0.0;
    while (alpha >= 1e-18) {
      for (std::size_t s = 0; s < p.size(); ++s)
        q[s] = std::clamp(p[s] - alpha * grad[s], -kSearchBoxHalfWidth, kSearchBoxHalfWidth);
      try {
        fq = objective(q);
      } catch (const NumericalError&) {
        alpha *= 0.5;
        continue;
      }
      if (fq <= fp - kArmijo * alpha * gnorm_sq) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;

    p = q;
    fp = fq;
    if (fp < out.best_f) record(iter, p, fp);
  }

  out.best_c = eval_objective(spec, ref, params_from_vector(n, out.best_p)).c;
  return out;
}

}  // namespace

MetricParams identity_params(int n) {
  return MetricParams{n, Eigen::MatrixXcd::Identity(n, n)};
}

std::vector<double> params_to_vector(const MetricParams& params) {
  check_params(params);
  const int n = params.n;
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    p.push_back(std::log(params.L(i, i).real()));
    for (int j = 0; j < i; ++j) {
      p.push_back(params.L(i, j).real());
      p.push_back(params.L(i, j).imag());
    }
  }
  return p;
}

MetricParams params_from_vector(int n, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != n * n)
    throw StructuralError("parameter vector must have length n^2");
  MetricParams params{n, Eigen::MatrixXcd::Zero(n, n)};
  std::size_t at = 0;
  for (int i = 0; i < n; ++i) {
    params.L(i, i) = std::exp(p[at++]);
    for (int j = 0; j < i; ++j) {
      const double re = p[at++];
      const double im = p[at++];
      params.L(i, j) = Complex{re, im};
    }
  }
  return params;
}

Eigen::MatrixXd metric_from_params(const RealLieAlgebra& spec, const UnitaryFrame& ref,
                                   const MetricParams& params) {
  check_params(params);
  if (ref.n != params.n || ref.E.cols() != spec.dim_real)
    throw StructuralError("reference frame does not match the algebra or parameters");
  const int m = spec.dim_real;
  const Eigen::MatrixXcd h = params.L * params.L.adjoint();
  // (1,0) projector in complexified real coordinates, then frame coordinates
  const Eigen::MatrixXcd proj =
      0.5 * (Eigen::MatrixXcd::Identity(m, m) - kI * spec.J.cast<Complex>());
  const Eigen::MatrixXcd phi = ref.E.conjugate() * spec.g.cast<Complex>() * proj;
  const Eigen::MatrixXcd G = phi.transpose() * h * phi.conjugate();
  return 2.0 * G.real();
}

double residual_objective(const RealLieAlgebra& spec, const MetricParams& params) {
  const UnitaryFrame ref = build_unitary_frame(spec);
  return eval_objective(spec, ref, params).frobenius_sq;
}

std::vector<double> central_difference_gradient(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& p, double epsilon) {
  if (epsilon <= 0.0) throw StructuralError("finite difference step must be positive");
  std::vector<double> grad(p.size(), 0.0);
  std::vector<double> q = p;
  for (std::size_t k = 0; k < p.size(); ++k) {
    q[k] = p[k] + epsilon;
    const double fp = objective(q);
    q[k] = p[k] - epsilon;
    const double fm = objective(q);
    q[k] = p[k];
    grad[k] = (fp - fm) / (2.0 * epsilon);
  }
  return grad;
}

std::vector<double> fd_gradient(const RealLieAlgebra& spec, const MetricParams& params,
                                double epsilon) {
  const UnitaryFrame ref = build_unitary_frame(spec);
  const int n = params.n;
  auto objective = [&spec, &ref, n](const std::vector<double>& q) {
    return eval_objective(spec, ref, params_from_vector(n, q)).frobenius_sq;
  };
  return central_difference_gradient(objective, params_to_vector(params), epsilon);
}

SearchResult search(const RealLieAlgebra& spec, const SearchConfig& config) {
  if (config.restarts < 1) throw StructuralError("search needs at least one restart");
  if (config.max_iters < 0 || config.step_init <= 0.0 || config.fd_epsilon <= 0.0 ||
      config.tol <= 0.0)
    throw StructuralError("search configuration values must be positive");

  const UnitaryFrame ref = build_unitary_frame(spec);

  const char* no_parallel = std::getenv("LIEHERM_NO_PARALLEL");
  const bool sequential =
      config.restarts == 1 || (no_parallel != nullptr && std::string(no_parallel) == "1");

  std::vector<RestartOutcome> outcomes(config.restarts);
  if (sequential) {
    for (int r = 0; r < config.restarts; ++r) outcomes[r] = run_restart(spec, ref, config, r);
  } else {
    std::vector<std::future<RestartOutcome>> futures;
    futures.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r)
      futures.push_back(std::async(std::launch::async,
                                   [&spec, &ref, &config, r] { return run_restart(spec, ref, config, r); }));
    for (int r = 0; r < config.restarts; ++r) outcomes[r] = futures[r].get();
  }

  int best = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (outcomes[r].best_f < outcomes[best].best_f) best = r;

  const RestartOutcome& win = outcomes[best];
  SearchResult result;
  result.best_params = params_from_vector(ref.n, win.best_p);
  result.best_residual = win.best_f;
  result.best_c = win.best_c;
  result.trace = win.trace;
  result.converged = win.best_f <= config.tol;
  return result;
}

}  // namespace lieherm
