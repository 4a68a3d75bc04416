#include "lieherm/theorem_checker.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lieherm/chern_geometry.hpp"
#include "lieherm/errors.hpp"

namespace lieherm {

namespace {

/// Null-space basis in canonical reduced-echelon form. Pivots take the
/// largest-magnitude entry, ties broken by lowest row index; each free column
/// yields one basis vector. Deterministic by construction.
std::vector<Eigen::VectorXcd> null_space(Eigen::MatrixXcd M, double rel_tol) {
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  const double scale = rows > 0 && cols > 0 ? M.cwiseAbs().maxCoeff() : 0.0;
  const double tol = rel_tol * std::max(1.0, scale);

  std::vector<std::pair<int, int>> pivots;  // (row, col)
  std::vector<bool> is_pivot_col(cols, false);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_mag = tol;
    for (int rr = r; rr < rows; ++rr) {
      const double mag = std::abs(M(rr, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = rr;
      }
    }
    if (best < 0) continue;
    M.row(r).swap(M.row(best));
    M.row(r) /= M(r, c);
    for (int rr = 0; rr < rows; ++rr)
      if (rr != r && M(rr, c) != Complex{}) M.row(rr) -= M(rr, c) * M.row(r);
    pivots.emplace_back(r, c);
    is_pivot_col[c] = true;
    ++r;
  }

  std::vector<Eigen::VectorXcd> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot_col[c]) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cols);
    v[c] = 1.0;
    for (const auto& [pr, pc] : pivots) v[pc] = -M(pr, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

SalamonReport verify_salamon_frame(const CDTensors& cd, double tol) {
  const int n = cd.n;
  SalamonReport report;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        // C^j_{ik} = 0 unless j > i or j > k
        if (!(j > i || j > k) && std::abs(cd.C(j, i, k)) > tol)
          report.violations.push_back(
              {SalamonCondition::CFiltration, true, j, i, k, cd.C(j, i, k)});
        // D^j_{ik} = 0 unless i > j; the top row j = n is a named consequence
        if (!(i > j) && std::abs(cd.D(j, i, k)) > tol)
          report.violations.push_back(
              {j == n - 1 ? SalamonCondition::DTopRow : SalamonCondition::DFiltration, false, j,
               i, k, cd.D(j, i, k)});
      }
  report.satisfied = report.violations.empty();
  return report;
}

Eigen::MatrixXcd salamon_rotation(const CDTensors& cd) {
  const int n = cd.n;
  std::vector<Eigen::VectorXcd> chosen;  // orthonormal coframe coefficient vectors

  int round = 0;
  while (static_cast<int>(chosen.size()) < n) {
    ++round;

    // candidates for the (1,0) part of the common kernel of the chosen forms
    std::vector<Eigen::VectorXcd> kernel;
    if (chosen.empty()) {
      for (int i = 0; i < n; ++i) kernel.push_back(Eigen::VectorXcd::Unit(n, i));
    } else {
      Eigen::MatrixXcd A(chosen.size(), n);
      for (std::size_t s = 0; s < chosen.size(); ++s) A.row(s) = chosen[s].transpose();
      kernel = null_space(A, 1e-12);
    }

    // span of the (1,0) components of all brackets inside the kernel ideal:
    // pairs of kernel vectors, and kernel vectors against every conjugate
    // direction (the conjugate space lies in every form's kernel).
    std::vector<Eigen::VectorXcd> rows;
    for (std::size_t p = 0; p < kernel.size(); ++p)
      for (std::size_t q = p + 1; q < kernel.size(); ++q) {
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
        for (int j = 0; j < n; ++j) {
          Complex acc{};
          for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) acc += cd.C(j, s, t) * kernel[p][s] * kernel[q][t];
          u[j] = acc;
        }
        rows.push_back(std::move(u));
      }
    for (int p = 0; p < n; ++p)
      for (const auto& w : kernel) {
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
        for (int j = 0; j < n; ++j) {
          Complex acc{};
          for (int q = 0; q < n; ++q) acc -= std::conj(cd.D(q, j, p)) * w[q];
          u[j] = acc;
        }
        rows.push_back(std::move(u));
      }

    Eigen::MatrixXcd M(rows.size(), n);
    for (std::size_t s = 0; s < rows.size(); ++s) M.row(s) = rows[s].transpose();
    const std::vector<Eigen::VectorXcd> closed = null_space(M, 1e-12);

    int added = 0;
    for (Eigen::VectorXcd v : closed) {
      for (const auto& c : chosen) v -= c.dot(v) * c;
      const double norm = v.norm();
      if (norm > 1e-8) {
        chosen.push_back(v / norm);
        ++added;
        if (static_cast<int>(chosen.size()) == n) break;
      }
    }
    if (added == 0)
      throw StructuralError("Salamon coframe construction stalled at round " +
                            std::to_string(round) + " with " + std::to_string(chosen.size()) +
                            " of " + std::to_string(n) +
                            " forms; the algebra is not nilpotent");
  }

  Eigen::MatrixXcd A(n, n);
  for (int s = 0; s < n; ++s) A.row(s) = chosen[s].transpose();
  // the frame dual to the coframe rows of A is conj(A) applied to the old frame
  return A.conjugate();
}

UnitaryFrame construct_salamon_frame(const RealLieAlgebra& spec) {
  const UnitaryFrame frame = build_unitary_frame(spec);
  const CDTensors cd = extract_structure_constants(spec, frame);
  const Eigen::MatrixXcd U = salamon_rotation(cd);
  UnitaryFrame rotated = rotate_frame(frame, U);

  const CDTensors check = extract_structure_constants(spec, rotated);
  const SalamonReport rep = verify_salamon_frame(check, 1e-10);
  if (!rep.satisfied)
    throw NumericalError("constructed frame fails the Salamon filtration conditions");
  return rotated;
}

FlatnessCertificate certify_flatness(const CDTensors& cd, double tol) {
  const int n = cd.n;
  const SalamonReport salamon = verify_salamon_frame(cd, tol);
  if (!salamon.satisfied)
    throw StructuralError("certify_flatness requires structure constants in Salamon form");

  FlatnessCertificate cert;
  auto add = [&cert, tol](std::string id, std::string description, double residual) {
    cert.steps.push_back({std::move(id), std::move(description), residual, residual <= tol});
  };

  const CurvatureTensor rt = symmetrize(chern_curvature(cd));
  const ConstantHFit fit = constant_h_fit(rt, tol);
  cert.c_value = fit.c_fit;
  add("premise_constant_h",
      "holomorphic sectional curvature fits a constant over all directions", fit.residual);
  if (!fit.is_constant) {
    cert.conclusion = FlatnessConclusion::RefutedConstantH;
    return cert;
  }

  add("salamon_sign_lower", "first curvature diagonal is nonpositive in a Salamon frame",
      std::max(0.0, rt.R(0, 0, 0, 0).real()));
  add("salamon_sign_upper", "last curvature diagonal is nonnegative in a Salamon frame",
      std::max(0.0, -rt.R(n - 1, n - 1, n - 1, n - 1).real()));
  add("constant_is_zero", "squeezed between the two signed diagonals, the constant vanishes",
      std::abs(fit.c_fit));

  double r = 0.0;
  for (int rr = 0; rr < n; ++rr) r = std::max(r, std::abs(cd.D(0, rr, 0)));
  add("d_lower_first", "vanishing first diagonal forces D^1_{r,1} = 0", r);

  // descending sweep over the top index m; at each level the sub-tensor on
  // indices <= m must lose every slot touching m
  for (int m = n; m >= 2; --m) {
    const int mt = m - 1;  // 0-based
    r = 0.0;
    for (int rr = 0; rr < m; ++rr) r = std::max(r, std::abs(cd.D(rr, mt, mt)));
    add("m" + std::to_string(m) + "_diag",
        "vanishing top diagonal at level " + std::to_string(m) + " forces D^r_{mm} = 0", r);

    if (m == n && n >= 3) {
      const double named = std::max({std::abs(cd.D(n - 2, n - 1, n - 3)),
                                     std::abs(cd.D(n - 3, n - 1, n - 3)),
                                     std::abs(cd.D(n - 3, n - 2, n - 1))});
      add("m" + std::to_string(m) + "_second_step_entries",
          "the three named entries of the second reduction step vanish", named);
    }

    for (int i = m - 1; i >= 1; --i) {
      const int it = i - 1;  // 0-based
      r = 0.0;
      for (int rr = 0; rr < m; ++rr) r = std::max(r, std::abs(cd.D(it, rr, mt)));
      add("m" + std::to_string(m) + "_i" + std::to_string(i) + "_third_slot",
          "level " + std::to_string(m) + ": D^" + std::to_string(i) + "_{r," +
              std::to_string(m) + "} = 0",
          r);

      r = 0.0;
      for (int rr = 0; rr < m; ++rr)
        r = std::max(r, std::abs(cd.D(rr, mt, it) + cd.D(rr, it, mt)));
      add("m" + std::to_string(m) + "_i" + std::to_string(i) + "_pair_sum",
          "level " + std::to_string(m) + ": D^r_{" + std::to_string(m) + "," +
              std::to_string(i) + "} + D^r_{" + std::to_string(i) + "," + std::to_string(m) +
              "} = 0",
          r);
    }
  }

  add("d_vanishes", "all of D vanishes, so the group is complex and Chern flat",
      cd.D.max_abs());

  bool all = true;
  for (const auto& s : cert.steps) all = all && s.passed;
  cert.conclusion = all ? FlatnessConclusion::FlatComplexGroup : FlatnessConclusion::Inconclusive;
  return cert;
}

}  // namespace lieherm
