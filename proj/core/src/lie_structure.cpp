#include "lieherm/lie_structure.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "lieherm/errors.hpp"

namespace lieherm {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_sizes(const RealLieAlgebra& spec) {
  const int m = spec.dim_real;
  if (m <= 0 || m % 2 != 0) throw StructuralError("dim_real must be a positive even integer");
  if (spec.f.dim() != m) throw StructuralError("bracket tensor size does not match dim_real");
  if (spec.J.rows() != m || spec.J.cols() != m)
    throw StructuralError("J must be a dim_real x dim_real matrix");
  if (spec.g.rows() != m || spec.g.cols() != m)
    throw StructuralError("g must be a dim_real x dim_real matrix");
}

Eigen::VectorXd real_bracket(const RealLieAlgebra& spec, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v) {
  const int m = spec.dim_real;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  for (int a = 0; a < m; ++a) {
    if (u[a] == 0.0) continue;
    for (int b = 0; b < m; ++b) {
      const double coef = u[a] * v[b];
      if (coef == 0.0) continue;
      for (int c = 0; c < m; ++c) {
        const double fabc = spec.f(a, b, c);
        if (fabc != 0.0) w[c] += fabc * coef;
      }
    }
  }
  return w;
}

}  // namespace

Eigen::VectorXcd RealLieAlgebra::bracket(const Eigen::VectorXcd& u,
                                         const Eigen::VectorXcd& v) const {
  const int m = dim_real;
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m);
  for (int a = 0; a < m; ++a) {
    if (u[a] == Complex{}) continue;
    for (int b = 0; b < m; ++b) {
      const Complex coef = u[a] * v[b];
      if (coef == Complex{}) continue;
      for (int c = 0; c < m; ++c) {
        const double fabc = f(a, b, c);
        if (fabc != 0.0) w[c] += fabc * coef;
      }
    }
  }
  return w;
}

Complex RealLieAlgebra::pair(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  const Eigen::VectorXcd gv = g.cast<Complex>() * v;
  return (u.array() * gv.array()).sum();
}

Complex RealLieAlgebra::hermitian(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const {
  return pair(u, v.conjugate());
}

ValidationReport validate_real_algebra(const RealLieAlgebra& spec, double tol) {
  if (tol <= 0.0) throw StructuralError("tolerance must be positive");
  check_sizes(spec);
  const int m = spec.dim_real;

  ValidationReport report;
  auto add = [&report, tol](std::string name, double residual) {
    report.checks.push_back({std::move(name), residual, residual <= tol});
  };

  double r = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) r = std::max(r, std::abs(spec.f(a, b, c) + spec.f(b, a, c)));
  add("bracket_antisymmetry", r);

  r = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d)
        for (int e = 0; e < m; ++e) {
          double s = 0.0;
          for (int c = 0; c < m; ++c)
            s += spec.f(a, b, c) * spec.f(c, d, e) + spec.f(b, d, c) * spec.f(c, a, e) +
                 spec.f(d, a, c) * spec.f(c, b, e);
          r = std::max(r, std::abs(s));
        }
  add("real_jacobi", r);

  const Eigen::MatrixXd jj = spec.J * spec.J + Eigen::MatrixXd::Identity(m, m);
  add("j_squares_to_minus_identity", jj.cwiseAbs().maxCoeff());

  add("metric_symmetry", (spec.g - spec.g.transpose()).cwiseAbs().maxCoeff());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (spec.g + spec.g.transpose()));
  const double lmin = es.eigenvalues().minCoeff();
  report.checks.push_back({"metric_positive_definite", std::max(0.0, -lmin), lmin > 0.0});

  add("metric_j_compatible",
      (spec.J.transpose() * spec.g * spec.J - spec.g).cwiseAbs().maxCoeff());

  r = 0.0;
  for (int a = 0; a < m; ++a) {
    const Eigen::VectorXd xa = Eigen::VectorXd::Unit(m, a);
    const Eigen::VectorXd ja = spec.J.col(a);
    for (int b = a + 1; b < m; ++b) {
      const Eigen::VectorXd xb = Eigen::VectorXd::Unit(m, b);
      const Eigen::VectorXd jb = spec.J.col(b);
      const Eigen::VectorXd nij = real_bracket(spec, xa, xb) - real_bracket(spec, ja, jb) +
                                  spec.J * real_bracket(spec, ja, xb) +
                                  spec.J * real_bracket(spec, xa, jb);
      r = std::max(r, nij.cwiseAbs().maxCoeff());
    }
  }
  add("integrability", r);

  report.overall = true;
  for (const auto& c : report.checks) report.overall = report.overall && c.passed;
  return report;
}

std::optional<int> nilpotency_class(const RealLieAlgebra& spec) {
  check_sizes(spec);
  const int m = spec.dim_real;
  const double rank_tol = 1e-10;
  // entries that are pure cancellation noise must not register as rank; the
  // pivot threshold alone is relative to the largest pivot
  const double zero_tol = 1e-12 * std::max(1.0, spec.f.max_abs()) * m;

  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(m, m);
  int k = 0;
  while (true) {
    ++k;
    const int d = static_cast<int>(term.cols());
    Eigen::MatrixXd images(m, static_cast<Eigen::Index>(m) * d);
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < d; ++c)
        images.col(static_cast<Eigen::Index>(a) * d + c) =
            real_bracket(spec, Eigen::VectorXd::Unit(m, a), term.col(c));

    if (images.cwiseAbs().maxCoeff() <= zero_tol) return k;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(images);
    qr.setThreshold(rank_tol);
    const int rank = static_cast<int>(qr.rank());
    if (rank >= d) return std::nullopt;  // series stabilized at a nonzero subspace
    term = qr.householderQ() * Eigen::MatrixXd::Identity(m, rank);
  }
}

UnitaryFrame build_unitary_frame(const RealLieAlgebra& spec) {
  check_sizes(spec);
  const int m = spec.dim_real;
  const int n = m / 2;
  const double sqrt2 = std::numbers::sqrt2;

  Eigen::MatrixXcd E(n, m);
  int count = 0;
  for (int a = 0; a < m && count < n; ++a) {
    Eigen::VectorXcd v =
        (Eigen::VectorXcd::Unit(m, a) - kI * spec.J.col(a).cast<Complex>()) / sqrt2;
    const double norm0 = std::sqrt(std::max(0.0, spec.hermitian(v, v).real()));
    for (int s = 0; s < count; ++s) {
      const Eigen::VectorXcd es = E.row(s).transpose();
      v -= spec.hermitian(v, es) * es;
    }
    const double sq = spec.hermitian(v, v).real();
    if (sq < -1e-12)
      throw NumericalError("Hermitian form is not positive definite on the (1,0) span; "
                           "J or g input is invalid");
    const double norm1 = std::sqrt(std::max(0.0, sq));
    if (norm1 > 1e-7 * std::max(1.0, norm0)) E.row(count++) = (v / norm1).transpose();
  }
  if (count < n)
    throw NumericalError("unitary frame construction is rank deficient; J or g input is invalid");

  // construction guarantees J e = sqrt(-1) e and Hermitian orthonormality;
  // a violation here means J or g were inconsistent
  double r = 0.0;
  const Eigen::MatrixXcd jc = spec.J.cast<Complex>();
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd ei = E.row(i).transpose();
    r = std::max(r, (jc * ei - kI * ei).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j) {
      const Complex hij = spec.hermitian(ei, E.row(j).transpose());
      r = std::max(r, std::abs(hij - (i == j ? Complex{1.0, 0.0} : Complex{})));
    }
  }
  if (r > 1e-10)
    throw NumericalError("constructed frame fails the unitary invariants; J or g input is invalid");

  return UnitaryFrame{n, std::move(E)};
}

CDTensors extract_structure_constants(const RealLieAlgebra& spec, const UnitaryFrame& frame) {
  check_sizes(spec);
  const int n = frame.n;
  if (n * 2 != spec.dim_real || frame.E.cols() != spec.dim_real)
    throw StructuralError("frame and algebra dimensions do not match");

  CDTensors cd{n, CTensor3(n), CTensor3(n)};
  double scale = 1.0;
  double recon = 0.0;

  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const Eigen::VectorXcd w =
          spec.bracket(frame.E.row(i).transpose(), frame.E.row(k).transpose());
      scale = std::max(scale, w.cwiseAbs().maxCoeff());
      for (int j = 0; j < n; ++j) {
        const Complex cjik = spec.pair(w, frame.E.row(j).conjugate().transpose());
        cd.C(j, i, k) = cjik;
        cd.C(j, k, i) = -cjik;
      }
      // the (1,0) bracket must close into the frame span (integrability)
      Eigen::VectorXcd rec = Eigen::VectorXcd::Zero(spec.dim_real);
      for (int j = 0; j < n; ++j) rec += cd.C(j, i, k) * frame.E.row(j).transpose();
      recon = std::max(recon, (w - rec).cwiseAbs().maxCoeff());
    }

  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXcd w =
          spec.bracket(frame.E.row(j).conjugate().transpose(), frame.E.row(k).transpose());
      scale = std::max(scale, w.cwiseAbs().maxCoeff());
      for (int i = 0; i < n; ++i) cd.D(j, i, k) = spec.pair(w, frame.E.row(i).transpose());
    }

  // mixed brackets reconstructed from the tensors must reproduce f
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXcd w =
          spec.bracket(frame.E.row(j).conjugate().transpose(), frame.E.row(k).transpose());
      Eigen::VectorXcd rec = Eigen::VectorXcd::Zero(spec.dim_real);
      for (int i = 0; i < n; ++i)
        rec += cd.D(j, i, k) * frame.E.row(i).conjugate().transpose() -
               std::conj(cd.D(k, i, j)) * frame.E.row(i).transpose();
      recon = std::max(recon, (w - rec).cwiseAbs().maxCoeff());
    }

  if (recon > 1e-12 * scale * spec.dim_real)
    throw NumericalError("structure constant extraction does not reconstruct the bracket; "
                         "the complex structure is not integrable or the frame is invalid");
  return cd;
}

ValidationReport check_jacobi_cd(const CDTensors& cd, double tol) {
  const int n = cd.n;
  ValidationReport report;

  double r_cc = 0.0, r_cd = 0.0, r_cdbar = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex s{};
          for (int r = 0; r < n; ++r)
            s += cd.C(r, i, j) * cd.C(l, r, k) + cd.C(r, j, k) * cd.C(l, r, i) +
                 cd.C(r, k, i) * cd.C(l, r, j);
          r_cc = std::max(r_cc, std::abs(s));

          s = Complex{};
          for (int r = 0; r < n; ++r)
            s += cd.C(r, i, k) * cd.D(l, j, r) + cd.D(r, j, i) * cd.D(l, r, k) -
                 cd.D(r, j, k) * cd.D(l, r, i);
          r_cd = std::max(r_cd, std::abs(s));

          s = Complex{};
          for (int r = 0; r < n; ++r)
            s += cd.C(r, i, k) * std::conj(cd.D(r, j, l)) -
                 cd.C(j, r, k) * std::conj(cd.D(i, r, l)) +
                 cd.C(j, r, i) * std::conj(cd.D(k, r, l)) -
                 cd.D(l, r, i) * std::conj(cd.D(k, j, r)) +
                 cd.D(l, r, k) * std::conj(cd.D(i, j, r));
          r_cdbar = std::max(r_cdbar, std::abs(s));
        }

  report.checks.push_back({"jacobi_cc", r_cc, r_cc <= tol});
  report.checks.push_back({"jacobi_cd", r_cd, r_cd <= tol});
  report.checks.push_back({"jacobi_cdbar", r_cdbar, r_cdbar <= tol});
  report.overall = r_cc <= tol && r_cd <= tol && r_cdbar <= tol;
  return report;
}

ValidationReport validate_cd(const CDTensors& cd, double tol) {
  const int n = cd.n;
  double r = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) r = std::max(r, std::abs(cd.C(j, i, k) + cd.C(j, k, i)));

  ValidationReport report;
  report.checks.push_back({"c_antisymmetry", r, r <= tol});
  ValidationReport jac = check_jacobi_cd(cd, tol);
  report.checks.insert(report.checks.end(), jac.checks.begin(), jac.checks.end());
  report.overall = report.checks.front().passed && jac.overall;
  return report;
}

ValidationReport abelian_complex_structure_check(const CDTensors& cd, double tol) {
  const int n = cd.n;
  ValidationReport report;
  const double cmax = cd.C.max_abs();
  const bool abelian = cmax <= tol;
  report.checks.push_back({"abelian_c_max", cmax, abelian});

  if (abelian) {
    double r_d = 0.0, r_dbar = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (i == k) continue;
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            Complex s{};
            for (int r = 0; r < n; ++r)
              s += cd.D(r, j, i) * cd.D(l, r, k) - cd.D(r, j, k) * cd.D(l, r, i);
            r_d = std::max(r_d, std::abs(s));

            s = Complex{};
            for (int r = 0; r < n; ++r)
              s += cd.D(l, r, i) * std::conj(cd.D(k, j, r)) -
                   cd.D(l, r, k) * std::conj(cd.D(i, j, r));
            r_dbar = std::max(r_dbar, std::abs(s));
          }
      }
    report.checks.push_back({"commutativity_d", r_d, r_d <= tol});
    report.checks.push_back({"commutativity_dbar", r_dbar, r_dbar <= tol});
  }

  report.overall = true;
  for (const auto& c : report.checks) report.overall = report.overall && c.passed;
  return report;
}

namespace {

CTensor3 transform_tensor3(const CTensor3& t, const Eigen::MatrixXcd& u) {
  const int n = t.dim();
  // T'(j,i,k) = sum_{s,p,q} conj(U(j,s)) U(i,p) U(k,q) T(s,p,q), one slot at a time
  CTensor3 a(n), b(n), out(n);
  for (int s = 0; s < n; ++s)
    for (int p = 0; p < n; ++p)
      for (int k = 0; k < n; ++k) {
        Complex acc{};
        for (int q = 0; q < n; ++q) acc += t(s, p, q) * u(k, q);
        a(s, p, k) = acc;
      }
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex acc{};
        for (int p = 0; p < n; ++p) acc += a(s, p, k) * u(i, p);
        b(s, i, k) = acc;
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex acc{};
        for (int s = 0; s < n; ++s) acc += b(s, i, k) * std::conj(u(j, s));
        out(j, i, k) = acc;
      }
  return out;
}

}  // namespace

CDTensors change_frame(const CDTensors& cd, const Eigen::MatrixXcd& U) {
  const int n = cd.n;
  if (U.rows() != n || U.cols() != n)
    throw StructuralError("frame change matrix has the wrong size");
  const double uerr =
      (U * U.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (uerr > 1e-10) throw StructuralError("frame change matrix is not unitary within 1e-10");

  return CDTensors{n, transform_tensor3(cd.C, U), transform_tensor3(cd.D, U)};
}

UnitaryFrame rotate_frame(const UnitaryFrame& frame, const Eigen::MatrixXcd& U) {
  if (U.rows() != frame.n || U.cols() != frame.n)
    throw StructuralError("frame change matrix has the wrong size");
  return UnitaryFrame{frame.n, U * frame.E};
}

}  // namespace lieherm
