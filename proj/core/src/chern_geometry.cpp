#include "lieherm/chern_geometry.hpp"

#include <cmath>

#include "lieherm/errors.hpp"

namespace lieherm {

namespace {

double pattern(int i, int j, int k, int l) {
  return 0.5 * ((i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0));
}

}  // namespace

TorsionTensor torsion(const CDTensors& cd) {
  const int n = cd.n;
  TorsionTensor t{n, CTensor3(n), {}, {}};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        const Complex v = -cd.C(j, i, k) - cd.D(j, i, k) + cd.D(j, k, i);
        t.T(j, i, k) = v;
        t.T(j, k, i) = -v;
      }
  return t;
}

TorsionTensor torsion_derivatives(const CDTensors& cd, TorsionTensor t) {
  const int n = cd.n;
  if (t.n != n || t.T.dim() != n)
    throw StructuralError("torsion tensor does not match the structure constants");
  t.Td = CTensor4(n);
  t.Tdbar = CTensor4(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex d{}, dbar{};
          for (int r = 0; r < n; ++r) {
            d += -t.T(j, r, k) * cd.D(r, i, l) - t.T(j, i, r) * cd.D(r, k, l) +
                 t.T(r, i, k) * cd.D(j, r, l);
            dbar += t.T(j, r, k) * std::conj(cd.D(i, r, l)) +
                    t.T(j, i, r) * std::conj(cd.D(k, r, l)) -
                    t.T(r, i, k) * std::conj(cd.D(r, j, l));
          }
          t.Td(j, i, k, l) = d;
          t.Tdbar(j, i, k, l) = dbar;
        }
  return t;
}

CurvatureTensor chern_curvature(const CDTensors& cd) {
  const int n = cd.n;
  CurvatureTensor rt{n, CTensor4(n), {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex s{};
          for (int r = 0; r < n; ++r)
            s += cd.D(r, k, i) * std::conj(cd.D(r, l, j)) -
                 cd.D(l, r, i) * std::conj(cd.D(k, r, j)) -
                 cd.D(j, r, i) * std::conj(cd.D(k, l, r)) -
                 std::conj(cd.D(i, r, j)) * cd.D(l, k, r);
          rt.R(i, j, k, l) = s;
        }
  return rt;
}

double diagonal_h(const CDTensors& cd, int i) {
  const int n = cd.n;
  if (i < 0 || i >= n) throw StructuralError("diagonal index out of range");
  double s = 0.0;
  for (int r = 0; r < n; ++r)
    s += std::norm(cd.D(r, i, i)) - std::norm(cd.D(i, r, i)) -
         2.0 * (cd.D(i, r, i) * std::conj(cd.D(i, i, r))).real();
  return s;
}

CurvatureTensor symmetrize(CurvatureTensor rt) {
  const int n = rt.n;
  if (rt.R.dim() != n) throw StructuralError("curvature tensor is empty");
  rt.Rhat = CTensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          rt.Rhat(i, j, k, l) =
              0.25 * (rt.R(i, j, k, l) + rt.R(k, j, i, l) + rt.R(i, l, k, j) + rt.R(k, l, i, j));
  return rt;
}

double holomorphic_sectional(const CurvatureTensor& rt, const Eigen::VectorXcd& X) {
  const int n = rt.n;
  if (X.size() != n) throw StructuralError("direction vector has the wrong size");
  const double norm = X.norm();
  if (norm == 0.0) throw StructuralError("holomorphic sectional curvature of the zero vector");
  const Eigen::VectorXcd Y = X / norm;

  Complex s{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += rt.R(i, j, k, l) * Y[i] * std::conj(Y[j]) * Y[k] * std::conj(Y[l]);

  if (std::abs(s.imag()) > 1e-12 * std::max(1.0, rt.R.max_abs()))
    throw NumericalError("holomorphic sectional curvature has a non-negligible imaginary part; "
                         "the curvature tensor violates Hermitian symmetry");
  return s.real();
}

ConstantHLeastSquares constant_h_least_squares(const CurvatureTensor& rt) {
  const int n = rt.n;
  if (rt.Rhat.empty())
    throw StructuralError("constant-curvature fit requires the symmetrized tensor");

  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double p = pattern(i, j, k, l);
          if (p != 0.0) {
            num += p * rt.Rhat(i, j, k, l).real();
            den += p * p;
          }
        }
  const double c = den > 0.0 ? num / den : 0.0;

  double frob = 0.0, maxdev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex dev = rt.Rhat(i, j, k, l) - c * pattern(i, j, k, l);
          frob += std::norm(dev);
          maxdev = std::max(maxdev, std::abs(dev));
        }
  return ConstantHLeastSquares{c, frob, maxdev};
}

ConstantHFit constant_h_fit(const CurvatureTensor& rt, double tol) {
  const ConstantHLeastSquares ls = constant_h_least_squares(rt);
  return ConstantHFit{ls.c, ls.max_abs, ls.max_abs <= tol};
}

GeometryFlags classify(const CDTensors& cd, double tol) {
  GeometryFlags flags;
  flags.kahler = torsion(cd).T.max_abs() <= tol;
  flags.chern_flat = chern_curvature(cd).R.max_abs() <= tol;
  flags.complex_group = cd.D.max_abs() <= tol;
  if (flags.complex_group && !flags.chern_flat)
    throw NumericalError("D vanishes but the curvature does not; tolerance is inconsistent "
                         "with the quadratic dependence of R on D");
  return flags;
}

}  // namespace lieherm
