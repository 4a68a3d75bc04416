#include "oracles.hpp"

#include <cmath>

namespace lieherm::oracles {

Eigen::MatrixXcd connection_holo(const CDTensors& cd, int l) {
  const int n = cd.n;
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) m(r, k) = cd.D(r, k, l);
  return m;
}

Eigen::MatrixXcd connection_anti(const CDTensors& cd, int l) {
  const int n = cd.n;
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) m(r, k) = -std::conj(cd.D(k, r, l));
  return m;
}

CTensor4 curvature_commutator_route(const CDTensors& cd) {
  const int n = cd.n;
  CTensor4 R(n);

  std::vector<Eigen::MatrixXcd> holo, anti;
  for (int l = 0; l < n; ++l) {
    holo.push_back(connection_holo(cd, l));
    anti.push_back(connection_anti(cd, l));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // bracket of e_i with conj(e_j): p holds the (1,0) coefficients,
      // q the (0,1) coefficients
      Eigen::VectorXcd p(n), q(n);
      for (int r = 0; r < n; ++r) {
        p[r] = std::conj(cd.D(i, r, j));
        q[r] = -cd.D(j, r, i);
      }
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXcd ek = Eigen::VectorXcd::Unit(n, k);
        Eigen::VectorXcd value = holo[i] * (anti[j] * ek) - anti[j] * (holo[i] * ek);
        for (int r = 0; r < n; ++r) value -= p[r] * (holo[r] * ek) + q[r] * (anti[r] * ek);
        for (int l = 0; l < n; ++l) R(i, j, k, l) = value[l];
      }
    }
  return R;
}

CTensor3 torsion_defining_route(const CDTensors& cd) {
  const int n = cd.n;
  CTensor3 T(n);
  std::vector<Eigen::MatrixXcd> holo;
  for (int l = 0; l < n; ++l) holo.push_back(connection_holo(cd, l));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      // derivative of e_k along e_i, minus derivative of e_i along e_k,
      // minus the bracket of the pair
      const Eigen::VectorXcd v =
          holo[i] * Eigen::VectorXcd::Unit(n, k) - holo[k] * Eigen::VectorXcd::Unit(n, i);
      for (int j = 0; j < n; ++j) T(j, i, k) = v[j] - cd.C(j, i, k);
    }
  return T;
}

std::pair<CTensor4, CTensor4> torsion_derivatives_leibniz(const CDTensors& cd,
                                                          const CTensor3& T) {
  const int n = cd.n;
  CTensor4 Td(n), Tdbar(n);
  for (int l = 0; l < n; ++l) {
    const Eigen::MatrixXcd h = connection_holo(cd, l);
    const Eigen::MatrixXcd a = connection_anti(cd, l);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          Complex dh{}, da{};
          for (int r = 0; r < n; ++r) {
            dh += T(r, i, k) * h(j, r) - h(r, i) * T(j, r, k) - h(r, k) * T(j, i, r);
            da += T(r, i, k) * a(j, r) - a(r, i) * T(j, r, k) - a(r, k) * T(j, i, r);
          }
          Td(j, i, k, l) = dh;
          Tdbar(j, i, k, l) = da;
        }
  }
  return {std::move(Td), std::move(Tdbar)};
}

double rhat_pair_closed_form(const CDTensors& cd, int i, int k) {
  const int n = cd.n;
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    s += std::norm(cd.D(r, k, i) + cd.D(r, i, k)) - std::norm(cd.D(k, r, i)) -
         std::norm(cd.D(i, r, k));
    s -= 2.0 * (cd.D(k, r, k) * std::conj(cd.D(i, r, i)) +
                cd.D(i, r, i) * std::conj(cd.D(k, k, r)) +
                cd.D(k, r, k) * std::conj(cd.D(i, i, r)) +
                cd.D(i, r, k) * std::conj(cd.D(i, k, r)) +
                cd.D(k, r, i) * std::conj(cd.D(k, i, r)))
                   .real();
  }
  return 0.25 * s;
}

std::vector<double> five_point_gradient(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& p, double epsilon) {
  std::vector<double> grad(p.size(), 0.0);
  std::vector<double> q = p;
  for (std::size_t m = 0; m < p.size(); ++m) {
    q[m] = p[m] + 2.0 * epsilon;
    const double f2p = objective(q);
    q[m] = p[m] + epsilon;
    const double f1p = objective(q);
    q[m] = p[m] - epsilon;
    const double f1m = objective(q);
    q[m] = p[m] - 2.0 * epsilon;
    const double f2m = objective(q);
    q[m] = p[m];
    grad[m] = (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * epsilon);
  }
  return grad;
}

}  // namespace lieherm::oracles
