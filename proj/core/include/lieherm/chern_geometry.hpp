#pragma once

#include <Eigen/Dense>

#include "lieherm/lie_structure.hpp"
#include "lieherm/tensor.hpp"

namespace lieherm {

/// Chern torsion T(j,i,k) = T^j_{ik} and its covariant derivatives
/// Td(j,i,k,l) = T^j_{ik,l}, Tdbar(j,i,k,l) = T^j_{ik,lbar}.
/// Td and Tdbar stay empty until torsion_derivatives fills them.
struct TorsionTensor {
  int n = 0;
  CTensor3 T;
  CTensor4 Td;
  CTensor4 Tdbar;
};

/// Chern curvature R(i,j,k,l) = R_{i jbar k lbar} and its symmetrization Rhat
/// (empty until symmetrize fills it).
struct CurvatureTensor {
  int n = 0;
  CTensor4 R;
  CTensor4 Rhat;
};

struct ConstantHFit {
  double c_fit = 0.0;
  double residual = 0.0;
  bool is_constant = false;
};

struct GeometryFlags {
  bool kahler = false;
  bool chern_flat = false;
  bool complex_group = false;
};

/// T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}; antisymmetric in (i,k) exactly.
TorsionTensor torsion(const CDTensors& cd);

/// Covariant derivatives of the torsion with respect to the Chern connection,
/// whose coefficients in the frame are D^j_{ik} and -conj(D^i_{jk}).
TorsionTensor torsion_derivatives(const CDTensors& cd, TorsionTensor t);

/// R_{i jbar k lbar} = sum_r ( D^r_{ki} conj(D^r_{lj}) - D^l_{ri} conj(D^k_{rj})
///                  - D^j_{ri} conj(D^k_{lr}) - conj(D^i_{rj}) D^l_{kr} ).
CurvatureTensor chern_curvature(const CDTensors& cd);

/// Diagonal entry R_{i ibar i ibar} computed by its closed form
/// sum_r ( |D^r_{ii}|^2 - |D^i_{ri}|^2 - 2 Re(D^i_{ri} conj(D^i_{ir})) ).
/// i is 0-based.
double diagonal_h(const CDTensors& cd, int i);

/// Rhat(i,j,k,l) = ( R(i,j,k,l) + R(k,j,i,l) + R(i,l,k,j) + R(k,l,i,j) ) / 4.
CurvatureTensor symmetrize(CurvatureTensor rt);

/// H(X) = sum R(i,j,k,l) X_i conj(X_j) X_k conj(X_l) / |X|^4. The imaginary
/// part of the contraction is asserted to be numerical noise and discarded.
double holomorphic_sectional(const CurvatureTensor& rt, const Eigen::VectorXcd& X);

/// Least-squares data of Rhat against the constant-curvature pattern
/// P(i,j,k,l) = (delta_ij delta_kl + delta_il delta_kj)/2.
struct ConstantHLeastSquares {
  double c = 0.0;
  double frobenius_sq = 0.0;  // sum |Rhat - c P|^2 at the optimal c
  double max_abs = 0.0;       // max entrywise |Rhat - c P|
};

ConstantHLeastSquares constant_h_least_squares(const CurvatureTensor& rt);

/// Fits a constant c to Rhat over all n^4 entries; the residual is the
/// max-norm deviation from the fitted pattern.
ConstantHFit constant_h_fit(const CurvatureTensor& rt, double tol);

/// kahler: T = 0; chern_flat: R = 0; complex_group: D = 0 (all within tol).
GeometryFlags classify(const CDTensors& cd, double tol);

}  // namespace lieherm
