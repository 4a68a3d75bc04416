#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/tensor.hpp"

namespace lieherm {

inline constexpr double kDefaultTol = 1e-10;

/// Real Lie algebra of even dimension 2n carrying an almost complex structure J
/// and an inner product g. f(a,b,c) is the coefficient of basis vector c in
/// [x_a, x_b]. J and g act on coordinate column vectors.
struct RealLieAlgebra {
  int dim_real = 0;
  RTensor3 f;
  Eigen::MatrixXd J;
  Eigen::MatrixXd g;

  /// Bracket of complexified coordinate vectors, extended bilinearly from f.
  Eigen::VectorXcd bracket(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

  /// C-bilinear extension of g: pair(u,v) = u^T g v, no conjugation.
  Complex pair(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

  /// Hermitian pairing h(u,v) = pair(u, conj(v)).
  Complex hermitian(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
};

/// Unitary frame of the (1,0) subspace. Row i of E holds the complexified
/// real-basis coordinates of e_i, so J e_i = sqrt(-1) e_i and
/// pair(e_i, conj(e_j)) = delta_ij.
struct UnitaryFrame {
  int n = 0;
  Eigen::MatrixXcd E;  // n x 2n
};

/// Structure constants of the complexified brackets in a unitary frame:
///   C(j,i,k) = <[e_i, e_k], conj(e_j)>,   D(j,i,k) = <[conj(e_j), e_k], e_i>,
/// with the first tensor index the upper one of C^j_{ik}, D^j_{ik}.
struct CDTensors {
  int n = 0;
  CTensor3 C;
  CTensor3 D;
};

struct ValidationCheck {
  std::string name;
  double max_residual = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool overall = false;
};

/// Checks every structural invariant of a RealLieAlgebra: bracket antisymmetry,
/// the Jacobi identity, J^2 = -I, metric symmetry / positivity / J-compatibility,
/// and integrability of J (vanishing Nijenhuis expression on basis pairs).
ValidationReport validate_real_algebra(const RealLieAlgebra& spec, double tol);

/// Length of the lower central series until it reaches zero, or nullopt if the
/// series stabilizes at a nonzero subspace (the algebra is not nilpotent).
/// Requires bracket antisymmetry and the Jacobi identity to hold.
std::optional<int> nilpotency_class(const RealLieAlgebra& spec);

/// Builds a unitary frame from the candidates (x_a - sqrt(-1) J x_a)/sqrt(2),
/// keeping a greedy maximal independent subset in input order and
/// orthonormalizing against the Hermitian pairing.
UnitaryFrame build_unitary_frame(const RealLieAlgebra& spec);

/// Reads the C and D structure constants off the complexified brackets of the
/// frame. C is constructed antisymmetric in its lower pair. The extraction is
/// cross-checked by reconstructing the brackets from the tensors.
CDTensors extract_structure_constants(const RealLieAlgebra& spec, const UnitaryFrame& frame);

/// Residuals of the three Jacobi-identity constraints on C and D
/// (quadratic in C, mixed C/D, and the conjugated mixed identity).
ValidationReport check_jacobi_cd(const CDTensors& cd, double tol);

/// Validation for structure constants supplied directly: C antisymmetry plus
/// the three Jacobi constraints.
ValidationReport validate_cd(const CDTensors& cd, double tol);

/// Reports whether the complex structure is abelian (C = 0 within tol) and, if
/// so, the residuals of the two commutativity identities satisfied by D.
ValidationReport abelian_complex_structure_check(const CDTensors& cd, double tol);

/// Structure constants of the rotated frame e'_i = sum_p U(i,p) e_p.
/// U must be unitary within 1e-10.
CDTensors change_frame(const CDTensors& cd, const Eigen::MatrixXcd& U);

/// The rotated frame itself: rows of the result are U * E.
UnitaryFrame rotate_frame(const UnitaryFrame& frame, const Eigen::MatrixXcd& U);

}  // namespace lieherm
