#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/lie_structure.hpp"

namespace lieherm {

enum class SalamonCondition {
  CFiltration,  // C^j_{ik} = 0 unless j > i or j > k
  DFiltration,  // D^j_{ik} = 0 unless i > j
  DTopRow,      // consequence: D^n_{ik} = 0 for all i, k
};

struct SalamonViolation {
  SalamonCondition condition = SalamonCondition::CFiltration;
  bool in_c = false;
  int j = 0, i = 0, k = 0;  // 0-based tensor indices (upper, lower pair)
  Complex value;
};

struct SalamonReport {
  bool satisfied = false;
  std::vector<SalamonViolation> violations;
};

enum class FlatnessConclusion {
  FlatComplexGroup,
  RefutedConstantH,
  Inconclusive,
};

struct CertificateStep {
  std::string claim_id;
  std::string description;
  double max_residual = 0.0;
  bool passed = false;
};

/// Machine-checked replay of the flatness argument: an ordered list of
/// assertion residuals plus the fitted curvature constant.
struct FlatnessCertificate {
  std::vector<CertificateStep> steps;
  double c_value = 0.0;
  FlatnessConclusion conclusion = FlatnessConclusion::Inconclusive;
};

/// Checks the filtration conditions on C and D that characterize a Salamon
/// frame, including the forced vanishing of the top row of D.
SalamonReport verify_salamon_frame(const CDTensors& cd, double tol);

/// Unitary U such that change_frame(cd, U) is in Salamon form. Built by
/// iteratively collecting (1,0)-forms that are closed modulo the ideal of the
/// forms already chosen, with deterministic pivoting, and orthonormalizing in
/// selection order. Throws StructuralError when the collection stalls, which
/// happens exactly when the algebra is not nilpotent.
Eigen::MatrixXcd salamon_rotation(const CDTensors& cd);

/// Salamon frame for a valid nilpotent algebra: the standard unitary frame
/// rotated by salamon_rotation of its structure constants.
UnitaryFrame construct_salamon_frame(const RealLieAlgebra& spec);

/// Replays the constant-curvature flatness argument on a Salamon-form cd.
/// Step 0 asserts the constant-H premise; on failure the conclusion is
/// RefutedConstantH and no further assertions are evaluated. If the premise
/// holds, the sign facts on the extreme curvature diagonals force the constant
/// to vanish, and a descending sweep over the top index asserts the vanishing
/// of D slot by slot. All steps passing yields FlatComplexGroup; a failed step
/// under a holding premise yields Inconclusive, which cannot happen for exact
/// nilpotent inputs and therefore flags a tolerance or consistency problem.
FlatnessCertificate certify_flatness(const CDTensors& cd, double tol);

}  // namespace lieherm
