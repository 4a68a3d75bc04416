#pragma once

// Independent oracles for the geometry pipeline. Each recomputes a quantity
// through a different route than the implementation under test: the curvature
// through the covariant-derivative commutator, the torsion derivatives through
// the generic tensor Leibniz rule, and the diagonal-pair symmetrized curvature
// through its closed form. Test-only code.

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieherm/chern_geometry.hpp"
#include "lieherm/lie_structure.hpp"

namespace lieherm::oracles {

/// Matrix of the connection along e_l: column k holds the frame coefficients
/// of the derivative of e_k in the direction e_l.
Eigen::MatrixXcd connection_holo(const CDTensors& cd, int l);

/// Matrix of the connection along conj(e_l).
Eigen::MatrixXcd connection_anti(const CDTensors& cd, int l);

/// Curvature via the commutator of covariant derivatives minus the derivative
/// along the bracket, assembled from the connection matrices and the bracket
/// decomposition of mixed-type pairs.
CTensor4 curvature_commutator_route(const CDTensors& cd);

/// Torsion as the defining combination of connection coefficients and bracket
/// coefficients on frame pairs.
CTensor3 torsion_defining_route(const CDTensors& cd);

/// Covariant derivatives of the torsion via the Leibniz rule for a tensor with
/// two lower and one upper slot, using the connection matrices.
std::pair<CTensor4, CTensor4> torsion_derivatives_leibniz(const CDTensors& cd, const CTensor3& T);

/// Closed form of the symmetrized curvature on (i, i, k, k) index pairs.
double rhat_pair_closed_form(const CDTensors& cd, int i, int k);

/// Five-point-stencil gradient, one order higher than central differences.
std::vector<double> five_point_gradient(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& p, double epsilon);

}  // namespace lieherm::oracles
