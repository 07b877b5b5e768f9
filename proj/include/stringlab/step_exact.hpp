#pragma once

#include <array>
#include <vector>

#include "stringlab/density.hpp"

namespace stringlab {

/// 2x2 matrix propagating (y, y') across one constant-density piece of
/// -y'' = lambda rho y. Determinant is 1 (Wronskian preservation).
struct TransferMatrix {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;

  static TransferMatrix piece(double rho, double length, double lambda);
  TransferMatrix operator*(const TransferMatrix& rhs) const;
  double determinant() const { return a11 * a22 - a12 * a21; }
};

/// y(1; lambda) for the shooting solution with y(0)=0, y'(0)=1, propagated
/// exactly across the pieces of a step density. Roots are the Dirichlet
/// eigenvalues. Throws std::domain_error for lambda <= 0 and
/// std::invalid_argument if the density is not a step.
double characteristic(const Density& step_density, double lambda);

/// Number of zeros of y(.; lambda) in (0,1), computed from per-piece phase
/// increments (exact oscillation count, no sampling).
int oscillation_count(const Density& step_density, double lambda);

/// First n_max Dirichlet eigenvalues of the step-density string, each located
/// by oscillation-count bisection to relative accuracy ~1e-12 and polished on
/// the characteristic.
std::vector<double> exact_eigenvalues(const Density& step_density, int n_max);

}  // namespace stringlab
