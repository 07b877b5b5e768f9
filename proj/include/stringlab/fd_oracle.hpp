#pragma once

#include <vector>

#include "stringlab/density.hpp"

namespace stringlab {

/// Symmetric tridiagonal discretization of -(p u')' + q u = lambda rho u on a
/// breakpoint-fitted near-uniform mesh (control-volume assembly, lumped mass).
/// Coefficient discontinuities are mesh nodes, which keeps eigenvalue
/// convergence cleanly second order and Richardson-extrapolable.
struct MeshProblem {
  std::vector<double> nodes;      // all mesh nodes including boundaries
  std::vector<double> diag;       // stiffness diagonal (unknown nodes only)
  std::vector<double> off;        // stiffness subdiagonal, size = diag.size()-1
  std::vector<double> mass;       // diagonal rho weights, strictly positive
  std::vector<std::size_t> dofs;  // node index of each unknown

  /// Number of pencil eigenvalues strictly below lambda (Sturm/LDL count).
  int count_below(double lambda) const;
};

MeshProblem build_mesh_problem(const CoefficientSet& problem, const BoundarySpec& boundary, int n_cells);

struct OracleOptions {
  int mesh_size = 8192;
  bool richardson = true;  // extrapolate over N and 2N
};

/// First n_max eigenvalues by Sturm-sequence bisection on the tridiagonal
/// pencil. Throws std::invalid_argument when n_max exceeds the mesh capacity.
std::vector<double> oracle_eigenvalues(const CoefficientSet& problem, const BoundarySpec& boundary,
                                       int n_max, const OracleOptions& opts = {});

/// Convenience wrapper for the string equation -y'' = lambda rho y.
std::vector<double> oracle_string_eigenvalues(const Density& rho, int n_max, const OracleOptions& opts = {});

/// Eigenvector of the discrete problem by inverse iteration (for zero-location
/// cross-checks only). Returns node positions and values, normalized so that
/// sum mass*u^2 = 1 and u > 0 near the left end.
struct OracleEigenvector {
  double lambda = 0;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> interior_zeros;
};
OracleEigenvector oracle_eigenvector(const CoefficientSet& problem, const BoundarySpec& boundary, int index,
                                     int n_cells = 2048);

}  // namespace stringlab
