#include "stringlab/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stringlab {

namespace {

std::vector<double> fitted_nodes(double a, double b, int n_cells, const std::vector<double>& targets) {
  std::vector<double> nodes(static_cast<std::size_t>(n_cells) + 1);
  const double h = (b - a) / n_cells;
  for (int i = 0; i <= n_cells; ++i) nodes[static_cast<std::size_t>(i)] = a + i * h;
  nodes.front() = a;
  nodes.back() = b;
  // move the nearest interior node onto each coefficient breakpoint
  for (double t : targets) {
    if (t <= a + h * 0.5 || t >= b - h * 0.5) continue;
    auto idx = static_cast<std::size_t>(std::llround((t - a) / h));
    idx = std::clamp<std::size_t>(idx, 1, static_cast<std::size_t>(n_cells) - 1);
    nodes[idx] = t;
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i + 1] - nodes[i] <= h * 1e-6) {
      throw std::runtime_error("fd-oracle: degenerate cell after mesh fitting");
    }
  }
  return nodes;
}

std::vector<double> structure_points(const CoefficientSet& cs, double a, double b) {
  std::vector<double> pts;
  auto add = [&](const std::vector<double>& v) {
    for (double x : v) {
      if (x > a && x < b) pts.push_back(x);
    }
  };
  add(cs.p.jumps());
  add(cs.p.kinks());
  add(cs.q.jumps());
  add(cs.q.kinks());
  add(cs.rho.jumps());
  add(cs.rho.kinks());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

MeshProblem build_mesh_problem(const CoefficientSet& cs, const BoundarySpec& bc, int n_cells) {
  if (n_cells < 4) throw std::invalid_argument("fd-oracle: mesh too small");
  if (!(bc.a >= 0.0 && bc.a < bc.b && bc.b <= 1.0)) {
    throw std::invalid_argument("fd-oracle: invalid interval");
  }
  MeshProblem mp;
  mp.nodes = fitted_nodes(bc.a, bc.b, n_cells, structure_points(cs, bc.a, bc.b));
  const std::size_t n_nodes = mp.nodes.size();

  const bool neumann_left = bc.kind == BoundarySpec::Kind::NeumannNeumann ||
                            bc.kind == BoundarySpec::Kind::NeumannDirichlet;
  const bool neumann_right = bc.kind == BoundarySpec::Kind::NeumannNeumann ||
                             bc.kind == BoundarySpec::Kind::DirichletNeumann;

  const std::size_t first = neumann_left ? 0 : 1;
  const std::size_t last = neumann_right ? n_nodes - 1 : n_nodes - 2;

  // cell midpoint coefficient values; with a fitted mesh these are exact for
  // step coefficients and second-order for smooth ones
  const std::size_t n_c = n_nodes - 1;
  std::vector<double> pc(n_c), qc(n_c), rc(n_c), hc(n_c);
  for (std::size_t i = 0; i < n_c; ++i) {
    const double mid = 0.5 * (mp.nodes[i] + mp.nodes[i + 1]);
    hc[i] = mp.nodes[i + 1] - mp.nodes[i];
    pc[i] = cs.p(mid);
    qc[i] = cs.q(mid);
    rc[i] = cs.rho(mid);
  }

  for (std::size_t j = first; j <= last; ++j) {
    double d = 0, m = 0;
    if (j > 0) {
      d += pc[j - 1] / hc[j - 1] + 0.5 * qc[j - 1] * hc[j - 1];
      m += 0.5 * rc[j - 1] * hc[j - 1];
    }
    if (j < n_nodes - 1) {
      d += pc[j] / hc[j] + 0.5 * qc[j] * hc[j];
      m += 0.5 * rc[j] * hc[j];
    }
    mp.diag.push_back(d);
    mp.mass.push_back(m);
    mp.dofs.push_back(j);
    if (j < last) mp.off.push_back(-pc[j] / hc[j]);
  }
  return mp;
}

int MeshProblem::count_below(double lambda) const {
  // LDL^T pivots of (K - lambda M); Sylvester inertia gives the count
  const std::size_t n = diag.size();
  int count = 0;
  double d = diag[0] - lambda * mass[0];
  if (d == 0.0) d = -1e-300;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    d = (diag[i] - lambda * mass[i]) - off[i - 1] * off[i - 1] / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0) ++count;
  }
  return count;
}

namespace {

std::vector<double> pencil_eigenvalues(const MeshProblem& mp, int n_max) {
  if (n_max >= static_cast<int>(mp.diag.size())) {
    throw std::invalid_argument("fd-oracle: n_max exceeds mesh resolution");
  }
  // Gershgorin enclosure of the pencil spectrum
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const std::size_t n = mp.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    if (i > 0) r += std::abs(mp.off[i - 1]);
    if (i < n - 1) r += std::abs(mp.off[i]);
    lo = std::min(lo, (mp.diag[i] - r) / mp.mass[i]);
    hi = std::max(hi, (mp.diag[i] + r) / mp.mass[i]);
  }
  const double span = hi - lo;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int k = 1; k <= n_max; ++k) {
    double a = lo, b = hi;
    // monotone count: find the point where count_below jumps to >= k
    for (int it = 0; it < 220; ++it) {
      const double mid = 0.5 * (a + b);
      if (mp.count_below(mid) >= k) b = mid; else a = mid;
      if ((b - a) <= 1e-14 * std::max(std::abs(b), span * 1e-6)) break;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

std::vector<double> oracle_eigenvalues(const CoefficientSet& cs, const BoundarySpec& bc, int n_max,
                                       const OracleOptions& opts) {
  if (opts.mesh_size < 16 * n_max) {
    throw std::invalid_argument("fd-oracle: mesh_size must be at least 16*n_max");
  }
  const auto coarse = pencil_eigenvalues(build_mesh_problem(cs, bc, opts.mesh_size), n_max);
  if (!opts.richardson) return coarse;
  const auto fine = pencil_eigenvalues(build_mesh_problem(cs, bc, 2 * opts.mesh_size), n_max);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

std::vector<double> oracle_string_eigenvalues(const Density& rho, int n_max, const OracleOptions& opts) {
  CoefficientSet cs{Density::constant(1.0), Coefficient::constant(0.0), rho};
  return oracle_eigenvalues(cs, BoundarySpec{}, n_max, opts);
}

OracleEigenvector oracle_eigenvector(const CoefficientSet& cs, const BoundarySpec& bc, int index,
                                     int n_cells) {
  MeshProblem mp = build_mesh_problem(cs, bc, n_cells);
  const auto lams = pencil_eigenvalues(mp, index);
  const double lam = lams.back();

  // inverse iteration on (K - sigma M); plain tridiagonal elimination with a
  // zero-pivot nudge is sufficient here since the result is renormalized
  const std::size_t n = mp.diag.size();
  const double sigma = lam * (1.0 + 1e-9) + 1e-12;
  std::vector<double> dm(n), fac(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) dm[i] = mp.diag[i] - sigma * mp.mass[i];
  const double tiny = 1e-280;
  if (std::abs(dm[0]) < tiny) dm[0] = tiny;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    fac[i] = mp.off[i] / dm[i];
    dm[i + 1] -= fac[i] * mp.off[i];
    if (std::abs(dm[i + 1]) < tiny) dm[i + 1] = tiny;
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(3.7 * static_cast<double>(i + 1));
  for (int sweep = 0; sweep < 4; ++sweep) {
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = mp.mass[i] * v[i];
    for (std::size_t i = 0; i + 1 < n; ++i) rhs[i + 1] -= fac[i] * rhs[i];
    v[n - 1] = rhs[n - 1] / dm[n - 1];
    for (std::size_t ii = n - 1; ii-- > 0;) {
      v[ii] = (rhs[ii] - mp.off[ii] * v[ii + 1]) / dm[ii];
    }
    double nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += mp.mass[i] * v[i] * v[i];
    nrm = std::sqrt(nrm);
    for (auto& vi : v) vi /= nrm;
  }
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
    for (auto& vi : v) vi = -vi;
  }

  OracleEigenvector out;
  out.lambda = lam;
  out.x.reserve(n);
  out.u = v;
  for (std::size_t i = 0; i < n; ++i) out.x.push_back(mp.nodes[mp.dofs[i]]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((v[i] > 0) != (v[i + 1] > 0)) {
      const double t = v[i] / (v[i] - v[i + 1]);
      out.interior_zeros.push_back(out.x[i] + t * (out.x[i + 1] - out.x[i]));
    }
  }
  return out;
}

}  // namespace stringlab
