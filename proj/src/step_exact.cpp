#include "stringlab/step_exact.hpp"

#include <cmath>
#include <stdexcept>

#include "stringlab/numerics.hpp"

namespace stringlab {

namespace {

double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
  }
  return std::sin(t) / t;
}

struct Pieces {
  std::vector<double> x;    // piece boundaries, 0 = x[0] < ... < x[k] = 1
  std::vector<double> rho;  // piece values
};

Pieces pieces_of(const Density& d) {
  const auto* breaks = d.as_coefficient().step_breakpoints();
  const auto* vals = d.as_coefficient().step_values();
  if (!breaks || !vals) throw std::invalid_argument("step-exact: density is not a step function");
  Pieces p;
  p.x.push_back(0.0);
  for (double b : *breaks) p.x.push_back(b);
  p.x.push_back(1.0);
  p.rho = *vals;
  return p;
}

}  // namespace

TransferMatrix TransferMatrix::piece(double rho, double length, double lambda) {
  const double w = std::sqrt(lambda * rho);
  const double t = w * length;
  TransferMatrix m;
  m.a11 = std::cos(t);
  m.a12 = length * sinc(t);
  m.a21 = -w * std::sin(t);
  m.a22 = std::cos(t);
  return m;
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& r) const {
  TransferMatrix m;
  m.a11 = a11 * r.a11 + a12 * r.a21;
  m.a12 = a11 * r.a12 + a12 * r.a22;
  m.a21 = a21 * r.a11 + a22 * r.a21;
  m.a22 = a21 * r.a12 + a22 * r.a22;
  return m;
}

double characteristic(const Density& step_density, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("characteristic: lambda must be positive");
  const Pieces p = pieces_of(step_density);
  double y = 0.0, yp = 1.0;
  for (std::size_t i = 0; i + 1 < p.x.size(); ++i) {
    const TransferMatrix m = TransferMatrix::piece(p.rho[i], p.x[i + 1] - p.x[i], lambda);
    const double ny = m.a11 * y + m.a12 * yp;
    const double nyp = m.a21 * y + m.a22 * yp;
    y = ny;
    yp = nyp;
  }
  return y;
}

int oscillation_count(const Density& step_density, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("oscillation_count: lambda must be positive");
  const Pieces p = pieces_of(step_density);
  double y = 0.0, yp = 1.0;
  int zeros = 0;
  for (std::size_t i = 0; i + 1 < p.x.size(); ++i) {
    const double w = std::sqrt(lambda * p.rho[i]);
    const double len = p.x[i + 1] - p.x[i];
    // y(s) = C sin(w s + delta) on the piece, delta from initial data
    const double delta = std::atan2(w * y, yp);
    // count m with (m pi - delta) in (0, w*len): zeros strictly inside
    const double lo = delta / M_PI;
    const double hi = (delta + w * len) / M_PI;
    int m_lo = static_cast<int>(std::floor(lo)) + 1;
    int m_hi = static_cast<int>(std::ceil(hi)) - 1;
    // exclude a zero landing exactly on the right piece boundary; it is
    // counted by the next piece's initial data (or is y(1)=0 itself)
    if (m_hi >= m_lo) {
      double s_hi = (m_hi * M_PI - delta) / w;
      if (s_hi >= len * (1.0 - 1e-14)) --m_hi;
    }
    if (m_hi >= m_lo) zeros += m_hi - m_lo + 1;
    const TransferMatrix tm = TransferMatrix::piece(p.rho[i], len, lambda);
    const double ny = tm.a11 * y + tm.a12 * yp;
    const double nyp = tm.a21 * y + tm.a22 * yp;
    y = ny;
    yp = nyp;
    // a boundary zero between pieces is an interior zero of y
    if (i + 2 < p.x.size() && y == 0.0) ++zeros;
  }
  return zeros;
}

std::vector<double> exact_eigenvalues(const Density& step_density, int n_max) {
  if (n_max < 1) throw std::invalid_argument("exact_eigenvalues: n_max >= 1 required");
  const auto [rho_min, rho_max] = step_density.bounds();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    // lambda_n is the unique point where the zero count jumps n-1 -> n;
    // bracket it with the constant-density bounds, expand if needed
    double lo = 0.5 * (n * M_PI) * (n * M_PI) / rho_max;
    double hi = 2.0 * (n * M_PI) * (n * M_PI) / rho_min;
    int guard = 0;
    while (oscillation_count(step_density, lo) >= n && ++guard < 200) lo *= 0.5;
    guard = 0;
    while (oscillation_count(step_density, hi) < n && ++guard < 200) hi *= 2.0;
    if (guard >= 200) throw std::runtime_error("exact_eigenvalues: bracket expansion cap exceeded");
    // bisection on the count, then a final polish on the characteristic sign
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (oscillation_count(step_density, mid) < n) lo = mid; else hi = mid;
    }
    double flo = characteristic(step_density, lo);
    double fhi = characteristic(step_density, hi);
    double lam = 0.5 * (lo + hi);
    if ((flo <= 0.0) != (fhi <= 0.0)) {
      lam = bisect_secant([&](double l) { return characteristic(step_density, l); }, lo, hi, flo, fhi,
                          1e-15 * hi, 0.0, 80)
                .x;
    }
    out.push_back(lam);
  }
  return out;
}

}  // namespace stringlab
