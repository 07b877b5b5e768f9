#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stringlab {

/// Deterministic, platform-independent RNG (splitmix64). std distributions are
/// implementation-defined, so reports built on this stay byte-identical
/// across toolchains for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Derive an independent stream for (seed, tag, index).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    Rng r(seed ^ (tag * 0x9E3779B97F4A7C15ull) ^ (index + 0x100));
    r.next_u64();
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
};

struct RootResult {
  double x = 0;
  double fx = 0;
  int iterations = 0;
  bool converged = false;
};

/// Bisection followed by secant polishing on a bracketing interval.
/// `f(lo)` and `f(hi)` must have opposite signs.
inline RootResult bisect_secant(const std::function<double(double)>& f, double lo, double hi,
                                double flo, double fhi, double xtol, double ftol,
                                int max_iter = 200) {
  if (!(flo <= 0.0) == !(fhi <= 0.0)) {
    throw std::invalid_argument("bisect_secant: endpoints do not bracket a root");
  }
  RootResult res;
  double a = lo, b = hi, fa = flo, fb = fhi;
  // Bisect until the bracket is narrow, then let secant finish.
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    double m, fm;
    bool use_secant = (b - a) < 1024 * xtol;
    if (use_secant && fb != fa) {
      m = b - fb * (b - a) / (fb - fa);
      if (!(m > a && m < b)) m = 0.5 * (a + b);
    } else {
      m = 0.5 * (a + b);
    }
    fm = f(m);
    if (std::abs(fm) <= ftol || (b - a) <= xtol) {
      res.x = m;
      res.fx = fm;
      res.converged = true;
      return res;
    }
    if ((fm <= 0.0) == (fa <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  res.x = 0.5 * (a + b);
  res.fx = f(res.x);
  res.converged = std::abs(res.fx) <= ftol * 100;
  return res;
}

/// Composite Simpson over [a,b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Composite Simpson on [0,1] split at the given interior points, so that
/// integrands with known kinks or jumps are integrated panel by panel.
inline double simpson_split(const std::function<double(double)>& f, double a, double b,
                            std::vector<double> splits, int n_per_panel = 64) {
  splits.push_back(a);
  splits.push_back(b);
  std::sort(splits.begin(), splits.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    double lo = splits[i], hi = splits[i + 1];
    if (hi <= a || lo >= b) continue;
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    if (hi - lo < 1e-15) continue;
    // evaluate strictly inside the panel to dodge jump points
    const double eps = (hi - lo) * 1e-12;
    acc += simpson(f, lo + eps, hi - eps, n_per_panel);
  }
  return acc;
}

/// Monotone cubic interpolant (Fritsch-Carlson). Used for inverting the
/// strictly monotone coordinate maps of the transformation chain.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys) : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >=2 nodes");
    m_.assign(n, 0.0);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = x_[i + 1] - x_[i];
      if (h <= 0) throw std::invalid_argument("MonotoneCubic: abscissae not increasing");
      d[i] = (y_[i + 1] - y_[i]) / h;
    }
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double t = 3.0 / std::sqrt(s);
        m_[i] = t * a * d[i];
        m_[i + 1] = t * b * d[i];
      }
    }
  }

  double operator()(double x) const {
    const auto& xs = x_;
    std::size_t i = locate(x);
    const double h = xs[i + 1] - xs[i];
    const double t = (x - xs[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
  }

  double derivative(double x) const {
    std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double dh00 = (6 * t * t - 6 * t) / h, dh10 = 3 * t * t - 4 * t + 1;
    const double dh01 = (-6 * t * t + 6 * t) / h, dh11 = 3 * t * t - 2 * t;
    return dh00 * y_[i] + dh10 * m_[i] + dh01 * y_[i + 1] + dh11 * m_[i + 1];
  }

  bool empty() const { return x_.empty(); }

 private:
  std::size_t locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace stringlab
