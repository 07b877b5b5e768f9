#include "stringlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stringlab/numerics.hpp"

namespace stringlab {

namespace {

struct FamilyDef {
  std::function<double(double, const std::map<std::string, double>&)> eval;
  std::function<double(double, const std::map<std::string, double>&)> deriv;
  // kinks inside (0,1), given the params
  std::function<std::vector<double>(const std::map<std::string, double>&)> kinks;
  // exact range on [0,1]
  std::function<std::pair<double, double>(const std::map<std::string, double>&)> bounds;
};

double param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("family parameter missing: " + key);
  return it->second;
}

std::pair<double, double> minmax_of(std::initializer_list<double> vals) {
  auto [lo, hi] = std::minmax(vals);
  return {lo, hi};
}

const std::map<std::string, FamilyDef>& family_registry() {
  static const std::map<std::string, FamilyDef> reg = [] {
    std::map<std::string, FamilyDef> r;
    r["constant"] = {
        [](double, const auto& p) { return param(p, "value"); },
        [](double, const auto&) { return 0.0; },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double v = param(p, "value");
          return std::pair{v, v};
        }};
    r["linear"] = {
        [](double x, const auto& p) { return param(p, "a") + param(p, "b") * x; },
        [](double, const auto& p) { return param(p, "b"); },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) { return minmax_of({param(p, "a"), param(p, "a") + param(p, "b")}); }};
    // floor + curvature*(x-x0)^2 ; single-well for curvature>0 with x0 in (0,1)
    r["quadratic"] = {
        [](double x, const auto& p) {
          double d = x - param(p, "x0");
          return param(p, "floor") + param(p, "curvature") * d * d;
        },
        [](double x, const auto& p) { return 2.0 * param(p, "curvature") * (x - param(p, "x0")); },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double x0 = param(p, "x0"), f = param(p, "floor"), c = param(p, "curvature");
          double e0 = f + c * x0 * x0, e1 = f + c * (1 - x0) * (1 - x0);
          if (x0 > 0.0 && x0 < 1.0) return minmax_of({e0, e1, f});
          return minmax_of({e0, e1});
        }};
    // floor * cosh(rate*(x-x0)); single-well with minimum floor at x0
    r["cosh-well"] = {
        [](double x, const auto& p) {
          return param(p, "floor") * std::cosh(param(p, "rate") * (x - param(p, "x0")));
        },
        [](double x, const auto& p) {
          return param(p, "floor") * param(p, "rate") * std::sinh(param(p, "rate") * (x - param(p, "x0")));
        },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double x0 = param(p, "x0"), f = param(p, "floor"), rt = param(p, "rate");
          double e0 = f * std::cosh(rt * x0), e1 = f * std::cosh(rt * (1 - x0));
          if (x0 > 0.0 && x0 < 1.0) return minmax_of({e0, e1, f});
          return minmax_of({e0, e1});
        }};
    // floor + (x<x0 ? cl : cr) * (x-x0)^2 ; asymmetric well with transition exactly x0
    r["two-sided-quadratic"] = {
        [](double x, const auto& p) {
          double x0 = param(p, "x0");
          double d = x - x0;
          return param(p, "floor") + (x < x0 ? param(p, "left_curvature") : param(p, "right_curvature")) * d * d;
        },
        [](double x, const auto& p) {
          double x0 = param(p, "x0");
          return 2.0 * (x < x0 ? param(p, "left_curvature") : param(p, "right_curvature")) * (x - x0);
        },
        [](const auto& p) {
          double x0 = param(p, "x0");
          return (x0 > 0 && x0 < 1) ? std::vector<double>{x0} : std::vector<double>{};
        },
        [](const auto& p) {
          double x0 = param(p, "x0"), f = param(p, "floor");
          double e0 = f + param(p, "left_curvature") * x0 * x0;
          double e1 = f + param(p, "right_curvature") * (1 - x0) * (1 - x0);
          return minmax_of({e0, e1, f});
        }};
    // offset + amp*sin(pi x): symmetric single-barrier for amp>0
    r["sine-bump"] = {
        [](double x, const auto& p) {
          return param(p, "offset") + param(p, "amp") * std::sin(M_PI * x);
        },
        [](double x, const auto& p) { return param(p, "amp") * M_PI * std::cos(M_PI * x); },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double o = param(p, "offset"), a = param(p, "amp");
          return minmax_of({o, o + a});
        }};
    // amp*(sin(pi x) - sin(pi a0)): single-barrier potential vanishing at a0 and 1-a0
    r["shifted-sine"] = {
        [](double x, const auto& p) {
          return param(p, "amp") * (std::sin(M_PI * x) - std::sin(M_PI * param(p, "a0")));
        },
        [](double x, const auto& p) { return param(p, "amp") * M_PI * std::cos(M_PI * x); },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double a = param(p, "amp"), s = std::sin(M_PI * param(p, "a0"));
          return minmax_of({-a * s, a * (1.0 - s)});
        }};
    // tent: offset + amp * (x<x0 ? x/x0 : (1-x)/(1-x0)); kink at x0
    r["tent"] = {
        [](double x, const auto& p) {
          double x0 = param(p, "x0");
          double t = x < x0 ? x / x0 : (1 - x) / (1 - x0);
          return param(p, "offset") + param(p, "amp") * t;
        },
        [](double x, const auto& p) {
          double x0 = param(p, "x0");
          return param(p, "amp") * (x < x0 ? 1.0 / x0 : -1.0 / (1 - x0));
        },
        [](const auto& p) { return std::vector<double>{param(p, "x0")}; },
        [](const auto& p) {
          double o = param(p, "offset"), a = param(p, "amp");
          return minmax_of({o, o + a});
        }};
    // a * exp(b x): smooth monotone
    r["exponential"] = {
        [](double x, const auto& p) { return param(p, "a") * std::exp(param(p, "b") * x); },
        [](double x, const auto& p) {
          return param(p, "a") * param(p, "b") * std::exp(param(p, "b") * x);
        },
        [](const auto&) { return std::vector<double>{}; },
        [](const auto& p) {
          double a = param(p, "a"), b = param(p, "b");
          return minmax_of({a, a * std::exp(b)});
        }};
    return r;
  }();
  return reg;
}

}  // namespace

struct Coefficient::Impl {
  enum class Tag { Step, Grid, Family, Blend, Product, Mapped } tag;

  // Step
  std::vector<double> breaks;
  std::vector<double> values;
  // Grid
  std::vector<double> samples;
  // Family
  std::string name;
  std::map<std::string, double> params;
  const FamilyDef* def = nullptr;
  // Blend
  double wa = 0, wb = 0;
  std::shared_ptr<const Impl> a, b;
  // Mapped
  std::shared_ptr<const MonotoneCubic> x_of_t;
  std::function<double(double)> dt_dx;

  // cached structure
  std::vector<double> jump_pts;
  std::vector<double> kink_pts;
  std::pair<double, double> range{0, 0};

  double eval(double x, Side side) const {
    switch (tag) {
      case Tag::Step: {
        std::size_t i = piece_index(x, side);
        return values[i];
      }
      case Tag::Grid: {
        const std::size_t n = samples.size();
        double t = x * static_cast<double>(n - 1);
        std::size_t i = static_cast<std::size_t>(t);
        if (i >= n - 1) i = n - 2;
        double f = t - static_cast<double>(i);
        return samples[i] * (1 - f) + samples[i + 1] * f;
      }
      case Tag::Family:
        return def->eval(side == Side::Left ? std::nextafter(x, -1.0) : x, params);
      case Tag::Blend:
        return wa * Coefficient(a).eval(x, side) + wb * Coefficient(b).eval(x, side);
      case Tag::Product:
        return Coefficient(a).eval(x, side) * Coefficient(b).eval(x, side);
      case Tag::Mapped: {
        double xi = std::clamp((*x_of_t)(x), 0.0, 1.0);
        return Coefficient(a).eval(xi, side);
      }
    }
    return 0;
  }

  double deriv(double x, Side side) const {
    switch (tag) {
      case Tag::Step:
        return 0.0;
      case Tag::Grid: {
        const std::size_t n = samples.size();
        double t = x * static_cast<double>(n - 1);
        std::size_t i = static_cast<std::size_t>(t);
        if (i >= n - 1) i = n - 2;
        if (side == Side::Left && t == static_cast<double>(i) && i > 0) --i;
        return (samples[i + 1] - samples[i]) * static_cast<double>(n - 1);
      }
      case Tag::Family:
        return def->deriv(side == Side::Left ? std::nextafter(x, -1.0) : x, params);
      case Tag::Blend:
        return wa * Coefficient(a).derivative(x, side) + wb * Coefficient(b).derivative(x, side);
      case Tag::Product:
        return Coefficient(a).derivative(x, side) * Coefficient(b).eval(x, side) +
               Coefficient(a).eval(x, side) * Coefficient(b).derivative(x, side);
      case Tag::Mapped: {
        double xi = std::clamp((*x_of_t)(x), 0.0, 1.0);
        return Coefficient(a).derivative(xi, side) / dt_dx(xi);
      }
    }
    return 0;
  }

  std::size_t piece_index(double x, Side side) const {
    // right-continuous by default; x=1 belongs to the last piece
    auto it = (side == Side::Right) ? std::upper_bound(breaks.begin(), breaks.end(), x)
                                    : std::lower_bound(breaks.begin(), breaks.end(), x);
    return static_cast<std::size_t>(it - breaks.begin());
  }
};

Coefficient Coefficient::step(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("step: need one more value than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= 0.0 || breakpoints[i] >= 1.0) {
      throw std::invalid_argument("step: breakpoints must lie in (0,1)");
    }
    if (i > 0 && breakpoints[i] <= breakpoints[i - 1]) {
      throw std::invalid_argument("step: breakpoints must be strictly increasing");
    }
  }
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Step;
  impl->breaks = std::move(breakpoints);
  impl->values = std::move(values);
  impl->jump_pts = impl->breaks;
  auto [lo, hi] = std::minmax_element(impl->values.begin(), impl->values.end());
  impl->range = {*lo, *hi};
  return Coefficient(std::move(impl));
}

Coefficient Coefficient::grid(std::vector<double> samples) {
  if (samples.size() < 3) throw std::invalid_argument("grid: need at least 3 samples");
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Grid;
  impl->samples = std::move(samples);
  const std::size_t n = impl->samples.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    impl->kink_pts.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  auto [lo, hi] = std::minmax_element(impl->samples.begin(), impl->samples.end());
  impl->range = {*lo, *hi};
  return Coefficient(std::move(impl));
}

Coefficient Coefficient::family(const std::string& name, const std::map<std::string, double>& params) {
  auto it = family_registry().find(name);
  if (it == family_registry().end()) throw std::invalid_argument("unknown family: " + name);
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Family;
  impl->name = name;
  impl->params = params;
  impl->def = &it->second;
  impl->kink_pts = it->second.kinks(params);
  impl->range = it->second.bounds(params);
  return Coefficient(std::move(impl));
}

namespace {
std::vector<double> merge_sorted(const std::vector<double>& u, const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(u.size() + v.size());
  std::merge(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace

Coefficient Coefficient::blend(double wa, const Coefficient& a, double wb, const Coefficient& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("blend: invalid operand");
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Blend;
  impl->wa = wa;
  impl->wb = wb;
  impl->a = a.impl_;
  impl->b = b.impl_;
  impl->jump_pts = merge_sorted(a.jumps(), b.jumps());
  impl->kink_pts = merge_sorted(a.kinks(), b.kinks());
  auto ra = a.bounds(), rb = b.bounds();
  auto of = [](double w, std::pair<double, double> r) {
    return w >= 0 ? std::pair{w * r.first, w * r.second} : std::pair{w * r.second, w * r.first};
  };
  auto sa = of(wa, ra), sb = of(wb, rb);
  impl->range = {sa.first + sb.first, sa.second + sb.second};
  return Coefficient(std::move(impl));
}

Coefficient Coefficient::product(const Coefficient& a, const Coefficient& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("product: invalid operand");
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Product;
  impl->a = a.impl_;
  impl->b = b.impl_;
  impl->jump_pts = merge_sorted(a.jumps(), b.jumps());
  impl->kink_pts = merge_sorted(a.kinks(), b.kinks());
  auto ra = a.bounds(), rb = b.bounds();
  double c[4] = {ra.first * rb.first, ra.first * rb.second, ra.second * rb.first, ra.second * rb.second};
  impl->range = {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  return Coefficient(std::move(impl));
}

Coefficient Coefficient::reparametrized(const Coefficient& inner,
                                        std::shared_ptr<const MonotoneCubic> x_of_t,
                                        std::function<double(double)> dt_dx) {
  if (!inner.valid() || !x_of_t) throw std::invalid_argument("reparametrized: invalid operand");
  auto impl = std::make_shared<Coefficient::Impl>();
  impl->tag = Impl::Tag::Mapped;
  impl->a = inner.impl_;
  impl->x_of_t = std::move(x_of_t);
  impl->dt_dx = std::move(dt_dx);
  // map structural points through t(x): t is increasing, so invert by bisection on x_of_t
  auto t_of_x = [&](double x) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (lo + hi);
      if ((*impl->x_of_t)(mid) < x) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  for (double j : inner.jumps()) impl->jump_pts.push_back(t_of_x(j));
  for (double k : inner.kinks()) impl->kink_pts.push_back(t_of_x(k));
  impl->range = inner.bounds();  // range is invariant under reparametrization
  return Coefficient(std::move(impl));
}

double Coefficient::eval(double x, Side side) const { return impl_->eval(x, side); }
double Coefficient::derivative(double x, Side side) const { return impl_->deriv(x, side); }
const std::vector<double>& Coefficient::jumps() const { return impl_->jump_pts; }
const std::vector<double>& Coefficient::kinks() const { return impl_->kink_pts; }
std::pair<double, double> Coefficient::bounds() const { return impl_->range; }
bool Coefficient::is_step() const { return impl_ && impl_->tag == Impl::Tag::Step; }

const std::vector<double>* Coefficient::step_breakpoints() const {
  return is_step() ? &impl_->breaks : nullptr;
}
const std::vector<double>* Coefficient::step_values() const {
  return is_step() ? &impl_->values : nullptr;
}
const std::string* Coefficient::family_name() const {
  return (impl_ && impl_->tag == Impl::Tag::Family) ? &impl_->name : nullptr;
}
const std::map<std::string, double>* Coefficient::family_params() const {
  return (impl_ && impl_->tag == Impl::Tag::Family) ? &impl_->params : nullptr;
}
const std::vector<double>* Coefficient::grid_samples() const {
  return (impl_ && impl_->tag == Impl::Tag::Grid) ? &impl_->samples : nullptr;
}

Coefficient Coefficient::reflected() const {
  switch (impl_->tag) {
    case Impl::Tag::Step: {
      std::vector<double> rb, rv(impl_->values.rbegin(), impl_->values.rend());
      for (auto it = impl_->breaks.rbegin(); it != impl_->breaks.rend(); ++it) rb.push_back(1.0 - *it);
      return step(std::move(rb), std::move(rv));
    }
    case Impl::Tag::Grid: {
      std::vector<double> rs(impl_->samples.rbegin(), impl_->samples.rend());
      return grid(std::move(rs));
    }
    default: {
      // generic reflection via a dense grid resample
      const int n = 4097;
      std::vector<double> rs(n);
      for (int i = 0; i < n; ++i) {
        rs[static_cast<std::size_t>(i)] = eval(1.0 - static_cast<double>(i) / (n - 1), Side::Right);
      }
      return grid(std::move(rs));
    }
  }
}

Density::Density(Coefficient c) : fn_(std::move(c)) {
  if (!fn_.valid()) throw std::invalid_argument("density: empty coefficient");
  // exact check where possible, sampled otherwise
  if (fn_.bounds().first <= 0.0) {
    if (fn_.is_step() || fn_.grid_samples()) {
      throw std::invalid_argument("density: values must be strictly positive");
    }
    for (int i = 0; i <= 2048; ++i) {
      if (fn_(static_cast<double>(i) / 2048.0) <= 0.0) {
        throw std::invalid_argument("density: values must be strictly positive");
      }
    }
  }
}

double density_eval(const Density& d, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("density_eval: x outside [0,1]");
  return d(x);
}

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Constant: return "constant";
    case ShapeKind::Decreasing: return "decreasing";
    case ShapeKind::Increasing: return "increasing";
    case ShapeKind::SingleWell: return "single-well";
    case ShapeKind::SingleBarrier: return "single-barrier";
    case ShapeKind::Other: return "other";
  }
  return "other";
}

Classification classify_samples(const std::vector<double>& xs, const std::vector<double>& vals,
                                double tol) {
  Classification out;
  const std::size_t n = vals.size();
  if (n < 2) return out;

  auto lo = std::min_element(vals.begin(), vals.end());
  auto hi = std::max_element(vals.begin(), vals.end());
  const double range = *hi - *lo;
  const std::size_t imin = static_cast<std::size_t>(lo - vals.begin());
  const std::size_t imax = static_cast<std::size_t>(hi - vals.begin());

  auto monotone_on = [&](std::size_t i0, std::size_t i1, int dir) {
    for (std::size_t i = i0; i + 1 <= i1; ++i) {
      double inc = vals[i + 1] - vals[i];
      if (dir > 0 && inc < -tol) return false;
      if (dir < 0 && inc > tol) return false;
    }
    return true;
  };
  auto span = [&](std::size_t i0, std::size_t i1) {
    double a = vals[i0], b = vals[i0];
    for (std::size_t i = i0; i <= i1; ++i) {
      a = std::min(a, vals[i]);
      b = std::max(b, vals[i]);
    }
    return b - a;
  };

  // sign-change bookkeeping for potentials
  std::vector<double> changes;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((vals[i] < -tol && vals[i + 1] > tol) || (vals[i] > tol && vals[i + 1] < -tol)) {
      changes.push_back(0.5 * (xs[i] + xs[i + 1]));
    }
  }
  out.sign_change_count = static_cast<int>(changes.size());
  if (changes.size() == 1) out.sign_change = changes.front();

  if (range <= tol) {
    out.kind = ShapeKind::Constant;
    return out;
  }

  if (monotone_on(0, imin, -1) && monotone_on(imin, n - 1, +1)) {
    if (span(imin, n - 1) <= tol) {
      out.kind = ShapeKind::Decreasing;
    } else if (span(0, imin) <= tol) {
      out.kind = ShapeKind::Increasing;
    } else {
      out.kind = ShapeKind::SingleWell;
    }
    out.x0 = xs[imin];
    return out;
  }
  if (monotone_on(0, imax, +1) && monotone_on(imax, n - 1, -1)) {
    out.kind = ShapeKind::SingleBarrier;
    out.x0 = xs[imax];
    return out;
  }
  out.kind = ShapeKind::Other;
  return out;
}

Classification classify(const Coefficient& f, const ClassifyOptions& opts) {
  std::vector<double> xs;
  const int n = std::max(opts.resolution, 8);
  xs.reserve(static_cast<std::size_t>(n) + 8);
  for (int i = 0; i <= n; ++i) xs.push_back(static_cast<double>(i) / n);
  const double eps = 1e-9;
  for (double b : f.jumps()) {
    xs.push_back(std::max(0.0, b - eps));
    xs.push_back(std::min(1.0, b + eps));
  }
  for (double k : f.kinks()) xs.push_back(k);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vals;
  vals.reserve(xs.size());
  for (double x : xs) vals.push_back(f(x));

  Classification c = classify_samples(xs, vals, opts.tolerance);
  // leftmost argmin/argmax convention: snap to the left edge of a flat run
  if (c.x0) {
    std::size_t i = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), *c.x0) - xs.begin());
    while (i > 0 && std::abs(vals[i - 1] - vals[i]) <= opts.tolerance) --i;
    c.x0 = xs[i];
  }
  return c;
}

}  // namespace stringlab
