#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stringlab {

/// Which one-sided limit to take at a discontinuity. Coefficients are
/// right-continuous by convention; integrators ask for the left limit when
/// they evaluate exactly at the right end of a smooth segment.
enum class Side { Left, Right };

class MonotoneCubic;

/// A scalar coefficient function on [0,1]. Signed in general; the positive
/// specialization is `Density` below. Representations:
///   - step: piecewise constant with strictly increasing interior breakpoints
///   - grid: uniform samples with linear interpolation
///   - family: named closed form with a parameter map
/// plus composite nodes (affine blend, product, reparametrization) that arise
/// from homotopies and the transformation chain. All values are immutable and
/// cheap to copy.
class Coefficient {
 public:
  Coefficient() = default;

  static Coefficient step(std::vector<double> breakpoints, std::vector<double> values);
  static Coefficient grid(std::vector<double> samples);
  static Coefficient family(const std::string& name, const std::map<std::string, double>& params);
  static Coefficient constant(double c) { return family("constant", {{"value", c}}); }
  /// wa * a + wb * b
  static Coefficient blend(double wa, const Coefficient& a, double wb, const Coefficient& b);
  static Coefficient product(const Coefficient& a, const Coefficient& b);
  /// g(x(t)) for a strictly increasing map t(x) of [0,1] onto itself.
  /// `x_of_t` inverts the map, `dt_dx` is its exact derivative at x.
  static Coefficient reparametrized(const Coefficient& inner, std::shared_ptr<const MonotoneCubic> x_of_t,
                                    std::function<double(double)> dt_dx);

  double operator()(double x) const { return eval(x, Side::Right); }
  double eval(double x, Side side) const;
  /// One-sided derivative. Exact for families and steps, piecewise slope for grids.
  double derivative(double x, Side side = Side::Right) const;
  /// f'(x)/f(x); only meaningful away from zeros of f.
  double log_derivative(double x, Side side = Side::Right) const {
    return derivative(x, side) / eval(x, side);
  }

  /// Interior discontinuity locations, strictly increasing.
  const std::vector<double>& jumps() const;
  /// Interior derivative-discontinuity locations (excluding jumps).
  const std::vector<double>& kinks() const;
  /// Conservative [min, max] enclosure of the range on [0,1]. Exact for
  /// steps, grids and the named families.
  std::pair<double, double> bounds() const;

  bool is_step() const;
  const std::vector<double>* step_breakpoints() const;
  const std::vector<double>* step_values() const;
  const std::string* family_name() const;
  const std::map<std::string, double>* family_params() const;
  const std::vector<double>* grid_samples() const;

  bool valid() const { return impl_ != nullptr; }

  /// Reflection x -> 1-x, exact for every representation.
  Coefficient reflected() const;

 private:
  struct Impl;
  explicit Coefficient(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// A strictly positive coefficient. Positivity is validated at construction
/// (exactly for steps/grids, via bounds and sampling otherwise).
class Density {
 public:
  Density() = default;
  explicit Density(Coefficient c);

  static Density step(std::vector<double> breakpoints, std::vector<double> values) {
    return Density(Coefficient::step(std::move(breakpoints), std::move(values)));
  }
  static Density grid(std::vector<double> samples) { return Density(Coefficient::grid(std::move(samples))); }
  static Density family(const std::string& name, const std::map<std::string, double>& params) {
    return Density(Coefficient::family(name, params));
  }
  static Density constant(double c) { return Density(Coefficient::constant(c)); }

  double operator()(double x) const { return fn_(x); }
  double eval(double x, Side side) const { return fn_.eval(x, side); }
  double derivative(double x, Side side = Side::Right) const { return fn_.derivative(x, side); }
  double log_derivative(double x, Side side = Side::Right) const { return fn_.log_derivative(x, side); }
  const std::vector<double>& jumps() const { return fn_.jumps(); }
  const std::vector<double>& kinks() const { return fn_.kinks(); }
  std::pair<double, double> bounds() const { return fn_.bounds(); }
  double min_value() const { return fn_.bounds().first; }
  double max_value() const { return fn_.bounds().second; }
  bool is_step() const { return fn_.is_step(); }
  bool valid() const { return fn_.valid(); }

  const Coefficient& as_coefficient() const { return fn_; }
  Density reflected() const { return Density(fn_.reflected()); }

 private:
  Coefficient fn_;
};

/// Evaluate a density at x in [0,1]; throws std::domain_error outside.
double density_eval(const Density& d, double x);

/// Coefficient triple of -(p y')' + q y = lambda rho y.
struct CoefficientSet {
  Density p;
  Coefficient q;
  Density rho;
};

struct BoundarySpec {
  enum class Kind {
    DirichletDirichlet,  // y(a) = y(b) = 0
    NeumannNeumann,      // y'(a) = y'(b) = 0
    DirichletNeumann,    // y(a) = y'(b) = 0
    NeumannDirichlet,    // y'(a) = y(b) = 0
  };
  Kind kind = Kind::DirichletDirichlet;
  double a = 0.0;
  double b = 1.0;
};

enum class ShapeKind { Constant, Decreasing, Increasing, SingleWell, SingleBarrier, Other };

std::string to_string(ShapeKind k);

struct Classification {
  ShapeKind kind = ShapeKind::Other;
  /// Transition point: leftmost argmin for well-like shapes (leftmost argmax
  /// for barriers). Unset for Constant/Other.
  std::optional<double> x0;
  /// Unique sign change when classifying a potential q with exactly one.
  std::optional<double> sign_change;
  int sign_change_count = 0;
};

struct ClassifyOptions {
  int resolution = 1024;
  double tolerance = 1e-12;
};

Classification classify(const Coefficient& f, const ClassifyOptions& opts = {});
inline Classification classify(const Density& d, const ClassifyOptions& opts = {}) {
  return classify(d.as_coefficient(), opts);
}

/// Classify a sampled sequence directly (used for functions only available as
/// dense solver output).
Classification classify_samples(const std::vector<double>& xs, const std::vector<double>& vals,
                                double tolerance = 1e-12);

}  // namespace stringlab
