#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace latticewave {

// Value bundle of the interaction potential at one gap: W and its first
// three derivatives. d3 is NaN for custom potentials that do not supply it.
struct PotentialValues {
  double w;
  double d1;
  double d2;
  double d3;
};

enum class PotentialKind { Quadratic, PowerLaw, Toda, XQuadratic, Custom };

struct ConvexityReport {
  double min_d2;
  double min_d3;
  bool satisfies_convex;   // W'' >= alpha > 0 on the interval
  bool satisfies_sconvex;  // W''' > 0 on the interval
};

namespace kernels {

// Inline evaluator functors; the integrator dispatches to these once per run
// so the force loop never pays a virtual call. The x argument only matters
// for the x-dependent quadratic family.

struct Quadratic {
  static constexpr bool x_dependent = false;
  double d1(double u, double) const { return u; }
  PotentialValues values(double u, double) const {
    return {0.5 * u * u, u, 1.0, 0.0};
  }
};

struct PowerLaw {
  static constexpr bool x_dependent = false;
  double gamma;
  double a;
  double b;
  int int_gamma;  // -1 when gamma is not a small integer

  static double ipow(double u, int k) {
    double r = 1.0;
    double base = u;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) r *= base;
      base *= base;
    }
    return r;
  }
  double upow(double u, double e) const {
    const int ie = static_cast<int>(e);
    if (int_gamma >= 0 && e == static_cast<double>(ie) && ie >= 0)
      return ipow(u, ie);
    return std::pow(u, e);
  }
  double d1(double u, double) const {
    return (a == 0.0 ? 0.0 : a * upow(u, gamma - 1.0)) + b * u;
  }
  PotentialValues values(double u, double) const {
    if (a == 0.0) return {0.5 * b * u * u, b * u, b, 0.0};
    const double c3 = a * (gamma - 1.0) * (gamma - 2.0);
    const double w = a * upow(u, gamma) / gamma + 0.5 * b * u * u;
    const double g1 = a * upow(u, gamma - 1.0) + b * u;
    const double g2 = a * (gamma - 1.0) * upow(u, gamma - 2.0) + b;
    const double g3 = c3 == 0.0 ? 0.0 : c3 * upow(u, gamma - 3.0);
    return {w, g1, g2, g3};
  }
};

struct Toda {
  static constexpr bool x_dependent = false;
  double d1(double u, double) const { return -std::exp(-u); }
  PotentialValues values(double u, double) const {
    const double ex = std::exp(-u);
    return {ex, -ex, ex, -ex};
  }
};

// W(x,u) = A(x) u^2/2 + B(x) u with polynomial A, B.
struct XQuadratic {
  static constexpr bool x_dependent = true;
  const std::vector<double>* a_coeffs;
  const std::vector<double>* b_coeffs;

  static double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }
  double d1(double u, double x) const {
    return horner(*a_coeffs, x) * u + horner(*b_coeffs, x);
  }
  PotentialValues values(double u, double x) const {
    const double ax = horner(*a_coeffs, x);
    const double bx = horner(*b_coeffs, x);
    return {0.5 * ax * u * u + bx * u, ax * u + bx, ax, 0.0};
  }
};

struct Custom {
  static constexpr bool x_dependent = false;
  const std::function<PotentialValues(double)>* fn;
  double d1(double u, double) const { return (*fn)(u).d1; }
  PotentialValues values(double u, double) const { return (*fn)(u); }
};

}  // namespace kernels

class Potential {
 public:
  static Potential quadratic() { return Potential(PotentialKind::Quadratic); }

  // W(u) = a u^gamma / gamma + b u^2 / 2, gamma >= 2, a, b >= 0.
  static Potential power_law(double gamma, double a, double b) {
    if (!(gamma >= 2.0)) throw std::invalid_argument("power_law: gamma < 2");
    if (a < 0.0 || b < 0.0)
      throw std::invalid_argument("power_law: negative coefficient");
    Potential p(PotentialKind::PowerLaw);
    p.gamma_ = gamma;
    p.coef_a_ = a;
    p.coef_b_ = b;
    const int ig = static_cast<int>(gamma);
    p.int_gamma_ = (gamma == static_cast<double>(ig)) ? ig : -1;
    return p;
  }

  static Potential toda() { return Potential(PotentialKind::Toda); }

  // Coefficient lists are in ascending powers of x; A must stay positive on
  // [-1,1], checked on a dense grid at construction.
  static Potential x_quadratic(std::vector<double> a_coeffs,
                               std::vector<double> b_coeffs) {
    Potential p(PotentialKind::XQuadratic);
    if (a_coeffs.empty()) throw std::invalid_argument("x_quadratic: empty A");
    if (b_coeffs.empty()) b_coeffs = {0.0};
    for (int i = 0; i <= 2000; ++i) {
      const double x = -1.0 + 2.0 * i / 2000.0;
      if (!(kernels::XQuadratic::horner(a_coeffs, x) > 0.0))
        throw std::invalid_argument(
            "x_quadratic: A(x) must be > 0 on [-1,1], fails at x=" +
            std::to_string(x));
    }
    p.ax_ = std::move(a_coeffs);
    p.bx_ = std::move(b_coeffs);
    return p;
  }

  static Potential custom(std::function<PotentialValues(double)> fn,
                          bool has_third = true) {
    Potential p(PotentialKind::Custom);
    p.custom_ = std::move(fn);
    p.custom_has_third_ = has_third;
    return p;
  }

  PotentialKind kind() const { return kind_; }
  bool x_dependent() const { return kind_ == PotentialKind::XQuadratic; }
  bool has_third_derivative() const {
    return kind_ != PotentialKind::Custom || custom_has_third_;
  }

  // Declared gap interval on which the convexity hypotheses are asserted.
  void set_domain(double lo, double hi) {
    domain_lo_ = lo;
    domain_hi_ = hi;
  }
  double domain_lo() const { return domain_lo_; }
  double domain_hi() const { return domain_hi_; }

  PotentialValues eval(double u) const {
    if (x_dependent())
      throw std::invalid_argument("potential: x required for x-dependent W");
    return eval_impl(u, 0.0);
  }

  PotentialValues eval(double u, double x) const {
    if (!x_dependent())
      throw std::invalid_argument(
          "potential: x given for an x-independent W");
    return eval_impl(u, x);
  }

  double w(double u) const { return eval_impl(u, 0.0).w; }
  double d1(double u) const { return eval_impl(u, 0.0).d1; }
  double d2(double u) const { return eval_impl(u, 0.0).d2; }
  double d3(double u) const { return eval_impl(u, 0.0).d3; }

  // Minima of W'' and W''' over [a,b]: endpoint + uniform grid scan, plus
  // the interior critical point u = 0 for the power-law family where the
  // closed-form minimum sits.
  ConvexityReport verify_convexity(double a, double b, int samples) const {
    if (!(a < b)) throw std::invalid_argument("verify_convexity: a >= b");
    if (samples < 2) throw std::invalid_argument("verify_convexity: samples < 2");
    double min2 = std::numeric_limits<double>::infinity();
    double min3 = std::numeric_limits<double>::infinity();
    auto visit = [&](double u) {
      const PotentialValues v = eval_impl(u, 0.0);
      min2 = std::min(min2, v.d2);
      min3 = std::min(min3, v.d3);
    };
    for (int i = 0; i < samples; ++i)
      visit(a + (b - a) * static_cast<double>(i) / (samples - 1));
    if (kind_ == PotentialKind::PowerLaw && a < 0.0 && 0.0 < b) visit(0.0);
    const bool has3 = has_third_derivative();
    return {min2, has3 ? min3 : std::numeric_limits<double>::quiet_NaN(),
            min2 > 0.0, has3 && min3 > 0.0};
  }

  // sup |W''| over [lo,hi]; exact for the built-in families whose |W''| is
  // monotone or has its extremum at an endpoint or at 0.
  double sup_abs_d2(double lo, double hi, int samples = 512) const {
    double m = 0.0;
    auto visit = [&](double u) { m = std::max(m, std::abs(eval_impl(u, 0.0).d2)); };
    for (int i = 0; i < samples; ++i)
      visit(lo + (hi - lo) * static_cast<double>(i) / (samples - 1));
    if (kind_ == PotentialKind::PowerLaw && lo < 0.0 && 0.0 < hi) visit(0.0);
    return m;
  }

  // Evaluation used by hot loops through the kernel dispatch below.
  template <class F>
  auto dispatch(F&& f) const {
    switch (kind_) {
      case PotentialKind::Quadratic:
        return f(kernels::Quadratic{});
      case PotentialKind::PowerLaw:
        return f(kernels::PowerLaw{gamma_, coef_a_, coef_b_, int_gamma_});
      case PotentialKind::Toda:
        return f(kernels::Toda{});
      case PotentialKind::XQuadratic:
        return f(kernels::XQuadratic{&ax_, &bx_});
      case PotentialKind::Custom:
        return f(kernels::Custom{&custom_});
    }
    throw std::logic_error("potential: bad kind");
  }

  // x-dependent quadratic coefficient access (Lemma-style energies need A, B).
  double coeff_a(double x) const { return kernels::XQuadratic::horner(ax_, x); }
  double coeff_b(double x) const { return kernels::XQuadratic::horner(bx_, x); }

  std::string describe() const {
    switch (kind_) {
      case PotentialKind::Quadratic:
        return "quadratic";
      case PotentialKind::PowerLaw:
        return "power_law(gamma=" + std::to_string(gamma_) +
               ",a=" + std::to_string(coef_a_) + ",b=" + std::to_string(coef_b_) +
               ")";
      case PotentialKind::Toda:
        return "toda";
      case PotentialKind::XQuadratic:
        return "x_quadratic";
      case PotentialKind::Custom:
        return "custom";
    }
    return "?";
  }

 private:
  explicit Potential(PotentialKind k) : kind_(k) {}

  PotentialValues eval_impl(double u, double x) const {
    if (!std::isfinite(u))
      throw std::invalid_argument("potential: non-finite gap");
    PotentialValues v =
        dispatch([&](auto kern) { return kern.values(u, x); });
    if (kind_ == PotentialKind::Custom && !custom_has_third_)
      v.d3 = std::numeric_limits<double>::quiet_NaN();
    return v;
  }

  PotentialKind kind_;
  double gamma_ = 2.0;
  double coef_a_ = 0.0;
  double coef_b_ = 0.0;
  int int_gamma_ = 2;
  std::vector<double> ax_;
  std::vector<double> bx_;
  std::function<PotentialValues(double)> custom_;
  bool custom_has_third_ = true;
  double domain_lo_ = -std::numeric_limits<double>::infinity();
  double domain_hi_ = std::numeric_limits<double>::infinity();
};

}  // namespace latticewave
