#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "latticewave/potential.hpp"
#include "latticewave/profile.hpp"
#include "latticewave/quadrature.hpp"
#include "latticewave/rootfind.hpp"

namespace latticewave {

// Fields of the p-system: u = dphi/dx (gap), v = dphi/dtau (velocity).
struct RiemannState {
  double u;
  double v;
};

enum class WaveType { Shock, Rarefaction };

// One wave of the self-similar fan. Speeds are signed physical speeds
// (family 1 < 0 < family 2 under strict hyperbolicity); a shock stores its
// speed twice. The paper's sigma convention for a 1-shock located at
// x = -sigma*tau corresponds to sigma = -speed_lo; rh_sigma() returns it.
struct Wave {
  int family;
  WaveType type;
  double speed_lo;
  double speed_hi;
  RiemannState before;  // state on the slower (left) side
  RiemannState after;   // state on the faster (right) side

  double rh_sigma() const { return -speed_lo; }
};

namespace detail {

inline double char_speed(const Potential& p, double u) {
  const double w2 = p.d2(u);
  if (w2 < 0.0)
    throw std::runtime_error("wave fan: W'' < 0, system not hyperbolic");
  return std::sqrt(w2);
}

// Chord slope of W' between a and b; limits to W'' on the diagonal.
inline double chord(const Potential& p, double a, double b) {
  const double scale = 1.0 + std::abs(a) + std::abs(b);
  if (std::abs(b - a) < 1e-14 * scale) return p.d2(0.5 * (a + b));
  return (p.d1(b) - p.d1(a)) / (b - a);
}

inline double int_char_speed(const Potential& p, double a, double b) {
  if (a == b) return 0.0;
  return integrate([&](double s) { return char_speed(p, s); }, a, b, 1e-13);
}

}  // namespace detail

class WaveFan {
 public:
  WaveFan(Potential p, RiemannState left, RiemannState right,
          RiemannState middle, std::vector<Wave> waves)
      : potential_(std::move(p)),
        left_(left),
        right_(right),
        middle_(middle),
        waves_(std::move(waves)) {}

  const Potential& potential() const { return potential_; }
  const RiemannState& left() const { return left_; }
  const RiemannState& right() const { return right_; }
  const RiemannState& middle() const { return middle_; }
  const std::vector<Wave>& waves() const { return waves_; }
  bool empty() const { return waves_.empty(); }

  // Self-similar evaluation; a function of xi = x/tau only. At tau = 0 the
  // initial step data is returned. Region boundaries are right-biased:
  // x >= speed*tau belongs to the faster side, matching the paper's
  // "u_r if -sigma tau <= x" display.
  RiemannState eval(double tau, double x) const {
    if (tau < 0.0) throw std::invalid_argument("eval_fan: tau < 0");
    if (tau == 0.0) return x < 0.0 ? left_ : right_;
    return eval_xi(x / tau);
  }

  RiemannState eval_xi(double xi) const {
    RiemannState current = left_;
    for (const auto& w : waves_) {
      if (xi < w.speed_lo) return current;
      if (xi < w.speed_hi) return inside_rarefaction(w, xi);
      current = w.after;
    }
    return current;
  }

  // Largest T keeping every wave inside [-1+delta, 1-delta].
  double compatible_horizon(double delta = 0.05) const {
    double vmax = 0.0;
    for (const auto& w : waves_)
      vmax = std::max({vmax, std::abs(w.speed_lo), std::abs(w.speed_hi)});
    if (vmax == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 - delta) / vmax;
  }

  // Residuals of both Rankine-Hugoniot relations for every shock, with the
  // paper's sigma = -speed: |[v] - sigma [u]| and |[W'] - sigma [v]|.
  std::vector<std::pair<double, double>> rh_residuals() const {
    std::vector<std::pair<double, double>> out;
    for (const auto& w : waves_) {
      if (w.type != WaveType::Shock) continue;
      const double sigma = w.rh_sigma();
      const double du = w.after.u - w.before.u;
      const double dv = w.after.v - w.before.v;
      const double dw1 = potential_.d1(w.after.u) - potential_.d1(w.before.u);
      out.emplace_back(std::abs(dv - sigma * du), std::abs(dw1 - sigma * dv));
    }
    return out;
  }

 private:
  RiemannState inside_rarefaction(const Wave& w, double xi) const {
    // Characteristic speed equation: family 1 solves -c(u) = xi, family 2
    // solves c(u) = xi; u is bracketed by the wave endpoints and the speed
    // is strictly monotone in u there (W''' > 0).
    const double target = w.family == 1 ? -xi : xi;
    double lo = std::min(w.before.u, w.after.u);
    double hi = std::max(w.before.u, w.after.u);
    const double u = newton_bisect(
        [&](double s) { return detail::char_speed(potential_, s) - target; },
        [&](double s) {
          const double c = detail::char_speed(potential_, s);
          return c > 0.0 ? potential_.d3(s) / (2.0 * c) : 1.0;
        },
        lo, hi, 1e-15);
    // Riemann invariant through the wave's left edge.
    const double v =
        w.before.v + (w.family == 1
                          ? detail::int_char_speed(potential_, w.before.u, u)
                          : -detail::int_char_speed(potential_, w.before.u, u));
    return {u, v};
  }

  Potential potential_;
  RiemannState left_;
  RiemannState right_;
  RiemannState middle_;
  std::vector<Wave> waves_;
};

namespace detail {

// Forward 1-wave curve through the left state: the admissible middle states
// reachable by a 1-shock (u > ul, Lax) or 1-rarefaction (u < ul).
inline double wave1_v(const Potential& p, double ul, double vl, double u) {
  if (u >= ul) return vl + std::sqrt(chord(p, ul, u)) * (u - ul);
  return vl + int_char_speed(p, ul, u);  // integral is negative
}

// Backward 2-wave curve through the right state.
inline double wave2_v(const Potential& p, double ur, double vr, double u) {
  if (u >= ur) return vr - std::sqrt(chord(p, u, ur)) * (u - ur);
  return vr + int_char_speed(p, u, ur);
}

inline double wave1_dv(const Potential& p, double ul, double u) {
  if (u > ul) {
    const double sig = chord(p, ul, u);
    const double dsig = (p.d2(u) * (u - ul) - (p.d1(u) - p.d1(ul))) /
                        ((u - ul) * (u - ul));
    return std::sqrt(sig) + (u - ul) * dsig / (2.0 * std::sqrt(sig));
  }
  return char_speed(p, u);
}

inline double wave2_dv(const Potential& p, double ur, double u) {
  if (u > ur) {
    const double sig = chord(p, u, ur);
    const double dsig = (p.d2(u) * (u - ur) - (p.d1(u) - p.d1(ur))) /
                        ((u - ur) * (u - ur));
    return -std::sqrt(sig) - (u - ur) * dsig / (2.0 * std::sqrt(sig));
  }
  return -char_speed(p, u);
}

}  // namespace detail

// Exact entropy solution of the Riemann problem for the p-system with
// convex flux: the middle state matches the two wave curves (monotone in u,
// so the root is unique); each wave is classified by Lax admissibility.
inline WaveFan solve_riemann(const Potential& p, double u_l, double u_r,
                             double v_l, double v_r) {
  const RiemannState left{u_l, v_l};
  const RiemannState right{u_r, v_r};
  const double scale =
      1.0 + std::abs(u_l) + std::abs(u_r) + std::abs(v_l) + std::abs(v_r);

  if (std::abs(u_l - u_r) < 1e-14 * scale &&
      std::abs(v_l - v_r) < 1e-14 * scale)
    return WaveFan(p, left, right, left, {});

  auto f = [&](double u) {
    return detail::wave1_v(p, u_l, v_l, u) - detail::wave2_v(p, u_r, v_r, u);
  };
  auto df = [&](double u) {
    return detail::wave1_dv(p, u_l, u) - detail::wave2_dv(p, u_r, u);
  };

  // f is strictly increasing; expand a bracket around the data hull.
  double lo = std::min(u_l, u_r);
  double hi = std::max(u_l, u_r);
  double width = std::max(1.0, hi - lo);
  for (int it = 0; f(lo) > 0.0; ++it) {
    if (it > 60)
      throw std::runtime_error(
          "solve_riemann: bracket expansion failed (lo), f(lo)=" +
          std::to_string(f(lo)));
    lo -= width;
    width *= 2.0;
  }
  width = std::max(1.0, hi - lo);
  for (int it = 0; f(hi) < 0.0; ++it) {
    if (it > 60)
      throw std::runtime_error(
          "solve_riemann: bracket expansion failed (hi), f(hi)=" +
          std::to_string(f(hi)));
    hi += width;
    width *= 2.0;
  }

  const double u_m = newton_bisect(f, df, lo, hi, 1e-15);
  const double v_m = detail::wave1_v(p, u_l, v_l, u_m);
  const RiemannState middle{u_m, v_m};

  const double wave_tol = 1e-11 * scale;
  std::vector<Wave> waves;

  if (std::abs(u_m - u_l) > wave_tol) {
    Wave w;
    w.family = 1;
    w.before = left;
    w.after = middle;
    if (u_m > u_l) {
      w.type = WaveType::Shock;
      const double s = -std::sqrt(detail::chord(p, u_l, u_m));
      w.speed_lo = w.speed_hi = s;
    } else {
      w.type = WaveType::Rarefaction;
      w.speed_lo = -detail::char_speed(p, u_l);
      w.speed_hi = -detail::char_speed(p, u_m);
      if (!(w.speed_hi > w.speed_lo)) {
        // Linearly degenerate field (quadratic W): the wave is a contact
        // jump; it satisfies both RH relations exactly.
        w.type = WaveType::Shock;
        w.speed_lo = w.speed_hi = -std::sqrt(detail::chord(p, u_l, u_m));
      }
    }
    waves.push_back(w);
  }
  if (std::abs(u_m - u_r) > wave_tol) {
    Wave w;
    w.family = 2;
    w.before = middle;
    w.after = right;
    if (u_m > u_r) {
      w.type = WaveType::Shock;
      const double s = std::sqrt(detail::chord(p, u_m, u_r));
      w.speed_lo = w.speed_hi = s;
    } else {
      w.type = WaveType::Rarefaction;
      w.speed_lo = detail::char_speed(p, u_m);
      w.speed_hi = detail::char_speed(p, u_r);
      if (!(w.speed_hi > w.speed_lo)) {
        w.type = WaveType::Shock;
        w.speed_lo = w.speed_hi = std::sqrt(detail::chord(p, u_m, u_r));
      }
    }
    waves.push_back(w);
  }

  return WaveFan(std::move(p), left, right, middle, std::move(waves));
}

// E_C(tau) = int_{-1}^{1} { v^2/2 + W(u) } dx: closed form on constant
// regions, adaptive quadrature inside rarefaction fans.
inline double continuous_energy(const WaveFan& fan, double tau) {
  const Potential& p = fan.potential();
  auto density = [&](const RiemannState& s) {
    return 0.5 * s.v * s.v + p.w(s.u);
  };
  if (tau <= 0.0) return density(fan.left()) + density(fan.right());

  double total = 0.0;
  double cursor = -1.0;
  RiemannState current = fan.left();
  auto add_constant = [&](double to, const RiemannState& s) {
    if (to > cursor) total += (to - cursor) * density(s);
    cursor = std::max(cursor, to);
  };
  for (const auto& w : fan.waves()) {
    const double a = std::clamp(w.speed_lo * tau, -1.0, 1.0);
    const double b = std::clamp(w.speed_hi * tau, -1.0, 1.0);
    add_constant(a, current);
    if (w.type == WaveType::Rarefaction && b > cursor) {
      total += integrate(
          [&](double x) { return density(fan.eval(tau, x)); }, cursor, b,
          1e-11);
      cursor = b;
    }
    current = w.after;
  }
  add_constant(1.0, current);
  return total;
}

// Closed-form whole-line solution for the quadratic potential: Riemann
// invariants v +- u transported at unit speed. Valid on [-1,1] while the
// boundary data stays constant (the C-compatible window).
struct DalembertSolution {
  Profile u0;
  Profile v0;

  RiemannState eval(double tau, double x) const {
    const double wp = v0(x + tau) + u0(x + tau);
    const double wm = v0(x - tau) - u0(x - tau);
    return {0.5 * (wp - wm), 0.5 * (wp + wm)};
  }
};

// Smooth compactly-supported test function g(tau,x) = gt(tau) gx(x) for the
// weak-form residuals, polynomial in both factors.
struct TestFunction {
  double t_end;    // gt vanishes (C^2) at t_end
  double x_lo, x_hi;  // gx supported on [x_lo, x_hi]

  double gt(double t) const {
    if (t < 0.0 || t >= t_end) return 0.0;
    const double s = t / t_end;
    const double q = 1.0 - s * s;
    return q * q * q;
  }
  double dgt(double t) const {
    if (t < 0.0 || t >= t_end) return 0.0;
    const double s = t / t_end;
    const double q = 1.0 - s * s;
    return -6.0 * s * q * q / t_end;
  }
  double gx(double x) const {
    if (x <= x_lo || x >= x_hi) return 0.0;
    const double a = (x - x_lo) * (x_hi - x);
    const double h = 0.5 * (x_hi - x_lo);
    const double norm = h * h * h * h * h * h;
    return a * a * a / norm;
  }
  double dgx(double x) const {
    if (x <= x_lo || x >= x_hi) return 0.0;
    const double a = (x - x_lo) * (x_hi - x);
    const double da = (x_lo + x_hi) - 2.0 * x;
    const double h = 0.5 * (x_hi - x_lo);
    const double norm = h * h * h * h * h * h;
    return 3.0 * a * a * da / norm;
  }

  double g(double t, double x) const { return gt(t) * gx(x); }
  double dg_dtau(double t, double x) const { return dgt(t) * gx(x); }
  double dg_dx(double t, double x) const { return gt(t) * dgx(x); }
};

struct WeakResidual {
  double r1;  // momentum equation residual
  double r2;  // kinematic equation residual
};

// Residuals of the two weak formulations against sampled (u,v) fields on
// [0,T] x [-1,1], by tensor trapezoid quadrature on an (nt+1) x (nx+1) grid.
inline WeakResidual weak_residual(
    const std::function<RiemannState(double, double)>& field,
    const Potential& p, const TestFunction& test, const Profile& phi0_x,
    const Profile& phi0_tau, double T, int nt, int nx) {
  if (test.t_end > T + 1e-12 || test.x_lo < -1.0 || test.x_hi > 1.0)
    throw std::invalid_argument(
        "weak_residual: test function support violates ]-inf,T[ x ]-1,1[");
  const double dtau = T / nt;
  const double dx = 2.0 / nx;
  double acc1 = 0.0;
  double acc2 = 0.0;
  for (int i = 0; i <= nt; ++i) {
    const double tau = i * dtau;
    const double wt = (i == 0 || i == nt) ? 0.5 : 1.0;
    for (int j = 0; j <= nx; ++j) {
      const double x = -1.0 + j * dx;
      const double wx = (j == 0 || j == nx) ? 0.5 : 1.0;
      const double w = wt * wx * dtau * dx;
      const RiemannState s = field(tau, x);
      const double gx = test.dg_dx(tau, x);
      const double gt = test.dg_dtau(tau, x);
      acc1 += w * (gx * p.d1(s.u) - gt * s.v);
      acc2 += w * (gx * s.v - gt * s.u);
    }
  }
  const double init1 = integrate(
      [&](double x) { return test.g(0.0, x) * phi0_tau(x); }, -1.0, 1.0,
      1e-12);
  const double init2 = integrate(
      [&](double x) { return test.g(0.0, x) * phi0_x(x); }, -1.0, 1.0, 1e-12);
  return {std::abs(acc1 - init1), std::abs(acc2 - init2)};
}

}  // namespace latticewave
