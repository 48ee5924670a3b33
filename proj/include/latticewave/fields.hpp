#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "latticewave/chain.hpp"
#include "latticewave/quadrature.hpp"
#include "latticewave/wave_fan.hpp"

namespace latticewave {

enum class FieldKind { PhiN, DxPhiN, ZetaN, XiN };

// The interpolated macroscopic fields of one chain snapshot:
//   phiN     continuous piecewise linear rescaled positions,
//   dx_phiN  piecewise constant gaps U_{k(x)},
//   zetaN    piecewise linear velocity interpolant (= d/dtau phiN),
//   xiN      piecewise constant velocities V_{k(x)}.
// All are extended by constants outside [-1,1].
class FieldSampler {
 public:
  FieldSampler(const ChainState& s, double phi_l)
      : state_(&s), n_(s.n), phi_l_(phi_l) {
    position_.resize(static_cast<std::size_t>(2 * n_) + 1);
    position_[0] = phi_l;
    const double inv_n = 1.0 / n_;
    for (int i = 0; i < 2 * n_; ++i)
      position_[static_cast<std::size_t>(i) + 1] =
          position_[static_cast<std::size_t>(i)] +
          s.gaps[static_cast<std::size_t>(i)] * inv_n;
  }

  int cell_index(double x) const {  // k^N(x)
    return static_cast<int>(std::floor(n_ * x));
  }
  double cell_fraction(double x) const {  // theta^N(x)
    return n_ * x - std::floor(n_ * x);
  }

  double phiN(double x) const {
    if (x <= -1.0) return position_.front();
    if (x >= 1.0) return position_.back();
    const int k = std::clamp(cell_index(x), -n_, n_ - 1);
    const double theta = n_ * x - k;
    return (1.0 - theta) * pos(k) + theta * pos(k + 1);
  }

  double dx_phiN(double x) const {
    const int k = std::clamp(cell_index(x), -n_, n_ - 1);
    return state_->gap(k);
  }

  double zetaN(double x) const {
    if (x <= -1.0) return vel(-n_);
    if (x >= 1.0) return vel_last();
    const int k = std::clamp(cell_index(x), -n_, n_ - 1);
    const double theta = n_ * x - k;
    return (1.0 - theta) * vel(k) + theta * vel(k + 1);
  }

  double xiN(double x) const {
    if (x >= 1.0) return vel_last();
    const int k = std::clamp(cell_index(x), -n_, n_);
    return vel(k);
  }

  double sample(FieldKind kind, double x) const {
    switch (kind) {
      case FieldKind::PhiN:
        return phiN(x);
      case FieldKind::DxPhiN:
        return dx_phiN(x);
      case FieldKind::ZetaN:
        return zetaN(x);
      case FieldKind::XiN:
        return xiN(x);
    }
    throw std::logic_error("field: bad kind");
  }

  // X_j / N at site j in [-N, N].
  double scaled_position(int j) const { return pos(j); }

  const ChainState& state() const { return *state_; }

 private:
  double pos(int j) const {
    return position_[static_cast<std::size_t>(j + n_)];
  }
  double vel(int j) const {
    if (state_->boundary == Boundary::Dirichlet)
      return state_->velocities[static_cast<std::size_t>(j + n_)];
    return state_->velocity(j);
  }
  double vel_last() const {
    return state_->boundary == Boundary::Dirichlet ? vel(n_) : vel(-n_);
  }

  const ChainState* state_;
  int n_;
  double phi_l_;
  std::vector<double> position_;  // X_j / N
};

// A reference macroscopic field: the (u, v) state and the primitive
// phi(tau, x) anchored at phi(tau, -1) = phi_l.
struct RefField {
  std::function<RiemannState(double, double)> state;
  std::function<double(double, double)> position;
};

inline RefField make_ref(const WaveFan& fan, double phi_l) {
  RefField ref;
  ref.state = [&fan](double tau, double x) { return fan.eval(tau, x); };
  ref.position = [&fan, phi_l](double tau, double x) {
    if (x <= -1.0) return phi_l;
    if (tau <= 0.0) {
      double cum = phi_l;
      if (x < 0.0) return cum + fan.left().u * (x + 1.0);
      cum += fan.left().u;
      return cum + fan.right().u * std::min(x, 1.0);
    }
    double cum = phi_l;
    double cursor = -1.0;
    RiemannState current = fan.left();
    for (const auto& w : fan.waves()) {
      const double a = std::clamp(w.speed_lo * tau, -1.0, 1.0);
      const double b = std::clamp(w.speed_hi * tau, -1.0, 1.0);
      if (x <= a) return cum + current.u * (x - cursor);
      if (a > cursor) {
        cum += current.u * (a - cursor);
        cursor = a;
      }
      if (w.type == WaveType::Rarefaction && b > cursor) {
        const double stop = std::min(x, b);
        cum += integrate(
            [&](double y) { return fan.eval(tau, y).u; }, cursor, stop,
            1e-12);
        cursor = stop;
        if (x <= b) return cum;
      }
      current = w.after;
    }
    return cum + current.u * (x - cursor);
  };
  return ref;
}

inline RefField make_ref(const DalembertSolution& sol, double phi_l) {
  RefField ref;
  ref.state = [&sol](double tau, double x) { return sol.eval(tau, x); };
  // phi(tau,x) = phi_l + int_{-1}^{x} u; with u expressed through the
  // transported Riemann invariants the integral reduces to cumulative
  // integrals of the initial profiles (constant-extended).
  ref.position = [&sol, phi_l](double tau, double x) {
    auto cum = [&](const Profile& f, double a, double b) {
      // int_a^b f with constant extension outside [-1,1]
      double s = 0.0;
      const double lo = std::clamp(a, -1.0, 1.0);
      const double hi = std::clamp(b, -1.0, 1.0);
      if (a < -1.0) s += (std::min(b, -1.0) - a) * f(-1.0);
      if (hi > lo) s += integrate([&](double y) { return f(y); }, lo, hi, 1e-12);
      if (b > 1.0) s += (b - std::max(a, 1.0)) * f(1.0);
      return s;
    };
    return phi_l + 0.5 * (cum(sol.u0, -1.0 + tau, x + tau) +
                          cum(sol.u0, -1.0 - tau, x - tau)) +
           0.5 * (cum(sol.v0, -1.0 + tau, x + tau) -
                  cum(sol.v0, -1.0 - tau, x - tau));
  };
  return ref;
}

}  // namespace latticewave
