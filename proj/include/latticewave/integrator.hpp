#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "latticewave/chain.hpp"
#include "latticewave/potential.hpp"

namespace latticewave {

struct IntegratorParams {
  double dt = 1e-3;                    // microscopic step
  std::vector<double> snapshot_times;  // macroscopic tau, ascending
  bool ordering_check = false;         // verify U_j > 0 every step
  bool track_bounds = true;            // running min/max of U every step
  std::int64_t energy_cadence = 0;     // 0: pick ~1024 samples automatically
};

struct Snapshot {
  double tau;  // requested macroscopic time
  ChainState state;  // state.time holds the actual microscopic time
};

struct EnergySample {
  double t;
  double tau;
  double energy;
};

struct BoundSample {
  double t;
  double u_min;
  double u_max;
};

struct Trajectory {
  ChainState initial;
  std::vector<Snapshot> snapshots;
  std::vector<EnergySample> energy_series;
  // Running gap hull, updated every step when track_bounds is on.
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  std::vector<BoundSample> bound_series;

  const ChainState& at(double tau, double tol = 1e-9) const {
    for (const auto& s : snapshots)
      if (std::abs(s.tau - tau) <= tol) return s.state;
    throw std::out_of_range("trajectory: no snapshot at tau=" +
                            std::to_string(tau));
  }
};

namespace detail {

// One Verlet step in (U, V): half gap drift, full velocity kick with the
// midpoint forces, half gap drift. Algebraically identical to the (U, Z)
// leapfrog since Z_j = V_{j+1} - V_j telescopes the kick.
template <class Kernel>
void verlet_step(ChainState& s, const Kernel& kern, double dt) {
  const int m = s.gap_count();
  const double hdt = 0.5 * dt;
  const double inv_n = 1.0 / s.n;
  double* u = s.gaps.data();
  double* v = s.velocities.data();

  if (s.boundary == Boundary::Dirichlet) {
    for (int i = 0; i < m; ++i) u[i] += hdt * (v[i + 1] - v[i]);
    // v[0] and v[m] are the clamped walls.
    double f_prev = kern.d1(u[0], -1.0);
    for (int i = 1; i < m; ++i) {
      const double f =
          kern.d1(u[i], Kernel::x_dependent ? (i - s.n) * inv_n : 0.0);
      v[i] += dt * (f - f_prev);
      f_prev = f;
    }
    for (int i = 0; i < m; ++i) u[i] += hdt * (v[i + 1] - v[i]);
  } else {
    for (int i = 0; i < m; ++i)
      u[i] += hdt * (v[(i + 1) == m ? 0 : i + 1] - v[i]);
    const double f_first =
        kern.d1(u[0], Kernel::x_dependent ? -1.0 : 0.0);
    double f_prev = kern.d1(u[m - 1], Kernel::x_dependent
                                          ? (m - 1 - s.n) * inv_n
                                          : 0.0);
    for (int i = 0; i < m; ++i) {
      const double f =
          (i == 0) ? f_first
                   : kern.d1(u[i], Kernel::x_dependent ? (i - s.n) * inv_n
                                                       : 0.0);
      v[i] += dt * (f - f_prev);
      f_prev = f;
    }
    for (int i = 0; i < m; ++i)
      u[i] += hdt * (v[(i + 1) == m ? 0 : i + 1] - v[i]);
  }
  s.time += dt;
}

inline void check_state(const ChainState& s, bool ordering_check) {
  for (double u : s.gaps)
    if (!std::isfinite(u))
      throw std::runtime_error(
          "integrator: non-finite gap at t=" + std::to_string(s.time) +
          " (force blow-up)");
  if (ordering_check)
    for (double u : s.gaps)
      if (!(u > 0.0))
        throw std::runtime_error(
            "integrator: particle inversion (U_j <= 0) at t=" +
            std::to_string(s.time));
}

}  // namespace detail

inline void step(ChainState& s, const Potential& p, double dt) {
  p.dispatch([&](auto kern) { detail::verlet_step(s, kern, dt); });
}

inline ChainState stepped(const ChainState& s, const Potential& p, double dt) {
  ChainState out = s;
  step(out, p, dt);
  return out;
}

// E_D = (1/2N) sum V_j^2 + (1/N) sum W(U_j), gaps summed over j in [-N,N-1];
// the Dirichlet wall velocities are zero and drop out.
inline double discrete_energy(const ChainState& s, const Potential& p) {
  return p.dispatch([&](auto kern) {
    const int m = s.gap_count();
    const double inv_n = 1.0 / s.n;
    double kin = 0.0;
    double pot = 0.0;
    for (int i = 0; i < m; ++i) {
      const double vj = s.velocities[static_cast<std::size_t>(i)];
      kin += vj * vj;
      pot += kern
                 .values(s.gaps[static_cast<std::size_t>(i)],
                         decltype(kern)::x_dependent ? (i - s.n) * inv_n : 0.0)
                 .w;
    }
    return 0.5 * kin * inv_n + pot * inv_n;
  });
}

// The conserved quantity of the x-dependent quadratic family keeps the
// paper's normalization (no 1/N prefactor): sum W(k/N, U_k) + 1/2 sum V_k^2.
inline double generalized_discrete_energy(const ChainState& s,
                                          const Potential& p) {
  return static_cast<double>(s.n) * discrete_energy(s, p);
}

// Default step rule: stability of the linearized chain needs
// dt * sqrt(max eigenvalue) < 2 with max eigenvalue <= 4 max W''.
inline double auto_dt(const Potential& p, double gap_lo, double gap_hi) {
  const double k = p.sup_abs_d2(gap_lo, gap_hi);
  const double cap = k > 0.0 ? 0.1 / std::sqrt(k)
                             : std::numeric_limits<double>::infinity();
  return std::min(1e-3, cap);
}

inline double auto_dt(const Potential& p, const ChainState& s) {
  return auto_dt(p, s.min_gap(), s.max_gap());
}

// Integrates to microscopic time N*T. Snapshots are taken at the last
// completed step with t <= N*tau (no interpolation); the actual t is kept in
// the snapshot state. Energy and gap-hull series are recorded on a fixed
// step cadence.
inline Trajectory run(const ChainState& initial, const Potential& p,
                      const IntegratorParams& params, double T) {
  if (T < 0.0) throw std::invalid_argument("run: T < 0");
  if (!(params.dt > 0.0)) throw std::invalid_argument("run: dt <= 0");

  Trajectory traj;
  traj.initial = initial;

  std::vector<double> taus = params.snapshot_times;
  std::sort(taus.begin(), taus.end());
  for (double tau : taus)
    if (tau < 0.0 || tau > T + 1e-12)
      throw std::invalid_argument("run: snapshot tau outside [0, T]");

  const double n = static_cast<double>(initial.n);
  const std::int64_t total_steps = static_cast<std::int64_t>(
      std::floor(n * T / params.dt * (1.0 + 1e-12)) + 0.5);
  const std::int64_t cadence =
      params.energy_cadence > 0
          ? params.energy_cadence
          : std::max<std::int64_t>(1, total_steps / 1024);

  // Target step index per snapshot: the last completed step with t <= N*tau.
  std::vector<std::int64_t> tau_step(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i)
    tau_step[i] = std::min<std::int64_t>(
        total_steps, static_cast<std::int64_t>(
                         std::floor(n * taus[i] / params.dt + 1e-9)));

  ChainState s = initial;

  auto record_energy = [&]() {
    traj.energy_series.push_back({s.time, s.time / n, discrete_energy(s, p)});
    if (params.track_bounds)
      traj.bound_series.push_back({s.time, traj.u_min, traj.u_max});
  };
  auto update_bounds = [&]() {
    if (!params.track_bounds) return;
    for (double u : s.gaps) {
      traj.u_min = std::min(traj.u_min, u);
      traj.u_max = std::max(traj.u_max, u);
    }
  };

  update_bounds();
  record_energy();

  std::size_t next_tau = 0;
  auto emit_snapshots = [&](std::int64_t k) {
    while (next_tau < taus.size() && tau_step[next_tau] == k) {
      traj.snapshots.push_back({taus[next_tau], s});
      ++next_tau;
    }
  };

  emit_snapshots(0);
  p.dispatch([&](auto kern) {
    for (std::int64_t k = 1; k <= total_steps; ++k) {
      detail::verlet_step(s, kern, params.dt);
      update_bounds();
      if (params.ordering_check || (k & 1023) == 0)
        detail::check_state(s, params.ordering_check);
      if (k % cadence == 0 || k == total_steps) record_energy();
      emit_snapshots(k);
    }
    return 0;
  });
  detail::check_state(s, params.ordering_check);
  return traj;
}

}  // namespace latticewave
