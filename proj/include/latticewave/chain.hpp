#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "latticewave/profile.hpp"

namespace latticewave {

// Microscopic state of the chain of 2N particles. Gaps U_j live on
// j in [-N, N-1]. Velocities: Dirichlet keeps V on j in [-N, N] with both
// wall values clamped to zero (X_{-N} and X_N are fixed); periodic keeps V
// on j in [-N, N-1] with cyclic indexing.
struct ChainState {
  int n = 0;          // the size parameter N
  double time = 0.0;  // microscopic time t
  Boundary boundary = Boundary::Dirichlet;
  std::vector<double> gaps;
  std::vector<double> velocities;

  ChainState() = default;

  ChainState(int n_, Boundary b) : n(n_), boundary(b) {
    if (n_ < 1) throw std::invalid_argument("chain: N < 1");
    gaps.assign(2 * static_cast<std::size_t>(n_), 0.0);
    velocities.assign(
        b == Boundary::Dirichlet ? 2 * static_cast<std::size_t>(n_) + 1
                                 : 2 * static_cast<std::size_t>(n_),
        0.0);
  }

  int gap_count() const { return 2 * n; }

  double& gap(int j) { return gaps[static_cast<std::size_t>(j + n)]; }
  double gap(int j) const { return gaps[static_cast<std::size_t>(j + n)]; }

  double& velocity(int j) {
    return velocities[static_cast<std::size_t>(wrap(j))];
  }
  double velocity(int j) const {
    return velocities[static_cast<std::size_t>(wrap(j))];
  }

  // Z_j = V_{j+1} - V_j, derived, never stored.
  double gap_velocity(int j) const { return velocity(j + 1) - velocity(j); }

  double sum_gaps() const {
    double s = 0.0;
    for (double u : gaps) s += u;
    return s;
  }

  double min_gap() const {
    double m = gaps[0];
    for (double u : gaps) m = std::min(m, u);
    return m;
  }
  double max_gap() const {
    double m = gaps[0];
    for (double u : gaps) m = std::max(m, u);
    return m;
  }

 private:
  int wrap(int j) const {
    if (boundary == Boundary::Periodic) {
      int i = (j + n) % (2 * n);
      if (i < 0) i += 2 * n;
      return i;
    }
    return j + n;
  }
};

// Samples the macroscopic data on the grid j/N: U_j(0) = phi0^x(j/N) for
// j in [-N, N-1], V_j(0) = phi0^tau(j/N) on the interior; Dirichlet clamps
// V_{+-N} = 0. Breakpoints are sampled by their right limit.
inline ChainState discretize(const InitialData& data, int n) {
  if (n < 2) throw std::invalid_argument("discretize: N < 2");
  ChainState s(n, data.boundary);
  const double inv_n = 1.0 / n;
  for (int j = -n; j < n; ++j) s.gap(j) = data.phi0_x(j * inv_n);
  if (data.boundary == Boundary::Dirichlet) {
    for (int j = -n + 1; j < n; ++j) s.velocity(j) = data.phi0_tau(j * inv_n);
    s.velocity(-n) = 0.0;
    s.velocity(n) = 0.0;
  } else {
    for (int j = -n; j < n; ++j) s.velocity(j) = data.phi0_tau(j * inv_n);
  }
  return s;
}

// Single unit gap at site 0, zero velocities, periodic walls; the seed state
// of the spectral blow-up construction.
inline ChainState delta_gap_state(int n) {
  ChainState s(n, Boundary::Periodic);
  s.gap(0) = 1.0;
  return s;
}

}  // namespace latticewave
