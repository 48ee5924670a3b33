#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "latticewave/chain.hpp"
#include "latticewave/fft.hpp"

namespace latticewave {

// Exact solution machinery for the periodic quadratic chain. Everything here
// works in gap space (U, Z), where the evolution diagonalizes with the same
// eigenvalues as the position form; positions are only synthesized on
// request. Internal site index i = j + N for j in [-N, N-1].

struct ModeBasis {
  int n;  // N; the chain has 2N sites

  // lambda_k = 4 sin^2(k pi / 2N), k in [0, 2N-1].
  double eigenvalue(int k) const {
    const double s = std::sin(0.5 * M_PI * k / n);
    return 4.0 * s * s;
  }
  double frequency(int k) const { return std::sqrt(eigenvalue(k)); }

  // Entry j of the unit eigenvector Omega_k, j in [-N, N-1].
  cdouble mode_entry(int k, int j) const {
    const double ang = M_PI * static_cast<double>(k) *
                       static_cast<double>(j) / static_cast<double>(n);
    return cdouble(std::cos(ang), std::sin(ang)) /
           std::sqrt(2.0 * static_cast<double>(n));
  }
};

struct LinearChainSolution {
  std::vector<double> positions;
  std::vector<double> velocities;
};

// Closed-form evolution of the periodic quadratic chain: size-2N position
// and velocity vectors advance by cos/sinc multipliers per Fourier mode; the
// zero mode drifts linearly with the mean velocity.
inline LinearChainSolution evolve_periodic_linear(
    const std::vector<double>& x0, const std::vector<double>& v0, double t) {
  const std::size_t m = x0.size();
  if (m == 0 || v0.size() != m)
    throw std::invalid_argument("evolve_periodic_linear: size mismatch");
  std::vector<cdouble> xs(m), vs(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = x0[i];
    vs[i] = v0[i];
  }
  fft_forward(xs);
  fft_forward(vs);
  for (std::size_t k = 0; k < m; ++k) {
    if (k == 0) {
      xs[0] += vs[0] * t;
      continue;
    }
    const double w = 2.0 * std::abs(std::sin(M_PI * static_cast<double>(k) /
                                             static_cast<double>(m)));
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    const cdouble xk = xs[k];
    const cdouble vk = vs[k];
    xs[k] = c * xk + (s / w) * vk;
    vs[k] = -w * s * xk + c * vk;
  }
  fft_inverse(xs);
  fft_inverse(vs);
  LinearChainSolution out;
  out.positions.resize(m);
  out.velocities.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.positions[i] = xs[i].real();
    out.velocities[i] = vs[i].real();
  }
  return out;
}

// Gap-space evolution of a periodic quadratic ChainState to microscopic
// time t. Velocities are recovered from Z_j = V_{j+1} - V_j through the
// divided Fourier symbol; the mean velocity (zero mode) is conserved.
inline ChainState evolve_periodic_linear_gaps(const ChainState& s0,
                                              double t) {
  if (s0.boundary != Boundary::Periodic)
    throw std::invalid_argument("spectral: periodic state required");
  const std::size_t m = s0.gaps.size();
  std::vector<cdouble> us(m), vs(m);
  for (std::size_t i = 0; i < m; ++i) {
    us[i] = s0.gaps[i];
    vs[i] = s0.velocities[i];
  }
  fft_forward(us);
  fft_forward(vs);
  for (std::size_t k = 1; k < m; ++k) {
    const double ang = 2.0 * M_PI * static_cast<double>(k) /
                       static_cast<double>(m);
    const cdouble shift = cdouble(std::cos(ang), std::sin(ang)) - 1.0;
    const double w = 2.0 * std::abs(std::sin(0.5 * ang));
    const double c = std::cos(w * t);
    const double sn = std::sin(w * t);
    const cdouble uk = us[k];
    const cdouble zk = shift * vs[k];
    const cdouble uk_t = c * uk + (sn / w) * zk;
    const cdouble zk_t = -w * sn * uk + c * zk;
    us[k] = uk_t;
    vs[k] = zk_t / shift;
  }
  // k = 0: total gap and total momentum are invariants.
  fft_inverse(us);
  fft_inverse(vs);
  ChainState out(s0.n, Boundary::Periodic);
  out.time = s0.time + t;
  for (std::size_t i = 0; i < m; ++i) {
    out.gaps[i] = us[i].real();
    out.velocities[i] = vs[i].real();
  }
  return out;
}

struct DeltaGapResult {
  ChainState state;  // gaps and velocities at time N*tau0
  double sup_norm_u;
  double sup_norm_v;
};

// Evolves the unit-gap delta data (U_j(0) = delta_j^0, V = 0) to t = N*tau0
// by the exact mode formula.
inline DeltaGapResult delta_gap_evolution(int n, double tau0) {
  if (tau0 < 0.0) throw std::invalid_argument("delta_gap_evolution: tau0 < 0");
  ChainState seed = delta_gap_state(n);
  ChainState out = evolve_periodic_linear_gaps(seed, n * tau0);
  DeltaGapResult r{std::move(out), 0.0, 0.0};
  for (double u : r.state.gaps) r.sup_norm_u = std::max(r.sup_norm_u, std::abs(u));
  for (double v : r.state.velocities)
    r.sup_norm_v = std::max(r.sup_norm_v, std::abs(v));
  return r;
}

// Reference evaluation of the delta-gap kernel
// U_j(N tau) = (1/2N) sum_k cos(2 N tau sin(k pi / 2N)) cos(j k pi / N)
// with compensated summation; O(N) per site, used to cross-check the
// transform path.
inline double delta_gap_kernel_direct(int n, double tau0, int j) {
  const double t = static_cast<double>(n) * tau0;
  double sum = 0.0;
  double comp = 0.0;
  for (int k = -n; k < n; ++k) {
    const double w = 2.0 * std::sin(0.5 * M_PI * k / n);
    const double term =
        std::cos(w * t) * std::cos(M_PI * static_cast<double>(j) * k / n);
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum / (2.0 * n);
}

struct BlowupConstruction {
  ChainState initial;   // normalized reversed state, sup norms <= 1
  double growth_factor; // K_N: the exact flow reaches sup |U| = K_N at N*tau0
  double delta_sup_u;   // sup norm of the forward delta evolution
  double delta_sup_v;
};

// Reversal construction: evolve the delta gap forward, normalize, flip the
// velocities. Linearity and time reversibility bring the normalized state
// back to K_N * delta at t = N*tau0, so the sup norm grows by exactly K_N.
inline BlowupConstruction blowup_construction(int n, double tau0) {
  DeltaGapResult fwd = delta_gap_evolution(n, tau0);
  const double peak = std::max(fwd.sup_norm_u, fwd.sup_norm_v);
  const double k_n = peak > 0.0 ? 1.0 / peak : 1.0;
  ChainState init(n, Boundary::Periodic);
  for (std::size_t i = 0; i < fwd.state.gaps.size(); ++i) {
    init.gaps[i] = k_n * fwd.state.gaps[i];
    init.velocities[i] = -k_n * fwd.state.velocities[i];
  }
  return {std::move(init), k_n, fwd.sup_norm_u, fwd.sup_norm_v};
}

}  // namespace latticewave
