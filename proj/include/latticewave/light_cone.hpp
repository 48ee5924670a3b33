#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latticewave/chain.hpp"
#include "latticewave/integrator.hpp"
#include "latticewave/potential.hpp"

namespace latticewave {

struct ConeSample {
  int j;        // site offset from the agreement origin
  double t;     // microscopic time
  double gap_u;  // |U_j - U~_j|
  double gap_v;  // |V_j - V~_j|
  double bound_u;
  double bound_v;  // NaN for j = 0 (the bound is stated for j >= 1)
};

struct ConeReport {
  double x = 0.0;
  double tau = 0.0;
  double big_k = 0.0;    // K = sup |W''| over the hull of observed gaps
  double speed_c = 0.0;  // c = e^2 sqrt(K)
  double big_m = 0.0;    // M = sup_t |U_{j0} - U~_{j0}|
  double sup_scaled_gap_u = 0.0;  // N * sup over {t < N tau, j > N x}
  double sup_gap_v = 0.0;         // sup over the same region
  double min_margin_u = 0.0;      // min over samples of bound_u - gap_u
  double min_margin_v = 0.0;
  std::vector<ConeSample> samples;
};

namespace detail {

// log-space evaluation of M (2 t sqrt(K))^m / m! exp(2 t sqrt(K))
inline double gronwall_term(double m_log_arg, int m, double two_t_sqrt_k) {
  if (two_t_sqrt_k <= 0.0) return m == 0 ? 1.0 : 0.0;
  (void)m_log_arg;
  return std::exp(m * std::log(two_t_sqrt_k) - std::lgamma(m + 1.0) +
                  two_t_sqrt_k);
}

}  // namespace detail

inline double gronwall_bound_u(double big_m, double big_k, double t, int j) {
  const double a = 2.0 * t * std::sqrt(big_k);
  return big_m * detail::gronwall_term(0.0, 2 * j, a);
}

inline double gronwall_bound_v(double big_m, double big_k, double t, int j) {
  if (j < 1) return std::numeric_limits<double>::quiet_NaN();
  const double a = 2.0 * t * std::sqrt(big_k);
  return big_m * std::sqrt(2.0 * big_k) *
         (detail::gronwall_term(0.0, 2 * j + 1, a) +
          detail::gronwall_term(0.0, 2 * j - 1, a));
}

// Co-integrates a base chain and a perturbed chain that agree on every site
// strictly right of origin_site, and measures the propagation of their
// difference:
//   - K over the hull of all gaps seen in either chain,
//   - M = sup_t of the difference at the origin site,
//   - the theorem's suprema over { t < N tau, j > N x },
//   - per-sample Gronwall margins bound - observed on a (j, t) grid.
inline ConeReport light_cone_experiment(const Potential& p,
                                        const ChainState& base,
                                        const ChainState& perturbed, double x,
                                        double tau,
                                        const IntegratorParams& params,
                                        int origin_site = 0,
                                        int sample_stride_j = 1,
                                        double sample_dt = 0.5) {
  if (base.n != perturbed.n || base.boundary != perturbed.boundary)
    throw std::invalid_argument("light_cone: mismatched chains");
  const int n = base.n;
  for (int j = origin_site + 1; j < n; ++j)
    if (base.gap(j) != perturbed.gap(j) ||
        base.velocity(j) != perturbed.velocity(j))
      throw std::invalid_argument(
          "light_cone: chains must agree strictly right of the origin site");

  ChainState a = base;
  ChainState b = perturbed;
  const double t_end = n * tau;
  const std::int64_t steps = static_cast<std::int64_t>(
      std::floor(t_end / params.dt * (1.0 + 1e-12)) + 0.5);
  const std::int64_t sample_every = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(sample_dt / params.dt + 0.5));
  const int j_region = static_cast<int>(std::ceil(x * n));
  const int j_max_sample = n - 1;

  ConeReport rep;
  rep.x = x;
  rep.tau = tau;

  double hull_lo = std::numeric_limits<double>::infinity();
  double hull_hi = -std::numeric_limits<double>::infinity();
  auto observe = [&](std::int64_t k) {
    for (int j = -n; j < n; ++j) {
      hull_lo = std::min({hull_lo, a.gap(j), b.gap(j)});
      hull_hi = std::max({hull_hi, a.gap(j), b.gap(j)});
    }
    rep.big_m = std::max(rep.big_m,
                         std::abs(a.gap(origin_site) - b.gap(origin_site)));
    // region suprema (strictly below the horizon)
    if (a.time < t_end) {
      for (int j = j_region + 1; j < n; ++j) {
        rep.sup_scaled_gap_u =
            std::max(rep.sup_scaled_gap_u, n * std::abs(a.gap(j) - b.gap(j)));
        rep.sup_gap_v = std::max(rep.sup_gap_v,
                                 std::abs(a.velocity(j) - b.velocity(j)));
      }
    }
    if (k % sample_every == 0 || k == steps) {
      for (int j = origin_site; j <= j_max_sample; j += sample_stride_j) {
        ConeSample smp;
        smp.j = j - origin_site;
        smp.t = a.time;
        smp.gap_u = std::abs(a.gap(j) - b.gap(j));
        smp.gap_v = std::abs(a.velocity(j) - b.velocity(j));
        smp.bound_u = 0.0;
        smp.bound_v = 0.0;
        rep.samples.push_back(smp);
      }
    }
  };

  observe(0);
  p.dispatch([&](auto kern) {
    for (std::int64_t k = 1; k <= steps; ++k) {
      detail::verlet_step(a, kern, params.dt);
      detail::verlet_step(b, kern, params.dt);
      observe(k);
    }
    return 0;
  });

  rep.big_k = p.sup_abs_d2(hull_lo, hull_hi);
  rep.speed_c = std::exp(2.0) * std::sqrt(rep.big_k);

  rep.min_margin_u = std::numeric_limits<double>::infinity();
  rep.min_margin_v = std::numeric_limits<double>::infinity();
  for (auto& smp : rep.samples) {
    smp.bound_u = gronwall_bound_u(rep.big_m, rep.big_k, smp.t, smp.j);
    rep.min_margin_u = std::min(rep.min_margin_u, smp.bound_u - smp.gap_u);
    if (smp.j >= 1) {
      smp.bound_v = gronwall_bound_v(rep.big_m, rep.big_k, smp.t, smp.j);
      rep.min_margin_v = std::min(rep.min_margin_v, smp.bound_v - smp.gap_v);
    } else {
      smp.bound_v = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rep;
}

}  // namespace latticewave
