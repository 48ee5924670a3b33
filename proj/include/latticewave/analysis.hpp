#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "latticewave/fields.hpp"
#include "latticewave/integrator.hpp"
#include "latticewave/potential.hpp"

namespace latticewave {

struct SupComparison {
  double sup_position;  // sup_j |X_j/N - phi(tau, j/N)|
  double sup_velocity;  // sup_j |V_j - dphi/dtau(tau, j/N)|
};

// The two suprema of the discrete-to-continuum comparison at one snapshot,
// taken over j in [-N, N-1].
inline SupComparison sup_comparison(const ChainState& s, double phi_l,
                                    double tau, const RefField& ref) {
  FieldSampler fields(s, phi_l);
  const int n = s.n;
  double sup_pos = 0.0;
  double sup_vel = 0.0;
  for (int j = -n; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    sup_pos = std::max(sup_pos,
                       std::abs(fields.scaled_position(j) - ref.position(tau, x)));
    sup_vel =
        std::max(sup_vel, std::abs(s.velocity(j) - ref.state(tau, x).v));
  }
  return {sup_pos, sup_vel};
}

struct Region {
  double tau_lo, tau_hi;
  double x_lo, x_hi;
};

struct NormReport {
  double l2;
  double h1;
};

// Tensor-quadrature L2/H1 distances between the trajectory's interpolated
// fields and a reference field over a (tau, x) rectangle. x uses a midpoint
// rule (never sampling cell boundaries), tau a trapezoid rule over the
// snapshots falling inside the region.
inline NormReport distance_norms(const Trajectory& traj, double phi_l,
                                 const RefField& ref, const Region& region,
                                 int x_samples) {
  std::vector<double> taus;
  std::vector<double> l2_sect;
  std::vector<double> h1_sect;
  const double dx = (region.x_hi - region.x_lo) / x_samples;
  for (const auto& snap : traj.snapshots) {
    const double tau = snap.state.time / snap.state.n;
    if (tau < region.tau_lo - 1e-12 || tau > region.tau_hi + 1e-12) continue;
    FieldSampler fields(snap.state, phi_l);
    double acc_l2 = 0.0;
    double acc_h1 = 0.0;
    for (int i = 0; i < x_samples; ++i) {
      const double x = region.x_lo + (i + 0.5) * dx;
      const double dphi = fields.phiN(x) - ref.position(tau, x);
      const RiemannState st = ref.state(tau, x);
      const double du = fields.dx_phiN(x) - st.u;
      const double dv = fields.zetaN(x) - st.v;
      acc_l2 += dphi * dphi;
      acc_h1 += du * du + dv * dv;
    }
    taus.push_back(tau);
    l2_sect.push_back(acc_l2 * dx);
    h1_sect.push_back((acc_l2 + acc_h1) * dx);
  }
  if (taus.size() < 2)
    throw std::invalid_argument("distance_norms: need >= 2 snapshots in region");
  const double l2sq = trapezoid(taus, l2_sect);
  const double h1sq = trapezoid(taus, h1_sect);
  return {std::sqrt(std::max(0.0, l2sq)), std::sqrt(std::max(0.0, h1sq))};
}

struct OscillationReport {
  double peak_to_peak;
  double dominant_wavelength_cells;
  int cells;
};

// Mean-removed peak-to-peak amplitude of the gaps over an x window, with the
// dominant wavelength estimated from zero crossings.
inline OscillationReport oscillation_amplitude(const ChainState& s,
                                               double x_lo, double x_hi) {
  const int n = s.n;
  const int j_lo = static_cast<int>(std::ceil(x_lo * n));
  const int j_hi = static_cast<int>(std::floor(x_hi * n));  // exclusive cell end
  std::vector<double> vals;
  for (int j = std::max(j_lo, -n); j < std::min(j_hi, n); ++j)
    vals.push_back(s.gap(j));
  if (vals.size() < 8)
    throw std::invalid_argument("oscillation_amplitude: window has < 8 cells");
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double lo = vals[0] - mean, hi = vals[0] - mean;
  int crossings = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - mean;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    if (i > 0 && (d > 0.0) != (vals[i - 1] - mean > 0.0)) ++crossings;
  }
  const double wavelength =
      crossings > 0 ? 2.0 * static_cast<double>(vals.size()) / crossings : 0.0;
  return {hi - lo, wavelength, static_cast<int>(vals.size())};
}

// Gap samples over a (tau, x) region, one value per (cell x snapshot): the
// empirical surrogate of the Young measure.
inline std::vector<double> region_gap_samples(const Trajectory& traj,
                                              const Region& region) {
  std::vector<double> out;
  for (const auto& snap : traj.snapshots) {
    const double tau = snap.state.time / snap.state.n;
    if (tau < region.tau_lo - 1e-12 || tau > region.tau_hi + 1e-12) continue;
    const int n = snap.state.n;
    const int j_lo = std::max(static_cast<int>(std::ceil(region.x_lo * n)), -n);
    const int j_hi = std::min(static_cast<int>(std::floor(region.x_hi * n)), n);
    for (int j = j_lo; j < j_hi; ++j) out.push_back(snap.state.gap(j));
  }
  return out;
}

struct Histogram {
  double lo, hi;
  std::vector<double> mass;  // normalized
  std::size_t samples;
};

inline Histogram young_histogram(const Trajectory& traj, const Region& region,
                                 int bins) {
  std::vector<double> vals = region_gap_samples(traj, region);
  if (vals.size() < 100)
    throw std::invalid_argument("young_histogram: fewer than 100 samples");
  const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
  Histogram h{*mn, *mx, std::vector<double>(static_cast<std::size_t>(bins), 0.0),
              vals.size()};
  const double width = h.hi > h.lo ? h.hi - h.lo : 1.0;
  for (double v : vals) {
    int b = static_cast<int>((v - h.lo) / width * bins);
    b = std::clamp(b, 0, bins - 1);
    h.mass[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& m : h.mass) m /= static_cast<double>(vals.size());
  return h;
}

inline double quantile(std::vector<double> vals, double q) {
  if (vals.empty()) throw std::invalid_argument("quantile: empty");
  std::sort(vals.begin(), vals.end());
  const double pos = q * (static_cast<double>(vals.size()) - 1.0);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= vals.size()) return vals.back();
  const double frac = pos - static_cast<double>(i);
  return vals[i] * (1.0 - frac) + vals[i + 1] * frac;
}

inline double interquartile_range(const std::vector<double>& vals) {
  return quantile(vals, 0.75) - quantile(vals, 0.25);
}

struct BoundMonitorReport {
  double u_min;
  double u_max;
  std::vector<BoundSample> over_time;
};

inline BoundMonitorReport bound_monitor(const Trajectory& traj) {
  return {traj.u_min, traj.u_max, traj.bound_series};
}

// Pre-limit integral identity of the Dirichlet chain (exact for the
// semi-discrete flow):
//   (1/N) sum_k int_0^T (T-tau) [W'(U_k) - W'(U_{-N})] dtau
//     = int_0^T int (1 - floor(Nx)/N)(xi^N(tau,x) - xi^N(0,x)) dx dtau.
// Both sides by trapezoid quadrature over the recorded snapshots.
inline double integral_identity_residual(const Trajectory& traj,
                                         const Potential& p, double T) {
  if (traj.initial.boundary != Boundary::Dirichlet)
    throw std::invalid_argument("integral_identity: Dirichlet boundary required");
  std::vector<double> taus;
  std::vector<double> lhs_sect;
  std::vector<double> rhs_sect;
  const ChainState& init = traj.initial;
  const int n = init.n;
  for (const auto& snap : traj.snapshots) {
    const double tau = snap.state.time / n;
    if (tau > T + 1e-12) continue;
    const ChainState& s = snap.state;
    const double w_wall = p.d1(s.gap(-n));
    double a = 0.0;
    double b = 0.0;
    for (int k = -n; k < n; ++k) {
      a += p.d1(s.gap(k)) - w_wall;
      b += (1.0 - static_cast<double>(k) / n) *
           (s.velocity(k) - init.velocity(k));
    }
    taus.push_back(tau);
    lhs_sect.push_back((T - tau) * a / n);
    rhs_sect.push_back(b / n);
  }
  if (taus.size() < 4)
    throw std::invalid_argument("integral_identity: fewer than 4 snapshots");
  return std::abs(trapezoid(taus, lhs_sect) - trapezoid(taus, rhs_sect));
}

struct DCompatReport {
  double sup_dx_defect;   // sup over bands of |dx_phiN - phi0^x(+-1)|
  double sup_dtau;        // sup over bands of |zetaN|
};

// Boundary-band diagnostics behind the D-compatibility definition: the
// solution should stay unperturbed on [-1,-1+delta] and [1-delta,1] up to
// time T.
inline DCompatReport d_compatibility_report(const Trajectory& traj,
                                            const InitialData& data,
                                            double delta = 0.05) {
  const double ul = data.phi0_x(-1.0);
  const double ur = data.phi0_x(1.0);
  DCompatReport rep{0.0, 0.0};
  for (const auto& snap : traj.snapshots) {
    const ChainState& s = snap.state;
    FieldSampler fields(s, data.phi_l);
    const int n = s.n;
    for (int j = -n; j < n; ++j) {
      const double x = static_cast<double>(j) / n;
      const bool left_band = x <= -1.0 + delta;
      const bool right_band = x >= 1.0 - delta;
      if (!left_band && !right_band) continue;
      const double uref = left_band ? ul : ur;
      rep.sup_dx_defect =
          std::max(rep.sup_dx_defect, std::abs(s.gap(j) - uref));
      rep.sup_dtau = std::max(rep.sup_dtau, std::abs(fields.zetaN(x)));
    }
  }
  return rep;
}

}  // namespace latticewave
