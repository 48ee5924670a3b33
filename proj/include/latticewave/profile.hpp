#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latticewave/quadrature.hpp"

namespace latticewave {

// Piecewise-continuous function on [-1,1]. Pieces are [lo,hi) intervals in
// ascending order partitioning [-1,1]; evaluation at a breakpoint takes the
// right limit (the piece starting there), matching the "u_r if x >= 0"
// convention of step data.
class Profile {
 public:
  struct Piece {
    double lo;
    double hi;
    std::function<double(double)> f;
  };

  Profile() = default;

  explicit Profile(std::vector<Piece> pieces, std::string description = "")
      : pieces_(std::move(pieces)), description_(std::move(description)) {
    if (pieces_.empty()) throw std::invalid_argument("profile: no pieces");
    const double eps = 1e-12;
    if (std::abs(pieces_.front().lo + 1.0) > eps ||
        std::abs(pieces_.back().hi - 1.0) > eps)
      throw std::invalid_argument("profile: pieces must cover [-1,1]");
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
      if (std::abs(pieces_[i].hi - pieces_[i + 1].lo) > eps)
        throw std::invalid_argument("profile: pieces must be contiguous");
  }

  static Profile constant(double v) {
    return Profile({{-1.0, 1.0, [v](double) { return v; }}}, "constant");
  }

  // Step at x = 0: left value for x < 0, right value for x >= 0.
  static Profile step(double left, double right) {
    return Profile({{-1.0, 0.0, [left](double) { return left; }},
                    {0.0, 1.0, [right](double) { return right; }}},
                   "step");
  }

  double operator()(double x) const {
    if (x <= -1.0) return pieces_.front().f(-1.0);
    if (x >= 1.0) return pieces_.back().f(1.0);
    // Few pieces in practice; linear scan is fine.
    for (const auto& p : pieces_)
      if (x < p.hi) return p.f(x);
    return pieces_.back().f(x);
  }

  // Integral over [-1,1] by piecewise adaptive quadrature.
  double integral(double tol = 1e-12) const {
    double s = 0.0;
    for (const auto& p : pieces_)
      s += integrate([&](double x) { return p.f(x); }, p.lo, p.hi, tol);
    return s;
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::string& description() const { return description_; }

 private:
  std::vector<Piece> pieces_;
  std::string description_;
};

enum class Boundary { Dirichlet, Periodic };

// Macroscopic initial data (phi0^x, phi0^tau) with wall constants.
struct InitialData {
  Profile phi0_x;
  Profile phi0_tau;
  double phi_l = 0.0;
  double phi_r = 0.0;
  Boundary boundary = Boundary::Dirichlet;
  // Set when the data describes a classical whole-line Riemann problem whose
  // velocities do not vanish at x = +-1; Dirichlet compatibility is waived
  // and the caller must keep T inside the unperturbed-boundary window.
  bool whole_line_emulation = false;

  // |int phi0_x - (phi_r - phi_l)| and max(|phi0_tau(-1)|, |phi0_tau(1)|).
  std::pair<double, double> dirichlet_defect() const {
    const double integral_defect =
        std::abs(phi0_x.integral() - (phi_r - phi_l));
    const double edge_defect =
        std::max(std::abs(phi0_tau(-1.0)), std::abs(phi0_tau(1.0)));
    return {integral_defect, edge_defect};
  }

  bool dirichlet_compatible(double tol = 1e-10) const {
    const auto [di, de] = dirichlet_defect();
    return di <= tol && de <= tol;
  }

  double periodic_velocity_defect() const { return phi0_tau.integral(); }
};

// Classical Riemann data: steps at x = 0, wall constants fixed by the
// compatibility integral (each half-interval has length 1, so
// phi_r - phi_l = u_l + u_r); the symmetric choice is taken.
inline InitialData build_riemann(double u_l, double u_r, double v_l,
                                 double v_r) {
  InitialData d;
  d.phi0_x = Profile::step(u_l, u_r);
  d.phi0_tau = Profile::step(v_l, v_r);
  const double width = u_l + u_r;
  d.phi_l = -0.5 * width;
  d.phi_r = 0.5 * width;
  d.boundary = Boundary::Dirichlet;
  d.whole_line_emulation = (v_l != 0.0) || (v_r != 0.0);
  return d;
}

// Boundary Riemann data: constant states outside [-1/2,1/2], caller-chosen
// interior profiles inside, zero velocity outside. Interior pieces must
// cover exactly [-1/2,1/2]; empty interior defaults to the linear ramp for
// phi0^x and zero for phi0^tau.
inline InitialData build_boundary_riemann(
    double u_l, double u_r, std::vector<Profile::Piece> interior_x = {},
    std::vector<Profile::Piece> interior_tau = {}) {
  auto check_interior = [](const std::vector<Profile::Piece>& pieces) {
    const double eps = 1e-12;
    if (pieces.empty()) return;
    if (std::abs(pieces.front().lo + 0.5) > eps ||
        std::abs(pieces.back().hi - 0.5) > eps)
      throw std::invalid_argument(
          "boundary_riemann: interior pieces must cover [-1/2,1/2]");
  };
  check_interior(interior_x);
  check_interior(interior_tau);

  if (interior_x.empty())
    interior_x = {{-0.5, 0.5, [u_l, u_r](double x) {
                     return u_l + (u_r - u_l) * (x + 0.5);
                   }}};
  if (interior_tau.empty())
    interior_tau = {{-0.5, 0.5, [](double) { return 0.0; }}};

  std::vector<Profile::Piece> px;
  px.push_back({-1.0, -0.5, [u_l](double) { return u_l; }});
  for (auto& p : interior_x) px.push_back(std::move(p));
  px.push_back({0.5, 1.0, [u_r](double) { return u_r; }});

  std::vector<Profile::Piece> pt;
  pt.push_back({-1.0, -0.5, [](double) { return 0.0; }});
  for (auto& p : interior_tau) pt.push_back(std::move(p));
  pt.push_back({0.5, 1.0, [](double) { return 0.0; }});

  InitialData d;
  d.phi0_x = Profile(std::move(px), "boundary riemann");
  d.phi0_tau = Profile(std::move(pt), "boundary riemann");
  d.boundary = Boundary::Dirichlet;
  const double width = d.phi0_x.integral();
  d.phi_l = -0.5 * width;
  d.phi_r = 0.5 * width;
  return d;
}

}  // namespace latticewave
