#pragma once

#include <functional>

#include "flockhd/kernels.hpp"
#include "flockhd/threshold.hpp"
#include "flockhd/types.hpp"

namespace flockhd {

// 1D Euler alignment system in Lagrangian form.  Particles carry mass
// (continuity is exact) and the velocity gradient d_i = du/dx along their
// path, closed by the exact gradient law:
//   CS: u'ms = sum_j m_j phi_ij (u_j - u_i)
//       d'   = -d^2 - (phi*rho) d + [phi'*(rho u) - u phi'*rho]
//   MT: u'   = A(u) - u,  A(u) = phi*(rho u) / phi*rho
//       d'   = -d^2 - d + dA/dx     (quotient rule on the particle sums)
// All convolutions are particle sums; the j = i term contributes m_i phi(0)
// to phi*rho and nothing elsewhere.
struct ParticleState1D {
  std::vector<double> x;  // strictly increasing; violation = crossing
  std::vector<double> u;
  std::vector<double> m;
  std::vector<double> d;
  Model model = Model::CS;
  InfluenceKernel kernel;
  double t = 0.0;

  int size() const { return static_cast<int>(x.size()); }
  double total_mass() const;
  double momentum() const;
  bool ordered() const;
};

struct Deriv1D {
  std::vector<double> dx, du, dd;
};

// phi*rho at an arbitrary point: sum_j m_j phi(|x - x_j|).
double conv_density(const ParticleState1D& s, double x);

Deriv1D rhs(const ParticleState1D& s);

// e_i = d_i + phi*rho(x_i) (CS) or d_i + 1 (MT).
std::vector<double> e_series(const ParticleState1D& s);

// Piecewise-linear velocity field between particles, constant beyond the
// first/last particle (monotone interpolation: no new extrema).
double interp_velocity(const ParticleState1D& s, double xq);

ThresholdVerdict classify_threshold_1d(const ParticleState1D& s0);

struct RunOptions1D {
  double dt_ctrl = 1e-2;  // initial and maximal step
  double tol = 1e-8;      // step-doubling error control (abs + rel)
  double eps_blow = 1e-4;
  double dt_min = 1e-10;
  double output_interval = 0.1;
  bool store_snapshots = false;
};

struct DiagRow1D {
  double t = 0, V = 0, D = 0, min_e = 0, min_d = 0, mass = 0, momentum = 0;
};

struct Snapshot1D {
  double t = 0;
  std::vector<double> x, u, d;
};

struct Run1DResult {
  Outcome outcome = Outcome::Completed;
  double t_blow = kNaN;
  std::vector<DiagRow1D> series;
  std::vector<Snapshot1D> snapshots;
  ParticleState1D final_state;
};

DiagRow1D diagnostics(const ParticleState1D& s);

// Adaptive RK4 (step doubling with local extrapolation).  Blowup is declared
// when min d < -1/eps_blow, particle ordering breaks, a field goes
// non-finite, or the step collapses below dt_min.
Run1DResult run(const ParticleState1D& s0, double t_end,
                const RunOptions1D& opts = {});

struct BisectResult {
  double a_star = 0.0;
  int iterations = 0;
};

// Bisection on a family amplitude between a completing a_lo and a blowing-up
// a_hi.  Endpoint behavior is verified first; a non-straddling bracket is a
// BracketError.
BisectResult bisect_threshold(
    const std::function<ParticleState1D(double)>& family, double a_lo,
    double a_hi, double tol, double t_end, const RunOptions1D& opts = {});

}  // namespace flockhd
