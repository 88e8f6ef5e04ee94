#pragma once

#include <cstdint>

#include "flockhd/kernels.hpp"
#include "flockhd/profiles.hpp"
#include "flockhd/types.hpp"

namespace flockhd {

// Agent-based alignment system.  Positions/velocities are stored as Vec2
// even in 1D (y components stay zero), so pairwise distances work uniformly.
//
//   dx_i/dt = v_i
//   dv_i/dt = sum_j m_j phi(|x_i-x_j|) (v_j - v_i)            (CS)
//   dv_i/dt = sum_j m_j phi(|x_i-x_j|) (v_j - v_i) / deg_i    (MT)
//             deg_i = sum_j m_j phi(|x_i-x_j|)  (>= m_i since phi(0)=1)
//
// Agents carry weights m_i so an ensemble can quadrature a macroscopic
// density; with equal weights summing to m0 the CS alignment rate toward
// consensus is m0*phi, mass-weighted exactly like the hydrodynamic model.
struct AgentEnsemble {
  int dim = 1;
  std::vector<Vec2> x;
  std::vector<Vec2> v;
  std::vector<double> m;
  Model model = Model::CS;
  InfluenceKernel kernel;
  double t = 0.0;

  int size() const { return static_cast<int>(x.size()); }
  double total_mass() const;
  Vec2 momentum() const;
};

struct AgentDeriv {
  std::vector<Vec2> dx, dv;
};

AgentDeriv rhs(const AgentEnsemble& e);

// Classical RK4, one fixed step; advances e.t by dt.
void step(AgentEnsemble& e, double dt);

// N equal-weight agents positioned by deterministic sampling of the density
// (1D: inverse CDF at midpoint-stratified quantiles; 2D: seeded rejection
// against the profile on its bounding box), monokinetic velocities
// v_i = u0(x_i).
AgentEnsemble sample_from_macro(const DensityProfile& density,
                                const VelocityProfile& velocity, int N,
                                std::uint64_t seed, int dim, Model model,
                                const InfluenceKernel& kernel);

// (D, V): max pairwise distance of positions and of velocities.
std::pair<double, double> diameters(const AgentEnsemble& e);

}  // namespace flockhd
