#pragma once

#include <optional>

#include "flockhd/types.hpp"

namespace flockhd {

// Radial influence kernel families.  All are non-increasing with phi(0) = 1:
//   Exponential(ell):  phi(r) = exp(-r/ell)
//   PowerLaw(beta):    phi(r) = (1+r)^(-beta)      (beta = 0 gives phi == 1)
//   CompactBump(R):    phi(r) = exp(1 - 1/(1-(r/R)^2)) for r < R, else 0
// An optional horizon H truncates any family: phi(r) = 0 for r > H.
enum class KernelFamily { Exponential, PowerLaw, CompactBump };

const char* kernel_family_name(KernelFamily f);

struct InfluenceKernel {
  KernelFamily family = KernelFamily::Exponential;
  double param = 1.0;  // ell, beta, or R depending on family
  std::optional<double> horizon{};

  static InfluenceKernel exponential(double ell,
                                     std::optional<double> horizon = {});
  static InfluenceKernel power_law(double beta,
                                   std::optional<double> horizon = {});
  static InfluenceKernel compact_bump(double radius,
                                      std::optional<double> horizon = {});

  // phi(r); throws std::domain_error for r < 0.
  double eval(double r) const;
  double operator()(double r) const { return eval(r); }

  // phi'(r); <= 0 everywhere it is defined, 0 beyond the support/horizon.
  double deriv(double r) const;

  // integral of phi over [a, b]; b may be +inf.  Exact for Exponential and
  // PowerLaw, adaptive Simpson for CompactBump.  Requires 0 <= a <= b.
  double tail_integral(double a, double b) const;

  double l1_norm() const { return tail_integral(0.0, kInf); }

  // max of |phi'| over [0, r_max] (the smooth range; a horizon jump is not
  // counted).  Analytic for the monotone families, numeric for the bump.
  double max_abs_deriv(double r_max) const;

  // radius beyond which phi vanishes identically (+inf for global kernels)
  double support_radius() const;
};

// Flocking geometry of initial data (m0, D0, V0) under a kernel: the spread
// D_inf solving m0 * integral_{D0}^{D_inf} phi = V0, the kernel level
// phi_inf = phi(D_inf) sustained inside the flock, and the alignment decay
// rates kappa = m0*phi_inf (CS) and phi_inf (MT).
struct FlockGeometry {
  double m0 = 0.0, D0 = 0.0, V0 = 0.0;
  double D_inf = 0.0;
  double phi_inf = 0.0;
  double kappa_cs = 0.0;
  double kappa_mt = 0.0;
};

// True when V0 < m0 * integral_{D0}^{inf} phi, i.e. a finite flock diameter
// exists.  Always true for kernels with a divergent tail integral.
bool check_global_condition(const InfluenceKernel& k, double m0, double D0,
                            double V0);

// Solves m0 * tail_integral(D0, D) = V0 by bracketed bisection to relative
// tolerance 1e-10.  Throws NoFiniteFlockDiameter when the global condition
// fails.  V0 = 0 returns D0 exactly.
double solve_flock_diameter(const InfluenceKernel& k, double m0, double D0,
                            double V0);

FlockGeometry solve_flock_geometry(const InfluenceKernel& k, double m0,
                                   double D0, double V0);

struct VariationBound {
  bool holds = false;
  double bound = 0.0;   // the admissible velocity variation
  double margin = 0.0;  // bound - V0
};

// Velocity-variation smallness required by the 2D regularity thresholds:
//   CS: V0 <= m0 * min{ |phi|_1, phi_inf^2 / (4 |phi'|_inf) }
//   MT: V0 <= m0 * min{ |phi|_1, phi_inf^2 / (4 |phi'|_inf (1 + 2 phi_inf)) }
// with |phi'|_inf taken over [0, D_inf].  Propagates NoFiniteFlockDiameter.
VariationBound check_variation_bound(const InfluenceKernel& k, Model model,
                                     double m0, double D0, double V0);

// 1D MT variant: V0 < m0 * min{ |phi|_1, phi_inf / (4 |phi'|_inf) }
// (first power of phi_inf).
double variation_bound_mt_1d(const InfluenceKernel& k,
                             const FlockGeometry& geom);

// Alignment decay rate kappa: m0 * phi_inf for CS, phi_inf for MT.
double decay_rate(Model model, double m0, double phi_inf);

}  // namespace flockhd
