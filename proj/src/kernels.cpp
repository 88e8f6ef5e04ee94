#include "flockhd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace flockhd {

namespace {

// Adaptive Simpson quadrature (used for the CompactBump family, which has no
// elementary antiderivative).
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt_simpson(const F& f, double a, double m, double b, double fa,
                     double fm, double fb, double whole, double tol,
                     int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adapt_simpson(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol,
                       48);
}

double bump_value(double r, double R) {
  const double s = r / R;
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_deriv(double r, double R) {
  const double s = r / R;
  if (s >= 1.0) return 0.0;
  const double one_ms2 = 1.0 - s * s;
  return bump_value(r, R) * (-2.0 * s / (R * one_ms2 * one_ms2));
}

void require_nonneg_radius(double r) {
  if (!(r >= 0.0)) throw std::domain_error("kernel radius must be >= 0");
}

}  // namespace

const char* kernel_family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::Exponential: return "exponential";
    case KernelFamily::PowerLaw: return "power_law";
    default: return "compact_bump";
  }
}

InfluenceKernel InfluenceKernel::exponential(double ell,
                                             std::optional<double> horizon) {
  if (!(ell > 0.0)) throw std::domain_error("exponential kernel needs ell > 0");
  if (horizon && !(*horizon > 0.0))
    throw std::domain_error("kernel horizon must be > 0");
  return {KernelFamily::Exponential, ell, horizon};
}

InfluenceKernel InfluenceKernel::power_law(double beta,
                                           std::optional<double> horizon) {
  if (!(beta >= 0.0)) throw std::domain_error("power-law kernel needs beta >= 0");
  if (horizon && !(*horizon > 0.0))
    throw std::domain_error("kernel horizon must be > 0");
  return {KernelFamily::PowerLaw, beta, horizon};
}

InfluenceKernel InfluenceKernel::compact_bump(double radius,
                                              std::optional<double> horizon) {
  if (!(radius > 0.0))
    throw std::domain_error("compact bump kernel needs radius > 0");
  if (horizon && !(*horizon > 0.0))
    throw std::domain_error("kernel horizon must be > 0");
  return {KernelFamily::CompactBump, radius, horizon};
}

double InfluenceKernel::eval(double r) const {
  require_nonneg_radius(r);
  if (horizon && r > *horizon) return 0.0;
  switch (family) {
    case KernelFamily::Exponential:
      return std::exp(-r / param);
    case KernelFamily::PowerLaw:
      return std::pow(1.0 + r, -param);
    default:
      return bump_value(r, param);
  }
}

double InfluenceKernel::deriv(double r) const {
  require_nonneg_radius(r);
  if (horizon && r > *horizon) return 0.0;
  switch (family) {
    case KernelFamily::Exponential:
      return -std::exp(-r / param) / param;
    case KernelFamily::PowerLaw:
      return -param * std::pow(1.0 + r, -param - 1.0);
    default:
      return bump_deriv(r, param);
  }
}

double InfluenceKernel::support_radius() const {
  double r = (family == KernelFamily::CompactBump) ? param : kInf;
  if (horizon) r = std::min(r, *horizon);
  return r;
}

double InfluenceKernel::tail_integral(double a, double b) const {
  require_nonneg_radius(a);
  if (!(b >= a)) throw std::domain_error("tail integral needs a <= b");
  if (horizon) b = std::min(b, *horizon);
  if (b <= a) return 0.0;

  switch (family) {
    case KernelFamily::Exponential: {
      const double ea = std::exp(-a / param);
      const double eb = std::isinf(b) ? 0.0 : std::exp(-b / param);
      return param * (ea - eb);
    }
    case KernelFamily::PowerLaw: {
      const double beta = param;
      if (beta == 1.0) {
        if (std::isinf(b)) return kInf;
        return std::log1p(b) - std::log1p(a);
      }
      if (std::isinf(b)) {
        if (beta < 1.0) return kInf;
        return std::pow(1.0 + a, 1.0 - beta) / (beta - 1.0);
      }
      return (std::pow(1.0 + a, 1.0 - beta) - std::pow(1.0 + b, 1.0 - beta)) /
             (beta - 1.0);
    }
    default: {
      const double hi = std::min(b, param);
      if (hi <= a) return 0.0;
      const double R = param;
      return integrate([R](double r) { return bump_value(r, R); }, a, hi);
    }
  }
}

double InfluenceKernel::max_abs_deriv(double r_max) const {
  require_nonneg_radius(r_max);
  double hi = std::min(r_max, support_radius());
  switch (family) {
    case KernelFamily::Exponential:
      return 1.0 / param;  // |phi'| is maximal at r = 0
    case KernelFamily::PowerLaw:
      return param;  // beta * (1+r)^(-beta-1) is maximal at r = 0
    default: {
      // |phi'| vanishes at both 0 and R with a single interior peak; locate
      // it by a coarse scan refined with golden-section search.
      const double R = param;
      hi = std::min(hi, R * (1.0 - 1e-12));
      if (hi <= 0.0) return 0.0;
      const int kScan = 2048;
      double best_r = 0.0, best = 0.0;
      for (int i = 0; i <= kScan; ++i) {
        const double r = hi * i / kScan;
        const double v = -bump_deriv(r, R);
        if (v > best) {
          best = v;
          best_r = r;
        }
      }
      double lo = std::max(0.0, best_r - hi / kScan);
      double up = std::min(hi, best_r + hi / kScan);
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = up - gr * (up - lo), d = lo + gr * (up - lo);
      double fc = -bump_deriv(c, R), fd = -bump_deriv(d, R);
      for (int it = 0; it < 200 && up - lo > 1e-14 * std::max(1.0, up); ++it) {
        if (fc > fd) {
          up = d;
          d = c;
          fd = fc;
          c = up - gr * (up - lo);
          fc = -bump_deriv(c, R);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + gr * (up - lo);
          fd = -bump_deriv(d, R);
        }
      }
      return std::max(best, std::max(fc, fd));
    }
  }
}

bool check_global_condition(const InfluenceKernel& k, double m0, double D0,
                            double V0) {
  if (!(m0 > 0.0)) throw std::domain_error("total mass must be > 0");
  if (!(D0 >= 0.0) || !(V0 >= 0.0))
    throw std::domain_error("D0 and V0 must be >= 0");
  const double tail = k.tail_integral(D0, kInf);
  if (std::isinf(tail)) return true;
  return V0 < m0 * tail;
}

double solve_flock_diameter(const InfluenceKernel& k, double m0, double D0,
                            double V0) {
  if (!check_global_condition(k, m0, D0, V0))
    throw NoFiniteFlockDiameter(
        "kernel tail mass past D0 cannot absorb the velocity variation");
  if (V0 == 0.0) return D0;

  // g(D) = m0 * int_{D0}^{D} phi - V0 is increasing with g(D0) < 0; double
  // the bracket until it changes sign, then bisect.
  auto g = [&](double D) { return m0 * k.tail_integral(D0, D) - V0; };
  double lo = D0, step = std::max(1.0, D0), hi = D0 + step;
  while (g(hi) < 0.0) {
    lo = hi;
    step *= 2.0;
    hi = D0 + step;
    if (!std::isfinite(hi))
      throw NoFiniteFlockDiameter("flock diameter bracket diverged");
  }
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FlockGeometry solve_flock_geometry(const InfluenceKernel& k, double m0,
                                   double D0, double V0) {
  FlockGeometry geo;
  geo.m0 = m0;
  geo.D0 = D0;
  geo.V0 = V0;
  geo.D_inf = solve_flock_diameter(k, m0, D0, V0);
  geo.phi_inf = k.eval(geo.D_inf);
  geo.kappa_cs = decay_rate(Model::CS, m0, geo.phi_inf);
  geo.kappa_mt = decay_rate(Model::MT, m0, geo.phi_inf);
  return geo;
}

VariationBound check_variation_bound(const InfluenceKernel& k, Model model,
                                     double m0, double D0, double V0) {
  const FlockGeometry geo = solve_flock_geometry(k, m0, D0, V0);
  const double l1 = k.l1_norm();
  const double dmax = k.max_abs_deriv(geo.D_inf);
  double gap_term;
  if (dmax == 0.0) {
    gap_term = kInf;  // flat kernel: no gradient residual at all
  } else if (model == Model::CS) {
    gap_term = geo.phi_inf * geo.phi_inf / (4.0 * dmax);
  } else {
    gap_term =
        geo.phi_inf * geo.phi_inf / (4.0 * dmax * (1.0 + 2.0 * geo.phi_inf));
  }
  VariationBound vb;
  vb.bound = m0 * std::min(l1, gap_term);
  vb.margin = vb.bound - V0;
  vb.holds = V0 <= vb.bound;
  return vb;
}

double variation_bound_mt_1d(const InfluenceKernel& k,
                             const FlockGeometry& geom) {
  const double l1 = k.l1_norm();
  const double dmax = k.max_abs_deriv(geom.D_inf);
  const double gap_term = dmax == 0.0 ? kInf : geom.phi_inf / (4.0 * dmax);
  return geom.m0 * std::min(l1, gap_term);
}

double decay_rate(Model model, double m0, double phi_inf) {
  if (!(m0 > 0.0)) throw std::domain_error("total mass must be > 0");
  if (!(phi_inf > 0.0) || !(phi_inf <= 1.0))
    throw std::domain_error("phi_inf must lie in (0, 1]");
  return model == Model::CS ? m0 * phi_inf : phi_inf;
}

}  // namespace flockhd
