#include "flockhd/hydro1d.hpp"

#include <algorithm>
#include <cmath>

namespace flockhd {

double ParticleState1D::total_mass() const {
  double s = 0.0;
  for (double mi : m) s += mi;
  return s;
}

double ParticleState1D::momentum() const {
  double p = 0.0;
  for (int i = 0; i < size(); ++i) p += m[i] * u[i];
  return p;
}

bool ParticleState1D::ordered() const {
  for (int i = 1; i < size(); ++i)
    if (!(x[i] > x[i - 1])) return false;
  return true;
}

double conv_density(const ParticleState1D& s, double x) {
  double acc = 0.0;
  for (int j = 0; j < s.size(); ++j)
    acc += s.m[j] * s.kernel.eval(std::abs(x - s.x[j]));
  return acc;
}

namespace {

// Pairwise sums shared by rhs and the diagnostics:
//   h  = phi*rho             p  = phi*(rho u)
//   hp = (phi*rho)_x         pp = (phi*(rho u))_x
// evaluated at the particles, with sgn(x_i - x_j) folding the radial
// derivative into a one-sided slope (sgn(0) = 0, so i = j adds nothing to
// the primed sums while phi(0) = 1 feeds the self term of h and p).
struct ConvSums {
  std::vector<double> h, p, hp, pp;
};

ConvSums pair_sums(const ParticleState1D& s) {
  const int n = s.size();
  ConvSums c;
  c.h.assign(n, 0.0);
  c.p.assign(n, 0.0);
  c.hp.assign(n, 0.0);
  c.pp.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    c.h[i] = s.m[i];  // phi(0) = 1 self term
    c.p[i] = s.m[i] * s.u[i];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = s.x[j] - s.x[i];  // > 0 by ordering
      const double phi = s.kernel.eval(r);
      const double dphi = s.kernel.deriv(r);
      if (phi == 0.0 && dphi == 0.0) continue;
      c.h[i] += s.m[j] * phi;
      c.h[j] += s.m[i] * phi;
      c.p[i] += s.m[j] * phi * s.u[j];
      c.p[j] += s.m[i] * phi * s.u[i];
      // sgn(x_i - x_j) = -1 seen from i, +1 seen from j
      c.hp[i] -= s.m[j] * dphi;
      c.hp[j] += s.m[i] * dphi;
      c.pp[i] -= s.m[j] * dphi * s.u[j];
      c.pp[j] += s.m[i] * dphi * s.u[i];
    }
  }
  return c;
}

}  // namespace

Deriv1D rhs(const ParticleState1D& s) {
  const int n = s.size();
  const ConvSums c = pair_sums(s);
  Deriv1D out;
  out.dx = s.u;
  out.du.resize(n);
  out.dd.resize(n);
  if (s.model == Model::CS) {
    for (int i = 0; i < n; ++i) {
      out.du[i] = c.p[i] - s.u[i] * c.h[i];
      // residual phi'*(rho u) - u phi'*rho evaluated along the particle
      const double res = c.pp[i] - s.u[i] * c.hp[i];
      out.dd[i] = -s.d[i] * s.d[i] - c.h[i] * s.d[i] + res;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (!(c.h[i] > 0.0))
        throw VacuumDivision("MT normalization hit zero kernel-density");
      out.du[i] = c.p[i] / c.h[i] - s.u[i];
      // dA/dx by the quotient rule on the particle sums
      const double dA =
          (c.pp[i] * c.h[i] - c.p[i] * c.hp[i]) / (c.h[i] * c.h[i]);
      out.dd[i] = -s.d[i] * s.d[i] - s.d[i] + dA;
    }
  }
  return out;
}

std::vector<double> e_series(const ParticleState1D& s) {
  const int n = s.size();
  std::vector<double> e(n);
  if (s.model == Model::MT) {
    for (int i = 0; i < n; ++i) e[i] = s.d[i] + 1.0;
  } else {
    const ConvSums c = pair_sums(s);
    for (int i = 0; i < n; ++i) e[i] = s.d[i] + c.h[i];
  }
  return e;
}

double interp_velocity(const ParticleState1D& s, double xq) {
  const int n = s.size();
  if (n == 1 || xq <= s.x.front()) return s.u.front();
  if (xq >= s.x.back()) return s.u.back();
  const auto it = std::upper_bound(s.x.begin(), s.x.end(), xq);
  const int k = static_cast<int>(it - s.x.begin());
  const double w = (xq - s.x[k - 1]) / (s.x[k] - s.x[k - 1]);
  return s.u[k - 1] + w * (s.u[k] - s.u[k - 1]);
}

ThresholdVerdict classify_threshold_1d(const ParticleState1D& s0) {
  const int n = s0.size();
  ThresholdVerdict v;
  v.model = s0.model;

  const std::vector<double> e0 = e_series(s0);
  int argmin = 0;
  for (int i = 1; i < n; ++i)
    if (e0[i] < e0[argmin]) argmin = i;
  v.div_margin = e0[argmin];
  v.div_argmin = {s0.x[argmin], 0.0};
  for (int i = 0; i < n; ++i)
    if (e0[i] < 0.0) v.violations.push_back({s0.x[i], 0.0});

  if (s0.model == Model::CS) {
    // sharp 1D threshold: the divergence condition alone decides
    v.verdict =
        v.div_margin >= 0.0 ? Verdict::SubCritical : Verdict::SuperCritical;
    return v;
  }

  const double m0 = s0.total_mass();
  const auto [umin, umax] = std::minmax_element(s0.u.begin(), s0.u.end());
  v.v0 = *umax - *umin;
  const double D0 = n > 1 ? s0.x.back() - s0.x.front() : 0.0;
  try {
    const FlockGeometry geo = solve_flock_geometry(s0.kernel, m0, D0, v.v0);
    v.v0_bound = variation_bound_mt_1d(s0.kernel, geo);
  } catch (const NoFiniteFlockDiameter&) {
    v.geometry_ok = false;
  }
  if (v.div_margin < 0.0)
    v.verdict = Verdict::SuperCritical;
  else if (v.geometry_ok && v.v0 < v.v0_bound)
    v.verdict = Verdict::SubCritical;
  else
    v.verdict = Verdict::Indeterminate;
  return v;
}

DiagRow1D diagnostics(const ParticleState1D& s) {
  DiagRow1D row;
  row.t = s.t;
  const auto [umin, umax] = std::minmax_element(s.u.begin(), s.u.end());
  row.V = *umax - *umin;
  row.D = s.size() > 1 ? s.x.back() - s.x.front() : 0.0;
  const std::vector<double> e = e_series(s);
  row.min_e = *std::min_element(e.begin(), e.end());
  row.min_d = *std::min_element(s.d.begin(), s.d.end());
  row.mass = s.total_mass();
  row.momentum = s.momentum();
  return row;
}

namespace {

ParticleState1D rk4_step(const ParticleState1D& s, double dt) {
  const int n = s.size();
  ParticleState1D out = s;
  const Deriv1D k1 = rhs(s);
  ParticleState1D tmp = s;
  for (int i = 0; i < n; ++i) {
    tmp.x[i] = s.x[i] + 0.5 * dt * k1.dx[i];
    tmp.u[i] = s.u[i] + 0.5 * dt * k1.du[i];
    tmp.d[i] = s.d[i] + 0.5 * dt * k1.dd[i];
  }
  const Deriv1D k2 = rhs(tmp);
  for (int i = 0; i < n; ++i) {
    tmp.x[i] = s.x[i] + 0.5 * dt * k2.dx[i];
    tmp.u[i] = s.u[i] + 0.5 * dt * k2.du[i];
    tmp.d[i] = s.d[i] + 0.5 * dt * k2.dd[i];
  }
  const Deriv1D k3 = rhs(tmp);
  for (int i = 0; i < n; ++i) {
    tmp.x[i] = s.x[i] + dt * k3.dx[i];
    tmp.u[i] = s.u[i] + dt * k3.du[i];
    tmp.d[i] = s.d[i] + dt * k3.dd[i];
  }
  const Deriv1D k4 = rhs(tmp);
  for (int i = 0; i < n; ++i) {
    out.x[i] =
        s.x[i] + dt / 6.0 * (k1.dx[i] + 2 * k2.dx[i] + 2 * k3.dx[i] + k4.dx[i]);
    out.u[i] =
        s.u[i] + dt / 6.0 * (k1.du[i] + 2 * k2.du[i] + 2 * k3.du[i] + k4.du[i]);
    out.d[i] =
        s.d[i] + dt / 6.0 * (k1.dd[i] + 2 * k2.dd[i] + 2 * k3.dd[i] + k4.dd[i]);
  }
  out.t = s.t + dt;
  return out;
}

bool state_finite(const ParticleState1D& s) {
  for (int i = 0; i < s.size(); ++i)
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.u[i]) ||
        !std::isfinite(s.d[i]))
      return false;
  return true;
}

}  // namespace

Run1DResult run(const ParticleState1D& s0, double t_end,
                const RunOptions1D& opts) {
  if (!(t_end > 0.0)) throw std::domain_error("run needs t_end > 0");
  if (!s0.ordered()) throw std::domain_error("initial particles not ordered");

  Run1DResult res;
  ParticleState1D s = s0;
  s.t = 0.0;

  auto record = [&](const ParticleState1D& st) {
    res.series.push_back(diagnostics(st));
    if (opts.store_snapshots)
      res.snapshots.push_back({st.t, st.x, st.u, st.d});
  };
  record(s);

  const double blow_level = -1.0 / opts.eps_blow;
  double h = opts.dt_ctrl;
  double next_out = opts.output_interval;
  bool blew = false;

  while (s.t < t_end - 1e-12) {
    h = std::min({h, t_end - s.t, next_out - s.t});
    if (h < opts.dt_min) {
      blew = true;
      break;
    }

    const ParticleState1D full = rk4_step(s, h);
    ParticleState1D half = rk4_step(s, 0.5 * h);
    half = rk4_step(half, 0.5 * h);

    if (!state_finite(full) || !state_finite(half)) {
      h *= 0.25;
      continue;
    }

    // max scaled difference between the h and h/2 solutions
    double err = 0.0;
    for (int i = 0; i < s.size(); ++i) {
      const double sx = opts.tol * (1.0 + std::abs(half.x[i]));
      const double su = opts.tol * (1.0 + std::abs(half.u[i]));
      const double sd = opts.tol * (1.0 + std::abs(half.d[i]));
      err = std::max(err, std::abs(full.x[i] - half.x[i]) / sx);
      err = std::max(err, std::abs(full.u[i] - half.u[i]) / su);
      err = std::max(err, std::abs(full.d[i] - half.d[i]) / sd);
    }

    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    // accept: local extrapolation of the step-doubled solution
    for (int i = 0; i < s.size(); ++i) {
      half.x[i] += (half.x[i] - full.x[i]) / 15.0;
      half.u[i] += (half.u[i] - full.u[i]) / 15.0;
      half.d[i] += (half.d[i] - full.d[i]) / 15.0;
    }
    s = half;

    const double dmin = *std::min_element(s.d.begin(), s.d.end());
    if (!state_finite(s) || dmin < blow_level || !s.ordered()) {
      blew = true;
      break;
    }

    if (s.t >= next_out - 1e-12) {
      record(s);
      next_out += opts.output_interval;
    }

    const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h = std::min(opts.dt_ctrl, h * std::min(5.0, std::max(0.2, grow)));
  }

  if (blew) {
    res.outcome = Outcome::BlewUp;
    res.t_blow = s.t;
  } else {
    res.outcome = Outcome::Completed;
    if (res.series.empty() || res.series.back().t < s.t - 1e-12) record(s);
  }
  res.final_state = s;
  return res;
}

BisectResult bisect_threshold(
    const std::function<ParticleState1D(double)>& family, double a_lo,
    double a_hi, double tol, double t_end, const RunOptions1D& opts) {
  if (!(a_lo < a_hi)) throw BracketError("bisection needs a_lo < a_hi");
  if (!(tol > 0.0)) throw std::domain_error("bisection needs tol > 0");

  if (run(family(a_lo), t_end, opts).outcome != Outcome::Completed)
    throw BracketError("lower bracket endpoint already blows up");
  if (run(family(a_hi), t_end, opts).outcome != Outcome::BlewUp)
    throw BracketError("upper bracket endpoint does not blow up");

  BisectResult r;
  while (a_hi - a_lo > tol) {
    const double mid = 0.5 * (a_lo + a_hi);
    ++r.iterations;
    if (run(family(mid), t_end, opts).outcome == Outcome::BlewUp)
      a_hi = mid;
    else
      a_lo = mid;
  }
  r.a_star = 0.5 * (a_lo + a_hi);
  return r;
}

}  // namespace flockhd
