#include "flockhd/microdyn.hpp"

#include <cmath>
#include <random>

namespace flockhd {

double AgentEnsemble::total_mass() const {
  double s = 0.0;
  for (double mi : m) s += mi;
  return s;
}

Vec2 AgentEnsemble::momentum() const {
  Vec2 p{};
  for (int i = 0; i < size(); ++i) p = p + m[i] * v[i];
  return p;
}

AgentDeriv rhs(const AgentEnsemble& e) {
  const int n = e.size();
  AgentDeriv out;
  out.dx = e.v;
  out.dv.assign(n, Vec2{});
  std::vector<double> deg(n, 0.0);

  // Symmetric pair pass: phi is evaluated once per pair.  The j = i term
  // contributes m_i to deg_i (phi(0) = 1) and nothing to the force.
  for (int i = 0; i < n; ++i) deg[i] += e.m[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double phi = e.kernel.eval(norm(e.x[i] - e.x[j]));
      if (phi == 0.0) continue;
      const Vec2 dv = e.v[j] - e.v[i];
      out.dv[i] = out.dv[i] + (e.m[j] * phi) * dv;
      out.dv[j] = out.dv[j] - (e.m[i] * phi) * dv;
      deg[i] += e.m[j] * phi;
      deg[j] += e.m[i] * phi;
    }
  }
  if (e.model == Model::MT)
    for (int i = 0; i < n; ++i) out.dv[i] = (1.0 / deg[i]) * out.dv[i];
  return out;
}

void step(AgentEnsemble& e, double dt) {
  if (!(dt > 0.0)) throw StepSizeError("agent step needs dt > 0");
  const int n = e.size();
  const std::vector<Vec2> x0 = e.x, v0 = e.v;

  const AgentDeriv k1 = rhs(e);
  for (int i = 0; i < n; ++i) {
    e.x[i] = x0[i] + (0.5 * dt) * k1.dx[i];
    e.v[i] = v0[i] + (0.5 * dt) * k1.dv[i];
  }
  const AgentDeriv k2 = rhs(e);
  for (int i = 0; i < n; ++i) {
    e.x[i] = x0[i] + (0.5 * dt) * k2.dx[i];
    e.v[i] = v0[i] + (0.5 * dt) * k2.dv[i];
  }
  const AgentDeriv k3 = rhs(e);
  for (int i = 0; i < n; ++i) {
    e.x[i] = x0[i] + dt * k3.dx[i];
    e.v[i] = v0[i] + dt * k3.dv[i];
  }
  const AgentDeriv k4 = rhs(e);
  for (int i = 0; i < n; ++i) {
    e.x[i] = x0[i] + (dt / 6.0) * (k1.dx[i] + 2.0 * k2.dx[i] +
                                   2.0 * k3.dx[i] + k4.dx[i]);
    e.v[i] = v0[i] + (dt / 6.0) * (k1.dv[i] + 2.0 * k2.dv[i] +
                                   2.0 * k3.dv[i] + k4.dv[i]);
  }
  e.t += dt;
}

namespace {

// Monotone piecewise-linear inverse of the density CDF built on a dense
// uniform grid over the support.
struct Cdf1D {
  std::vector<double> x, F;

  explicit Cdf1D(const DensityProfile& d) {
    const int cells = 1 << 16;
    const double lo = d.center.x - d.support_radius();
    const double hi = d.center.x + d.support_radius();
    const double h = (hi - lo) / cells;
    x.resize(cells + 1);
    F.resize(cells + 1);
    x[0] = lo;
    F[0] = 0.0;
    // trapezoid accumulation; plenty accurate against the 2/N Kolmogorov
    // budget of stratified sampling
    double prev = d.value1d(lo);
    for (int i = 1; i <= cells; ++i) {
      x[i] = lo + i * h;
      const double cur = d.value1d(x[i]);
      F[i] = F[i - 1] + 0.5 * h * (prev + cur);
      prev = cur;
    }
    const double total = F.back();
    if (!(total > 0.0)) throw std::domain_error("density has zero mass");
    for (double& f : F) f /= total;
    F.back() = 1.0;
  }

  double quantile(double p) const {
    auto it = std::lower_bound(F.begin(), F.end(), p);
    if (it == F.begin()) return x.front();
    const size_t k = static_cast<size_t>(it - F.begin());
    const double f0 = F[k - 1], f1 = F[k];
    const double w = f1 > f0 ? (p - f0) / (f1 - f0) : 0.5;
    return x[k - 1] + w * (x[k] - x[k - 1]);
  }
};

}  // namespace

AgentEnsemble sample_from_macro(const DensityProfile& density,
                                const VelocityProfile& velocity, int N,
                                std::uint64_t seed, int dim, Model model,
                                const InfluenceKernel& kernel) {
  if (N < 1) throw std::domain_error("need at least one agent");
  if (dim != 1 && dim != 2) throw std::domain_error("dim must be 1 or 2");
  if (!(density.mass > 0.0)) throw std::domain_error("density has zero mass");

  AgentEnsemble e;
  e.dim = dim;
  e.model = model;
  e.kernel = kernel;
  e.m.assign(N, density.mass / N);
  e.x.resize(N);
  e.v.resize(N);

  if (dim == 1) {
    const Cdf1D cdf(density);
    for (int i = 0; i < N; ++i) {
      const double xi = cdf.quantile((i + 0.5) / N);
      e.x[i] = {xi, 0.0};
      e.v[i] = {velocity.eval1d(xi), 0.0};
    }
  } else {
    // rejection sampling against the bounding box; acceptance probability
    // value/peak, peak scanned on a fine grid
    const double r = density.support_radius();
    const double lo_x = density.center.x - r, lo_y = density.center.y - r;
    const double side = 2.0 * r;
    double peak = 0.0;
    const int scan = 512;
    for (int i = 0; i <= scan; ++i)
      for (int j = 0; j <= scan; ++j)
        peak = std::max(peak, density.value2d(lo_x + side * i / scan,
                                              lo_y + side * j / scan));
    peak *= 1.05;  // headroom over the scanned maximum
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
      for (;;) {
        const double px = lo_x + side * unit(rng);
        const double py = lo_y + side * unit(rng);
        if (density.value2d(px, py) > peak * unit(rng)) {
          e.x[i] = {px, py};
          e.v[i] = velocity.eval2d(px, py);
          break;
        }
      }
    }
  }
  return e;
}

std::pair<double, double> diameters(const AgentEnsemble& e) {
  double D2 = 0.0, V2 = 0.0;
  const int n = e.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec2 dx = e.x[i] - e.x[j], dv = e.v[i] - e.v[j];
      D2 = std::max(D2, dot(dx, dx));
      V2 = std::max(V2, dot(dv, dv));
    }
  }
  return {std::sqrt(D2), std::sqrt(V2)};
}

}  // namespace flockhd
