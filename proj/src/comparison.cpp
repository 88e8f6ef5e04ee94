#include "flockhd/comparison.hpp"

#include <cmath>
#include <ostream>

namespace flockhd {

namespace {

void validate(const EnvelopeParams& p) {
  if (!(p.m0 > 0.0)) throw std::domain_error("envelope needs m0 > 0");
  if (!(p.phi_inf > 0.0) || !(p.phi_inf <= 1.0))
    throw std::domain_error("envelope needs phi_inf in (0,1]");
  if (!(p.v0 >= 0.0) || !(p.dphi_max >= 0.0) || !(p.eta0_max >= 0.0) ||
      !(p.omega0_max >= 0.0))
    throw std::domain_error("envelope needs nonnegative v0/dphi/eta0/omega0");
}

double riccati_toward(double c, double e0, double t) {
  // solution of e' = (c^2 - e^2)/2, exact for every starting level
  const double th = std::tanh(0.5 * c * t);
  return c * (e0 + c * th) / (c + e0 * th);
}

double kappa_of(Model model, double m0, double phi_inf) {
  return model == Model::CS ? m0 * phi_inf : phi_inf;
}

double eta_limit(Model model, const EnvelopeParams& p) {
  // integral of the q-bound: q0 / kappa
  const double q0 = residual_q_bound(model, p.m0, p.v0,
                                     {p.phi_inf, p.dphi_max}, 0.0);
  return p.eta0_max + q0 / kappa_of(model, p.m0, p.phi_inf);
}

}  // namespace

double BoundEnvelope::eval(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("envelope time must be >= 0");
  switch (kind) {
    case EnvelopeKind::EtaS:
      return base + (kappa > 0.0 ? q0 / kappa * (1.0 - std::exp(-kappa * t))
                                 : q0 * t);
    case EnvelopeKind::Vorticity:
      return base;
    default:
      return riccati_toward(c, e0, t);
  }
}

double BoundEnvelope::limit() const {
  switch (kind) {
    case EnvelopeKind::EtaS:
      return base + (kappa > 0.0 ? q0 / kappa : (q0 > 0.0 ? kInf : 0.0));
    case EnvelopeKind::Vorticity:
      return base;
    default:
      return c;
  }
}

double residual_entry_bound(Model model, double m0, double V0,
                            const KernelStats& ks, double t) {
  if (!(t >= 0.0)) throw std::domain_error("residual bound needs t >= 0");
  const double kappa = kappa_of(model, m0, ks.phi_inf);
  const double amp = model == Model::CS ? ks.dphi_max * m0 * V0
                                        : ks.dphi_max / ks.phi_inf * V0;
  return amp * std::exp(-kappa * t);
}

double residual_q_bound(Model model, double m0, double V0,
                        const KernelStats& ks, double t) {
  return 2.0 * residual_entry_bound(model, m0, V0, ks, t);
}

BoundEnvelope eta_envelope(Model model, const EnvelopeParams& p) {
  validate(p);
  // the integrated chain presupposes the model's variation bound
  if (p.dphi_max > 0.0) {
    const double gap_term =
        model == Model::CS
            ? p.phi_inf * p.phi_inf / (4.0 * p.dphi_max)
            : p.phi_inf * p.phi_inf /
                  (4.0 * p.dphi_max * (1.0 + 2.0 * p.phi_inf));
    if (p.v0 > p.m0 * gap_term)
      throw EnvelopeInvalid("variation bound violated: eta chain unfounded");
  }
  BoundEnvelope env;
  env.kind = EnvelopeKind::EtaS;
  env.base = p.eta0_max;
  env.q0 = residual_q_bound(model, p.m0, p.v0, {p.phi_inf, p.dphi_max}, 0.0);
  env.kappa = kappa_of(model, p.m0, p.phi_inf);
  return env;
}

BoundEnvelope vorticity_envelope(const EnvelopeParams& p) {
  validate(p);
  BoundEnvelope env;
  env.kind = EnvelopeKind::Vorticity;
  env.base = p.omega0_max + 0.5 * p.m0 * p.phi_inf;
  return env;
}

std::pair<BoundEnvelope, BoundEnvelope> e_envelopes(Model model,
                                                    const EnvelopeParams& p) {
  validate(p);
  const double eta_lim = eta_limit(model, p);
  const double rbar =
      residual_q_bound(model, p.m0, p.v0, {p.phi_inf, p.dphi_max}, 0.0);

  double c_min_sq, cap_sq;
  if (model == Model::CS) {
    const double k = p.m0 * p.phi_inf;
    c_min_sq = k * k - eta_lim * eta_lim;
    const double omega_max = p.omega0_max + 0.5 * p.m0 * p.phi_inf;
    cap_sq = p.m0 * p.m0 + 4.0 * omega_max * omega_max;
  } else {
    c_min_sq = 1.0 - eta_lim * eta_lim - 2.0 * rbar;
    // MT vorticity cap: |omega_0| + integral of |tr JR|/2, with |tr JR|
    // bounded by rbar e^{-kappa t} and kappa = phi_inf
    const double omega_cap = p.omega0_max + 0.5 * rbar / p.phi_inf;
    cap_sq = 1.0 + 2.0 * rbar + 2.0 * omega_cap * omega_cap;
  }
  if (!(c_min_sq > 0.0))
    throw EnvelopeInvalid("lower Riccati level c_min^2 <= 0");

  BoundEnvelope lower;
  lower.kind = EnvelopeKind::ELower;
  lower.c = std::sqrt(c_min_sq);
  lower.e0 = p.e0_min;

  BoundEnvelope upper;
  upper.kind = EnvelopeKind::EUpper;
  upper.c = std::sqrt(cap_sq);
  upper.e0 = p.e0_max;
  return {lower, upper};
}

LabTrajectory lagrangian_lab(Model model, LabForm form, const LabInit& init,
                             const LabForcing& forcing, double t_end,
                             double dt, double record_every) {
  if (!(t_end > 0.0) || !(dt > 0.0))
    throw std::domain_error("lab needs t_end, dt > 0");
  if (model == Model::CS && !forcing.conv_rho)
    throw std::domain_error("CS lab forms need the conv_rho driver");

  auto zero = [](double) { return 0.0; };
  const auto h = forcing.conv_rho ? forcing.conv_rho
                                  : std::function<double(double)>(zero);
  const auto q = forcing.q ? forcing.q : std::function<double(double)>(zero);
  const auto jr =
      forcing.tr_jr ? forcing.tr_jr : std::function<double(double)>(zero);
  const auto r = forcing.r ? forcing.r : std::function<double(double)>(zero);

  struct Y {
    double e, eta, w;
  };
  auto f = [&](double t, Y y) -> Y {
    Y dy{0.0, 0.0, 0.0};
    switch (form) {
      case LabForm::Strict1D:
        dy.e = model == Model::CS ? y.e * (h(t) - y.e)
                                  : y.e * (1.0 - y.e) + r(t);
        break;
      case LabForm::PaperRemark:
        dy.e = model == Model::CS
                   ? 0.5 * (h(t) * h(t) - y.e * y.e)
                   : 0.5 * (1.0 + 2.0 * r(t) - y.e * y.e);
        break;
      default: {  // TwoD_Frozen
        if (model == Model::CS) {
          const double ht = h(t);
          dy.e = 0.5 * (ht * ht + 4.0 * y.w * y.w - y.eta * y.eta -
                        y.e * y.e);
        } else {
          dy.e = 0.5 * (1.0 - y.eta * y.eta + 2.0 * r(t) - y.e * y.e) +
                 y.w * y.w;
        }
        dy.eta = -y.e * y.eta + q(t);
        dy.w = -y.e * y.w + 0.5 * jr(t);
        break;
      }
    }
    return dy;
  };

  const int stride = std::max(1, static_cast<int>(std::lround(record_every / dt)));
  const long nsteps = std::lround(t_end / dt);

  LabTrajectory traj;
  Y y{init.e0, init.eta0, init.omega0};
  double t = 0.0;
  auto record = [&]() {
    traj.t.push_back(t);
    traj.e.push_back(y.e);
    traj.eta.push_back(y.eta);
    traj.omega.push_back(y.w);
  };
  record();
  for (long k = 0; k < nsteps; ++k) {
    const Y k1 = f(t, y);
    const Y k2 = f(t + 0.5 * dt,
                   {y.e + 0.5 * dt * k1.e, y.eta + 0.5 * dt * k1.eta,
                    y.w + 0.5 * dt * k1.w});
    const Y k3 = f(t + 0.5 * dt,
                   {y.e + 0.5 * dt * k2.e, y.eta + 0.5 * dt * k2.eta,
                    y.w + 0.5 * dt * k2.w});
    const Y k4 = f(t + dt, {y.e + dt * k3.e, y.eta + dt * k3.eta,
                            y.w + dt * k3.w});
    y.e += dt / 6.0 * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e);
    y.eta += dt / 6.0 * (k1.eta + 2.0 * k2.eta + 2.0 * k3.eta + k4.eta);
    y.w += dt / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    t = (k + 1) * dt;
    if ((k + 1) % stride == 0 || k + 1 == nsteps) record();
  }
  return traj;
}

void write_lab_csv(std::ostream& os, const LabTrajectory& traj,
                   const BoundEnvelope* lower, const BoundEnvelope* upper) {
  os << "t,e,eta,omega,lower_env,upper_env\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (size_t k = 0; k < traj.t.size(); ++k) {
    put(traj.t[k]);
    os << ',';
    put(traj.e[k]);
    os << ',';
    put(traj.eta[k]);
    os << ',';
    put(traj.omega[k]);
    os << ',';
    if (lower) put(lower->eval(traj.t[k]));
    os << ',';
    if (upper) put(upper->eval(traj.t[k]));
    os << '\n';
  }
}

}  // namespace flockhd
