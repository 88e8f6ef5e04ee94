#pragma once

#include <functional>
#include <iosfwd>
#include <utility>

#include "flockhd/types.hpp"

namespace flockhd {

// Statistics of the kernel over the flock geometry: phi_inf = phi(D_inf)
// and dphi_max = max |phi'| over [0, D_inf].
struct KernelStats {
  double phi_inf = 1.0;
  double dphi_max = 0.0;
};

// Inputs of the a priori bound envelopes, measured from initial data.
struct EnvelopeParams {
  double m0 = 1.0;
  double phi_inf = 1.0;
  double v0 = 0.0;
  double dphi_max = 0.0;
  double eta0_max = 0.0;
  double omega0_max = 0.0;
  double e0_min = 0.0;
  double e0_max = 0.0;
};

enum class EnvelopeKind { EtaS, Vorticity, ELower, EUpper };

// Closed-form time envelopes:
//   EtaS       base + (q0/kappa)(1 - e^{-kappa t})   (integrated q-bound)
//   Vorticity  constant base
//   ELower     Riccati e' = (c^2 - e^2)/2 from e0: approaches c from below
//   EUpper     same Riccati from above: cap on e
// The Riccati solution is c(e0 + c tanh(ct/2)) / (c + e0 tanh(ct/2)).
struct BoundEnvelope {
  EnvelopeKind kind = EnvelopeKind::EtaS;
  double base = 0.0;
  double q0 = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double e0 = 0.0;

  double eval(double t) const;
  double limit() const;
};

// Exponentially decaying bound on the residual-matrix entries:
//   CS: |phi'|_inf m0 V0 e^{-kappa t},  kappa = m0 phi_inf
//   MT: (|phi'|_inf / phi_inf) V0 e^{-kappa t},  kappa = phi_inf
double residual_entry_bound(Model model, double m0, double V0,
                            const KernelStats& ks, double t);

// Bound on the eta_S driver q: twice the entry bound.
double residual_q_bound(Model model, double m0, double V0,
                        const KernelStats& ks, double t);

// Integrated bound on |eta_S(t)|; throws EnvelopeInvalid when V0 violates
// the model's variation bound (the chain it encodes then has no basis).
BoundEnvelope eta_envelope(Model model, const EnvelopeParams& p);

// Constant bound max|omega_0| + m0 phi_inf / 2.
BoundEnvelope vorticity_envelope(const EnvelopeParams& p);

// (lower, upper) Riccati envelopes for e:
//   CS lower level  c_min^2 = (m0 phi_inf)^2 - eta_lim^2
//   CS upper level  cap^2   = m0^2 + 4 omega_max^2
//   MT lower level  c_min^2 = 1 - eta_lim^2 - 2 rbar,  rbar = q-bound(0)
//   MT upper level  cap^2   = 1 + 2 rbar + 2 omega_max^2
// Throws EnvelopeInvalid when c_min^2 <= 0.
std::pair<BoundEnvelope, BoundEnvelope> e_envelopes(Model model,
                                                    const EnvelopeParams& p);

// Frozen-coefficient Lagrangian ODE laboratory.  The drivers are prescribed
// functions of time (this studies the comparison dynamics, it is not a PDE
// closure):
//   Strict1D     CS: e' = e(h - e)           MT: e' = e(1 - e) + r
//   PaperRemark  CS: e' = (h^2 - e^2)/2      MT: e' = (1 + 2r - e^2)/2
//   TwoD_Frozen  CS: e' = (h^2 + 4w^2 - eta^2 - e^2)/2
//                MT: e' = (1 - eta^2 + 2r - e^2)/2 + w^2
//                both: eta' = -e eta + q,  w' = -e w + trJR/2
enum class LabForm { Strict1D, PaperRemark, TwoD_Frozen };

struct LabInit {
  double e0 = 0.0, eta0 = 0.0, omega0 = 0.0;
};

// Any unset driver is treated as identically zero; CS forms require conv_rho.
struct LabForcing {
  std::function<double(double)> conv_rho;  // h(t) = phi*rho along the path
  std::function<double(double)> q;         // eta_S driver
  std::function<double(double)> tr_jr;     // vorticity driver tr(JR)
  std::function<double(double)> r;         // MT trace residual
};

struct LabTrajectory {
  std::vector<double> t, e, eta, omega;
};

LabTrajectory lagrangian_lab(Model model, LabForm form, const LabInit& init,
                             const LabForcing& forcing, double t_end,
                             double dt = 1e-3, double record_every = 1e-2);

// CSV columns: t, e, eta, omega, lower_env, upper_env (envelopes optional,
// written as empty fields when absent).
void write_lab_csv(std::ostream& os, const LabTrajectory& traj,
                   const BoundEnvelope* lower = nullptr,
                   const BoundEnvelope* upper = nullptr);

}  // namespace flockhd
