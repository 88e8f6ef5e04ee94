#include "flockhd/matrixcalc.hpp"

#include <cmath>

namespace flockhd {

VelGradDecomp decompose(double m11, double m12, double m21, double m22) {
  if (!std::isfinite(m11) || !std::isfinite(m12) || !std::isfinite(m21) ||
      !std::isfinite(m22))
    throw std::domain_error("velocity gradient entries must be finite");
  VelGradDecomp g;
  g.m11 = m11;
  g.m12 = m12;
  g.m21 = m21;
  g.m22 = m22;
  g.d = m11 + m22;
  g.omega = 0.5 * (m21 - m12);
  g.eta_s = std::hypot(m11 - m22, m12 + m21);
  g.eta_m_sq = g.eta_s * g.eta_s - 4.0 * g.omega * g.omega;
  // Eigenvalues of the symmetric part (M + M^T)/2, always real, ordered so
  // that mu2 - mu1 = eta_s >= 0.
  g.mu1 = 0.5 * (g.d - g.eta_s);
  g.mu2 = 0.5 * (g.d + g.eta_s);
  return g;
}

double e_variable(const VelGradDecomp& g, double conv_rho, Model model) {
  return model == Model::CS ? g.d + conv_rho : g.d + 1.0;
}

}  // namespace flockhd
