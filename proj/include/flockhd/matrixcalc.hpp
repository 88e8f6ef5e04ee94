#pragma once

#include "flockhd/types.hpp"

namespace flockhd {

// Pointwise decomposition of a 2x2 velocity gradient M = [m11 m12; m21 m22]
// (m12 = d(u1)/dx2 etc.) into the scalar quantities driving the alignment
// dynamics:
//   d        divergence m11 + m22
//   omega    scaled vorticity (m21 - m12) / 2
//   mu1,mu2  eigenvalues of the symmetric part, mu_{1,2} = d/2 -+ eta_s/2
//   eta_s    spectral gap mu2 - mu1 = sqrt((m11-m22)^2 + (m12+m21)^2)
//   eta_m_sq full gap eta_M^2 = 2 tr(M^2) - d^2 = eta_s^2 - 4 omega^2
//            (negative when M has complex eigenvalues)
struct VelGradDecomp {
  double m11 = 0, m12 = 0, m21 = 0, m22 = 0;
  double d = 0;
  double omega = 0;
  double mu1 = 0, mu2 = 0;
  double eta_s = 0;
  double eta_m_sq = 0;
};

// Throws std::domain_error on non-finite entries.
VelGradDecomp decompose(double m11, double m12, double m21, double m22);

// Quantity whose sign controls regularity: e = d + phi*rho for CS and
// e = d + 1 for MT (conv_rho is ignored for MT).
double e_variable(const VelGradDecomp& g, double conv_rho, Model model);

}  // namespace flockhd
