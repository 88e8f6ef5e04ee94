#pragma once

#include "flockhd/types.hpp"

namespace flockhd {

// Result of checking initial data against the regularity thresholds.
//
// 1D CS: the divergence condition min(d0 + phi*rho0) >= 0 is sharp (iff);
//        the gap/variation fields stay NaN.
// 1D MT: divergence condition min(d0 + 1) >= 0 plus the 1D variation bound
//        V0 < m0 * min{|phi|_1, phi_inf/(4|phi'|_inf)}.
// 2D:    divergence condition, spectral-gap condition
//        (max |eta_S0| <= m0*phi_inf/2 for CS, <= 1/2 for MT), and the
//        variation bound from kernels.check_variation_bound — all evaluated
//        on the horizon mask (support + D_inf-annulus).
//
// verdict = SubCritical when every applicable condition holds,
// SuperCritical when a pointwise condition (divergence/gap) fails, and
// Indeterminate when only the variation bound fails (the theory is silent).
struct ThresholdVerdict {
  Model model = Model::CS;
  Verdict verdict = Verdict::Indeterminate;

  double div_margin = kNaN;  // min e0 over the evaluation set
  Vec2 div_argmin{};         // where that minimum is attained

  double eta_max = kNaN;    // max |eta_S0| over the mask (2D)
  double eta_bound = kNaN;  // admissible gap

  double v0 = kNaN;        // measured initial velocity variation
  double v0_bound = kNaN;  // admissible variation (NaN when no finite D_inf)
  bool geometry_ok = true;

  // cells/particles violating the divergence or gap condition
  std::vector<Vec2> violations;

  // full-plane reading (2D): min div u0 over cells outside the mask; the
  // finite-horizon reading uses only the mask, so this is reported, not used
  double min_div_outside = kNaN;

  double gap_margin() const { return eta_bound - eta_max; }
  double variation_margin() const { return v0_bound - v0; }
};

}  // namespace flockhd
