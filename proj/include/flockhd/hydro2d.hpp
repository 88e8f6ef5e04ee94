#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "flockhd/kernels.hpp"
#include "flockhd/matrixcalc.hpp"
#include "flockhd/threshold.hpp"

namespace flockhd {

class KernelConvolver;

// 2D Euler alignment system on a uniform n x n grid covering [-L/2, L/2]^2,
// cell centers at -L/2 + (i+1/2)dx, fields row-major with index j*n + i.
// Density is advanced conservatively (local Lax-Friedrichs flux), velocity
// in primitive form (first-order upwind advection + alignment force) so u
// stays meaningful in the vacuum annulus; outermost ring pinned to u_inf.
struct GridState2D {
  int n = 0;
  double L = 0.0;
  std::vector<double> rho, u1, u2;
  Vec2 u_inf{};
  Model model = Model::CS;
  InfluenceKernel kernel;
  double t = 0.0;

  double rho_tol = 0.0;    // support threshold (default 1e-8 m0/L^2)
  double rho_floor = 0.0;  // MT division floor (default 1e-12 m0/L^2)
  std::optional<double> mask_width;  // D_inf when the geometry solves

  std::shared_ptr<KernelConvolver> convolver;
  std::vector<std::uint8_t> mask;  // horizon mask cache (support + annulus)

  double dx() const { return L / n; }
  double cell_x(int i) const { return -0.5 * L + (i + 0.5) * dx(); }
  double cell_y(int j) const { return -0.5 * L + (j + 0.5) * dx(); }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * n + i;
  }
  double mass() const;
  Vec2 momentum() const;
};

// Zero-padded FFT convolution with the radially sampled kernel (quadrature
// weight dx^2 folded in); pad 2n removes wrap-around, plans are created with
// the deterministic estimate mode and reused.
class KernelConvolver {
 public:
  KernelConvolver(const InfluenceKernel& kernel, int n, double L);
  ~KernelConvolver();
  KernelConvolver(const KernelConvolver&) = delete;
  KernelConvolver& operator=(const KernelConvolver&) = delete;

  // field is n*n row-major; one owner at a time (internal buffers)
  std::vector<double> apply(const std::vector<double>& field);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convolution (builds a throwaway convolver).
std::vector<double> convolve(const std::vector<double>& field,
                             const InfluenceKernel& kernel, int n, double L);

// O(n^4) double-sum oracle for the same quadrature.
std::vector<double> direct_convolve(const std::vector<double>& field,
                                    const InfluenceKernel& kernel, int n,
                                    double L);

// Fills rho_tol/rho_floor defaults from the current mass, solves the flock
// geometry for the horizon-mask width (left empty when no finite D_inf),
// allocates the convolver, and pins the boundary ring to u_inf.
void finalize_state(GridState2D& s);

std::vector<std::uint8_t> support_mask(const GridState2D& s);

// support dilated by mask_width (exact Euclidean distance transform); falls
// back to the kernel support radius, then to the whole grid, when no finite
// width is known.
std::vector<std::uint8_t> horizon_mask(const GridState2D& s);
void refresh_mask(GridState2D& s);

// CS: F = phi*(rho u) - u (phi*rho) everywhere.
// MT: F = phi*(rho u)/(phi*rho) - u on the horizon mask, 0 outside;
//     phi*rho below rho_floor inside the mask -> VacuumDivision.
std::pair<std::vector<double>, std::vector<double>> alignment_force(
    GridState2D& s);

// One SSP-RK2 step; requires dt <= cfl dx / max|u| (checked against the
// caller's CFL via StepSizeError with a fixed 0.5 ceiling).
void step(GridState2D& s, double dt);

// Central differences at interior cells, one-sided at the grid edge.
std::vector<VelGradDecomp> gradient_field(const GridState2D& s);

ThresholdVerdict threshold_report(GridState2D& s0);

struct DiagRow2D {
  double t = 0, V = 0, D = 0;
  double min_e = 0, max_eta_s = 0, max_abs_omega = 0, max_grad_norm = 0;
  double mass = 0, momentum1 = 0, momentum2 = 0;
  double max_abs_d = 0;  // |div u|_inf over the support (rate diagnostics)
};

DiagRow2D diagnostics(GridState2D& s);

struct GridSnapshot {
  double t = 0;
  int n = 0;
  double L = 0;
  std::vector<double> rho;
};

struct RunOptions2D {
  double cfl = 0.45;
  double dt_max = 0.05;
  double output_interval = 0.25;
  double grad_cap = 1e3;
  bool store_snapshots = false;
};

struct Run2DResult {
  Outcome outcome = Outcome::Completed;
  double t_blow = kNaN;
  std::vector<DiagRow2D> series;
  std::vector<GridSnapshot> snapshots;
  GridState2D final_state;
};

Run2DResult run(GridState2D s0, double t_end, const RunOptions2D& opts = {});

}  // namespace flockhd
