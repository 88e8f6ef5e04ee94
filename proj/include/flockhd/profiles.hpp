#pragma once

#include "flockhd/types.hpp"

namespace flockhd {

// Named initial-density library.  Every profile is compactly supported and
// normalized (separately for 1D and 2D use) so its integral equals `mass`.
//   gaussian_bump: exp(-r^2/2sigma^2) - exp(-cutoff^2/2sigma^2), r < cutoff
//   double_bump:   two gaussian bumps of mass/2 centered at
//                  center -+ separation/2 along the x-axis
//   uniform_disk:  constant on |x - center| < radius (interval in 1D)
struct DensityProfile {
  enum class Kind { GaussianBump, DoubleBump, UniformDisk };
  Kind kind = Kind::GaussianBump;
  double mass = 1.0;
  Vec2 center{};
  double sigma = 0.5;
  double cutoff = 1.5;
  double separation = 2.0;
  double radius = 1.0;

  static DensityProfile gaussian_bump(double mass, Vec2 center, double sigma,
                                      double cutoff);
  static DensityProfile double_bump(double mass, Vec2 center, double sigma,
                                    double cutoff, double separation);
  static DensityProfile uniform_disk(double mass, Vec2 center, double radius);

  // largest distance from `center` with nonzero density
  double support_radius() const;
  // support diameter D0 (1D measures along the x-axis)
  double diameter(int dim) const;

  double value1d(double x) const;
  double value2d(double x, double y) const;

 private:
  double amp1d_ = 0.0, amp2d_ = 0.0;  // normalization amplitudes
  void normalize();
  double raw1d(double x) const;
  double raw2d(double x, double y) const;
};

// Named initial-velocity library.  The field is a constant background
// `value` (which is also the far-field velocity) plus a named perturbation:
//   constant:            0
//   linear_compression:  -delta * (x - center)
//   rigid_rotation:      omega_rot * (-(y-cy), (x-cx))      (2D only)
//   shear:               (s * (y-cy), 0)                    (2D only)
//   bump_compression:    (-a * sin(pi (x-cx)/width), 0) on |x-cx| < width
// In 2D the perturbation is blended to zero between taper_inner and
// taper_outer (smoothstep in distance from center) so initial data matches
// the constant far field; profiles that already vanish there are unaffected.
struct VelocityProfile {
  enum class Kind {
    Constant,
    LinearCompression,
    RigidRotation,
    Shear,
    BumpCompression
  };
  Kind kind = Kind::Constant;
  Vec2 value{};  // background = far-field velocity
  double rate = 0.0;  // delta, omega_rot, s, or a
  Vec2 center{};
  double width = 1.0;
  double taper_inner = kInf;
  double taper_outer = kInf;

  static VelocityProfile constant(Vec2 value);
  static VelocityProfile linear_compression(double delta, Vec2 center = {});
  static VelocityProfile rigid_rotation(double omega_rot, Vec2 center = {});
  static VelocityProfile shear(double s, Vec2 center = {});
  static VelocityProfile bump_compression(double a, double width,
                                          Vec2 center = {});

  VelocityProfile with_taper(double inner, double outer) const;
  VelocityProfile with_background(Vec2 value) const;

  // 1D evaluation; rotation/shear are meaningless in 1D -> ConfigError.
  double eval1d(double x) const;
  double deriv1d(double x) const;

  Vec2 eval2d(double x, double y) const;
  Vec2 u_inf() const { return value; }
};

}  // namespace flockhd
