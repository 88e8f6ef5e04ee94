#include "flockhd/profiles.hpp"

#include <cmath>

namespace flockhd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed-resolution composite Simpson; plenty for the smooth radial shapes
// normalized here (the result only has to be self-consistent, and density
// fields are re-scaled to exact discrete mass when placed on a grid).
template <class F>
double simpson_panels(const F& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i)
    acc += f(a + i * h) * ((i & 1) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double gauss_bump(double r, double sigma, double cutoff) {
  if (std::abs(r) >= cutoff) return 0.0;
  const double base = std::exp(-cutoff * cutoff / (2.0 * sigma * sigma));
  return std::exp(-r * r / (2.0 * sigma * sigma)) - base;
}

double smoothstep_down(double s) {  // 1 -> 0 as s goes 0 -> 1
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

}  // namespace

DensityProfile DensityProfile::gaussian_bump(double mass, Vec2 center,
                                             double sigma, double cutoff) {
  if (!(mass > 0.0) || !(sigma > 0.0) || !(cutoff > 0.0))
    throw ConfigError("gaussian_bump needs mass, sigma, cutoff > 0");
  DensityProfile p;
  p.kind = Kind::GaussianBump;
  p.mass = mass;
  p.center = center;
  p.sigma = sigma;
  p.cutoff = cutoff;
  p.normalize();
  return p;
}

DensityProfile DensityProfile::double_bump(double mass, Vec2 center,
                                           double sigma, double cutoff,
                                           double separation) {
  if (!(mass > 0.0) || !(sigma > 0.0) || !(cutoff > 0.0) ||
      !(separation >= 0.0))
    throw ConfigError("double_bump needs mass, sigma, cutoff > 0 and separation >= 0");
  DensityProfile p;
  p.kind = Kind::DoubleBump;
  p.mass = mass;
  p.center = center;
  p.sigma = sigma;
  p.cutoff = cutoff;
  p.separation = separation;
  p.normalize();
  return p;
}

DensityProfile DensityProfile::uniform_disk(double mass, Vec2 center,
                                            double radius) {
  if (!(mass > 0.0) || !(radius > 0.0))
    throw ConfigError("uniform_disk needs mass, radius > 0");
  DensityProfile p;
  p.kind = Kind::UniformDisk;
  p.mass = mass;
  p.center = center;
  p.radius = radius;
  p.normalize();
  return p;
}

double DensityProfile::support_radius() const {
  switch (kind) {
    case Kind::GaussianBump: return cutoff;
    case Kind::DoubleBump: return 0.5 * separation + cutoff;
    default: return radius;
  }
}

double DensityProfile::diameter(int) const { return 2.0 * support_radius(); }

double DensityProfile::raw1d(double x) const {
  const double dx = x - center.x;
  switch (kind) {
    case Kind::GaussianBump:
      return gauss_bump(dx, sigma, cutoff);
    case Kind::DoubleBump:
      return gauss_bump(dx + 0.5 * separation, sigma, cutoff) +
             gauss_bump(dx - 0.5 * separation, sigma, cutoff);
    default:
      return std::abs(dx) < radius ? 1.0 : 0.0;
  }
}

double DensityProfile::raw2d(double x, double y) const {
  const double dx = x - center.x, dy = y - center.y;
  switch (kind) {
    case Kind::GaussianBump:
      return gauss_bump(std::hypot(dx, dy), sigma, cutoff);
    case Kind::DoubleBump:
      return gauss_bump(std::hypot(dx + 0.5 * separation, dy), sigma, cutoff) +
             gauss_bump(std::hypot(dx - 0.5 * separation, dy), sigma, cutoff);
    default:
      return std::hypot(dx, dy) < radius ? 1.0 : 0.0;
  }
}

void DensityProfile::normalize() {
  switch (kind) {
    case Kind::UniformDisk:
      amp1d_ = mass / (2.0 * radius);
      amp2d_ = mass / (kPi * radius * radius);
      return;
    case Kind::GaussianBump: {
      const double s = sigma, c = cutoff;
      const double line =
          simpson_panels([&](double r) { return gauss_bump(r, s, c); }, 0.0, c,
                         4096);
      const double area = simpson_panels(
          [&](double r) { return gauss_bump(r, s, c) * r; }, 0.0, c, 4096);
      amp1d_ = mass / (2.0 * line);
      amp2d_ = mass / (2.0 * kPi * area);
      return;
    }
    default: {  // DoubleBump: two separated copies, each of mass/2
      const double s = sigma, c = cutoff;
      const double line =
          simpson_panels([&](double r) { return gauss_bump(r, s, c); }, 0.0, c,
                         4096);
      const double area = simpson_panels(
          [&](double r) { return gauss_bump(r, s, c) * r; }, 0.0, c, 4096);
      // raw1d/raw2d sum both bumps, so normalize by the two-bump integral.
      amp1d_ = mass / (4.0 * line);
      amp2d_ = mass / (4.0 * kPi * area);
      return;
    }
  }
}

double DensityProfile::value1d(double x) const { return amp1d_ * raw1d(x); }

double DensityProfile::value2d(double x, double y) const {
  return amp2d_ * raw2d(x, y);
}

VelocityProfile VelocityProfile::constant(Vec2 value) {
  VelocityProfile v;
  v.kind = Kind::Constant;
  v.value = value;
  return v;
}

VelocityProfile VelocityProfile::linear_compression(double delta, Vec2 center) {
  VelocityProfile v;
  v.kind = Kind::LinearCompression;
  v.rate = delta;
  v.center = center;
  return v;
}

VelocityProfile VelocityProfile::rigid_rotation(double omega_rot, Vec2 center) {
  VelocityProfile v;
  v.kind = Kind::RigidRotation;
  v.rate = omega_rot;
  v.center = center;
  return v;
}

VelocityProfile VelocityProfile::shear(double s, Vec2 center) {
  VelocityProfile v;
  v.kind = Kind::Shear;
  v.rate = s;
  v.center = center;
  return v;
}

VelocityProfile VelocityProfile::bump_compression(double a, double width,
                                                  Vec2 center) {
  if (!(width > 0.0)) throw ConfigError("bump_compression needs width > 0");
  VelocityProfile v;
  v.kind = Kind::BumpCompression;
  v.rate = a;
  v.width = width;
  v.center = center;
  return v;
}

VelocityProfile VelocityProfile::with_taper(double inner, double outer) const {
  if (!(inner > 0.0) || !(outer > inner))
    throw ConfigError("velocity taper needs 0 < inner < outer");
  VelocityProfile v = *this;
  v.taper_inner = inner;
  v.taper_outer = outer;
  return v;
}

VelocityProfile VelocityProfile::with_background(Vec2 value_) const {
  VelocityProfile v = *this;
  v.value = value_;
  return v;
}

double VelocityProfile::eval1d(double x) const {
  const double dx = x - center.x;
  switch (kind) {
    case Kind::Constant:
      return value.x;
    case Kind::LinearCompression:
      return value.x - rate * dx;
    case Kind::BumpCompression:
      return value.x -
             (std::abs(dx) < width ? rate * std::sin(kPi * dx / width) : 0.0);
    default:
      throw ConfigError("rotation/shear velocity profiles need dim = 2");
  }
}

double VelocityProfile::deriv1d(double x) const {
  const double dx = x - center.x;
  switch (kind) {
    case Kind::Constant:
      return 0.0;
    case Kind::LinearCompression:
      return -rate;
    case Kind::BumpCompression:
      return std::abs(dx) < width
                 ? -rate * (kPi / width) * std::cos(kPi * dx / width)
                 : 0.0;
    default:
      throw ConfigError("rotation/shear velocity profiles need dim = 2");
  }
}

Vec2 VelocityProfile::eval2d(double x, double y) const {
  const double dx = x - center.x, dy = y - center.y;
  Vec2 pert{};
  switch (kind) {
    case Kind::Constant:
      break;
    case Kind::LinearCompression:
      pert = {-rate * dx, -rate * dy};
      break;
    case Kind::RigidRotation:
      pert = {-rate * dy, rate * dx};
      break;
    case Kind::Shear:
      pert = {rate * dy, 0.0};
      break;
    case Kind::BumpCompression:
      pert = {std::abs(dx) < width ? -rate * std::sin(kPi * dx / width) : 0.0,
              0.0};
      break;
  }
  if (std::isfinite(taper_inner)) {
    const double r = std::hypot(dx, dy);
    pert = smoothstep_down((r - taper_inner) / (taper_outer - taper_inner)) *
           pert;
  }
  return value + pert;
}

}  // namespace flockhd
