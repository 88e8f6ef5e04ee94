#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace flockhd {

// Alignment model: CS weights neighbours by mass only, MT normalizes the
// weights by the local kernel-averaged density so the force is an average.
enum class Model { CS, MT };

inline const char* model_name(Model m) { return m == Model::CS ? "cs" : "mt"; }

// Verdict of an initial-data threshold check.  SubCritical: all sufficient
// conditions hold.  SuperCritical: a pointwise condition (divergence or
// spectral gap) fails.  Indeterminate: pointwise conditions hold but the
// global velocity-variation bound does not, so the theory is silent.
enum class Verdict { SubCritical, SuperCritical, Indeterminate };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::SubCritical: return "SubCritical";
    case Verdict::SuperCritical: return "SuperCritical";
    default: return "Indeterminate";
  }
}

// How a time integration ended.
enum class Outcome { Completed, BlewUp };

inline const char* outcome_name(Outcome o) {
  return o == Outcome::Completed ? "Completed" : "BlewUp";
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Error taxonomy.  Config problems exit the CLI with code 1, bracket
// problems with 2, and numerical failures with 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No finite flocking diameter: the total kernel tail mass past D0 is smaller
// than the initial velocity variation.
struct NoFiniteFlockDiameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// MT normalization hit a (near-)vacuum region where the kernel-averaged
// density is below the floor.
struct VacuumDivision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bisection was asked to refine a bracket whose endpoints do not straddle
// the threshold.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stepper was handed (or driven to) an unusable step size.
struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An analytic bound envelope was requested outside its validity range.
struct EnvelopeInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A diagnostic needed a nonempty support region and found none.
struct EmptySupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace flockhd
