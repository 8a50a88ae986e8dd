#pragma once

// Machine parameters for the Orthoglide 5-axis: a Delta-linear translational
// stage (three orthogonal prismatic actuators) carrying a 2-dof spherical
// wrist. All quantities are SI (m, kg, s, N, N*m, rad).

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "orthoglide/errors.hpp"

namespace orthoglide {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline bool is_finite(const Vec3& v) { return v.allFinite(); }

/// Unit-length direction. Construction fails unless | |v| - 1 | <= 1e-12.
class UnitVec3 {
 public:
  static constexpr double kTolerance = 1e-12;

  UnitVec3() : v_(0.0, 0.0, 1.0) {}

  explicit UnitVec3(const Vec3& v) : v_(v) {
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kTolerance) {
      throw InvariantViolation("direction vector is not unit length");
    }
  }

  /// Normalizes first; for config input written with finite decimals.
  static UnitVec3 normalized(const Vec3& v) {
    if (!v.allFinite() || v.norm() == 0.0) {
      throw InvariantViolation("direction vector is zero or non-finite");
    }
    return UnitVec3(v / v.norm());
  }

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double operator[](int i) const { return v_[i]; }

  friend bool operator==(const UnitVec3& a, const UnitVec3& b) { return a.v_ == b.v_; }

 private:
  Vec3 v_;
};

struct TranslationGeometry {
  double leg_length = 0.0;  // L
  Vec3 workspace_offset = Vec3::Zero();  // dr, the vector OI
  double workspace_cube_side = 0.0;

  double joint_min() const { return 0.0; }
  double joint_max() const { return 2.0 * leg_length; }

  bool operator==(const TranslationGeometry&) const = default;
};

struct WristGeometry {
  UnitVec3 axis1{Vec3(1.0, 0.0, 0.0)};       // base-fixed
  UnitVec3 axis2_home{Vec3(0.0, 1.0, 0.0)};  // at theta1 = 0
  UnitVec3 tool_home{Vec3(0.0, 0.0, -1.0)};  // at theta1 = theta2 = 0
  std::array<double, 2> joint1_range{-kPi / 2, kPi / 2};
  std::array<double, 2> joint2_range{-kPi / 2, kPi / 2};

  bool operator==(const WristGeometry&) const = default;
};

/// Lumped inertial parameters of one leg of the translational stage.
struct LegInertia {
  double slider_mass = 0.0;    // m1
  double bar_mass_2 = 0.0;     // m2
  double bar_mass_4 = 0.0;     // m4
  double elbow_mass_3 = 0.0;   // m3
  double elbow_mass_7 = 0.0;   // m7
  double parallelogram_length = 0.0;      // d4, unused by the lumped model
  double parallelogram_half_width = 0.0;  // r2, unused by the lumped model
  double actuator_inertia = 0.0;          // Im, kg*m^2
  double transmission = 0.0;              // k, rad/m

  /// Mass that translates with the slider (half of each parallelogram bar).
  double translating_mass() const {
    return slider_mass + 0.5 * (bar_mass_2 + bar_mass_4) + elbow_mass_3 + elbow_mass_7;
  }
  /// Translating mass plus reflected rotor inertia Im*k^2.
  double effective_mass() const {
    return translating_mass() + actuator_inertia * transmission * transmission;
  }

  bool operator==(const LegInertia&) const = default;
};

struct TranslationInertia {
  double platform_mass = 0.0;  // mp, wrist included
  std::array<LegInertia, 3> legs{};

  /// Platform plus the platform-side half of every parallelogram bar.
  double platform_lumped_mass() const {
    double m = platform_mass;
    for (const auto& leg : legs) m += 0.5 * (leg.bar_mass_2 + leg.bar_mass_4);
    return m;
  }

  bool operator==(const TranslationInertia&) const = default;
};

struct WristInertia {
  double proximal1_inertia = 0.0;  // about axis1
  double proximal2_inertia = 0.0;  // about axis2
  Mat3 terminal_inertia = Mat3::Zero();  // terminal frame, about the wrist center
  double terminal_mass = 0.0;
  Vec3 terminal_com = Vec3::Zero();  // terminal frame

  bool operator==(const WristInertia&) const = default;
};

struct MotorSpec {
  std::string name;
  double rated_power = 0.0;        // W
  double max_speed = 0.0;          // m/s (linear) or rad/s (wrist)
  double peak_effort = 0.0;        // N or N*m
  double continuous_effort = 0.0;  // N or N*m

  bool operator==(const MotorSpec&) const = default;
};

struct GravityModel {
  Vec3 g = Vec3(0.0, 0.0, -9.81);

  bool operator==(const GravityModel&) const = default;
};

enum class Actuator { X = 0, Y = 1, Z = 2, Theta1 = 3, Theta2 = 4 };

constexpr std::array<Actuator, 5> kAllActuators{Actuator::X, Actuator::Y, Actuator::Z,
                                                Actuator::Theta1, Actuator::Theta2};

inline const char* actuator_name(Actuator a) {
  switch (a) {
    case Actuator::X: return "x";
    case Actuator::Y: return "y";
    case Actuator::Z: return "z";
    case Actuator::Theta1: return "theta1";
    case Actuator::Theta2: return "theta2";
  }
  return "?";
}

inline const char* axis_name(int axis) {
  static constexpr const char* names[] = {"x", "y", "z"};
  return (axis >= 0 && axis < 3) ? names[axis] : "?";
}

/// Complete, validated machine description. Immutable once loaded.
struct MachineModel {
  TranslationGeometry translation;
  TranslationInertia translation_inertia;
  WristGeometry wrist;
  WristInertia wrist_inertia;
  GravityModel gravity;
  std::map<std::string, MotorSpec> motors;
  std::map<Actuator, std::string> assignment;  // actuator -> motor name

  bool operator==(const MachineModel&) const = default;
};

struct Energy {
  double kinetic = 0.0;
  double potential = 0.0;
  double total() const { return kinetic + potential; }
};

/// Farthest corner of the workspace cube from the origin.
inline double cube_corner_distance(const TranslationGeometry& g) {
  return (g.workspace_offset.cwiseAbs().array() + 0.5 * g.workspace_cube_side).matrix().norm();
}

/// Checks every model invariant; throws InvariantViolation on the first failure.
inline void validate(const MachineModel& m) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
  };
  auto finite = [](double x) { return std::isfinite(x); };

  const auto& tg = m.translation;
  require(finite(tg.leg_length) && tg.leg_length > 0.0, "translation.L must be > 0");
  require(is_finite(tg.workspace_offset), "translation.dr must be finite");
  require(finite(tg.workspace_cube_side) && tg.workspace_cube_side >= 0.0,
          "translation.cube_side must be >= 0");
  require(cube_corner_distance(tg) < tg.leg_length,
          "workspace cube does not fit inside the singularity-free sphere |p| < L");

  const auto& ti = m.translation_inertia;
  require(finite(ti.platform_mass) && ti.platform_mass >= 0.0,
          "translation.platform_mass must be >= 0");
  for (int i = 0; i < 3; ++i) {
    const auto& leg = ti.legs[i];
    const std::string prefix = std::string("translation.leg_") + axis_name(i) + ": ";
    for (double x : {leg.slider_mass, leg.bar_mass_2, leg.bar_mass_4, leg.elbow_mass_3,
                     leg.elbow_mass_7, leg.parallelogram_length, leg.parallelogram_half_width,
                     leg.actuator_inertia, leg.transmission}) {
      require(finite(x) && x >= 0.0, prefix + "masses, lengths and inertias must be >= 0");
    }
  }

  const auto& wg = m.wrist;
  constexpr double kOrtho = 1e-12;
  require(std::abs(wg.axis1.vec().dot(wg.axis2_home.vec())) <= kOrtho, "wrist.axis1 must be orthogonal to wrist.axis2");
  require(std::abs(wg.axis2_home.vec().dot(wg.tool_home.vec())) <= kOrtho, "wrist.axis2 must be orthogonal to wrist.tool");
  require(std::abs(wg.axis1.vec().dot(wg.tool_home.vec())) <= kOrtho, "wrist.axis1 must be orthogonal to wrist.tool");
  for (const auto& r : {wg.joint1_range, wg.joint2_range}) {
    require(finite(r[0]) && finite(r[1]) && r[0] < r[1], "wrist joint range must satisfy min < max");
  }

  const auto& wi = m.wrist_inertia;
  require(finite(wi.proximal1_inertia) && wi.proximal1_inertia >= 0.0, "wrist.I_p1 must be >= 0");
  require(finite(wi.proximal2_inertia) && wi.proximal2_inertia >= 0.0, "wrist.I_p2 must be >= 0");
  require(finite(wi.terminal_mass) && wi.terminal_mass >= 0.0, "wrist.terminal_mass must be >= 0");
  require(is_finite(wi.terminal_com), "wrist.terminal_com must be finite");
  require(wi.terminal_inertia.allFinite(), "wrist.I_t must be finite");
  require((wi.terminal_inertia - wi.terminal_inertia.transpose()).cwiseAbs().maxCoeff() == 0.0,
          "wrist.I_t must be symmetric");
  {
    Eigen::SelfAdjointEigenSolver<Mat3> eig(wi.terminal_inertia);
    const double scale = std::max(1.0, wi.terminal_inertia.norm());
    require(eig.eigenvalues().minCoeff() >= -1e-12 * scale, "wrist.I_t must be positive semidefinite");
  }

  const double gnorm = m.gravity.g.norm();
  require(is_finite(m.gravity.g) && gnorm <= 20.0, "gravity magnitude must lie in [0, 20] m/s^2");

  for (const auto& [name, motor] : m.motors) {
    require(motor.rated_power > 0.0 && motor.max_speed > 0.0 && motor.peak_effort > 0.0 &&
                motor.continuous_effort > 0.0,
            "motor." + name + ": all ratings must be > 0");
  }
  for (const auto& [actuator, name] : m.assignment) {
    require(m.motors.count(name) == 1,
            std::string("assign.") + actuator_name(actuator) + " refers to unknown motor '" + name + "'");
  }
}

}  // namespace orthoglide
