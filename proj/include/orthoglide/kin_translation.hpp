#pragma once

// Kinematics of the Delta-linear translational stage. Leg i joins the slider
// A_i = rho_i e_i to the platform point p with a rigid link of length L:
//
//   (p_i - rho_i)^2 + p_j^2 + p_k^2 = L^2
//
// The assembly mode used throughout is rho_i = p_i + sqrt(L^2 - p_j^2 - p_k^2),
// i.e. the slider sits beyond the platform projection (p_i <= rho_i).

#include <Eigen/LU>

#include <cmath>
#include <vector>

#include "orthoglide/errors.hpp"
#include "orthoglide/flags.hpp"
#include "orthoglide/model.hpp"
#include "orthoglide/trajectory.hpp"

namespace orthoglide {

struct PrismaticState {
  double t = 0.0;
  Vec3 rho = Vec3::Zero();
  Vec3 rho_dot = Vec3::Zero();
  Vec3 rho_ddot = Vec3::Zero();
  SampleFlags flags;

  bool in_limits() const {
    return !(flags.test(Flag::JointLimitX) || flags.test(Flag::JointLimitY) || flags.test(Flag::JointLimitZ));
  }
};

using PrismaticTrace = std::vector<PrismaticState>;

/// Radicand below this fraction of L^2 raises NearSingularity.
inline constexpr double kNearSingularRadicand = 1e-2;
/// Jacobian entries above this magnitude raise NearSingularity.
inline constexpr double kNearSingularEntry = 1e3;

namespace detail {

inline constexpr int other_a(int i) { return (i + 1) % 3; }
inline constexpr int other_b(int i) { return (i + 2) % 3; }

/// L^2 - p_j^2 - p_k^2 for each leg.
inline Vec3 radicands(const Vec3& p, double L) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    const double pj = p[other_a(i)], pk = p[other_b(i)];
    r[i] = L * L - pj * pj - pk * pk;
  }
  return r;
}

inline void flag_limits(const Vec3& rho, const TranslationGeometry& g, SampleFlags& flags) {
  for (int i = 0; i < 3; ++i) {
    if (rho[i] < g.joint_min() || rho[i] > g.joint_max()) flags.set(SampleFlags::joint_limit(i));
  }
}

}  // namespace detail

/// Joint positions for platform position p. Throws OutOfWorkspace(axis) when a
/// radicand is <= 0; joint-limit and near-singularity conditions are flagged.
inline PrismaticState ik_translation(const Vec3& p, const MachineModel& model) {
  const auto& g = model.translation;
  const double L = g.leg_length;
  const Vec3 rad = detail::radicands(p, L);

  PrismaticState s;
  for (int i = 0; i < 3; ++i) {
    if (!(rad[i] > 0.0)) throw OutOfWorkspace(i);
    s.rho[i] = p[i] + std::sqrt(rad[i]);
    if (rad[i] < kNearSingularRadicand * L * L) s.flags.set(SampleFlags::near_singularity(i));
  }
  detail::flag_limits(s.rho, g, s.flags);
  return s;
}

struct TranslationJacobian {
  Mat3 J = Mat3::Identity();  // d rho / d p
  SampleFlags flags;
};

/// Row i: d rho_i / d p_i = 1, d rho_i / d p_j = -p_j / sqrt(L^2 - p_j^2 - p_k^2).
inline TranslationJacobian jacobian_translation(const Vec3& p, const MachineModel& model) {
  const double L = model.translation.leg_length;
  const Vec3 rad = detail::radicands(p, L);
  TranslationJacobian out;
  for (int i = 0; i < 3; ++i) {
    if (!(rad[i] > 0.0)) throw OutOfWorkspace(i);
    const int j = detail::other_a(i), k = detail::other_b(i);
    const double s = std::sqrt(rad[i]);
    out.J(i, j) = -p[j] / s;
    out.J(i, k) = -p[k] / s;
    if (rad[i] < kNearSingularRadicand * L * L || std::abs(out.J(i, j)) > kNearSingularEntry ||
        std::abs(out.J(i, k)) > kNearSingularEntry) {
      out.flags.set(SampleFlags::near_singularity(i));
    }
  }
  return out;
}

/// Time derivative of the Jacobian along the velocity p_dot.
inline Mat3 jacobian_translation_rate(const Vec3& p, const Vec3& p_dot, const MachineModel& model) {
  const double L = model.translation.leg_length;
  const Vec3 rad = detail::radicands(p, L);
  Mat3 Jd = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    if (!(rad[i] > 0.0)) throw OutOfWorkspace(i);
    const int j = detail::other_a(i), k = detail::other_b(i);
    const double s = std::sqrt(rad[i]);
    const double s_dot = -(p[j] * p_dot[j] + p[k] * p_dot[k]) / s;
    Jd(i, j) = -p_dot[j] / s + p[j] * s_dot / (s * s);
    Jd(i, k) = -p_dot[k] / s + p[k] * s_dot / (s * s);
  }
  return Jd;
}

struct FkOptions {
  int max_iterations = 50;
  double tolerance = 1e-12;  // on |residual|, m^2
  int max_halvings = 30;
};

/// Platform position for joint positions rho, by damped Newton iteration on
/// the three leg-sphere constraints starting from `seed`.
inline Vec3 fk_translation(const Vec3& rho, const MachineModel& model, const Vec3& seed,
                           const FkOptions& opt = {}) {
  const double L = model.translation.leg_length;
  auto residual = [&](const Vec3& p) {
    Vec3 f;
    for (int i = 0; i < 3; ++i) {
      Vec3 d = p;
      d[i] -= rho[i];
      f[i] = d.squaredNorm() - L * L;
    }
    return f;
  };

  Vec3 p = seed;
  Vec3 f = residual(p);
  double fn = f.norm();
  int it = 0;
  for (; it < opt.max_iterations && !(fn < opt.tolerance); ++it) {
    Mat3 Jf;
    for (int i = 0; i < 3; ++i) {
      Vec3 d = p;
      d[i] -= rho[i];
      Jf.row(i) = 2.0 * d.transpose();
    }
    Eigen::FullPivLU<Mat3> lu(Jf);
    if (!lu.isInvertible()) throw NoConvergence(it, fn);
    const Vec3 step = lu.solve(f);

    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h <= opt.max_halvings; ++h, scale *= 0.5) {
      const Vec3 trial = p - scale * step;
      const Vec3 ft = residual(trial);
      if (ft.norm() < fn) {
        p = trial;
        f = ft;
        fn = ft.norm();
        improved = true;
        break;
      }
    }
    if (!improved) throw NoConvergence(it + 1, fn);  // stagnation
  }
  if (!(fn < opt.tolerance)) throw NoConvergence(it, fn);

  for (int i = 0; i < 3; ++i) {
    if (p[i] - rho[i] > 1e-9) throw WrongAssemblyMode(i);
  }
  return p;
}

inline Vec3 fk_translation(const Vec3& rho, const MachineModel& model) {
  return fk_translation(rho, model, model.translation.workspace_offset);
}

/// Joint positions, rates and accelerations along a trajectory:
/// rho_dot = J p_dot, rho_ddot = J p_ddot + J_dot p_dot.
/// Throws OutOfWorkspace carrying the sample index.
inline PrismaticTrace joint_kinematics_translation(const Trajectory& samples, const MachineModel& model) {
  PrismaticTrace out;
  out.reserve(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const auto& s = samples[n];
    try {
      PrismaticState st = ik_translation(s.p, model);
      const auto jac = jacobian_translation(s.p, model);
      const Mat3 Jd = jacobian_translation_rate(s.p, s.p_dot, model);
      st.t = s.t;
      st.rho_dot = jac.J * s.p_dot;
      st.rho_ddot = jac.J * s.p_ddot + Jd * s.p_dot;
      st.flags |= jac.flags;
      out.push_back(st);
    } catch (const OutOfWorkspace& e) {
      throw OutOfWorkspace(e.axis(), static_cast<long>(n));
    }
  }
  return out;
}

struct LimitViolation {
  std::size_t index;
  int axis;

  bool operator==(const LimitViolation&) const = default;
};

/// Every (sample, axis) pair that leaves 0 <= rho <= 2L.
inline std::vector<LimitViolation> limit_violations(const PrismaticTrace& trace) {
  std::vector<LimitViolation> out;
  for (std::size_t n = 0; n < trace.size(); ++n) {
    for (int i = 0; i < 3; ++i) {
      if (trace[n].flags.test(SampleFlags::joint_limit(i))) out.push_back({n, i});
    }
  }
  return out;
}

/// Angle of each link to its (negative) prismatic axis direction:
/// 0 with the link along -e_i, pi/2 at the serial singularity.
inline Vec3 link_angles(const Vec3& p, const Vec3& rho, const MachineModel& model) {
  const Vec3 rad = detail::radicands(p, model.translation.leg_length);
  Vec3 theta;
  for (int i = 0; i < 3; ++i) {
    if (rad[i] < 0.0) throw OutOfWorkspace(i);
    const double pj = p[detail::other_a(i)], pk = p[detail::other_b(i)];
    theta[i] = std::atan2(std::hypot(pj, pk), rho[i] - p[i]);
  }
  return theta;
}

}  // namespace orthoglide
