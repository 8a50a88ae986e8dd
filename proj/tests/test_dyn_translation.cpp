#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace orthoglide;
using orthoglide::test::Rng;
using orthoglide::test::traj_i;
using orthoglide::test::traj_ii;
using orthoglide::test::unit_stage_model;
using orthoglide::test::without_gravity;

namespace {

MachineModel platform_only(double mp) {
  MachineModel m = unit_stage_model();
  m.translation_inertia.platform_mass = mp;
  for (auto& leg : m.translation_inertia.legs) leg = LegInertia{};
  return m;
}

MachineModel scaled_masses(MachineModel m, double f) {
  m.translation_inertia.platform_mass *= f;
  for (auto& leg : m.translation_inertia.legs) {
    leg.slider_mass *= f;
    leg.bar_mass_2 *= f;
    leg.bar_mass_4 *= f;
    leg.elbow_mass_3 *= f;
    leg.elbow_mass_7 *= f;
    leg.actuator_inertia *= f;
  }
  return m;
}

struct Run {
  Trajectory traj;
  PrismaticTrace joints;
  TranslationEffortTrace forces;
};

Run run(const MachineModel& m, const TrajectorySpec& spec) {
  Run r;
  r.traj = sample_trajectory(spec, m);
  r.joints = joint_kinematics_translation(r.traj, m);
  r.forces = effort_translation(r.traj, r.joints, m);
  return r;
}

}  // namespace

TEST(LumpedMasses, Definitions) {
  const auto m = default_model();
  const auto& leg = m.translation_inertia.legs[0];
  EXPECT_DOUBLE_EQ(leg.translating_mass(), 4.0 + 1.2 + 0.6 + 0.6);
  EXPECT_DOUBLE_EQ(leg.effective_mass(), leg.translating_mass() + 1.5e-4 * 314.159 * 314.159);
  EXPECT_DOUBLE_EQ(m.translation_inertia.platform_lumped_mass(), 12.0 + 3 * 1.2);
}

TEST(TranslationForce, StaticWithoutGravityIsZero) {
  const auto m = without_gravity(default_model());
  const Vec3 p(0.02, -0.05, 0.1);
  EXPECT_EQ(translation_force(p, Vec3::Zero(), Vec3::Zero(), m), Vec3::Zero());
}

TEST(TranslationForce, HoldingPlatformWeightAtCenter) {
  const auto m = platform_only(5.0);
  const Vec3 F = translation_force(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), m);
  EXPECT_NEAR(F.x(), 0.0, 1e-15);
  EXPECT_NEAR(F.y(), 0.0, 1e-15);
  EXPECT_NEAR(F.z(), 49.05, 1e-12);
}

TEST(TranslationForce, StaticEquilibriumByVirtualWork) {
  // Static forces must do no net virtual work with gravity: F . d rho = m_pl g . dp.
  const auto m = platform_only(5.0);
  Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const Vec3 p = rng.in_box(Vec3::Zero(), 0.15);
    const Vec3 F = translation_force(p, Vec3::Zero(), Vec3::Zero(), m);
    const Vec3 dp = rng.in_box(Vec3::Zero(), 1e-7);
    const Vec3 drho = ik_translation(p + dp, m).rho - ik_translation(p - dp, m).rho;
    EXPECT_NEAR(F.dot(drho), -5.0 * m.gravity.g.dot(2 * dp), 1e-12);
  }
}

TEST(TranslationForce, ConstantVelocityPlatformNeedsNoForce) {
  const auto m = without_gravity(platform_only(5.0));
  const Vec3 p(0.05, 0.02, -0.04), pd(0.3, -0.2, 0.5);
  const Vec3 rho_ddot = jacobian_translation_rate(p, pd, m) * pd;
  EXPECT_LE(translation_force(p, Vec3::Zero(), rho_ddot, m).norm(), 1e-14);
}

TEST(TranslationForce, LinearInMasses) {
  const auto m = default_model();
  const auto a = run(m, traj_ii(45, 200));
  const auto b = run(scaled_masses(m, 2.0), traj_ii(45, 200));
  for (std::size_t k = 0; k < a.forces.size(); ++k) {
    EXPECT_LE((b.forces[k].force - 2.0 * a.forces[k].force).norm(), 1e-9 * a.forces[k].force.norm());
  }
}

TEST(TranslationForce, TimeReversalLeavesForcesUnchanged) {
  const auto m = default_model();
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    const Vec3 p = rng.in_box(m.translation.workspace_offset, 0.2);
    const Vec3 pd = rng.in_box(Vec3::Zero(), 1.0), pdd = rng.in_box(Vec3::Zero(), 5.0);
    const Mat3 J = jacobian_translation(p, m).J;
    const Vec3 fwd = translation_force(p, pdd, J * pdd + jacobian_translation_rate(p, pd, m) * pd, m);
    const Vec3 rev = translation_force(p, pdd, J * pdd + jacobian_translation_rate(p, -pd, m) * (-pd), m);
    EXPECT_LE((fwd - rev).norm(), 1e-10 * fwd.norm());
  }
}

TEST(TranslationForce, PowerBalancesEnergyRate) {
  // sum F_i rho_dot_i = dE/dt with E differenced along the trace.
  const auto m = default_model();
  for (const auto& spec : reference_trajectories(2000)) {
    const auto r = run(m, spec);
    const double h = r.traj[1].t - r.traj[0].t;
    auto energy = [&](std::size_t k) {
      const auto& s = r.traj[k];
      return translation_energy(s.p, s.p_dot, r.joints[k].rho, r.joints[k].rho_dot, m).total();
    };
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 1; k + 1 < r.traj.size(); ++k) {
      const double power = r.forces[k].force.dot(r.joints[k].rho_dot);
      const double de = (energy(k + 1) - energy(k - 1)) / (2 * h);
      worst = std::max(worst, std::abs(power - de));
      scale = std::max(scale, std::abs(power));
    }
    EXPECT_LE(worst / scale, 1e-5);
  }
}

TEST(TranslationForce, EnergyDefinitionAtRest) {
  const auto m = platform_only(5.0);
  const Energy e = translation_energy(Vec3(0, 0, 0.1), Vec3::Zero(), Vec3(0.5, 0.5, 0.6), Vec3::Zero(), m);
  EXPECT_EQ(e.kinetic, 0.0);
  EXPECT_NEAR(e.potential, 5.0 * 9.81 * 0.1, 1e-14);
}

TEST(EffortTrace, PowerIsAbsoluteForceTimesRate) {
  const auto m = default_model();
  const auto r = run(m, traj_i(45, 300));
  for (std::size_t k = 0; k < r.forces.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(r.forces[k].power[i], std::abs(r.forces[k].force[i] * r.joints[k].rho_dot[i]));
    }
  }
}

TEST(EffortTrace, MisalignedInputs) {
  const auto m = default_model();
  auto r = run(m, traj_i(45, 50));
  r.joints.pop_back();
  EXPECT_THROW(effort_translation(r.traj, r.joints, m), MisalignedTraces);
  r = run(m, traj_i(45, 50));
  r.joints[7].t += 1e-3;
  EXPECT_THROW(effort_translation(r.traj, r.joints, m), MisalignedTraces);
}
