// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orthoglide/orthoglide.hpp"

using namespace orthoglide;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool pass, const std::string& id, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

std::string num(double x) { return format_sig(x, 4); }

const MachineModel& model() {
  static const MachineModel m = default_model();
  return m;
}

void ac1_wrist_peaks() {
  const auto t0 = std::chrono::steady_clock::now();
  TrajectorySpec spec;
  spec.family = TrajectoryFamily::TrajII;
  spec.radius = 0.2;
  spec.path_speed = 1.0;
  spec.tilt = deg2rad(45.0);
  const auto r = run_simulation(model(), spec);
  const double elapsed = seconds_since(t0);

  const double rate = std::max(r.peaks[3].peak_speed, r.peaks[4].peak_speed);
  const double accel1 = r.peaks[3].peak_accel;
  const bool pass = within(rate, 5.0, 0.01) && within(accel1, 22.0, 0.05) && elapsed < 1.0;
  report(pass, "AC1 wrist Traj II peaks",
         "max|theta_dot| = " + num(rate) + " rad/s (5.00 +-1%), max|theta1_ddot| = " + num(accel1) +
             " rad/s^2 (22 +-5%; theta2_ddot peak " + num(r.peaks[4].peak_accel) + "), full run " + num(elapsed) +
             " s (< 1 s)");
}

void ac2_table_regression() {
  struct Row {
    const char* name;
    TrajectorySpec spec;
    double v[3], a[3];
  };
  auto spec_i = [](double phi) {
    TrajectorySpec s;
    s.plane_angle = deg2rad(phi);
    return s;
  };
  TrajectorySpec spec_ii;
  spec_ii.family = TrajectoryFamily::TrajII;
  spec_ii.tilt = deg2rad(45.0);
  const Row rows[] = {
      {"Traj I phi=90", spec_i(90), {0.12, 1.01, 1.06}, {0.62, 6.32, 6.32}},
      {"Traj I phi=45", spec_i(45), {0.77, 0.77, 1.07}, {4.51, 4.51, 6.33}},
      {"Traj II gamma=45", spec_ii, {1.06, 1.06, 0.12}, {6.31, 6.31, 0.66}},
  };
  for (const auto& row : rows) {
    const auto traj = sample_trajectory(row.spec, model());
    const auto joints = joint_kinematics_translation(traj, model());
    double v[3] = {}, a[3] = {};
    for (const auto& s : joints) {
      for (int i = 0; i < 3; ++i) {
        v[i] = std::max(v[i], std::abs(s.rho_dot[i]));
        a[i] = std::max(a[i], std::abs(s.rho_ddot[i]));
      }
    }
    bool pass = true;
    double worst = 0.0;
    std::ostringstream detail;
    detail << "V = (";
    for (int i = 0; i < 3; ++i) {
      detail << format_3sig(v[i]) << (i < 2 ? ", " : ") vs (");
      worst = std::max(worst, std::abs(v[i] - row.v[i]) / row.v[i]);
      pass = pass && within(v[i], row.v[i], 0.10);
    }
    for (int i = 0; i < 3; ++i) detail << row.v[i] << (i < 2 ? ", " : "), A = (");
    for (int i = 0; i < 3; ++i) {
      detail << format_3sig(a[i]) << (i < 2 ? ", " : ") vs (");
      worst = std::max(worst, std::abs(a[i] - row.a[i]) / row.a[i]);
      pass = pass && within(a[i], row.a[i], 0.10);
    }
    for (int i = 0; i < 3; ++i) detail << row.a[i] << (i < 2 ? ", " : ")");
    detail << ", worst deviation " << format_sig(100 * worst, 3) << "% (<= 10%)";
    report(pass, std::string("AC2 joint-speed table, ") + row.name, detail.str());
  }
}

void ac3_energy_audit() {
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  std::ostringstream detail;
  for (const auto& spec : reference_trajectories()) {
    const auto r = run_simulation(model(), spec);
    for (const auto* a : {&r.translation_audit, &r.wrist_audit}) {
      all = all && a->passed;
      detail << (detail.tellp() > 0 ? "; " : "") << describe(spec).substr(0, describe(spec).find(',', 8)) << " "
             << subsystem_name(a->subsystem) << " " << num(a->max_abs_residual) << "/" << num(a->threshold());
    }
  }
  const double elapsed = seconds_since(t0);
  report(all && elapsed < 5.0, "AC3a energy audit, all trajectories and subsystems",
         "max|dW|/threshold: " + detail.str() + "; " + num(elapsed) + " s (< 5 s)");

  bool converge = true;
  std::ostringstream ratios;
  for (auto spec : reference_trajectories(1001)) {
    const auto coarse = run_simulation(model(), spec);
    spec.sample_count = 2001;
    const auto fine = run_simulation(model(), spec);
    const double rt = coarse.translation_audit.total_abs_residual / fine.translation_audit.total_abs_residual;
    const double rw = coarse.wrist_audit.total_abs_residual / fine.wrist_audit.total_abs_residual;
    converge = converge && rt > 3.5 && rt < 4.5 && rw > 3.5 && rw < 4.5;
    ratios << (ratios.tellp() > 0 ? ", " : "") << format_sig(rt, 4) << "/" << format_sig(rw, 4);
  }
  report(converge, "AC3b audit residual under step halving",
         "sum|dW| ratio translation/wrist per trajectory: " + ratios.str() + " (each in 4 +- 0.5)");
}

void ac4_kinematic_consistency() {
  std::mt19937 gen(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double half = 0.5 * model().translation.workspace_cube_side;
  double fk_err = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Vec3 p = model().translation.workspace_offset + half * Vec3(u(gen), u(gen), u(gen));
    fk_err = std::max(fk_err, (fk_translation(ik_translation(p, model()).rho, model()) - p).norm());
  }
  report(fk_err <= 1e-10, "AC4a fk(ik(p)) on 1000 cube points", "max error " + num(fk_err) + " m (<= 1e-10)");

  double fd = 0.0;
  for (const auto& spec : reference_trajectories()) {
    const auto r = run_simulation(model(), spec);
    const auto jd = rate_deviation(r.joints);
    const auto wd = rate_deviation(r.wrist);
    fd = std::max({fd, finite_difference_check(r.trajectory), jd.rate, jd.accel, wd.rate, wd.accel});
  }
  report(fd <= 1e-4, "AC4b analytic rates vs central differences",
         "max relative deviation " + num(fd) + " over 3 trajectories (<= 1e-4)");

  std::normal_distribution<double> g;
  double wrist_err = 0.0;
  for (int n = 0; n < 1000;) {
    const Vec3 v = Vec3(g(gen), g(gen), g(gen)).normalized();
    if (std::abs(v.dot(model().wrist.axis1.vec())) > 0.99) continue;
    wrist_err = std::max(wrist_err, (tool_axis(ik_wrist(v, model()), model()) - v).norm());
    ++n;
  }
  report(wrist_err <= 1e-12, "AC4c wrist forward/inverse on 1000 tool axes", "max error " + num(wrist_err) + " (<= 1e-12)");
}

void ac5_structure() {
  TrajectorySpec s90;
  s90.plane_angle = deg2rad(90.0);
  const auto r90 = run_simulation(model(), s90);
  double theta2 = 0.0, affine = 0.0, p2 = 0.0;
  const double slope = (r90.wrist.back().theta[0] - r90.wrist.front().theta[0]) / kPi;
  for (std::size_t k = 0; k < r90.wrist.size(); ++k) {
    theta2 = std::max({theta2, std::abs(r90.wrist[k].theta[1]), std::abs(r90.wrist[k].theta_dot[1])});
    affine = std::max(affine, std::abs(r90.wrist[k].theta[0] - r90.wrist.front().theta[0] -
                                       slope * r90.trajectory[k].psi));
    p2 = std::max(p2, r90.torques[k].power[1]);
  }
  report(theta2 <= 1e-12 && affine <= 1e-12, "AC5a Traj I phi=90: theta2 = 0, theta1 affine in psi",
         "max|theta2|,|theta2_dot| = " + num(theta2) + ", max deviation of theta1 from affine = " + num(affine));

  TrajectorySpec s2;
  s2.family = TrajectoryFamily::TrajII;
  s2.tilt = deg2rad(45.0);
  const auto r2 = run_simulation(model(), s2);
  report(r2.peaks[3].peak_accel > 1.0 && r2.peaks[4].peak_accel > 1.0, "AC5b Traj II wrist rates non-affine",
         "max|theta_ddot| = (" + num(r2.peaks[3].peak_accel) + ", " + num(r2.peaks[4].peak_accel) + ") rad/s^2 (> 0)");
  // "identically zero" up to the rounding of cos(pi/2) in the trajectory
  report(p2 <= 1e-12 * r90.peaks[3].peak_power, "AC5c Traj I phi=90: joint-2 wrist power = 0",
         "max P2 = " + num(p2) + " W, max P1 = " + num(r90.peaks[3].peak_power) + " W (P2 <= 1e-12 P1)");
}

void ac6_joint_limits() {
  // Straight segment from dr outward along P. Oracle: rho_i = p_i + sqrt(L^2 - p_j^2 - p_k^2)
  // is negative exactly when p_i < 0 and p_i^2 exceeds the radicand.
  const MachineModel& m = model();
  const double L = m.translation.leg_length;
  const Vec3 dr = m.translation.workspace_offset;
  const Vec3 P = Vec3(-0.50, 0.30, 0.56);
  const int n = 201;
  Trajectory traj;
  for (int k = 0; k < n; ++k) {
    TrajectorySample s;
    s.t = 0.005 * k;
    s.p = dr + (static_cast<double>(k) / (n - 1)) * P;
    traj.push_back(s);
  }
  const auto trace = joint_kinematics_translation(traj, m);
  std::vector<LimitViolation> expected;
  for (int k = 0; k < n; ++k) {
    const Vec3& p = traj[k].p;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, l = (i + 2) % 3;
      const bool below = p[i] < 0.0 && p[i] * p[i] > L * L - p[j] * p[j] - p[l] * p[l];
      const bool above = p[i] > L;  // rho_i <= p_i + L, never reached inside the workspace
      if (below || above) expected.push_back({static_cast<std::size_t>(k), i});
    }
  }
  const auto got = limit_violations(trace);
  const bool pass = !expected.empty() && got == expected;
  report(pass, "AC6 joint-limit flags with axis and index",
         std::to_string(got.size()) + " flagged samples, first at index " +
             (got.empty() ? std::string("-") : std::to_string(got.front().index) + " axis " + axis_name(got.front().axis)) +
             ", matching the geometric oracle: " + (got == expected ? "yes" : "no"));
}

void ac7_determinism() {
  const fs::path base = fs::temp_directory_path() / "orthoglide_acceptance";
  fs::remove_all(base);
  bool same = true;
  std::size_t files = 0;
  for (const auto& spec : reference_trajectories()) {
    run_pipeline(model(), spec, base / "a");
    run_pipeline(model(), spec, base / "b");
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
      };
      same = same && slurp(entry.path()) == slurp(base / "b" / entry.path().filename());
      ++files;
    }
  }
  fs::remove_all(base);
  report(same && files == 24, "AC7 byte-identical outputs", std::to_string(files) + " files compared across 3 runs");
}

void power_budget() {
  double axes = 0.0, wrist = 0.0;
  for (const auto& spec : reference_trajectories()) {
    const auto r = run_simulation(model(), spec);
    for (int i = 0; i < 3; ++i) axes = std::max(axes, r.peaks[i].peak_power);
    for (int i = 3; i < 5; ++i) wrist = std::max(wrist, r.peaks[i].peak_power);
  }
  report(axes < 1800.0 && wrist < 800.0, "Power budget under the default inertial config",
         "peak power axes " + num(axes) + " W (< 1800), wrist " + num(wrist) + " W (< 800)");
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {ac1_wrist_peaks, ac2_table_regression, ac3_energy_audit,
                                            ac4_kinematic_consistency, ac5_structure, ac6_joint_limits,
                                            ac7_determinism, power_budget};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      report(false, "criterion aborted", e.what());
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
