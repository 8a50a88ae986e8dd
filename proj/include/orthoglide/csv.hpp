#pragma once

// CSV emitters. Header row, comma separator, 17 significant digits, '\n' line ends.

#include <ostream>
#include <string>

#include "orthoglide/dyn_translation.hpp"
#include "orthoglide/dyn_wrist.hpp"
#include "orthoglide/energy_audit.hpp"
#include "orthoglide/format.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/report.hpp"
#include "orthoglide/trajectory.hpp"

namespace orthoglide::csv {

namespace detail {

class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}
  ~Row() { out_ << '\n'; }

  Row& operator<<(double x) {
    sep();
    out_ << format_sig(x, 17);
    return *this;
  }
  Row& operator<<(const Vec3& v) { return *this << v.x() << v.y() << v.z(); }
  Row& operator<<(const Vec2& v) { return *this << v.x() << v.y(); }
  Row& operator<<(const std::string& s) {
    sep();
    out_ << s;
    return *this;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace detail

inline void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out << "t,psi,px,py,pz,vx,vy,vz,pdx,pdy,pdz,pddx,pddy,pddz,vdx,vdy,vdz,vddx,vddy,vddz\n";
  for (const auto& s : traj) {
    detail::Row(out) << s.t << s.psi << s.p << s.v << s.p_dot << s.p_ddot << s.v_dot << s.v_ddot;
  }
}

inline void write_joints_translation(std::ostream& out, const PrismaticTrace& trace) {
  out << "t,rho_x,rho_y,rho_z,rhod_x,rhod_y,rhod_z,rhodd_x,rhodd_y,rhodd_z,flags\n";
  for (const auto& s : trace) {
    detail::Row(out) << s.t << s.rho << s.rho_dot << s.rho_ddot << s.flags.to_string();
  }
}

inline void write_joints_wrist(std::ostream& out, const WristTrace& trace) {
  out << "t,theta1,theta2,theta1d,theta2d,theta1dd,theta2dd,flags\n";
  for (const auto& s : trace) {
    detail::Row(out) << s.t << s.theta << s.theta_dot << s.theta_ddot << s.flags.to_string();
  }
}

inline void write_effort_translation(std::ostream& out, const TranslationEffortTrace& trace) {
  out << "t,Fx,Fy,Fz,Px,Py,Pz\n";
  for (const auto& e : trace) detail::Row(out) << e.t << e.force << e.power;
}

inline void write_effort_wrist(std::ostream& out, const WristEffortTrace& trace) {
  out << "t,T1,T2,P1,P2\n";
  for (const auto& e : trace) detail::Row(out) << e.t << e.torque << e.power;
}

inline void write_audit(std::ostream& out, const AuditResult& audit) {
  out << "t,W_step,dKE,dPE,residual\n";
  for (const auto& s : audit.steps) {
    detail::Row(out) << s.t << s.work << s.d_kinetic << s.d_potential << s.residual;
  }
}

inline void write_peaks_header(std::ostream& out, const std::string& prefix_columns) {
  out << prefix_columns
      << ",Vx,Vy,Vz,Ax,Ay,Az,theta1d,theta2d,theta1dd,theta2dd,Fx,Fy,Fz,T1,T2,Px,Py,Pz,P1,P2\n";
}

/// One sweep line: caller-provided leading cells followed by the peak table.
inline void write_peaks_row(std::ostream& out, std::initializer_list<double> lead, const PeakTable& peaks) {
  detail::Row row(out);
  for (double x : lead) row << x;
  for (int i = 0; i < 3; ++i) row << peaks[i].peak_speed;
  for (int i = 0; i < 3; ++i) row << peaks[i].peak_accel;
  for (int i = 3; i < 5; ++i) row << peaks[i].peak_speed;
  for (int i = 3; i < 5; ++i) row << peaks[i].peak_accel;
  for (const auto& p : peaks) row << p.peak_effort;
  for (const auto& p : peaks) row << p.peak_power;
}

}  // namespace orthoglide::csv
