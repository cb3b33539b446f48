#pragma once

// Gaussian Rabi-frequency schedules for the counterintuitive pulse sequence.
// The late Gaussian (centre t0) is shared by both schedules; the early one
// (centre t1) only drives the sites that start in |g>.

#include <vector>

namespace adiaclone {

/// Frequencies in units of g, times in units of 1/g.
struct PulseParams {
  double omega_m = 1.0;  ///< peak Rabi frequency
  double t0 = 150.0;     ///< centre of the late Gaussian
  double t1 = 90.0;      ///< centre of the early Gaussian
  double tp = 50.0;      ///< Gaussian width
  double T = 200.0;      ///< total evolution time

  /// Throws std::invalid_argument unless tp > 0, T > 0, omega_m >= 0.
  void validate() const;

  bool operator==(const PulseParams&) const = default;
};

namespace pulses {

/// Omega_m exp(-(t-t1)^2/tp^2) + Omega_m exp(-(t-t0)^2/tp^2)
double omega(double t, const PulseParams& p);
/// Omega_m exp(-(t-t0)^2/tp^2)
double omega0(double t, const PulseParams& p);

}  // namespace pulses

enum class PulseShape { Omega, Omega0 };

/// Which schedule drives each site. The default drives site 0 (the initially
/// excited emitter) with Omega0 and all others with Omega.
struct PulseAssignment {
  std::vector<PulseShape> per_site;

  static PulseAssignment standard(int n_sites);

  bool operator==(const PulseAssignment&) const = default;
};

/// Pulse parameters together with their site mapping.
struct DriveSchedule {
  PulseParams params;
  PulseAssignment assignment;

  static DriveSchedule standard(const PulseParams& p, int n_sites) {
    return {p, PulseAssignment::standard(n_sites)};
  }

  int n_sites() const { return static_cast<int>(assignment.per_site.size()); }
  /// Rabi frequency applied to `site` at time t.
  double rabi(int site, double t) const;
};

struct LimitThresholds {
  double max_start_ratio = 0.05;    ///< Omega0(0)/Omega(0) must not exceed this
  double max_end_deviation = 0.05;  ///< |Omega(T)/Omega0(T) - 1| must not exceed this
};

struct LimitReport {
  double start_ratio = 0.0;  ///< Omega0(0) / Omega(0)
  double end_ratio = 0.0;    ///< Omega(T) / Omega0(T)
  bool start_ok = false;
  bool end_ok = false;
  bool passed() const { return start_ok && end_ok; }
};

/// Checks the boundary behaviour the schedules need for adiabatic transfer:
/// Omega0 negligible against Omega at t=0, and the two equal at t=T.
LimitReport check_adiabatic_limits(const PulseParams& p, const LimitThresholds& thresholds = {});

}  // namespace adiaclone
