#include "adiaclone/pulses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adiaclone {

void PulseParams::validate() const {
  if (!(tp > 0.0)) throw std::invalid_argument("pulses: tp must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("pulses: T must be > 0");
  if (!(omega_m >= 0.0)) throw std::invalid_argument("pulses: omega_m must be >= 0");
}

namespace pulses {

namespace {
double gaussian(double t, double centre, double width) {
  const double x = (t - centre) / width;
  return std::exp(-x * x);
}
}  // namespace

double omega(double t, const PulseParams& p) {
  return p.omega_m * gaussian(t, p.t1, p.tp) + p.omega_m * gaussian(t, p.t0, p.tp);
}

double omega0(double t, const PulseParams& p) { return p.omega_m * gaussian(t, p.t0, p.tp); }

}  // namespace pulses

PulseAssignment PulseAssignment::standard(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("pulse assignment: n_sites must be >= 1");
  PulseAssignment a;
  a.per_site.assign(static_cast<std::size_t>(n_sites), PulseShape::Omega);
  a.per_site[0] = PulseShape::Omega0;
  return a;
}

double DriveSchedule::rabi(int site, double t) const {
  if (site < 0 || site >= n_sites())
    throw std::out_of_range("drive schedule: no pulse assigned to site " + std::to_string(site));
  return assignment.per_site[static_cast<std::size_t>(site)] == PulseShape::Omega0 ? pulses::omega0(t, params)
                                                                                    : pulses::omega(t, params);
}

LimitReport check_adiabatic_limits(const PulseParams& p, const LimitThresholds& thresholds) {
  LimitReport r;
  r.start_ratio = pulses::omega0(0.0, p) / pulses::omega(0.0, p);
  r.end_ratio = pulses::omega(p.T, p) / pulses::omega0(p.T, p);
  // NaN ratios (omega_m = 0) fail both comparisons.
  r.start_ok = r.start_ratio <= thresholds.max_start_ratio;
  r.end_ok = std::abs(r.end_ratio - 1.0) <= thresholds.max_end_deviation;
  return r;
}

}  // namespace adiaclone
