#pragma once

// Fixed-step RK4 integration of the Schroedinger equation and of the Lindblad
// master equation
//   drho/dt = -i[H(t), rho] + sum_c (rate_c/2) (2 L rho L^dag - L^dag L rho - rho L^dag L).

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "adiaclone/hilbert.hpp"
#include "adiaclone/model.hpp"

namespace adiaclone {

/// Times in units of 1/g. Samples are taken every `sample_stride` steps,
/// plus the final step.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 200.0;
  double dt = 0.005;
  int sample_stride = 200;

  /// Throws std::invalid_argument unless dt > 0, stride >= 1 and the span is a
  /// positive integer multiple of dt to within 1e-9.
  void validate() const;
  std::size_t steps() const;
  double time(std::size_t step) const { return t_start + static_cast<double>(step) * dt; }

  bool operator==(const TimeGrid&) const = default;
};

struct CollapseChannel {
  std::string name;
  Operator op;
  double rate = 0.0;
};

/// Cavity decay a_k (kappa_c) for every site, fiber decay b (kappa_f) and,
/// when the basis contains e, sigma_ge and sigma_fe on every site (gamma).
/// Throws if gamma > 0 on a basis without level e.
std::vector<CollapseChannel> collapse_channels(const SystemParams& params, const BasisPtr& basis);

/// Scalar quantity recorded at every sample.
struct Observable {
  std::string name;
  std::function<double(const StateVector&)> pure;
  std::function<double(const DensityMatrix&)> mixed;
};

/// Re <op> for a (Hermitian) operator.
Observable expectation_observable(std::string name, const Operator& op);

struct EvolveOptions {
  /// Abort threshold on |norm - 1| (pure) or |tr rho - 1| (mixed).
  double abort_drift = 1e-6;
  /// Compute the minimum eigenvalue of rho at every sample.
  bool track_positivity = true;
};

struct TrajectoryDiagnostics {
  double max_norm_drift = 0.0;             ///< max |norm-1| or |tr rho - 1| over samples
  double max_hermiticity_deviation = 0.0;  ///< before symmetrisation (mixed only)
  double min_eigenvalue = 0.0;             ///< over samples (mixed only, when tracked)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  ///< values[observable][sample]
  std::vector<double> norms;                ///< norm (pure) or real trace (mixed) per sample
  TrajectoryDiagnostics diagnostics;
  std::variant<StateVector, DensityMatrix> final_state;

  std::size_t samples() const { return times.size(); }
  /// Throws std::out_of_range for an unknown observable name.
  const std::vector<double>& series(const std::string& name) const;
};

Trajectory evolve_schrodinger(const HamiltonianGenerator& hamiltonian, const StateVector& psi0, const TimeGrid& grid,
                              const std::vector<Observable>& observables = {}, const EvolveOptions& options = {});

Trajectory evolve_lindblad(const HamiltonianGenerator& hamiltonian, const std::vector<CollapseChannel>& channels,
                           const DensityMatrix& rho0, const TimeGrid& grid,
                           const std::vector<Observable>& observables = {}, const EvolveOptions& options = {});

}  // namespace adiaclone
