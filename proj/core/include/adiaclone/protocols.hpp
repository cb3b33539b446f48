#pragma once

// W-state preparation and 1->N phase-covariant cloning by adiabatic passage,
// plus the fidelity measure and single-site reduced states.

#include <optional>
#include <vector>

#include "adiaclone/dynamics.hpp"
#include "adiaclone/hilbert.hpp"
#include "adiaclone/model.hpp"
#include "adiaclone/pulses.hpp"

namespace adiaclone {

/// |<target|psi>|
double fidelity(const StateVector& state, const StateVector& target);
/// sqrt(<target|rho|target>), clamped at 0 against rounding.
double fidelity(const DensityMatrix& state, const StateVector& target);

Observable fidelity_observable(std::string name, const StateVector& target);

/// (1/sqrt N) sum_k |g..f_k..g> with all modes empty, N = basis n_sites.
StateVector w_target(const BasisPtr& basis);

/// (|g_0> + e^{i delta} |f_0>)/sqrt 2 on site 0, every other site in g, modes empty.
StateVector cloning_input(const BasisPtr& basis, double delta);

/// (1/sqrt 2) [ |g..g> + (e^{i delta}/sqrt N) sum_k |g..f_k..g> ], modes empty.
StateVector cloning_target(const BasisPtr& basis, double delta);

/// Partial trace over all other sites and every mode. The result lives on a
/// one-site basis with the same level set and empty (n_max = 0) modes.
DensityMatrix reduced_density(const StateVector& state, int keep_site);
DensityMatrix reduced_density(const DensityMatrix& state, int keep_site);

/// <psi_in|rho_site|psi_in> with psi_in = (|g> + e^{i delta}|f>)/sqrt 2.
double copy_fidelity(const DensityMatrix& site_state, double delta);

struct CloningInput {
  double delta = 0.0;  ///< equatorial phase of the input qubit
};

struct BasisOptions {
  int n_max = 1;
  /// Protocols never exceed one excitation, so the E <= 1 subspace is exact.
  std::optional<int> excitation_cap = 1;

  bool operator==(const BasisOptions&) const = default;
};

enum class Dynamics {
  Auto,         ///< Lindblad when any decay rate is non-zero, Schroedinger otherwise
  Schrodinger,
  Lindblad,
};

struct ProtocolOptions {
  BasisOptions basis;
  ModelOptions model;
  std::optional<PulseAssignment> assignment;  ///< default: PulseAssignment::standard
  Dynamics dynamics = Dynamics::Auto;
  EvolveOptions evolve;
};

enum class TargetKind { WState, CloningState };

struct ProtocolResult {
  Trajectory trajectory;  ///< records "fidelity" and "excitation" per sample
  double final_fidelity = 0.0;
  TargetKind target = TargetKind::WState;
  std::vector<double> copy_fidelities;  ///< cloning only, one per site
  std::size_t basis_dimension = 0;
};

BasisPtr protocol_basis(const SystemParams& params, ModelKind kind, const BasisOptions& options);

HamiltonianGenerator make_hamiltonian(const SystemParams& params, const DriveSchedule& drive, ModelKind kind,
                                      const BasisPtr& basis, const ModelOptions& options = {});

/// Starts from |f g..g> with empty modes and scores the final state against w_target.
ProtocolResult prepare_w_state(const SystemParams& params, const PulseParams& pulses, ModelKind kind,
                               const TimeGrid& grid, const ProtocolOptions& options = {});

/// Starts from cloning_input and scores the final state against cloning_target.
ProtocolResult clone_phase_covariant(const SystemParams& params, const PulseParams& pulses, const CloningInput& input,
                                     ModelKind kind, const TimeGrid& grid, const ProtocolOptions& options = {});

}  // namespace adiaclone
