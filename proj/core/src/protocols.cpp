#include "adiaclone/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "adiaclone/errors.hpp"

namespace adiaclone {

double fidelity(const StateVector& state, const StateVector& target) { return std::abs(target.inner(state)); }

double fidelity(const DensityMatrix& state, const StateVector& target) {
  return std::sqrt(std::max(0.0, state.expectation(target)));
}

Observable fidelity_observable(std::string name, const StateVector& target) {
  return Observable{std::move(name), [target](const StateVector& psi) { return fidelity(psi, target); },
                    [target](const DensityMatrix& rho) { return fidelity(rho, target); }};
}

StateVector w_target(const BasisPtr& basis) {
  const int n = basis->spec().n_sites;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) v(basis->index_of(single_f_configuration(n, k))) = amp;
  return StateVector(basis, std::move(v));
}

StateVector cloning_input(const BasisPtr& basis, double delta) {
  const int n = basis->spec().n_sites;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  v(basis->index_of(ground_configuration(n))) = 1.0 / std::sqrt(2.0);
  v(basis->index_of(single_f_configuration(n, 0))) = std::polar(1.0 / std::sqrt(2.0), delta);
  return StateVector(basis, std::move(v));
}

StateVector cloning_target(const BasisPtr& basis, double delta) {
  const int n = basis->spec().n_sites;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  v(basis->index_of(ground_configuration(n))) = 1.0 / std::sqrt(2.0);
  const Complex branch = std::polar(1.0 / std::sqrt(2.0 * n), delta);
  for (int k = 0; k < n; ++k) v(basis->index_of(single_f_configuration(n, k))) = branch;
  return StateVector(basis, std::move(v));
}

namespace {

BasisPtr site_basis(const Basis& parent) {
  return build_basis(BasisSpec{1, parent.spec().site_levels, 2, 0, std::nullopt});
}

// Calls visit(i, j, a, b) for every pair of basis states i, j that agree on
// everything except the level of `site`; a, b are those levels' positions.
template <typename Visit>
void for_each_partner(const Basis& basis, int site, Visit&& visit) {
  if (site < 0 || site >= basis.spec().n_sites)
    throw std::out_of_range("reduced_density: site " + std::to_string(site) + " out of range");
  const auto& levels = basis.spec().site_levels;
  const auto s = static_cast<std::size_t>(site);
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    Configuration c = basis.state(i);
    const int a = basis.level_position(c.levels[s]);
    for (std::size_t b = 0; b < levels.size(); ++b) {
      c.levels[s] = levels[b];
      if (const auto j = basis.find(c)) visit(i, *j, a, static_cast<int>(b));
    }
  }
}

}  // namespace

DensityMatrix reduced_density(const StateVector& state, int keep_site) {
  const Basis& basis = *state.basis();
  const auto n_levels = static_cast<Eigen::Index>(basis.spec().site_levels.size());
  CMatrix r = CMatrix::Zero(n_levels, n_levels);
  const CVector& psi = state.amplitudes();
  for_each_partner(basis, keep_site, [&](std::size_t i, std::size_t j, int a, int b) {
    r(a, b) += psi(static_cast<Eigen::Index>(i)) * std::conj(psi(static_cast<Eigen::Index>(j)));
  });
  return DensityMatrix(site_basis(basis), std::move(r));
}

DensityMatrix reduced_density(const DensityMatrix& state, int keep_site) {
  const Basis& basis = *state.basis();
  const auto n_levels = static_cast<Eigen::Index>(basis.spec().site_levels.size());
  CMatrix r = CMatrix::Zero(n_levels, n_levels);
  const CMatrix& rho = state.matrix();
  for_each_partner(basis, keep_site, [&](std::size_t i, std::size_t j, int a, int b) {
    r(a, b) += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
  return DensityMatrix(site_basis(basis), std::move(r));
}

double copy_fidelity(const DensityMatrix& site_state, double delta) {
  const BasisPtr& basis = site_state.basis();
  if (basis->spec().n_sites != 1) throw std::invalid_argument("copy_fidelity: expects a single-site density matrix");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  Configuration c = ground_configuration(1);
  c.photons.assign(2, 0);
  v(basis->index_of(c)) = 1.0 / std::sqrt(2.0);
  c.levels[0] = Level::f;
  v(basis->index_of(c)) = std::polar(1.0 / std::sqrt(2.0), delta);
  return site_state.expectation(StateVector(basis, std::move(v)));
}

// ---------------------------------------------------------------------------

BasisPtr protocol_basis(const SystemParams& params, ModelKind kind, const BasisOptions& options) {
  return build_basis(kind == ModelKind::Full ? BasisSpec::full(params.n_sites, options.n_max, options.excitation_cap)
                                             : BasisSpec::effective(params.n_sites, options.n_max, options.excitation_cap));
}

HamiltonianGenerator make_hamiltonian(const SystemParams& params, const DriveSchedule& drive, ModelKind kind,
                                      const BasisPtr& basis, const ModelOptions& options) {
  return kind == ModelKind::Full ? full_hamiltonian(params, drive, basis, options)
                                 : effective_hamiltonian(params, drive, basis);
}

namespace {

struct Evolved {
  Trajectory trajectory;
  double fidelity;
  std::size_t dimension;
};

bool use_lindblad(const SystemParams& params, Dynamics mode) {
  switch (mode) {
    case Dynamics::Schrodinger: return false;
    case Dynamics::Lindblad: return true;
    case Dynamics::Auto: break;
  }
  return params.kappa_c > 0.0 || params.kappa_f > 0.0 || params.gamma > 0.0;
}

template <typename MakeStates>
Evolved run_protocol(const SystemParams& params, const PulseParams& pulses, ModelKind kind, const TimeGrid& grid,
                     const ProtocolOptions& options, MakeStates&& make_states) {
  params.validate();
  pulses.validate();
  const BasisPtr basis = protocol_basis(params, kind, options.basis);
  const DriveSchedule drive{pulses, options.assignment.value_or(PulseAssignment::standard(params.n_sites))};
  const HamiltonianGenerator h = make_hamiltonian(params, drive, kind, basis, options.model);
  const auto states = make_states(basis);
  const StateVector& psi0 = states.first;
  const StateVector& target = states.second;

  const std::vector<Observable> observables{fidelity_observable("fidelity", target),
                                            expectation_observable("excitation", excitation_operator(basis))};
  Evolved out{use_lindblad(params, options.dynamics)
                  ? evolve_lindblad(h, collapse_channels(params, basis), DensityMatrix::pure(psi0), grid, observables,
                                    options.evolve)
                  : evolve_schrodinger(h, psi0, grid, observables, options.evolve),
              0.0, basis->dimension()};
  out.fidelity = std::visit([&target](const auto& s) { return fidelity(s, target); }, out.trajectory.final_state);
  return out;
}

}  // namespace

ProtocolResult prepare_w_state(const SystemParams& params, const PulseParams& pulses, ModelKind kind,
                               const TimeGrid& grid, const ProtocolOptions& options) {
  auto states = [&params](const BasisPtr& basis) {
    return std::pair{StateVector::basis_state(basis, single_f_configuration(params.n_sites, 0)), w_target(basis)};
  };
  Evolved e = run_protocol(params, pulses, kind, grid, options, states);
  return ProtocolResult{std::move(e.trajectory), e.fidelity, TargetKind::WState, {}, e.dimension};
}

ProtocolResult clone_phase_covariant(const SystemParams& params, const PulseParams& pulses, const CloningInput& input,
                                     ModelKind kind, const TimeGrid& grid, const ProtocolOptions& options) {
  auto states = [&input](const BasisPtr& basis) {
    return std::pair{cloning_input(basis, input.delta), cloning_target(basis, input.delta)};
  };
  Evolved e = run_protocol(params, pulses, kind, grid, options, states);
  ProtocolResult result{std::move(e.trajectory), e.fidelity, TargetKind::CloningState, {}, e.dimension};
  for (int k = 0; k < params.n_sites; ++k) {
    const DensityMatrix site = std::visit([k](const auto& s) { return reduced_density(s, k); },
                                          result.trajectory.final_state);
    result.copy_fidelities.push_back(copy_fidelity(site, input.delta));
  }
  return result;
}

}  // namespace adiaclone
