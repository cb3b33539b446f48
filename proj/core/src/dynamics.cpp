#include "adiaclone/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adiaclone/errors.hpp"

namespace adiaclone {

void TimeGrid::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("time grid: dt must be > 0");
  if (sample_stride < 1) throw std::invalid_argument("time grid: sample_stride must be >= 1");
  const double n = (t_end - t_start) / dt;
  if (!(n >= 0.5)) throw std::invalid_argument("time grid: t_end must exceed t_start by at least one step");
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
    throw std::invalid_argument("time grid: (t_end - t_start) / dt must be an integer");
}

std::size_t TimeGrid::steps() const {
  validate();
  return static_cast<std::size_t>(std::llround((t_end - t_start) / dt));
}

const std::vector<double>& Trajectory::series(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw std::out_of_range("trajectory: no observable named '" + name + "'");
}

// ---------------------------------------------------------------------------

std::vector<CollapseChannel> collapse_channels(const SystemParams& params, const BasisPtr& basis) {
  params.validate();
  const auto& spec = basis->spec();
  if (spec.n_sites != params.n_sites) throw std::invalid_argument("collapse channels: site count mismatch");
  const bool has_e = basis->has_level(Level::e);
  if (params.gamma > 0.0 && !has_e)
    throw std::invalid_argument("collapse channels: emitter decay requested but the basis has no level e");

  std::vector<CollapseChannel> channels;
  for (int k = 0; k < spec.n_sites; ++k)
    channels.push_back({"cavity_" + std::to_string(k), annihilation_operator(basis, k), params.kappa_c});
  channels.push_back({"fiber", annihilation_operator(basis, spec.n_modes - 1), params.kappa_f});
  if (has_e) {
    for (Level j : {Level::g, Level::f})
      for (int k = 0; k < spec.n_sites; ++k)
        channels.push_back({std::string("sigma_") + level_symbol(j) + "e_" + std::to_string(k),
                            transition_operator(basis, k, Level::e, j), params.gamma});
  }
  return channels;
}

Observable expectation_observable(std::string name, const Operator& op) {
  return Observable{
      std::move(name),
      [op](const StateVector& psi) { return psi.inner(op * psi).real(); },
      [op](const DensityMatrix& rho) {
        require_same_basis(*op.basis(), *rho.basis(), "expectation");
        return (op.matrix() * rho.matrix()).trace().real();
      }};
}

namespace {

std::string drift_message(const char* what, double drift, double t, double dt, double threshold) {
  std::ostringstream os;
  os.precision(3);
  os << what << " drift " << drift << " at t=" << t << " exceeds " << threshold << " with dt=" << dt
     << "; reduce the step size (try dt=" << dt / 2 << ")";
  return os.str();
}

bool is_sample(std::size_t step, std::size_t n_steps, int stride) {
  return step % static_cast<std::size_t>(stride) == 0 || step == n_steps;
}

void init_trajectory(Trajectory& traj, const std::vector<Observable>& observables) {
  for (const auto& o : observables) traj.names.push_back(o.name);
  traj.values.resize(observables.size());
}

}  // namespace

Trajectory evolve_schrodinger(const HamiltonianGenerator& hamiltonian, const StateVector& psi0, const TimeGrid& grid,
                              const std::vector<Observable>& observables, const EvolveOptions& options) {
  require_same_basis(*hamiltonian.basis(), *psi0.basis(), "evolve_schrodinger");
  if (!psi0.is_normalized()) throw std::invalid_argument("evolve_schrodinger: initial state is not normalized");
  const std::size_t n_steps = grid.steps();
  const double dt = grid.dt;
  const Complex minus_i(0.0, -1.0);

  Trajectory traj{{}, {}, {}, {}, {}, psi0};
  init_trajectory(traj, observables);
  StateVector psi = psi0;

  auto record = [&](std::size_t step) {
    traj.times.push_back(grid.time(step));
    traj.norms.push_back(psi.norm());
    for (std::size_t i = 0; i < observables.size(); ++i) {
      const auto& o = observables[i];
      traj.values[i].push_back(o.pure ? o.pure(psi) : o.mixed(DensityMatrix::pure(psi)));
    }
  };
  record(0);

  CVector& y = psi.amplitudes();
  CVector k1, k2, k3, k4;
  SparseMatrix h_start = hamiltonian.matrix_at(grid.time(0));
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = grid.time(step);
    const SparseMatrix h_mid = hamiltonian.matrix_at(t + 0.5 * dt);
    SparseMatrix h_end = hamiltonian.matrix_at(grid.time(step + 1));
    k1.noalias() = minus_i * (h_start * y);
    k2.noalias() = minus_i * (h_mid * (y + (0.5 * dt) * k1));
    k3.noalias() = minus_i * (h_mid * (y + (0.5 * dt) * k2));
    k4.noalias() = minus_i * (h_end * (y + dt * k3));
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_start = std::move(h_end);

    const double drift = std::abs(y.norm() - 1.0);
    traj.diagnostics.max_norm_drift = std::max(traj.diagnostics.max_norm_drift, drift);
    if (drift > options.abort_drift)
      throw NumericalError(drift_message("norm", drift, grid.time(step + 1), dt, options.abort_drift));
    if (is_sample(step + 1, n_steps, grid.sample_stride)) record(step + 1);
  }
  traj.final_state = psi;
  return traj;
}

Trajectory evolve_lindblad(const HamiltonianGenerator& hamiltonian, const std::vector<CollapseChannel>& channels,
                           const DensityMatrix& rho0, const TimeGrid& grid, const std::vector<Observable>& observables,
                           const EvolveOptions& options) {
  const BasisPtr& basis = hamiltonian.basis();
  require_same_basis(*basis, *rho0.basis(), "evolve_lindblad");
  for (const auto& c : channels) {
    require_same_basis(*basis, *c.op.basis(), "evolve_lindblad channel");
    if (!(c.rate >= 0.0)) throw std::invalid_argument("evolve_lindblad: channel '" + c.name + "' has a negative rate");
  }
  if (!rho0.is_physical()) throw std::invalid_argument("evolve_lindblad: initial density matrix is not physical");
  for (const auto& o : observables)
    if (!o.mixed) throw std::invalid_argument("evolve_lindblad: observable '" + o.name + "' has no mixed-state form");

  const std::size_t n_steps = grid.steps();
  const double dt = grid.dt;
  const Complex i_unit(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(basis->dimension());

  // Anti-Hermitian part of the effective generator: sum_c (rate_c/2) L^dag L.
  SparseMatrix damping(d, d);
  std::vector<std::pair<SparseMatrix, double>> jumps;
  for (const auto& c : channels) {
    if (c.rate == 0.0) continue;
    const SparseMatrix& l = c.op.matrix();
    damping += SparseMatrix(SparseMatrix(l.adjoint()) * l) * Complex(0.5 * c.rate);
    jumps.emplace_back(l, c.rate);
  }

  Trajectory traj{{}, {}, {}, {}, {}, rho0};
  init_trajectory(traj, observables);
  DensityMatrix rho = rho0;
  traj.diagnostics.min_eigenvalue = options.track_positivity ? rho0.min_eigenvalue() : 0.0;

  auto record = [&](std::size_t step) {
    CMatrix& m = rho.matrix();
    traj.diagnostics.max_hermiticity_deviation =
        std::max(traj.diagnostics.max_hermiticity_deviation, rho.hermiticity_deviation());
    m = (0.5 * (m + m.adjoint())).eval();
    if (options.track_positivity)
      traj.diagnostics.min_eigenvalue = std::min(traj.diagnostics.min_eigenvalue, rho.min_eigenvalue());
    traj.times.push_back(grid.time(step));
    traj.norms.push_back(rho.trace().real());
    for (std::size_t i = 0; i < observables.size(); ++i) traj.values[i].push_back(observables[i].mixed(rho));
  };
  record(0);

  // drho = -i (H - iD) rho + i rho (H + iD) + sum rate L rho L^dag; the
  // commutator part is written as X + X^dag so the result is Hermitian.
  auto rhs = [&](const SparseMatrix& h, const CMatrix& r, CMatrix& out) {
    const SparseMatrix generator = h - i_unit * damping;
    const CMatrix x = (-i_unit) * (generator * r);
    out = x + x.adjoint();
    for (const auto& [l, rate] : jumps) out.noalias() += rate * ((l * r) * l.adjoint());
  };

  CMatrix& y = rho.matrix();
  CMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d);
  SparseMatrix h_start = hamiltonian.matrix_at(grid.time(0));
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = grid.time(step);
    const SparseMatrix h_mid = hamiltonian.matrix_at(t + 0.5 * dt);
    SparseMatrix h_end = hamiltonian.matrix_at(grid.time(step + 1));
    rhs(h_start, y, k1);
    rhs(h_mid, y + (0.5 * dt) * k1, k2);
    rhs(h_mid, y + (0.5 * dt) * k2, k3);
    rhs(h_end, y + dt * k3, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_start = std::move(h_end);

    const double drift = std::abs(y.trace() - 1.0);
    traj.diagnostics.max_norm_drift = std::max(traj.diagnostics.max_norm_drift, drift);
    if (drift > options.abort_drift)
      throw NumericalError(drift_message("trace", drift, grid.time(step + 1), dt, options.abort_drift));
    if (is_sample(step + 1, n_steps, grid.sample_stride)) record(step + 1);
  }
  traj.final_state = rho;
  return traj;
}

}  // namespace adiaclone
