#include "adiaclone/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adiaclone/errors.hpp"

namespace adiaclone {

void SystemParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("system: g must be > 0");
  if (n_sites < 1) throw std::invalid_argument("system: n_sites must be >= 1");
  if (!(nu >= 0.0)) throw std::invalid_argument("system: nu must be >= 0");
  if (!std::isfinite(delta)) throw std::invalid_argument("system: delta must be finite");
  if (!(kappa_c >= 0.0) || !(kappa_f >= 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("system: decay rates must be >= 0");
}

// ---------------------------------------------------------------------------

HamiltonianGenerator::HamiltonianGenerator(BasisPtr basis, const Operator& static_part, std::vector<Term> terms)
    : basis_(std::move(basis)), static_part_(static_part) {
  require_same_basis(*basis_, *static_part_.basis(), "hamiltonian static part");
  for (const auto& t : terms) require_same_basis(*basis_, *t.op.basis(), "hamiltonian term");

  const auto d = static_cast<Eigen::Index>(basis_->dimension());
  std::vector<Eigen::Triplet<Complex>> triplets;
  auto collect = [&triplets](const SparseMatrix& m, bool keep_values) {
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it)
        triplets.emplace_back(it.row(), it.col(), keep_values ? it.value() : Complex(0.0));
  };
  collect(static_part_.matrix(), true);
  for (const auto& t : terms) collect(t.op.matrix(), false);
  pattern_.resize(d, d);
  pattern_.setFromTriplets(triplets.begin(), triplets.end());
  pattern_.makeCompressed();

  auto slot = [this](Eigen::Index row, Eigen::Index col) {
    const auto* outer = pattern_.outerIndexPtr();
    const auto* inner = pattern_.innerIndexPtr();
    const auto* first = inner + outer[row];
    const auto* last = inner + outer[row + 1];
    const auto* it = std::lower_bound(first, last, static_cast<int>(col));
    return static_cast<Eigen::Index>(it - inner);
  };

  terms_.reserve(terms.size());
  for (auto& t : terms) {
    CompiledTerm ct{std::move(t.coefficient), {}};
    const auto& m = t.op.matrix();
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) ct.entries.emplace_back(slot(it.row(), it.col()), it.value());
    terms_.push_back(std::move(ct));
  }
}

SparseMatrix HamiltonianGenerator::matrix_at(double t) const {
  SparseMatrix m = pattern_;
  Complex* values = m.valuePtr();
  for (const auto& term : terms_) {
    const Complex c = term.coefficient(t);
    if (c == Complex(0.0)) continue;
    for (const auto& [slot, base] : term.entries) values[slot] += c * base;
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

void check_inputs(const SystemParams& params, const DriveSchedule& drive, const BasisPtr& basis) {
  params.validate();
  const auto& spec = basis->spec();
  if (spec.n_sites != params.n_sites)
    throw std::invalid_argument("hamiltonian: basis has " + std::to_string(spec.n_sites) + " sites but params specify " +
                                std::to_string(params.n_sites));
  if (drive.n_sites() != params.n_sites)
    throw std::invalid_argument("hamiltonian: pulse assignment covers " + std::to_string(drive.n_sites()) +
                                " sites, expected " + std::to_string(params.n_sites));
  drive.params.validate();
}

}  // namespace

Operator fiber_coupling(const SystemParams& params, const BasisPtr& basis) {
  const int fiber = basis->spec().n_modes - 1;
  const Operator b_dag = creation_operator(basis, fiber);
  Operator h = Operator::zero(basis);
  for (int k = 0; k < basis->spec().n_sites; ++k) {
    const Operator hop = b_dag * annihilation_operator(basis, k);
    h = h + hop + hop.adjoint();
  }
  return h * Complex(params.nu);
}

HamiltonianGenerator full_hamiltonian(const SystemParams& params, const DriveSchedule& drive, const BasisPtr& basis,
                                      const ModelOptions& options) {
  check_inputs(params, drive, basis);
  for (Level l : {Level::g, Level::f, Level::e})
    if (!basis->has_level(l))
      throw std::invalid_argument("full hamiltonian: basis must contain levels g, f and e");

  const double delta = params.delta;
  const double g = params.g;
  const bool two_tones = options.tones == DriveTones::Bichromatic;

  std::vector<HamiltonianGenerator::Term> terms;
  for (int k = 0; k < params.n_sites; ++k) {
    const Operator raise_fe = transition_operator(basis, k, Level::f, Level::e);
    auto drive_coeff = [drive, k, delta, two_tones](double t) {
      const Complex phase = std::polar(1.0, delta * t);
      const Complex tones = two_tones ? phase + std::conj(phase) : phase;
      return drive.rabi(k, t) * tones;
    };
    terms.push_back({drive_coeff, raise_fe});
    terms.push_back({[drive_coeff](double t) { return std::conj(drive_coeff(t)); }, raise_fe.adjoint()});

    const Operator cavity = transition_operator(basis, k, Level::g, Level::e) * annihilation_operator(basis, k);
    terms.push_back({[g, delta](double t) { return g * std::polar(1.0, delta * t); }, cavity});
    terms.push_back({[g, delta](double t) { return g * std::polar(1.0, -delta * t); }, cavity.adjoint()});
  }
  return HamiltonianGenerator(basis, fiber_coupling(params, basis), std::move(terms));
}

std::vector<double> raman_couplings(const SystemParams& params, const DriveSchedule& drive, double t) {
  if (params.delta == 0.0) throw std::invalid_argument("effective model: delta must be non-zero");
  std::vector<double> lambda(static_cast<std::size_t>(params.n_sites));
  for (int k = 0; k < params.n_sites; ++k) lambda[k] = params.g * drive.rabi(k, t) / params.delta;
  return lambda;
}

HamiltonianGenerator effective_hamiltonian(const SystemParams& params, const DriveSchedule& drive,
                                           const BasisPtr& basis) {
  check_inputs(params, drive, basis);
  if (params.delta == 0.0) throw std::invalid_argument("effective hamiltonian: delta must be non-zero");
  if (basis->has_level(Level::e) || !basis->has_level(Level::g) || !basis->has_level(Level::f))
    throw std::invalid_argument("effective hamiltonian: basis must contain exactly levels g and f");

  const double scale = params.g / params.delta;
  std::vector<HamiltonianGenerator::Term> terms;
  for (int k = 0; k < params.n_sites; ++k) {
    const Operator raman = transition_operator(basis, k, Level::g, Level::f) * annihilation_operator(basis, k);
    auto lambda = [drive, k, scale](double t) { return Complex(scale * drive.rabi(k, t)); };
    terms.push_back({lambda, raman});
    terms.push_back({lambda, raman.adjoint()});
  }
  return HamiltonianGenerator(basis, fiber_coupling(params, basis), std::move(terms));
}

// ---------------------------------------------------------------------------

Configuration ground_configuration(int n_sites) {
  Configuration c;
  c.levels.assign(static_cast<std::size_t>(n_sites), Level::g);
  c.photons.assign(static_cast<std::size_t>(n_sites + 1), 0);
  return c;
}

Configuration single_f_configuration(int n_sites, int site) {
  Configuration c = ground_configuration(n_sites);
  c.levels.at(static_cast<std::size_t>(site)) = Level::f;
  return c;
}

DarkState dark_state(const SystemParams& params, const DriveSchedule& drive, const BasisPtr& basis, double t) {
  check_inputs(params, drive, basis);
  const int n = params.n_sites;
  const auto lambda = raman_couplings(params, drive, t);

  Configuration fiber_photon = ground_configuration(n);
  fiber_photon.photons.back() = 1;

  // Weights 1/lambda_k and -1/nu, scaled by the largest finite magnitude
  // before normalising so that tiny couplings do not overflow.
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) weight[k] = 1.0 / lambda[k];
  weight[n] = -1.0 / params.nu;

  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  const bool degenerate =
      std::any_of(weight.begin(), weight.end(), [](double w) { return !std::isfinite(w); });
  if (degenerate) {
    // Divergent weights dominate: keep only those, with equal magnitude.
    for (int k = 0; k < n; ++k)
      if (!std::isfinite(weight[k])) v(basis->index_of(single_f_configuration(n, k))) = 1.0;
    if (!std::isfinite(weight[n])) v(basis->index_of(fiber_photon)) = -1.0;
    return {StateVector(basis, v / v.norm()), true};
  }

  double scale = 0.0;
  for (double w : weight) scale = std::max(scale, std::abs(w));
  for (int k = 0; k < n; ++k) v(basis->index_of(single_f_configuration(n, k))) = weight[k] / scale;
  v(basis->index_of(fiber_photon)) = weight[n] / scale;
  return {StateVector(basis, v / v.norm()), false};
}

}  // namespace adiaclone
