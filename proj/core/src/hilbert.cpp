#include "adiaclone/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "adiaclone/errors.hpp"

namespace adiaclone {

char level_symbol(Level level) {
  switch (level) {
    case Level::g: return 'g';
    case Level::f: return 'f';
    case Level::e: return 'e';
  }
  return '?';
}

BasisSpec BasisSpec::full(int n_sites, int n_max, std::optional<int> cap) {
  return BasisSpec{n_sites, {Level::g, Level::f, Level::e}, n_sites + 1, n_max, cap};
}

BasisSpec BasisSpec::effective(int n_sites, int n_max, std::optional<int> cap) {
  return BasisSpec{n_sites, {Level::g, Level::f}, n_sites + 1, n_max, cap};
}

int Configuration::excitation() const {
  int n = 0;
  for (Level l : levels) n += (l == Level::g) ? 0 : 1;
  for (int p : photons) n += p;
  return n;
}

std::string Configuration::label() const {
  std::string s = "|";
  for (Level l : levels) s += level_symbol(l);
  s += ',';
  for (std::size_t m = 0; m + 1 < photons.size(); ++m) s += std::to_string(photons[m]);
  s += ',';
  if (!photons.empty()) s += std::to_string(photons.back());
  s += '>';
  return s;
}

namespace {

void validate(const BasisSpec& spec) {
  if (spec.n_sites < 1) throw std::invalid_argument("basis: n_sites must be >= 1");
  if (spec.site_levels.empty()) throw std::invalid_argument("basis: site_levels must not be empty");
  if (spec.n_modes != spec.n_sites + 1)
    throw std::invalid_argument("basis: n_modes must equal n_sites + 1 (one cavity per site plus the fiber)");
  if (spec.n_max < 0) throw std::invalid_argument("basis: n_max must be >= 0");
  if (spec.excitation_cap && *spec.excitation_cap < 0)
    throw std::invalid_argument("basis: excitation_cap must be >= 0");
  auto sorted = spec.site_levels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("basis: site_levels contains duplicates");
}

}  // namespace

Basis::Basis(BasisSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  const auto n_levels = static_cast<int>(spec_.site_levels.size());
  const int n_occ = spec_.n_max + 1;
  const int n_factors = spec_.n_sites + spec_.n_modes;

  // Odometer over (site level positions..., mode occupations...), last factor fastest.
  std::vector<int> digit(static_cast<std::size_t>(n_factors), 0);
  auto radix = [&](int factor) { return factor < spec_.n_sites ? n_levels : n_occ; };
  Configuration c;
  c.levels.resize(static_cast<std::size_t>(spec_.n_sites));
  c.photons.resize(static_cast<std::size_t>(spec_.n_modes));
  while (true) {
    for (int s = 0; s < spec_.n_sites; ++s)
      c.levels[s] = spec_.site_levels[static_cast<std::size_t>(digit[s])];
    for (int m = 0; m < spec_.n_modes; ++m) c.photons[m] = digit[spec_.n_sites + m];
    if (!spec_.excitation_cap || c.excitation() <= *spec_.excitation_cap) {
      lookup_.emplace(*key(c), states_.size());
      states_.push_back(c);
    }
    int f = n_factors - 1;
    while (f >= 0 && ++digit[f] == radix(f)) digit[f--] = 0;
    if (f < 0) break;
  }
}

std::optional<std::uint64_t> Basis::key(const Configuration& c) const {
  if (c.levels.size() != static_cast<std::size_t>(spec_.n_sites) ||
      c.photons.size() != static_cast<std::size_t>(spec_.n_modes))
    return std::nullopt;
  std::uint64_t k = 0;
  const auto n_levels = static_cast<std::uint64_t>(spec_.site_levels.size());
  for (Level l : c.levels) {
    const int pos = level_position(l);
    if (pos < 0) return std::nullopt;
    k = k * n_levels + static_cast<std::uint64_t>(pos);
  }
  for (int p : c.photons) {
    if (p < 0 || p > spec_.n_max) return std::nullopt;
    k = k * static_cast<std::uint64_t>(spec_.n_max + 1) + static_cast<std::uint64_t>(p);
  }
  return k;
}

std::optional<std::size_t> Basis::find(const Configuration& c) const {
  const auto k = key(c);
  if (!k) return std::nullopt;
  const auto it = lookup_.find(*k);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Basis::index_of(const Configuration& c) const {
  if (const auto i = find(c)) return *i;
  throw std::out_of_range("basis: configuration " + c.label() + " is not in the basis");
}

bool Basis::has_level(Level level) const { return level_position(level) >= 0; }

int Basis::level_position(Level level) const {
  const auto& lv = spec_.site_levels;
  const auto it = std::find(lv.begin(), lv.end(), level);
  return it == lv.end() ? -1 : static_cast<int>(it - lv.begin());
}

BasisPtr build_basis(BasisSpec spec) { return std::make_shared<const Basis>(std::move(spec)); }

void require_same_basis(const Basis& a, const Basis& b, const char* context) {
  if (!a.compatible(b)) throw BasisMismatch(std::string(context) + ": operands live on different bases");
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(BasisPtr basis, SparseMatrix matrix) : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (!basis_) throw std::invalid_argument("operator: null basis");
  const auto d = static_cast<Eigen::Index>(basis_->dimension());
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw std::invalid_argument("operator: matrix shape does not match basis dimension");
  matrix_.makeCompressed();
}

Operator Operator::zero(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  return Operator(std::move(basis), SparseMatrix(d, d));
}

Operator Operator::identity(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  SparseMatrix m(d, d);
  m.setIdentity();
  return Operator(std::move(basis), std::move(m));
}

Operator Operator::adjoint() const { return Operator(basis_, SparseMatrix(matrix_.adjoint())); }

double Operator::max_abs() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

Operator Operator::operator+(const Operator& rhs) const {
  require_same_basis(*basis_, *rhs.basis_, "operator +");
  return Operator(basis_, SparseMatrix(matrix_ + rhs.matrix_));
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same_basis(*basis_, *rhs.basis_, "operator -");
  return Operator(basis_, SparseMatrix(matrix_ - rhs.matrix_));
}

Operator Operator::operator*(const Operator& rhs) const {
  require_same_basis(*basis_, *rhs.basis_, "operator *");
  return Operator(basis_, SparseMatrix(matrix_ * rhs.matrix_));
}

Operator Operator::operator*(Complex s) const { return Operator(basis_, SparseMatrix(matrix_ * s)); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// States

StateVector::StateVector(BasisPtr basis, CVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("state: null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dimension())
    throw std::invalid_argument("state: amplitude count does not match basis dimension");
}

StateVector StateVector::basis_state(BasisPtr basis, std::size_t index) {
  if (index >= basis->dimension()) throw std::out_of_range("state: basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dimension()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(basis), std::move(v));
}

StateVector StateVector::basis_state(BasisPtr basis, const Configuration& c) {
  const auto i = basis->index_of(c);
  return basis_state(std::move(basis), i);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("state: cannot normalize the zero vector");
  return StateVector(basis_, amplitudes_ / n);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Complex StateVector::inner(const StateVector& other) const {
  require_same_basis(*basis_, *other.basis_, "inner product");
  return amplitudes_.dot(other.amplitudes_);
}

StateVector operator*(const Operator& op, const StateVector& psi) {
  require_same_basis(*op.basis(), *psi.basis(), "operator application");
  return StateVector(psi.basis(), CVector(op.matrix() * psi.amplitudes()));
}

DensityMatrix::DensityMatrix(BasisPtr basis, CMatrix rho) : basis_(std::move(basis)), rho_(std::move(rho)) {
  if (!basis_) throw std::invalid_argument("density matrix: null basis");
  const auto d = static_cast<Eigen::Index>(basis_->dimension());
  if (rho_.rows() != d || rho_.cols() != d)
    throw std::invalid_argument("density matrix: shape does not match basis dimension");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  return DensityMatrix(std::move(basis), CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_deviation() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical() const {
  return hermiticity_deviation() <= 1e-10 && std::abs(trace() - 1.0) <= 1e-8 && min_eigenvalue() >= -1e-8;
}

double DensityMatrix::expectation(const StateVector& psi) const {
  require_same_basis(*basis_, *psi.basis(), "density-matrix expectation");
  return psi.amplitudes().dot(rho_ * psi.amplitudes()).real();
}

// ---------------------------------------------------------------------------
// Elementary operators

namespace {

// Builds an operator column by column: `image` maps a basis configuration to
// (target configuration, amplitude), or nullopt for a zero column. Targets
// outside the (possibly capped) basis are dropped.
Operator build_operator(const BasisPtr& basis,
                        const std::function<std::optional<std::pair<Configuration, Complex>>(const Configuration&)>& image) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(basis->dimension());
  for (std::size_t col = 0; col < basis->dimension(); ++col) {
    const auto res = image(basis->state(col));
    if (!res || res->second == Complex(0.0)) continue;
    if (const auto row = basis->find(res->first))
      triplets.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col), res->second);
  }
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return Operator(basis, std::move(m));
}

void check_mode(const BasisPtr& basis, int mode_index) {
  if (mode_index < 0 || mode_index >= basis->spec().n_modes)
    throw std::out_of_range("mode index " + std::to_string(mode_index) + " out of range [0, " +
                            std::to_string(basis->spec().n_modes) + ")");
}

}  // namespace

Operator annihilation_operator(const BasisPtr& basis, int mode_index) {
  check_mode(basis, mode_index);
  return build_operator(basis, [mode_index](const Configuration& c) -> std::optional<std::pair<Configuration, Complex>> {
    const int n = c.photons[static_cast<std::size_t>(mode_index)];
    if (n == 0) return std::nullopt;
    Configuration out = c;
    out.photons[static_cast<std::size_t>(mode_index)] = n - 1;
    return std::pair{std::move(out), Complex(std::sqrt(static_cast<double>(n)))};
  });
}

Operator creation_operator(const BasisPtr& basis, int mode_index) {
  check_mode(basis, mode_index);
  const int n_max = basis->spec().n_max;
  return build_operator(basis, [mode_index, n_max](const Configuration& c) -> std::optional<std::pair<Configuration, Complex>> {
    const int n = c.photons[static_cast<std::size_t>(mode_index)];
    if (n == n_max) return std::nullopt;
    Configuration out = c;
    out.photons[static_cast<std::size_t>(mode_index)] = n + 1;
    return std::pair{std::move(out), Complex(std::sqrt(static_cast<double>(n + 1)))};
  });
}

Operator transition_operator(const BasisPtr& basis, int site, Level from, Level to) {
  if (site < 0 || site >= basis->spec().n_sites)
    throw std::out_of_range("site index " + std::to_string(site) + " out of range");
  for (Level l : {from, to})
    if (!basis->has_level(l))
      throw std::invalid_argument(std::string("transition operator: level '") + level_symbol(l) +
                                  "' is not part of this basis");
  return build_operator(basis, [site, from, to](const Configuration& c) -> std::optional<std::pair<Configuration, Complex>> {
    if (c.levels[static_cast<std::size_t>(site)] != from) return std::nullopt;
    Configuration out = c;
    out.levels[static_cast<std::size_t>(site)] = to;
    return std::pair{std::move(out), Complex(1.0)};
  });
}

Operator excitation_operator(const BasisPtr& basis) {
  return build_operator(basis, [](const Configuration& c) -> std::optional<std::pair<Configuration, Complex>> {
    return std::pair{c, Complex(static_cast<double>(c.excitation()))};
  });
}

}  // namespace adiaclone
