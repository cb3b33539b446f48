#pragma once

// Product bases of N three-level emitters and N+1 truncated bosonic modes
// (N cavities followed by the shared fiber mode), plus the elementary
// operators the Hamiltonians and dissipators are assembled from.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace adiaclone {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Emitter levels: two ground sublevels g, f and the optically excited e.
enum class Level : std::uint8_t { g = 0, f = 1, e = 2 };

char level_symbol(Level level);

struct BasisSpec {
  int n_sites = 1;
  /// Levels kept on every site, in enumeration order.
  std::vector<Level> site_levels{Level::g, Level::f, Level::e};
  /// Cavity modes 0..n_sites-1, then the fiber mode.
  int n_modes = 2;
  int n_max = 1;
  std::optional<int> excitation_cap;

  /// {g, f, e} on every site (full model).
  static BasisSpec full(int n_sites, int n_max = 1, std::optional<int> cap = std::nullopt);
  /// {g, f} on every site (excited level adiabatically eliminated).
  static BasisSpec effective(int n_sites, int n_max = 1, std::optional<int> cap = std::nullopt);

  bool operator==(const BasisSpec&) const = default;
};

/// One product-basis label: a level per site and an occupation per mode.
struct Configuration {
  std::vector<Level> levels;
  std::vector<int> photons;

  /// f and e populations plus total photon count.
  int excitation() const;
  /// e.g. "|fgg,000,0>" with the fiber occupation after the second comma.
  std::string label() const;

  bool operator==(const Configuration&) const = default;
};

class Basis {
 public:
  /// Validates `spec` and enumerates its configurations lexicographically:
  /// site 0 most significant, levels in `site_levels` order, then mode
  /// occupations 0..n_max with the fiber mode last.
  explicit Basis(BasisSpec spec);

  const BasisSpec& spec() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return states_.size(); }
  std::span<const Configuration> states() const noexcept { return states_; }
  const Configuration& state(std::size_t i) const { return states_.at(i); }

  std::optional<std::size_t> find(const Configuration& c) const;
  /// Throws std::out_of_range when `c` is not admissible in this basis.
  std::size_t index_of(const Configuration& c) const;

  bool has_level(Level level) const;
  /// Position of `level` within the per-site level list.
  int level_position(Level level) const;

  /// Same enumeration (equal specs) whether or not the objects coincide.
  bool compatible(const Basis& other) const noexcept {
    return this == &other || spec_ == other.spec_;
  }

 private:
  std::optional<std::uint64_t> key(const Configuration& c) const;

  BasisSpec spec_;
  std::vector<Configuration> states_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr build_basis(BasisSpec spec);

/// Throws BasisMismatch naming `context` unless both bases enumerate the same states.
void require_same_basis(const Basis& a, const Basis& b, const char* context);

class Operator {
 public:
  Operator(BasisPtr basis, SparseMatrix matrix);

  static Operator zero(BasisPtr basis);
  static Operator identity(BasisPtr basis);

  const BasisPtr& basis() const noexcept { return basis_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return basis_->dimension(); }

  Complex element(std::size_t row, std::size_t col) const { return matrix_.coeff(row, col); }

  Operator adjoint() const;
  /// Largest entry magnitude; 0 for the zero operator.
  double max_abs() const;

  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(const Operator& rhs) const;
  Operator operator*(Complex s) const;
  friend Operator operator*(Complex s, const Operator& op) { return op * s; }

 private:
  BasisPtr basis_;
  SparseMatrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

class StateVector {
 public:
  StateVector(BasisPtr basis, CVector amplitudes);

  static StateVector basis_state(BasisPtr basis, std::size_t index);
  static StateVector basis_state(BasisPtr basis, const Configuration& c);

  const BasisPtr& basis() const noexcept { return basis_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  CVector& amplitudes() noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  bool is_normalized(double tol = 1e-8) const;
  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  BasisPtr basis_;
  CVector amplitudes_;
};

StateVector operator*(const Operator& op, const StateVector& psi);

class DensityMatrix {
 public:
  DensityMatrix(BasisPtr basis, CMatrix rho);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(BasisPtr basis);

  const BasisPtr& basis() const noexcept { return basis_; }
  const CMatrix& matrix() const noexcept { return rho_; }
  CMatrix& matrix() noexcept { return rho_; }

  Complex trace() const { return rho_.trace(); }
  /// max |rho - rho^dagger| entrywise.
  double hermiticity_deviation() const;
  double min_eigenvalue() const;
  /// Hermitian to 1e-10, unit trace to 1e-8, eigenvalues >= -1e-8.
  bool is_physical() const;
  /// <psi|rho|psi>, real part.
  double expectation(const StateVector& psi) const;

 private:
  BasisPtr basis_;
  CMatrix rho_;
};

Operator annihilation_operator(const BasisPtr& basis, int mode_index);
Operator creation_operator(const BasisPtr& basis, int mode_index);
/// |to><from| on `site`, identity on every other factor.
Operator transition_operator(const BasisPtr& basis, int site, Level from, Level to);
/// Diagonal operator of configuration excitation numbers.
Operator excitation_operator(const BasisPtr& basis);

}  // namespace adiaclone
