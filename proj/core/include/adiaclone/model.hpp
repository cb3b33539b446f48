#pragma once

// Hamiltonians of the NV/cavity/fiber network and its instantaneous dark state.
//
// Full model (levels g, f, e), interaction picture:
//   H(t) = sum_k [ Omega_k(t) (e^{i Delta t} + e^{-i Delta t}) |e><f|_k
//                  + g a_k e^{i Delta t} |e><g|_k + h.c. ]
//          + nu sum_k (b^dag a_k + h.c.)
// Effective model (levels g, f), excited level eliminated:
//   H(t) = sum_k lambda_k(t) (a_k |f><g|_k + h.c.) + nu sum_k (b^dag a_k + h.c.)
//   lambda_k(t) = g Omega_k(t) / Delta

#include <functional>
#include <vector>

#include "adiaclone/hilbert.hpp"
#include "adiaclone/pulses.hpp"

namespace adiaclone {

/// All rates and frequencies in units of g.
struct SystemParams {
  double g = 1.0;       ///< NV-cavity coupling
  double delta = 10.0;  ///< common detuning of cavity and drive
  double nu = 10.0;     ///< cavity-fiber coupling
  int n_sites = 3;
  double kappa_c = 0.0;  ///< cavity decay
  double kappa_f = 0.0;  ///< fiber decay
  double gamma = 0.0;    ///< excited-level decay per channel (e->g and e->f)

  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

enum class ModelKind { Full, Effective };

/// Bichromatic: drive tones at +Delta and -Delta, cancelling the laser Stark
/// shifts. Single: only the Raman-resonant +Delta tone.
enum class DriveTones { Bichromatic, Single };

struct ModelOptions {
  DriveTones tones = DriveTones::Bichromatic;
};

/// H(t) = H_static + sum_j c_j(t) O_j, compiled onto one shared sparsity
/// pattern. Immutable once built; concurrent evaluation is safe.
class HamiltonianGenerator {
 public:
  using Coefficient = std::function<Complex(double)>;

  struct Term {
    Coefficient coefficient;
    Operator op;
  };

  HamiltonianGenerator(BasisPtr basis, const Operator& static_part, std::vector<Term> terms);

  const BasisPtr& basis() const noexcept { return basis_; }
  const Operator& static_part() const noexcept { return static_part_; }

  SparseMatrix matrix_at(double t) const;
  Operator at(double t) const { return Operator(basis_, matrix_at(t)); }

 private:
  struct CompiledTerm {
    Coefficient coefficient;
    std::vector<std::pair<Eigen::Index, Complex>> entries;  // (value slot, base value)
  };

  BasisPtr basis_;
  Operator static_part_;
  SparseMatrix pattern_;               // union pattern, static values filled in
  std::vector<CompiledTerm> terms_;
};

/// Full Hamiltonian with both NV-cavity-drive terms and the fiber coupling.
/// Requires a basis with levels {g, f, e} and a pulse for every site.
HamiltonianGenerator full_hamiltonian(const SystemParams& params, const DriveSchedule& drive, const BasisPtr& basis,
                                      const ModelOptions& options = {});

/// Effective Raman Hamiltonian plus fiber coupling. Requires levels {g, f}, delta != 0.
HamiltonianGenerator effective_hamiltonian(const SystemParams& params, const DriveSchedule& drive,
                                           const BasisPtr& basis);

/// Static cavity-fiber coupling nu sum_k (b^dag a_k + h.c.).
Operator fiber_coupling(const SystemParams& params, const BasisPtr& basis);

/// lambda_k(t) = g Omega_k(t) / Delta for every site.
std::vector<double> raman_couplings(const SystemParams& params, const DriveSchedule& drive, double t);

struct DarkState {
  StateVector state;
  /// Some lambda_k vanished; `state` is the limiting configuration (equal
  /// superposition of the sites with lambda_k = 0) rather than the formula.
  bool degenerate = false;
};

/// Zero-eigenvalue eigenvector of the effective Hamiltonian at time t:
///   (1/sqrt K) [ sum_k (1/lambda_k) |..f_k..,vac> - (1/nu) |g..g, fiber photon> ],
///   K = sum_k 1/lambda_k^2 + 1/nu^2.
DarkState dark_state(const SystemParams& params, const DriveSchedule& drive, const BasisPtr& basis, double t);

/// |g..f_k..g> with every mode empty.
Configuration single_f_configuration(int n_sites, int site);
/// |g..g> with every mode empty.
Configuration ground_configuration(int n_sites);

}  // namespace adiaclone
