#include <gtest/gtest.h>

#include <cmath>

#include "adiaclone/dynamics.hpp"
#include "adiaclone/errors.hpp"

using namespace adiaclone;

namespace {

SystemParams one_site(double nu = 0.0) {
  SystemParams p;
  p.n_sites = 1;
  p.nu = nu;
  return p;
}

// H(t) = c(t) (|f><g| + |g><f|), c(t) = 0.5 + 0.3 sin t; P_f(t) = sin^2(theta),
// theta(t) = 0.5 t + 0.3 (1 - cos t).
HamiltonianGenerator driven_flip(const BasisPtr& basis) {
  const Operator up = transition_operator(basis, 0, Level::g, Level::f);
  auto c = [](double t) { return Complex(0.5 + 0.3 * std::sin(t), 0.0); };
  return HamiltonianGenerator(basis, Operator::zero(basis), {{c, up}, {c, up.adjoint()}});
}

double flip_population(double t) {
  const double theta = 0.5 * t + 0.3 * (1.0 - std::cos(t));
  return std::sin(theta) * std::sin(theta);
}

double flip_error(double dt) {
  const auto basis = build_basis(BasisSpec::effective(1, 0));
  const auto h = driven_flip(basis);
  const auto psi0 = StateVector::basis_state(basis, 0);
  const auto pf = transition_operator(basis, 0, Level::f, Level::f);
  // Coarse steps drift past the default abort threshold by design here.
  const auto traj = evolve_schrodinger(h, psi0, TimeGrid{0.0, 10.0, dt, 1}, {expectation_observable("pf", pf)},
                                       EvolveOptions{1.0, false});
  return std::abs(traj.series("pf").back() - flip_population(10.0));
}

}  // namespace

TEST(TimeGrid, StepsAndValidation) {
  const TimeGrid grid;
  EXPECT_EQ(grid.steps(), 40000u);
  EXPECT_DOUBLE_EQ(grid.time(40000), 200.0);
  EXPECT_THROW((TimeGrid{0.0, 1.0, 0.3, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((TimeGrid{0.0, 1.0, 0.0, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((TimeGrid{0.0, 1.0, 0.1, 0}).validate(), std::invalid_argument);
  EXPECT_THROW((TimeGrid{1.0, 1.0, 0.1, 1}).validate(), std::invalid_argument);
}

TEST(Schrodinger, PhotonHoppingMatchesCosineSquared) {
  const auto params = one_site(1.0);
  const auto basis = build_basis(BasisSpec::effective(1));
  const HamiltonianGenerator h(basis, fiber_coupling(params, basis), {});
  Configuration c{{Level::g}, {1, 0}};
  const auto psi0 = StateVector::basis_state(basis, c);
  const auto n_cav = creation_operator(basis, 0) * annihilation_operator(basis, 0);
  const auto traj = evolve_schrodinger(h, psi0, TimeGrid{0.0, 3.0, 0.001, 100}, {expectation_observable("n", n_cav)});
  ASSERT_EQ(traj.samples(), 31u);
  for (std::size_t i = 0; i < traj.samples(); ++i)
    EXPECT_NEAR(traj.series("n")[i], std::pow(std::cos(traj.times[i]), 2), 1e-11);
  EXPECT_LT(traj.diagnostics.max_norm_drift, 1e-12);
  EXPECT_THROW(traj.series("missing"), std::out_of_range);
}

TEST(Schrodinger, TimeDependentRabiFlop) {
  EXPECT_LT(flip_error(0.001), 1e-12);
}

TEST(Schrodinger, FourthOrderConvergence) {
  const double coarse = flip_error(0.2);
  const double fine = flip_error(0.1);
  const double ratio = coarse / fine;
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Schrodinger, SamplingIncludesEndpoints) {
  const auto basis = build_basis(BasisSpec::effective(1, 0));
  const auto traj = evolve_schrodinger(driven_flip(basis), StateVector::basis_state(basis, 0), TimeGrid{0.0, 1.0, 0.01, 30});
  ASSERT_EQ(traj.samples(), 5u);
  EXPECT_DOUBLE_EQ(traj.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.times[3], 0.9);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  EXPECT_TRUE(std::holds_alternative<StateVector>(traj.final_state));
}

TEST(Schrodinger, DriftAbortsWithStepSizeHint) {
  const auto params = one_site(10.0);
  const auto basis = build_basis(BasisSpec::effective(1));
  const HamiltonianGenerator h(basis, fiber_coupling(params, basis), {});
  const auto psi0 = StateVector::basis_state(basis, Configuration{{Level::g}, {1, 0}});
  try {
    evolve_schrodinger(h, psi0, TimeGrid{0.0, 10.0, 0.5, 1});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("dt=0.25"), std::string::npos) << e.what();
  }
  const StateVector unnormalized(basis, 2.0 * psi0.amplitudes());
  EXPECT_THROW(evolve_schrodinger(h, unnormalized, TimeGrid{0.0, 1.0, 0.1, 1}), std::invalid_argument);
}

TEST(Lindblad, CollapseChannelInventory) {
  SystemParams p;
  p.kappa_c = p.kappa_f = p.gamma = 0.01;
  EXPECT_EQ(collapse_channels(p, build_basis(BasisSpec::full(3, 1, 1))).size(), 10u);
  p.gamma = 0.0;
  EXPECT_EQ(collapse_channels(p, build_basis(BasisSpec::effective(3, 1, 1))).size(), 4u);
  p.gamma = 0.01;
  EXPECT_THROW(collapse_channels(p, build_basis(BasisSpec::effective(3, 1, 1))), std::invalid_argument);
}

TEST(Lindblad, CavityAndFiberPhotonsDecayExponentially) {
  auto params = one_site();
  params.kappa_c = 0.3;
  params.kappa_f = 0.7;
  const auto basis = build_basis(BasisSpec::effective(1));
  const HamiltonianGenerator h(basis, Operator::zero(basis), {});
  const auto channels = collapse_channels(params, basis);
  const auto n_cav = creation_operator(basis, 0) * annihilation_operator(basis, 0);
  const auto n_fib = creation_operator(basis, 1) * annihilation_operator(basis, 1);
  const auto rho0 = DensityMatrix::pure(StateVector::basis_state(basis, Configuration{{Level::g}, {1, 1}}));
  const auto traj = evolve_lindblad(h, channels, rho0, TimeGrid{0.0, 5.0, 0.001, 500},
                                    {expectation_observable("cav", n_cav), expectation_observable("fib", n_fib)});
  for (std::size_t i = 0; i < traj.samples(); ++i) {
    EXPECT_NEAR(traj.series("cav")[i], std::exp(-0.3 * traj.times[i]), 1e-11);
    EXPECT_NEAR(traj.series("fib")[i], std::exp(-0.7 * traj.times[i]), 1e-11);
  }
  EXPECT_LT(traj.diagnostics.max_norm_drift, 1e-12);
  EXPECT_GE(traj.diagnostics.min_eigenvalue, -1e-12);
}

TEST(Lindblad, ExcitedLevelBranchesEquallyToBothGroundLevels) {
  auto params = one_site();
  params.gamma = 0.2;
  const auto basis = build_basis(BasisSpec::full(1, 0));
  const HamiltonianGenerator h(basis, Operator::zero(basis), {});
  const auto rho0 = DensityMatrix::pure(StateVector::basis_state(basis, Configuration{{Level::e}, {0, 0}}));
  const auto traj = evolve_lindblad(h, collapse_channels(params, basis), rho0, TimeGrid{0.0, 4.0, 0.001, 1000},
                                    {expectation_observable("e", transition_operator(basis, 0, Level::e, Level::e)),
                                     expectation_observable("g", transition_operator(basis, 0, Level::g, Level::g)),
                                     expectation_observable("f", transition_operator(basis, 0, Level::f, Level::f))});
  for (std::size_t i = 0; i < traj.samples(); ++i) {
    const double pe = std::exp(-0.4 * traj.times[i]);
    EXPECT_NEAR(traj.series("e")[i], pe, 1e-11);
    EXPECT_NEAR(traj.series("g")[i], 0.5 * (1.0 - pe), 1e-11);
    EXPECT_NEAR(traj.series("f")[i], 0.5 * (1.0 - pe), 1e-11);
  }
}

TEST(Lindblad, ZeroRatesReproduceSchrodinger) {
  SystemParams params;
  params.n_sites = 2;
  const auto basis = build_basis(BasisSpec::full(2, 1, 1));
  const auto h = full_hamiltonian(params, DriveSchedule::standard(PulseParams{}, 2), basis);
  const auto psi0 = StateVector::basis_state(basis, single_f_configuration(2, 0));
  const TimeGrid grid{100.0, 130.0, 0.005, 1000};
  const auto pure = evolve_schrodinger(h, psi0, grid);
  const auto mixed = evolve_lindblad(h, collapse_channels(params, basis), DensityMatrix::pure(psi0), grid);
  const auto& psi = std::get<StateVector>(pure.final_state);
  const auto& rho = std::get<DensityMatrix>(mixed.final_state);
  const CMatrix expected = psi.amplitudes() * psi.amplitudes().adjoint();
  // Same order, different truncation error (the mixed scheme keeps the trace exactly).
  EXPECT_LT((rho.matrix() - expected).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Lindblad, RejectsNonPhysicalInitialState) {
  const auto basis = build_basis(BasisSpec::effective(1, 0));
  const HamiltonianGenerator h(basis, Operator::zero(basis), {});
  CMatrix bad = CMatrix::Identity(2, 2);
  EXPECT_THROW(evolve_lindblad(h, {}, DensityMatrix(basis, bad), TimeGrid{0.0, 1.0, 0.1, 1}), std::invalid_argument);
}
