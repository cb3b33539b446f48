#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <cmath>

#include "adiaclone/model.hpp"
#include "oracles.hpp"

using namespace adiaclone;

namespace {

const SystemParams kParams{};
const DriveSchedule kDrive = DriveSchedule::standard(PulseParams{}, 3);

double hermiticity(const SparseMatrix& h) {
  const oracle::Mat d(h);
  return (d - d.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Model, ParamsValidate) {
  EXPECT_NO_THROW(kParams.validate());
  SystemParams p = kParams;
  p.n_sites = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = kParams;
  p.kappa_c = -0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Model, HamiltoniansAreHermitianAndConserveExcitations) {
  const auto full = build_basis(BasisSpec::full(3));
  const auto eff = build_basis(BasisSpec::effective(3));
  const auto hf = full_hamiltonian(kParams, kDrive, full);
  const auto hs = full_hamiltonian(kParams, kDrive, full, ModelOptions{DriveTones::Single});
  const auto he = effective_hamiltonian(kParams, kDrive, eff);
  const auto nf = excitation_operator(full);
  const auto ne = excitation_operator(eff);
  for (double t : {0.0, 13.7, 90.0, 150.0, 199.99}) {
    EXPECT_LT(hermiticity(hf.matrix_at(t)), 1e-15);
    EXPECT_LT(hermiticity(hs.matrix_at(t)), 1e-15);
    EXPECT_LT(hermiticity(he.matrix_at(t)), 1e-15);
    EXPECT_LT(commutator(hf.at(t), nf).max_abs(), 1e-13);
    EXPECT_LT(commutator(hs.at(t), nf).max_abs(), 1e-13);
    EXPECT_LT(commutator(he.at(t), ne).max_abs(), 1e-13);
  }
}

TEST(Model, FullHamiltonianMatrixElements) {
  const auto basis = build_basis(BasisSpec::full(3, 1, 1));
  const auto h2 = full_hamiltonian(kParams, kDrive, basis);
  const auto h1 = full_hamiltonian(kParams, kDrive, basis, ModelOptions{DriveTones::Single});
  const double t = 37.3;
  for (int k = 0; k < 3; ++k) {
    Configuration f = single_f_configuration(3, k);
    Configuration e = f;
    e.levels[k] = Level::e;
    Configuration photon = ground_configuration(3);
    photon.photons[k] = 1;
    const auto fi = basis->index_of(f), ei = basis->index_of(e), pi = basis->index_of(photon);
    const double rabi = kDrive.rabi(k, t);
    const Complex phase = std::polar(1.0, kParams.delta * t);

    EXPECT_NEAR(std::abs(h2.at(t).element(ei, fi) - rabi * 2.0 * std::cos(kParams.delta * t)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h1.at(t).element(ei, fi) - rabi * phase), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h2.at(t).element(ei, pi) - kParams.g * phase), 0.0, 1e-14);

    Configuration fiber = ground_configuration(3);
    fiber.photons[3] = 1;
    EXPECT_NEAR(std::abs(h2.at(t).element(basis->index_of(fiber), pi) - kParams.nu), 0.0, 1e-14);
  }
}

TEST(Model, EffectiveHamiltonianUsesRamanCouplings) {
  const auto basis = build_basis(BasisSpec::effective(3, 1, 1));
  const auto h = effective_hamiltonian(kParams, kDrive, basis);
  const double t = 121.0;
  const auto lambda = raman_couplings(kParams, kDrive, t);
  ASSERT_EQ(lambda.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(lambda[k], kParams.g * kDrive.rabi(k, t) / kParams.delta, 1e-16);
    Configuration photon = ground_configuration(3);
    photon.photons[k] = 1;
    const auto f = basis->index_of(single_f_configuration(3, k));
    EXPECT_NEAR(std::abs(h.at(t).element(f, basis->index_of(photon)) - lambda[k]), 0.0, 1e-16);
  }
}

TEST(Model, InvalidModelInputsThrow) {
  const auto full = build_basis(BasisSpec::full(3));
  const auto eff = build_basis(BasisSpec::effective(3));
  EXPECT_THROW(effective_hamiltonian(kParams, kDrive, full), std::invalid_argument);
  EXPECT_THROW(full_hamiltonian(kParams, kDrive, eff), std::invalid_argument);
  SystemParams p = kParams;
  p.delta = 0.0;
  EXPECT_THROW(effective_hamiltonian(p, kDrive, eff), std::invalid_argument);
  EXPECT_THROW(full_hamiltonian(kParams, DriveSchedule::standard(PulseParams{}, 2), full), std::invalid_argument);
}

// The dark state must be the null vector of H_eff(t) inside the one-excitation
// sector; the reference null vector comes from an SVD of that dense block.
TEST(Model, DarkStateIsSvdNullVector) {
  const auto basis = build_basis(BasisSpec::effective(3, 1, 1));
  const auto h = effective_hamiltonian(kParams, kDrive, basis);
  std::vector<Eigen::Index> sector;
  for (std::size_t i = 0; i < basis->dimension(); ++i)
    if (basis->state(i).excitation() == 1) sector.push_back(static_cast<Eigen::Index>(i));

  for (double t : {20.0, 90.0, 120.0, 150.0, 180.0, 200.0}) {
    const oracle::Mat dense(h.matrix_at(t));
    oracle::Mat block(sector.size(), sector.size());
    for (std::size_t r = 0; r < sector.size(); ++r)
      for (std::size_t c = 0; c < sector.size(); ++c) block(r, c) = dense(sector[r], sector[c]);
    Eigen::JacobiSVD<oracle::Mat> svd(block, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    EXPECT_LT(s(s.size() - 1), 1e-12);
    EXPECT_GT(s(s.size() - 2), 1e-6);  // the null space is one-dimensional
    const oracle::Vec null = svd.matrixV().col(s.size() - 1);

    const auto dark = dark_state(kParams, kDrive, basis, t);
    ASSERT_FALSE(dark.degenerate);
    oracle::Vec restricted(sector.size());
    for (std::size_t r = 0; r < sector.size(); ++r) restricted(r) = dark.state[sector[r]];
    EXPECT_NEAR(restricted.norm(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(null.dot(restricted)), 1.0, 1e-12);
    EXPECT_LT((h.matrix_at(t) * dark.state.amplitudes()).norm(), 1e-12);
  }
}

TEST(Model, DarkStateFiberAmplitudeForUniformDrive) {
  // Every site driven by the late pulse: lambda_k = 0.1 at t = t0.
  const DriveSchedule uniform{PulseParams{}, PulseAssignment{{PulseShape::Omega0, PulseShape::Omega0, PulseShape::Omega0}}};
  const auto basis = build_basis(BasisSpec::effective(3, 1, 1));
  const auto dark = dark_state(kParams, uniform, basis, 150.0);
  Configuration fiber = ground_configuration(3);
  fiber.photons[3] = 1;
  const double k = 3 * 100.0 + 0.01;
  EXPECT_NEAR(dark.state[basis->index_of(fiber)].real(), -0.1 / std::sqrt(k), 1e-15);
  EXPECT_NEAR(std::abs(dark.state[basis->index_of(fiber)]), 5.7735e-3, 1e-7);
  for (int s = 0; s < 3; ++s)
    EXPECT_NEAR(dark.state[basis->index_of(single_f_configuration(3, s))].real(), 10.0 / std::sqrt(k), 1e-14);
}

TEST(Model, DarkStateLimitsAtPulseEdges) {
  const auto basis = build_basis(BasisSpec::effective(3, 1, 1));
  // Early: site 0 barely driven, so the dark state sits on |f g g>.
  const auto early = dark_state(kParams, kDrive, basis, 0.0);
  EXPECT_GT(std::abs(early.state[basis->index_of(single_f_configuration(3, 0))]), 0.9999);
  // Zero amplitude everywhere: degenerate, equal superposition over the sites.
  const DriveSchedule off{PulseParams{0.0, 150.0, 90.0, 50.0, 200.0}, PulseAssignment::standard(3)};
  const auto limit = dark_state(kParams, off, basis, 100.0);
  EXPECT_TRUE(limit.degenerate);
  for (int s = 0; s < 3; ++s)
    EXPECT_NEAR(std::abs(limit.state[basis->index_of(single_f_configuration(3, s))]), 1.0 / std::sqrt(3.0), 1e-14);
}
