// SPDX-License-Identifier: MIT
//
// Measurement tomography: shot simulation conventions, density-matrix
// reconstruction from Pauli-axis statistics, purity/fidelity metrics, and the
// few-setting pure-state pipeline, exercised on frozen examples, random
// states, and states prepared by the walk engine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "helpers.hpp"
#include "spinwalk/engine.hpp"
#include "spinwalk/plan.hpp"
#include "spinwalk/tomography.hpp"

using spinwalk::all_axis_settings;
using spinwalk::axis_setting_id;
using spinwalk::bitstring;
using spinwalk::Complex;
using spinwalk::CoupledLabel;
using spinwalk::DensityMatrix;
using spinwalk::density_from_coefficients;
using spinwalk::dominant_pure;
using spinwalk::embed_qubits;
using spinwalk::fidelity;
using spinwalk::g_matrix;
using spinwalk::make_density;
using spinwalk::measure_all_axes;
using spinwalk::Origin;
using spinwalk::pauli_basis;
using spinwalk::PauliCoefficients;
using spinwalk::pure_density;
using spinwalk::pure_settings;
using spinwalk::purity;
using spinwalk::PureTomography;
using spinwalk::qubit_count;
using spinwalk::reconstruct_density;
using spinwalk::reconstruct_pure;
using spinwalk::record_frequency;
using spinwalk::run_pure_tomography;
using spinwalk::ShotRecord;
using spinwalk::simulate_shots;
using spinwalk::SpinPair;
using spinwalk::StateVector;
using test_util::h;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector psi(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  psi.normalize();
  return psi;
}

DensityMatrix random_density(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd b(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) b(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = b * b.adjoint();
  rho /= rho.trace().real();
  return make_density(n, std::move(rho));
}

/// Same global-phase rule the pipeline uses: first coefficient above 1e-12
/// becomes real positive.
StateVector fix_phase(StateVector v) {
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    if (std::abs(v(l)) > 1e-12) {
      v *= std::conj(v(l)) / std::abs(v(l));
      break;
    }
  }
  return v;
}

double slope_of_log_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

StateVector bell_pair() {
  StateVector psi = StateVector::Zero(4);
  psi(1) = Complex(1.0 / std::sqrt(2.0), 0.0);
  psi(2) = Complex(-1.0 / std::sqrt(2.0), 0.0);
  return psi;
}

}  // namespace

TEST_CASE("pauli basis matrices follow the most-significant-qubit labeling") {
  const Eigen::MatrixXcd x = pauli_basis(1, 1);
  const Eigen::MatrixXcd y = pauli_basis(1, 2);
  const Eigen::MatrixXcd z = pauli_basis(1, 3);
  CHECK(x(0, 1) == Complex(1.0, 0.0));
  CHECK(x(1, 0) == Complex(1.0, 0.0));
  CHECK(x(0, 0) == Complex(0.0, 0.0));
  CHECK(y(0, 1) == Complex(0.0, -1.0));
  CHECK(y(1, 0) == Complex(0.0, 1.0));
  CHECK(z(0, 0) == Complex(1.0, 0.0));
  CHECK(z(1, 1) == Complex(-1.0, 0.0));

  // Label (03) in base 4 is I on qubit 1 and Z on qubit 2; (30) is the
  // reverse. Qubit 1 owns the left tensor factor.
  const Eigen::MatrixXcd iz = pauli_basis(2, 3);
  const Eigen::MatrixXcd zi = pauli_basis(2, 12);
  for (int d = 0; d < 4; ++d) {
    CHECK(iz(d, d).real() == ((d % 2 == 0) ? 1.0 : -1.0));
    CHECK(zi(d, d).real() == ((d < 2) ? 1.0 : -1.0));
  }
  // Label (11) is X on both qubits: the anti-diagonal permutation.
  const Eigen::MatrixXcd xx = pauli_basis(2, 5);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(xx(r, c) == Complex((r + c == 3) ? 1.0 : 0.0, 0.0));

  CHECK_THROWS_AS(pauli_basis(1, 4), std::invalid_argument);

  // Reconstruction from coefficients inverts tr(rho * sigma_k) / 2^n.
  const DensityMatrix rho = random_density(2, 41);
  PauliCoefficients coeffs{2, std::vector<double>(16, 0.0)};
  for (std::uint64_t k = 1; k < 16; ++k)
    coeffs.R[k] = (rho.rho * pauli_basis(2, k)).trace().real() / 4.0;
  CHECK((density_from_coefficients(coeffs) - rho.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("axis settings enumerate base-3 ids with the all-z setting last") {
  const std::vector<std::string> settings = all_axis_settings(2);
  REQUIRE(settings.size() == 9);
  CHECK(settings.front() == "XX");
  CHECK(settings[1] == "XY");
  CHECK(settings.back() == "ZZ");
  for (std::size_t i = 0; i < settings.size(); ++i)
    CHECK(axis_setting_id(settings[i]) == i);
  CHECK(axis_setting_id("ZZ") == 8);
  CHECK_THROWS_AS(axis_setting_id("XQ"), std::invalid_argument);

  CHECK(bitstring(5, 3) == "101");
  CHECK(bitstring(1, 2) == "01");
  CHECK(bitstring(0, 4) == "0000");
}

TEST_CASE("rotation conventions send each pauli eigenstate to a deterministic outcome") {
  // +1 eigenstates of X and Y must land on outcome 0 with certainty.
  StateVector plus(2);
  plus << Complex(1.0, 0.0), Complex(1.0, 0.0);
  plus /= std::sqrt(2.0);
  const ShotRecord rx = simulate_shots(plus, "X", 0, 0, true);
  CHECK(record_frequency(rx, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(record_frequency(rx, 1) == doctest::Approx(0.0).epsilon(1e-12));

  StateVector plus_i(2);
  plus_i << Complex(1.0, 0.0), Complex(0.0, 1.0);
  plus_i /= std::sqrt(2.0);
  const ShotRecord ry = simulate_shots(plus_i, "Y", 0, 0, true);
  CHECK(record_frequency(ry, 0) == doctest::Approx(1.0).epsilon(1e-12));

  StateVector minus(2);
  minus << Complex(1.0, 0.0), Complex(-1.0, 0.0);
  minus /= std::sqrt(2.0);
  const ShotRecord rxm = simulate_shots(minus, "X", 0, 0, true);
  CHECK(record_frequency(rxm, 1) == doctest::Approx(1.0).epsilon(1e-12));

  // A Z eigenstate is maximally uncertain along X and Y.
  StateVector zero = StateVector::Zero(2);
  zero(0) = 1.0;
  for (const char* axes : {"X", "Y"}) {
    const ShotRecord rec = simulate_shots(zero, axes, 0, 0, true);
    CHECK(record_frequency(rec, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(record_frequency(rec, 1) == doctest::Approx(0.5).epsilon(1e-12));
  }

  // For any state, outcome parity reproduces the Pauli expectation value.
  const StateVector psi = random_state(1, 7);
  for (std::uint64_t digit = 1; digit <= 3; ++digit) {
    const std::string axes(1, "XYZ"[digit - 1]);
    const ShotRecord rec = simulate_shots(psi, axes, 0, 0, true);
    const double parity = record_frequency(rec, 0) - record_frequency(rec, 1);
    const double expectation = psi.dot(pauli_basis(1, digit) * psi).real();
    CHECK(parity == doctest::Approx(expectation).epsilon(1e-12));
  }
}

TEST_CASE("seeded sampling is reproducible and respects the outcome distribution") {
  StateVector ground = StateVector::Zero(8);
  ground(0) = 1.0;
  const ShotRecord all_z = simulate_shots(ground, "ZZZ", 1000, 42);
  REQUIRE(all_z.counts.size() == 1);
  CHECK(all_z.counts.at("000") == 1000);
  CHECK(all_z.shots == 1000);
  CHECK_FALSE(all_z.exact);

  const StateVector bell = bell_pair();
  const ShotRecord exact_zz = simulate_shots(bell, "ZZ", 0, 0, true);
  CHECK(exact_zz.exact);
  CHECK(exact_zz.probabilities.size() == 2);
  CHECK(record_frequency(exact_zz, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(record_frequency(exact_zz, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(record_frequency(exact_zz, 0) == 0.0);

  const ShotRecord sampled = simulate_shots(bell, "ZZ", 16384, 11);
  CHECK(sampled.counts.count("00") == 0);
  CHECK(sampled.counts.count("11") == 0);
  CHECK(sampled.counts.at("01") + sampled.counts.at("10") == 16384);
  // 5 sigma around the half split.
  CHECK(std::abs(static_cast<double>(sampled.counts.at("01")) - 8192.0) < 320.0);

  const ShotRecord again = simulate_shots(bell, "ZZ", 16384, 11);
  CHECK(again.counts == sampled.counts);
  const ShotRecord other = simulate_shots(bell, "ZZ", 16384, 12);
  CHECK(other.counts != sampled.counts);

  // The pure-state and density-matrix samplers see the same distribution.
  const StateVector psi = random_state(2, 19);
  const DensityMatrix rho = pure_density(psi);
  for (const std::string& axes : all_axis_settings(2)) {
    const ShotRecord a = simulate_shots(psi, axes, 0, 0, true);
    const ShotRecord b = simulate_shots(rho, axes, 0, 0, true);
    for (std::uint64_t l = 0; l < 4; ++l)
      CHECK(record_frequency(a, l) == doctest::Approx(record_frequency(b, l)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(simulate_shots(psi, "ZZZ", 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_shots(psi, "ZZ", 0, 0, false), std::invalid_argument);
}

TEST_CASE("parity matrix matches its closed form and inverts cleanly") {
  const Eigen::MatrixXd g1 = g_matrix(1);
  REQUIRE(g1.rows() == 1);
  CHECK(g1(0, 0) == 1.0);

  const Eigen::MatrixXd g2 = g_matrix(2);
  REQUIRE(g2.rows() == 3);
  Eigen::MatrixXd expected(3, 3);
  expected << 1, 1, 1, -1, 1, -1, 1, -1, -1;
  CHECK((g2 - expected).cwiseAbs().maxCoeff() == 0.0);

  for (int n = 1; n <= 4; ++n) {
    const Eigen::MatrixXd g = g_matrix(n);
    const Eigen::MatrixXd prod = g * g.inverse();
    CHECK((prod - Eigen::MatrixXd::Identity(g.rows(), g.rows())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("density reconstruction is exact for exact records") {
  // Single qubit in the ground state.
  StateVector zero = StateVector::Zero(2);
  zero(0) = 1.0;
  const auto [coeffs1, rho1] = reconstruct_density(measure_all_axes(zero, 0, 0, true), 1);
  CHECK(coeffs1.R[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(coeffs1.R[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(coeffs1.R[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(rho1.rho(0, 0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(rho1.rho(1, 1)) < 1e-12);

  // The entangled pair pins three correlators at -1/4 and kills the rest.
  const StateVector bell = bell_pair();
  const auto [coeffs2, rho2] = reconstruct_density(measure_all_axes(bell, 0, 0, true), 2);
  for (std::uint64_t k = 1; k < 16; ++k) {
    const double want = (k == 5 || k == 10 || k == 15) ? -0.25 : 0.0;
    CHECK(coeffs2.R[k] == doctest::Approx(want).epsilon(1e-10));
  }
  CHECK(purity(rho2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(rho2, pure_density(bell)) == doctest::Approx(1.0).epsilon(1e-10));

  // Random mixed states round-trip entrywise.
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix rho = random_density(n, 100 + static_cast<std::uint64_t>(n));
    const auto [coeffs, est] = reconstruct_density(measure_all_axes(rho, 0, 0, true), n);
    CHECK((est.rho - rho.rho).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Every axis setting is required.
  std::vector<ShotRecord> partial = measure_all_axes(bell, 0, 0, true);
  partial.pop_back();
  CHECK_THROWS_WITH_AS(reconstruct_density(partial, 2),
                       "missing measurement records for axes: ZZ", std::invalid_argument);
}

TEST_CASE("redundant settings estimate shared coefficients consistently") {
  const StateVector psi = random_state(2, 23);
  const double true_r3 = psi.dot(pauli_basis(2, 3) * psi).real() / 4.0;

  const auto estimate_r3 = [](const ShotRecord& rec) {
    Eigen::VectorXd p(3);
    for (std::uint64_t l = 0; l < 3; ++l) p(static_cast<Eigen::Index>(l)) = record_frequency(rec, l);
    const Eigen::VectorXd r = g_matrix(2).lu().solve((p.array() - 0.25).matrix());
    return r(0);  // column b = 01: identity on qubit 1, Z on qubit 2
  };

  const std::int64_t shots = 16384;
  const double est_zz = estimate_r3(simulate_shots(psi, "ZZ", shots, 301));
  const double est_xz = estimate_r3(simulate_shots(psi, "XZ", shots, 302));
  const double sigma = 5.0 / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(est_zz - true_r3) < sigma);
  CHECK(std::abs(est_xz - true_r3) < sigma);
  CHECK(std::abs(est_zz - est_xz) < 2.0 * sigma);

  // The full reconstruction averages such redundant estimates.
  const auto [coeffs, rho] = reconstruct_density(measure_all_axes(psi, 0, 0, true), 2);
  CHECK(coeffs.R[3] == doctest::Approx(true_r3).epsilon(1e-10));
}

TEST_CASE("sampled reconstruction converges at the statistical rate") {
  const StateVector psi = random_state(2, 99);
  std::vector<double> true_r(16, 0.0);
  for (std::uint64_t k = 1; k < 16; ++k)
    true_r[k] = psi.dot(pauli_basis(2, k) * psi).real() / 4.0;

  std::vector<double> shot_counts;
  std::vector<double> errors;
  for (const std::int64_t shots : {256, 1024, 4096, 16384, 65536}) {
    double err = 0.0;
    const int n_seeds = 8;
    for (int s = 0; s < n_seeds; ++s) {
      const auto seed = static_cast<std::uint64_t>(10000 * s + shots);
      const auto [coeffs, rho] = reconstruct_density(measure_all_axes(psi, shots, seed), 2);
      double mean_abs = 0.0;
      for (std::uint64_t k = 1; k < 16; ++k) mean_abs += std::abs(coeffs.R[k] - true_r[k]);
      err += mean_abs / 15.0;
    }
    shot_counts.push_back(static_cast<double>(shots));
    errors.push_back(err / n_seeds);
  }
  const double slope = slope_of_log_fit(shot_counts, errors);
  CHECK(slope > -0.6);
  CHECK(slope < -0.4);
}

TEST_CASE("sampled two-qubit reconstructions reach high fidelity") {
  std::vector<double> fids;
  for (std::uint64_t s = 0; s < 7; ++s) {
    const StateVector psi = random_state(2, 500 + s);
    const auto [coeffs, est] =
        reconstruct_density(measure_all_axes(psi, 16384, 900 + s), 2);
    fids.push_back(fidelity(est, pure_density(psi)));
  }
  std::sort(fids.begin(), fids.end());
  CHECK(fids[fids.size() / 2] >= 0.99);
  CHECK(fids.front() >= 0.95);
}

TEST_CASE("purity and fidelity metrics behave on known states") {
  const StateVector psi = random_state(2, 5);
  const DensityMatrix pure = pure_density(psi);
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix mixed = make_density(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  CHECK(purity(mixed) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(pure, pure) == doctest::Approx(1.0).epsilon(1e-12));

  // For pure states the fidelity reduces to the overlap magnitude.
  const StateVector phi = random_state(2, 6);
  const double overlap = std::abs(psi.dot(phi));
  CHECK(fidelity(pure, pure_density(phi)) == doctest::Approx(overlap).epsilon(1e-9));

  const DensityMatrix rho = random_density(2, 8);
  CHECK(purity(rho) < 1.0);
  CHECK(purity(rho) >= 0.25 - 1e-12);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pure-state pipeline reconstructs states from few settings") {
  // A single occupied vertex needs only the Z record.
  StateVector basis5 = StateVector::Zero(8);
  basis5(5) = 1.0;
  const PureTomography single = run_pure_tomography(basis5, 0, 0, true);
  CHECK(single.records.size() == 1);
  CHECK((single.state - basis5).cwiseAbs().maxCoeff() < 1e-12);

  // The entangled pair: two occupied vertices two flips apart.
  const StateVector bell = bell_pair();
  const PureTomography pair = run_pure_tomography(bell, 0, 0, true);
  CHECK(pair.records.size() == 3);
  REQUIRE(pair.records[0].axes == "ZZ");
  CHECK(pair.records[1].axes == "YY");
  CHECK(pair.records[2].axes == "YX");
  CHECK(std::abs(pair.state(1) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-10);
  CHECK(std::abs(pair.state(2) - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-10);
  CHECK(std::abs(pair.state(0)) == 0.0);
  CHECK(std::abs(pair.state(3)) == 0.0);

  // Fully occupied random registers use at most 2n+1 settings.
  for (int n = 1; n <= 4; ++n) {
    const StateVector psi = random_state(n, 700 + static_cast<std::uint64_t>(n));
    const PureTomography run = run_pure_tomography(psi, 0, 0, true);
    CHECK(run.records.size() <= static_cast<std::size_t>(2 * n + 1));
    const StateVector expected = fix_phase(psi);
    CHECK((run.state - expected).cwiseAbs().maxCoeff() < 1e-8);
  }

  // Sampled records: a modest register still lands close to the truth.
  const StateVector target = random_state(2, 61);
  const PureTomography noisy = run_pure_tomography(target, 1 << 16, 77);
  const double overlap = std::abs(noisy.state.normalized().dot(target));
  CHECK(overlap > 0.99);

  // pure_settings itself reports the planned axes, starting from Z.
  const ShotRecord z_rec = simulate_shots(bell, "ZZ", 0, 0, true);
  const std::vector<std::string> settings = pure_settings(z_rec);
  REQUIRE(settings.size() == 3);
  CHECK(settings[0] == "ZZ");
  CHECK(settings[1] == "YY");
  CHECK(settings[2] == "YX");
  CHECK_THROWS_AS(pure_settings(simulate_shots(bell, "YX", 0, 0, true)), std::invalid_argument);

  // Reconstruction refuses to run without the records its plan needs.
  std::vector<ShotRecord> missing{z_rec, simulate_shots(bell, "YY", 0, 0, true)};
  CHECK_THROWS_AS(reconstruct_pure(missing, 2), std::invalid_argument);
}

TEST_CASE("prepared walk states survive the measurement pipeline") {
  const SpinPair sp{h(2), h(1)};

  // Target (3/2, 1/2): amplitudes sqrt(2/3), sqrt(1/3) on encoded slots 1, 2.
  const spinwalk::WalkPlan to_stretch = spinwalk::plan(sp, CoupledLabel{h(3), h(1)}, Origin::Top);
  const StateVector prepared = spinwalk::execute(to_stretch).states.back();
  REQUIRE(prepared.size() == 6);
  const StateVector embedded = embed_qubits(prepared);
  REQUIRE(embedded.size() == 8);

  const PureTomography run = run_pure_tomography(embedded, 0, 0, true);
  CHECK(run.records.size() <= 7);
  CHECK((run.state - fix_phase(embedded)).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(run.state(1) - Complex(std::sqrt(2.0 / 3.0), 0.0)) < 1e-10);
  CHECK(std::abs(run.state(2) - Complex(std::sqrt(1.0 / 3.0), 0.0)) < 1e-10);

  // Target (1/2, 1/2) has a sign between its two amplitudes; the pipeline
  // reproduces it up to the global-phase rule.
  const spinwalk::WalkPlan to_short = spinwalk::plan(sp, CoupledLabel{h(1), h(1)}, Origin::Top);
  const StateVector prepared2 = spinwalk::execute(to_short).states.back();
  const StateVector embedded2 = embed_qubits(prepared2);
  const PureTomography run2 = run_pure_tomography(embedded2, 0, 0, true);
  CHECK(run2.records.size() <= 7);
  CHECK((run2.state - fix_phase(embedded2)).cwiseAbs().maxCoeff() < 1e-6);
  const double mag1 = std::abs(run2.state(1));
  const double mag2 = std::abs(run2.state(2));
  CHECK(mag1 == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-9));
  CHECK(mag2 == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
  // Relative sign is physical and survives the phase rule.
  CHECK((run2.state(1) * std::conj(run2.state(2))).real() < 0.0);
}

TEST_CASE("dominant eigenvector extraction respects the phase rule") {
  const StateVector psi = random_state(2, 31);
  const StateVector expected = fix_phase(psi);

  const StateVector from_pure = dominant_pure(pure_density(psi));
  CHECK((from_pure - expected).cwiseAbs().maxCoeff() < 1e-10);

  Eigen::MatrixXcd blend =
      0.9 * (psi * psi.adjoint()) + 0.1 * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  const StateVector from_mixed = dominant_pure(make_density(2, std::move(blend)));
  CHECK((from_mixed - expected).cwiseAbs().maxCoeff() < 1e-8);

  const DensityMatrix flat = make_density(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  CHECK_THROWS_AS(dominant_pure(flat), std::domain_error);
}

TEST_CASE("register embedding pads to the next power of two") {
  CHECK(qubit_count(1) == 0);
  CHECK(qubit_count(2) == 1);
  CHECK(qubit_count(5) == 3);
  CHECK(qubit_count(6) == 3);
  CHECK(qubit_count(8) == 3);
  CHECK(qubit_count(9) == 4);
  CHECK_THROWS_AS(qubit_count(0), std::invalid_argument);

  StateVector psi(6);
  psi << 1, 2, 3, 4, 5, 6;
  const StateVector wide = embed_qubits(psi);
  REQUIRE(wide.size() == 8);
  CHECK(wide.head(6) == psi);
  CHECK(wide(6) == Complex(0.0, 0.0));
  CHECK(wide(7) == Complex(0.0, 0.0));
}

TEST_CASE("malformed densities and records are rejected") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = Complex(0.5, 0.0);
  bad(0, 0) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(make_density(1, bad), std::domain_error);  // not Hermitian

  Eigen::MatrixXcd off_trace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(make_density(1, off_trace), std::domain_error);  // trace 2

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << Complex(1.5, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-0.5, 0.0);
  CHECK_THROWS_AS(make_density(1, indefinite), std::domain_error);
  CHECK_NOTHROW(make_density(1, indefinite, 0.6));  // explicit slack admits it

  CHECK_THROWS_AS(make_density(2, Eigen::MatrixXcd::Identity(2, 2) / 2.0),
                  std::invalid_argument);  // dimension mismatch

  // Sampled records must have counts summing to their declared shots.
  const StateVector psi = random_state(1, 3);
  std::vector<ShotRecord> records = measure_all_axes(psi, 100, 17);
  records[0].shots = 99;
  CHECK_THROWS_AS(reconstruct_density(records, 1), std::invalid_argument);
}
