// SPDX-License-Identifier: MIT
//
// Measurement tomography over qubit registers: a seeded simulated shot source
// (per-axis single-qubit rotations + multinomial sampling, with an exact
// probability mode), full density-matrix reconstruction from Pauli-axis
// statistics, purity/fidelity metrics, and a pure-state pipeline that infers
// amplitudes from one Z-basis record and phases from a phase-inheritance tree
// using at most 2n+1 measurement settings.
//
// Conventions: qubits are counted left to right starting from 1, with qubit 1
// the most significant bit of basis index l = (q_1…q_n)₂; tensor products put
// qubit 1 in the left factor. A Pauli label k = (μ_1…μ_n)₄ in base 4 selects
// σ_k = ⊗_i (I,X,Y,Z)[μ_i]. Axis strings hold one of 'X','Y','Z' per qubit;
// measuring X applies exp(+iπ/4·Y) and measuring Y applies exp(−iπ/4·X)
// before a Z-basis readout.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinwalk/sparse.hpp"

namespace spinwalk {

/// Validated n-qubit density matrix: Hermitian within 1e−10, unit trace
/// within 1e−10, and minimum eigenvalue ≥ −tol.
struct DensityMatrix {
  int n = 0;
  Eigen::MatrixXcd rho;
};

/// Validate and wrap; tol bounds how negative the smallest eigenvalue may be
/// (shot-based reconstructions dip slightly below zero).
DensityMatrix make_density(int n, Eigen::MatrixXcd rho, double tol = 1e-10);

/// Rank-one density matrix of a (power-of-two dimensional) pure state.
DensityMatrix pure_density(const StateVector& psi);

/// Real expansion coefficients of ρ = 2^{−n}·I + Σ_{k≥1} R_k σ_k.
/// R has size 4ⁿ with R[0] unused (fixed by the trace).
struct PauliCoefficients {
  int n = 0;
  std::vector<double> R;
};

/// The n-qubit Pauli basis matrix σ_k for a base-4 label k.
Eigen::MatrixXcd pauli_basis(int n, std::uint64_t k);

/// Assemble ρ from its coefficients.
Eigen::MatrixXcd density_from_coefficients(const PauliCoefficients& coeffs);

/// The (2ⁿ−1)×(2ⁿ−1) map from Z-pattern Pauli coefficients to outcome
/// probabilities: G_{(q…)₂,(b…)₂−1} = ∏_i (−1)^{b_i q_i}, so that
/// p = 2^{−n} + G·r over outcomes l = 0…2ⁿ−2.
Eigen::MatrixXd g_matrix(int n);

/// One measurement setting's outcome statistics. Sampled records carry
/// integer counts with Σcounts = shots; exact records (the shots → ∞ limit)
/// carry outcome probabilities instead and have shots = 0.
struct ShotRecord {
  std::string axes;  ///< one of 'X','Y','Z' per qubit, qubit 1 first
  std::map<std::string, std::int64_t> counts;  ///< bitstring → count, zeros omitted
  std::int64_t shots = 0;
  bool exact = false;
  std::map<std::string, double> probabilities;  ///< exact mode only
};

/// Basis index rendered as an n-bit string, qubit 1 first.
std::string bitstring(std::uint64_t l, int n);

/// Observed frequency of outcome l (count/shots, or the exact probability).
double record_frequency(const ShotRecord& rec, std::uint64_t l);

/// Rotate per the axis string, then read the Z-basis distribution: sample
/// `shots` outcomes multinomially (seeded, reproducible), or report the
/// distribution itself when exact is set. The state dimension must be 2ⁿ
/// with n = axes.size().
ShotRecord simulate_shots(const StateVector& psi, const std::string& axes,
                          std::int64_t shots, std::uint64_t seed, bool exact = false);
ShotRecord simulate_shots(const DensityMatrix& rho, const std::string& axes,
                          std::int64_t shots, std::uint64_t seed, bool exact = false);

/// All 3ⁿ axis settings in ascending setting-id order (X<Y<Z per digit,
/// qubit 1 most significant); the all-Z setting is last.
std::vector<std::string> all_axis_settings(int n);

/// Base-3 value of the axis string (X→0, Y→1, Z→2), used both for ordering
/// and for deriving per-setting seeds (seed XOR id).
std::uint64_t axis_setting_id(const std::string& axes);

/// One record per axis setting, each sampled with seed XOR setting-id.
std::vector<ShotRecord> measure_all_axes(const StateVector& psi, std::int64_t shots,
                                         std::uint64_t seed, bool exact = false);
std::vector<ShotRecord> measure_all_axes(const DensityMatrix& rho, std::int64_t shots,
                                         std::uint64_t seed, bool exact = false);

/// Full tomography: requires all 3ⁿ settings (error lists any missing axes).
/// Per setting, r = G⁻¹(p − 2^{−n}); coefficients measurable from several
/// settings are averaged. The density validation tolerance is 1e−10 when all
/// records are exact, otherwise max(0.05, 5/√min-shots) across the records.
std::pair<PauliCoefficients, DensityMatrix> reconstruct_density(
    const std::vector<ShotRecord>& records, int n);

/// tr(ρ²) and Uhlmann fidelity tr√(√σ·ρ·√σ). Both clip shot-noise-negative
/// eigenvalues to zero and renormalize internally; inputs are not modified.
double purity(const DensityMatrix& rho);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// The measurement settings the pure-state pipeline needs, derived from the
/// all-Z record: the Z setting itself plus two settings per distinct
/// qubit-flip set in the phase-inheritance tree (at most 2n+1 in total).
/// Occupancy uses max(1e−9, 5·√(p(1−p)/shots)) per outcome unless an
/// explicit threshold is given.
std::vector<std::string> pure_settings(const ShotRecord& z_record,
                                       std::optional<double> occupancy_threshold = {});

/// Pure-state reconstruction: amplitudes from the all-Z record, relative
/// phases inherited along the tree (single-bit interference inside connected
/// subgraphs, multi-bit links between them), global phase fixed so the
/// smallest occupied index has a real positive coefficient. Throws when a
/// needed setting is missing or a multi-bit link is obstructed by an
/// occupied vertex inside its Hamming sphere (named in the message).
StateVector reconstruct_pure(const std::vector<ShotRecord>& records, int n,
                             std::optional<double> occupancy_threshold = {});

/// Simulate the pure pipeline end to end: measure Z, derive the settings,
/// measure them (seed XOR setting-id), and reconstruct.
struct PureTomography {
  std::vector<ShotRecord> records;
  StateVector state;
};
PureTomography run_pure_tomography(const StateVector& psi, std::int64_t shots,
                                   std::uint64_t seed, bool exact = false,
                                   std::optional<double> occupancy_threshold = {});

/// Top-eigenvalue eigenvector of ρ under the same global-phase rule; errors
/// if the top eigenvalue is degenerate within 1e−10.
StateVector dominant_pure(const DensityMatrix& rho);

/// Smallest n with 2ⁿ ≥ dim, and the zero-padded embedding into that register.
int qubit_count(Eigen::Index dim);
StateVector embed_qubits(const StateVector& psi);

}  // namespace spinwalk
