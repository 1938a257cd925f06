// SPDX-License-Identifier: MIT
//
// Cross-verification between the walk pipeline and the recurrence oracle:
// per-path and per-table state separations, the full operator-algebra
// identity suite, selection-rule audits after rotation to the coupled basis,
// and a seeded noise-injection experiment with its analytic growth bound.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinwalk/basis.hpp"
#include "spinwalk/plan.hpp"

namespace spinwalk {

/// Root-mean-square separation ε_k = ((1/D)·|C_k − c_k|²)^{1/2} between the
/// walk state after step k and the oracle coupled state of that step's
/// arrival label, for the canonical plan to `target` from `origin`.
/// ε_0 compares the initial states, so the result has (steps+1) entries.
std::vector<double> epsilon_path(const SpinPair& sp, CoupledLabel target, Origin origin);

/// Table-level separation ε = ((1/K)·Σ|C̃−c̃|²)^{1/2} over all K structural
/// entries between the walk-assembled and recurrence tables, using the
/// oracle's sign convention directly.
double epsilon_table(const SpinPair& sp);

/// {raw, sign-aligned} table separations; the aligned variant minimizes each
/// coupled column's contribution over a global ±1 and can only be smaller.
std::pair<double, double> epsilon_table_both(const SpinPair& sp);

/// Max-abs residuals of the operator multiplication table (commutators,
/// inner and cross products, and the scalar-operator closures), each
/// normalized by 1/(1 + ‖LHS‖_max) so thresholds are scale-free.
std::map<std::string, double> algebra_suite(const SpinPair& sp);

/// Largest cross-pole matrix element that violates the coupled-basis
/// selection rules (Δj = ±1 and the per-component Δm), measured after
/// rotating the dense operators with the recurrence change of basis.
double selection_rule_audit(const SpinPair& sp);

/// Noise-injection record: squared separation |c_k − c̃_k|² between clean
/// and perturbed walks, and the accumulated bound 2(1 − ∏cos|λ_p|).
/// Entry 0 corresponds to the shared initial state.
struct NoiseGrowth {
  std::vector<double> observed;
  std::vector<double> bound;
};

/// Re-run `path` with each step unitary replaced by U_k·exp(iΔ_k), where
/// Δ_k is a seeded random Hermitian matrix rescaled so its largest
/// eigenvalue magnitude equals `delta` (delta = 0 injects nothing).
NoiseGrowth noise_growth(const SpinPair& sp, const WalkPlan& path, double delta,
                         std::uint64_t seed);

/// Aggregated pass/fail report for one pair. Residual thresholds are pinned
/// in the implementation: table 1e−10, paths 1e−6, normalized identity and
/// selection-rule residuals 1e−12.
struct VerificationReport {
  SpinPair sp;
  double eps_table = 0.0;
  double eps_table_aligned = 0.0;
  std::map<std::string, std::vector<double>> eps_paths;  ///< "edge", "side"
  std::map<std::string, double> identity_residuals;      ///< + "selection-rules"
  bool pass = false;
};

/// Runs the table comparison, the two canonical verification paths (the
/// constant-j chain of plane descents to (jmax, −jmax), keyed "edge", and
/// the diagonal descent to (jmin, jmin), keyed "side", both from the top
/// corner), the algebra suite, and the selection-rule audit.
VerificationReport run_verification(const SpinPair& sp);

}  // namespace spinwalk
