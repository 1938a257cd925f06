// SPDX-License-Identifier: MIT
//
// Walk execution: turn a plan into state-vector evolution with per-step
// diagnostics, assemble full coefficient tables by walking to every coupled
// label, export per-step dense unitaries, and scan normalized pulse costs
// over all legal transitions.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinwalk/basis.hpp"
#include "spinwalk/cg.hpp"
#include "spinwalk/plan.hpp"
#include "spinwalk/sparse.hpp"

namespace spinwalk {

/// Per-step execution record.
struct StepDiagnostics {
  double tau = 0.0;       ///< t·‖H‖_max, the normalized pulse time
  double leakage = 0.0;   ///< post-step probability outside the step's two-plane window
  double norm_dev = 0.0;  ///< |1 − ‖ψ‖| after the step (and after clamping, if enabled)
};

/// Full history of one executed plan: states[0] is the initial state and
/// states[k+1] the state after step k, so states.size() == steps.size() + 1.
struct Trajectory {
  std::vector<StateVector> states;
  std::vector<StepDiagnostics> diags;
};

/// Execute a plan starting from its origin product eigenstate (top or bottom
/// corner of the pyramid, a single encoded basis vector). Each step builds
/// its window Hamiltonian, evolves for the step's π-pulse time, and applies
/// the step's phase fix. With clamp on, amplitudes outside the step's
/// two-plane window are zeroed without renormalization; norm_dev records the
/// resulting |1 − norm|. Throws std::invalid_argument if the plan does not
/// start at its origin eigenstate (e.g. a reversed plan) — use the overload
/// with an explicit initial state for those.
Trajectory execute(const WalkPlan& plan, bool clamp = false);

/// Execute from an explicit initial state (dimension sp.dim()).
Trajectory execute(const WalkPlan& plan, bool clamp, StateVector psi0);

/// Walk to every coupled label (canonical auto-origin plans, clamp off) and
/// read the coefficients off the final state vectors. Entry order, labels,
/// and structural slots match cg_full_table exactly, so the two tables can
/// be compared element by element.
CGTable cg_table_via_walks(const SpinPair& sp);

/// The dense per-step unitaries phase_fix·exp(−iHt), in step order. Their
/// ordered product (later steps multiplied on the left) maps the origin
/// basis state to the target coupled state.
std::vector<Eigen::MatrixXcd> decomposition(const WalkPlan& plan);

/// One box of the pulse-cost scan: the transition anchored at (j,m).
struct ScanPoint {
  StepKind kind;
  HalfInt j, m;      ///< operator anchor labels
  double t = 0.0;    ///< π-pulse time
  double hmax = 0.0; ///< ‖H‖_max (largest absolute matrix entry)
  double tau = 0.0;  ///< t·hmax
};

/// Normalized pulse cost τ for every legal transition of the given kind,
/// ordered by descending j, then descending m.
std::vector<ScanPoint> scaling_scan(const SpinPair& sp, StepKind kind);

}  // namespace spinwalk
