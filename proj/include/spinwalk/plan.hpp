// SPDX-License-Identifier: MIT
//
// Walk planning: turn a target coupled state |j,m⟩ into an ordered sequence
// of two-level moves, each carrying its π-pulse time and phase fix.
//
// Canonical routes start at one of the two product eigenstates: the top state
// ‖j1,j2⟫ = |jmax,jmax⟩ or the bottom state ‖−j1,−j2⟫ = |jmax,−jmax⟩. From
// the top, (jmax−j) down-left moves descend the right edge to (j,j), then
// (j−m) swaps lower m. From the bottom, mirrored up-right moves reach (j,−j)
// and swaps raise m. Plans are pure data; execution lives in the engine.

#pragma once

#include <vector>

#include "spinwalk/basis.hpp"
#include "spinwalk/elements.hpp"

namespace spinwalk {

/// Two-level move kinds: in-plane swap (M), down-left (L), up-right (R).
enum class StepKind { M, L, R };

const char* step_kind_name(StepKind kind);

/// Where a canonical route starts. Auto picks Top for targets with m ≥ 0 and
/// Bottom otherwise; constructed plans always store a resolved origin.
enum class Origin { Top, Bottom, Auto };

/// One two-level move. `from`/`to` are the departing and arriving coupled
/// labels; the Hamiltonian anchor is recoverable as (max j, max m) of the
/// two. phase_fix multiplies the evolved state after the pulse (i for swaps,
/// 1 for the pinched moves) so that a forward traversal carries coefficient
/// exactly +1.
struct WalkStep {
  StepKind kind;
  CoupledLabel from;
  CoupledLabel to;
  double t;
  Complex phase_fix;
};

/// An ordered route between an origin eigenstate and a target |j,m⟩.
/// Forward plans chain origin → target; reversed plans chain target → origin
/// with the same origin/target fields. global_phase is the coefficient picked
/// up by chaining every step's two-level action from the start state: +1 for
/// forward plans, (−1)^(#L+#R) after reversal.
struct WalkPlan {
  SpinPair sp;
  Origin origin;
  CoupledLabel target;
  std::vector<WalkStep> steps;
  Complex global_phase;

  /// Coupled label of the state the plan's step chain starts from / ends at.
  CoupledLabel start_label() const;
  CoupledLabel end_label() const;
};

/// Coupled label of the chosen origin eigenstate: |jmax, ±jmax⟩.
/// origin must be resolved (not Auto).
CoupledLabel origin_label(const SpinPair& sp, Origin origin);

/// π-pulse time of one move, anchored at the operator labels (j, m): window
/// (m, m−1); the designated pair is |j,m⟩ ↔ |j,m−1⟩ for M, |j,m⟩ ↔ |j−1,m−1⟩
/// for L, and |j,m−1⟩ ↔ |j−1,m⟩ for R.
///   t_M = π / (2·J⁻_j(m))
///   t_L = π / ((4j²−1)·α_j·J⁰_{j−1}(m))
///   t_R = π / ((4j²−1)·α_j·J⁰_j(−m))
/// Throws std::domain_error when the move is forbidden (a pair label leaves
/// the pyramid or the two-level coefficient vanishes), naming the transition.
double pulse_time(StepKind kind, const SpinPair& sp, HalfInt j, HalfInt m);

/// Canonical route to |target⟩ from the chosen origin eigenstate.
/// Throws std::domain_error when the target lies outside the pyramid.
WalkPlan plan(const SpinPair& sp, const CoupledLabel& target, Origin origin = Origin::Auto);

/// Same route traversed backwards: steps reversed with from/to swapped, pulse
/// times unchanged. Chaining the reversed steps from the old end state
/// returns to the old start state up to global_phase.
WalkPlan reverse(const WalkPlan& p);

}  // namespace spinwalk
