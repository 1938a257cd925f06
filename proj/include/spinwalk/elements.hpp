// SPDX-License-Identifier: MIT
//
// Closed-form scalar matrix elements of the coupled-spin operators, and the
// coupled-basis actions assembled from them. Everything here is an explicit
// formula; the matrix builders in operators.hpp must reproduce these numbers,
// which is the core cross-check of the library.

#pragma once

#include <complex>
#include <vector>

#include "spinwalk/basis.hpp"

namespace spinwalk {

using Complex = std::complex<double>;

/// Ladder element 𝒥_j^±(m) = √((j+1±m)(j∓m)) of a single multiplet.
/// sign = +1 raises, −1 lowers. Requires |m| ≤ j.
double j_ladder(HalfInt j, HalfInt m, int sign);

/// Pair-exchange eigenvalue λ_j = (j(j+1) − j1(j1+1) − j2(j2+1))/2 of the
/// scalar operator J1·J2 on the multiplet |j,·⟩. Requires jmin ≤ j ≤ jmax.
double lambda_eig(const SpinPair& sp, HalfInt j);

/// ζ_j^m = √(j² − m²); vanishes at m = ±j. Requires |m| ≤ j.
double zeta(HalfInt j, HalfInt m);

/// Off-diagonal j-dependence α_j = √([(j1+j2+1)²−j²][j²−(j1−j2)²]/(4j²−1))
/// of the cross-pole operator. Returns exactly 0 at the boundaries j = jmin
/// and j = jmax+1 (moves beyond them are forbidden); the j = 1/2 case, which
/// makes the raw ratio 0/0, can only occur at jmin and is covered by the
/// boundary zero, so no indeterminate expression is ever evaluated.
/// Requires jmin ≤ j ≤ jmax+1.
double alpha(const SpinPair& sp, HalfInt j);

/// Diagonal-move element 𝒥_j^0(m) = √((j+1+m)(j+m)), with the shift identity
/// 𝒥_{j+l}^0(m) = 𝒥_j^0(m+l). Requires j+m ≥ −1 (integer), where the
/// radicand is nonnegative.
double j0(HalfInt j, HalfInt m);

/// Operator kinds with closed-form coupled-basis actions.
enum class OpKind { Az, Ap, Am, Sz, Sp, Sm, M, L, R, Lambda };

/// One operator application in the coupled basis: source |j,m⟩ and the list
/// of (target, coefficient) terms. Targets always satisfy the operator's
/// selection rules; forbidden or zero-coefficient targets are omitted.
struct CoupledAction {
  CoupledLabel source;
  std::vector<std::pair<CoupledLabel, Complex>> terms;
};

/// Closed-form action of the chosen operator on |src⟩.
///
/// For the walk kinds the source fixes the two-plane window:
///  - M: src = |j,m⟩ is the upper state; the term is 𝒥_j^−(m)|j,m−1⟩.
///  - L: src = |j,m⟩ is the departing state; the term is
///       (i/2)(4j²−1)·α_j·𝒥_{j−1}^0(m)·|j−1,m−1⟩.
///  - R: src = |j,m−1⟩ is the departing state (the walk window is anchored at
///       m = src.m+1); the term is (i/2)(4j²−1)·α_j·𝒥_j^0(−m)·|j−1,m⟩.
/// Throws std::domain_error when src is outside the pyramid.
CoupledAction coupled_action(OpKind kind, const SpinPair& sp, const CoupledLabel& src);

}  // namespace spinwalk
