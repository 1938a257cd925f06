// SPDX-License-Identifier: MIT
//
// Builders for every operator used by the walks, assembled in the encoded
// product basis: the scalar pair-exchange Λ, the cross-pole components A_z
// and A_±, two-plane projectors, the in-plane swap Hamiltonian M, the
// building-block combinations A_zJ_+ + h.c. and {Λ,A_+} + h.c., the pinched
// move Hamiltonians L and R, and the four-parameter family they belong to.
//
// Assembly path: dense single-spin matrices are lifted through the encoding
// permutation, multiplied, and symmetrized; the sparse wrapper prunes
// magnitudes below 1e-13. Hand-written stencils appear only in tests.

#pragma once

#include <memory>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "spinwalk/basis.hpp"
#include "spinwalk/elements.hpp"
#include "spinwalk/sparse.hpp"

namespace spinwalk {

/// Dense encoded-basis matrices of the elementary generators for one pair,
/// plus the four products every walk Hamiltonian is a linear combination of.
struct GeneratorSet {
  SpinPair sp;
  Eigen::MatrixXcd j1z, j1p, j1m;  ///< first spin components
  Eigen::MatrixXcd j2z, j2p, j2m;  ///< second spin components
  Eigen::MatrixXcd jz, jp, jm;     ///< total-spin components
  Eigen::MatrixXcd lambda;         ///< J1·J2
  Eigen::MatrixXcd az, ap, am;     ///< cross-pole components
  Eigen::MatrixXcd az_jp, jp_az;   ///< A_z J_+ and J_+ A_z
  Eigen::MatrixXcd lam_ap, ap_lam; ///< Λ A_+ and A_+ Λ
};

/// Memoized generator set for the pair (bounded cache, thread-safe).
std::shared_ptr<const GeneratorSet> generators(const SpinPair& sp);

/// Diagonal 0/1 projector onto the single plane m.
SparseHermitian build_projector(const SpinPair& sp, HalfInt m);

/// Diagonal 0/1 projector onto the two adjacent planes m and m−1 (the walk
/// window written with subscript m−1/2).
SparseHermitian build_projector_pair(const SpinPair& sp, HalfInt m);

/// In-plane swap Hamiltonian M = P(J_+ + J_−)P over the window (m, m−1).
SparseHermitian build_M(const SpinPair& sp, HalfInt m);

/// A_zJ_+ + h.c.; full matrix when m is absent, otherwise projected onto the
/// window (m, m−1).
SparseHermitian build_block_AzJp(const SpinPair& sp,
                                 std::optional<HalfInt> m = std::nullopt);

/// A_+ + h.c., assembled from A_± = ±i(J_{1z}J_{2±} − J_{1±}J_{2z}).
SparseHermitian build_block_Ap(const SpinPair& sp);

/// {Λ,A_+} + h.c.
SparseHermitian build_block_LambdaAp(const SpinPair& sp);

/// The (p, q) coefficients of J_+A_z and A_zJ_+ that pinch the window for
/// the down-left move (left = true, u = v = −1) or the up-right move
/// (left = false, u = v = +1) anchored at |j,m⟩.
std::pair<double, double> pinch_params(const SpinPair& sp, HalfInt j, HalfInt m, bool left);

/// Down-left move Hamiltonian driving |j,m⟩ ↔ |j−1,m−1⟩:
/// L = P[2j·A_zJ_+ − (j²+2jm+𝒮)A_+ − {Λ,A_+} + h.c.]P over window (m, m−1),
/// with 𝒮 = j1(j1+1) + j2(j2+1) − 1.
SparseHermitian build_L(const SpinPair& sp, HalfInt j, HalfInt m);

/// Up-right move Hamiltonian driving |j,m−1⟩ ↔ |j−1,m⟩:
/// R = P[2j·A_zJ_+ + (j²−2jm+𝒮)A_+ + {Λ,A_+} + h.c.]P over window (m, m−1).
SparseHermitian build_R(const SpinPair& sp, HalfInt j, HalfInt m);

/// Unprojected four-parameter family pJ_+A_z + qA_zJ_+ + uΛA_+ + vA_+Λ + h.c.
SparseHermitian build_general_H(const SpinPair& sp, Complex p, Complex q, Complex u, Complex v);

}  // namespace spinwalk
