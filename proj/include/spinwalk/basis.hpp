// SPDX-License-Identifier: MIT
//
// Pyramid geometry and basis bookkeeping for two coupled angular momenta.
//
// Product states ‖m1,m2⟫ live on a diamond-shaped lattice ("pyramid") sliced
// into planes of constant m = m1+m2. States are ranked plane by plane from
// the top (m = j1+j2) down, and within a plane by descending m2, producing a
// contiguous index l ∈ [0, D). The rank function B(d) counts all states on
// planes above line d; both encode and decode evaluate it in exact integer
// arithmetic on doubled quantum numbers.

#pragma once

#include <cstdint>
#include <vector>

#include "spinwalk/half_integer.hpp"

namespace spinwalk {

/// Contiguous basis index, 0 ≤ l < D.
using BasisIndex = std::int64_t;

/// Product-basis label ‖m1,m2⟫.
struct ProductLabel {
  HalfInt m1;
  HalfInt m2;
  friend constexpr bool operator==(const ProductLabel&, const ProductLabel&) = default;
};

/// Coupled-basis label |j,m⟩ (total angular momentum and its projection).
struct CoupledLabel {
  HalfInt j;
  HalfInt m;
  friend constexpr bool operator==(const CoupledLabel&, const CoupledLabel&) = default;
};

/// An ordered pair of constituent spins with j1 ≥ j2 ≥ 0.
///
/// Inputs with j1 < j2 are rejected rather than swapped: swapping would
/// silently change the basis encoding.
class SpinPair {
 public:
  SpinPair(HalfInt j1, HalfInt j2);

  HalfInt j1() const { return j1_; }
  HalfInt j2() const { return j2_; }
  HalfInt jmax() const { return j1_ + j2_; }
  HalfInt jmin() const { return j1_ - j2_; }

  /// Constituent multiplet sizes 2j+1 and the total dimension D.
  std::int64_t d1() const { return j1_.twice() + 1; }
  std::int64_t d2() const { return j2_.twice() + 1; }
  std::int64_t dim() const { return d1() * d2(); }

  /// Number of m-planes, 2·jmax + 1.
  std::int64_t num_planes() const { return jmax().twice() + 1; }

  /// Line index d = jmax − m of the plane containing projection m.
  /// m must have the same parity as jmax.
  std::int64_t line_of(HalfInt m) const;

  /// Projection m of line d.
  HalfInt m_of_line(std::int64_t d) const;

  /// Number of product states on the plane of projection m:
  /// 2·j2+1 inside the belt |m| ≤ jmin, j1+j2+1−|m| outside it.
  std::int64_t plane_count(HalfInt m) const;

  /// Rank B(d): number of states on planes strictly above line d.
  /// Defined for 0 ≤ d ≤ 2·jmax+1, nondecreasing, B(0)=0, B(2·jmax+1)=D.
  std::int64_t rank_before_line(std::int64_t d) const;

  /// Largest m2 on the plane of projection m: min(j2, j1+m).
  HalfInt m2_max(HalfInt m) const;

  bool contains(const ProductLabel& p) const;
  bool contains(const CoupledLabel& c) const;

  friend constexpr bool operator==(const SpinPair&, const SpinPair&) = default;

 private:
  HalfInt j1_;
  HalfInt j2_;
};

/// Dimensions summary returned by pyramid_dims.
struct PyramidDims {
  std::int64_t dim;
  HalfInt jmax;
  HalfInt jmin;
  /// plane_counts[d] = number of states on line d (top line first).
  std::vector<std::int64_t> plane_counts;
};

PyramidDims pyramid_dims(const SpinPair& sp);

/// Rank a product label into its contiguous basis index.
/// Throws std::domain_error for labels outside the pyramid.
BasisIndex encode(const SpinPair& sp, const ProductLabel& p);

/// Invert encode. Selects the line via the closed-form quadratic inverse of
/// the rank function and repairs any floating-point boundary slip with exact
/// integer checks; throws std::domain_error for l outside [0, D).
ProductLabel decode(const SpinPair& sp, BasisIndex l);

/// Indices of all product states with m1+m2 = m, ordered by descending m2
/// (k = 0..M−1). Throws std::domain_error when |m| > jmax.
std::vector<BasisIndex> enumerate_m_plane(const SpinPair& sp, HalfInt m);

/// Product labels of the same plane in the same k order.
std::vector<ProductLabel> plane_labels(const SpinPair& sp, HalfInt m);

/// All coupled labels |j,m⟩ ordered by plane (descending m) and, within a
/// plane, by descending j. This is the fixed coupled-basis column order.
std::vector<CoupledLabel> coupled_labels(const SpinPair& sp);

/// Position of |j,m⟩ in the coupled_labels order.
std::int64_t coupled_index(const SpinPair& sp, const CoupledLabel& c);

}  // namespace spinwalk
