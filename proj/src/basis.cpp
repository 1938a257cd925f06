// SPDX-License-Identifier: MIT

#include "spinwalk/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinwalk {

namespace {

[[noreturn]] void domain_fail(const std::string& what) { throw std::domain_error(what); }

}  // namespace

SpinPair::SpinPair(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
  if (j2 < HalfInt(0)) {
    throw std::invalid_argument("SpinPair: j2 must be nonnegative, got j2=" + j2.str());
  }
  if (j1 < j2) {
    throw std::invalid_argument("SpinPair: requires j1 >= j2, got j1=" + j1.str() +
                                ", j2=" + j2.str() + " (inputs are not swapped)");
  }
}

std::int64_t SpinPair::line_of(HalfInt m) const {
  const std::int64_t diff = jmax().twice() - m.twice();
  if (diff % 2 != 0) {
    domain_fail("line_of: m=" + m.str() + " has wrong parity for jmax=" + jmax().str());
  }
  return diff / 2;
}

HalfInt SpinPair::m_of_line(std::int64_t d) const {
  return HalfInt::from_twice(jmax().twice() - 2 * d);
}

std::int64_t SpinPair::plane_count(HalfInt m) const {
  const HalfInt am = m.abs();
  if (am > jmax()) domain_fail("plane_count: |m|=" + am.str() + " exceeds jmax=" + jmax().str());
  if (am <= jmin()) return d2();
  // j1 + j2 + 1 − |m|, an exact integer because m and jmax share parity.
  return (jmax().twice() - am.twice()) / 2 + 1;
}

std::int64_t SpinPair::rank_before_line(std::int64_t d) const {
  const std::int64_t lines = num_planes();  // 2·jmax + 1
  if (d < 0 || d > lines) {
    domain_fail("rank_before_line: line " + std::to_string(d) + " outside [0, " +
                std::to_string(lines) + "]");
  }
  // Three regimes: the widening top cap (d ≤ 2j2+1), the constant-width belt,
  // and the narrowing bottom cap (d ≥ 2j1+1). The branches agree where they
  // meet.
  if (d <= d2()) return d * (d + 1) / 2;
  if (d <= j1_.twice()) {
    // (2j2+1)·(d − j2); the product j2·(2j2+1) is a whole number.
    return d2() * d - j2_.twice() * (j2_.twice() + 1) / 2;
  }
  const std::int64_t rem = lines - d;  // lines remaining at and below line d
  return dim() - rem * (rem + 1) / 2;
}

HalfInt SpinPair::m2_max(HalfInt m) const {
  const HalfInt cap = j1_ + m;  // m1 = m − m2 ≥ −j1 bounds m2 from above
  return cap < j2_ ? cap : j2_;
}

bool SpinPair::contains(const ProductLabel& p) const {
  return p.m1.abs() <= j1_ && p.m2.abs() <= j2_ &&
         (p.m1.twice() - j1_.twice()) % 2 == 0 && (p.m2.twice() - j2_.twice()) % 2 == 0;
}

bool SpinPair::contains(const CoupledLabel& c) const {
  return c.j >= jmin() && c.j <= jmax() && c.m.abs() <= c.j &&
         (c.j.twice() - jmax().twice()) % 2 == 0;
}

PyramidDims pyramid_dims(const SpinPair& sp) {
  PyramidDims out;
  out.dim = sp.dim();
  out.jmax = sp.jmax();
  out.jmin = sp.jmin();
  out.plane_counts.reserve(static_cast<std::size_t>(sp.num_planes()));
  for (std::int64_t d = 0; d < sp.num_planes(); ++d) {
    out.plane_counts.push_back(sp.plane_count(sp.m_of_line(d)));
  }
  return out;
}

BasisIndex encode(const SpinPair& sp, const ProductLabel& p) {
  if (!sp.contains(p)) {
    domain_fail("encode: label (" + p.m1.str() + "," + p.m2.str() +
                ") outside pyramid of (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }
  const HalfInt m = p.m1 + p.m2;
  const std::int64_t d = sp.line_of(m);
  const std::int64_t k = (sp.m2_max(m).twice() - p.m2.twice()) / 2;
  return sp.rank_before_line(d) + k;
}

ProductLabel decode(const SpinPair& sp, BasisIndex l) {
  if (l < 0 || l >= sp.dim()) {
    domain_fail("decode: index " + std::to_string(l) + " outside [0, " +
                std::to_string(sp.dim()) + ")");
  }
  // Closed-form inverse of the rank function, one expression per regime.
  const double b = static_cast<double>(l);
  const std::int64_t top_cut = (sp.j2().twice() + 2) * (sp.j2().twice() + 1) / 2;  // (j2+1)(2j2+1)
  const std::int64_t bot_cut =
      (2 * sp.j1().twice() + 2 - sp.j2().twice()) * (sp.j2().twice() + 1) / 2;  // (2j1+1−j2)(2j2+1)
  std::int64_t d = 0;
  if (l <= top_cut) {
    d = static_cast<std::int64_t>(std::floor(-0.5 + std::sqrt(0.25 + 2.0 * b)));
  } else if (l >= bot_cut) {
    const double rem = static_cast<double>(sp.dim() - l);
    d = static_cast<std::int64_t>(
        std::floor(static_cast<double>(sp.num_planes()) + 0.5 - std::sqrt(0.25 + 2.0 * rem)));
  } else {
    // Belt regime: d = floor(j2 + l/(2j2+1)), evaluated in integers.
    d = (sp.j2().twice() * (sp.j2().twice() + 1) / 2 + l) / (sp.j2().twice() + 1);
  }
  // Repair any off-by-one from the floating-point square roots; the exact
  // rank function is the referee.
  while (d > 0 && l < sp.rank_before_line(d)) --d;
  while (d + 1 < sp.num_planes() && l >= sp.rank_before_line(d + 1)) ++d;

  const std::int64_t k = l - sp.rank_before_line(d);
  const HalfInt m = sp.m_of_line(d);
  const HalfInt m2 = sp.m2_max(m) - HalfInt(static_cast<int>(k));
  return ProductLabel{m - m2, m2};
}

std::vector<BasisIndex> enumerate_m_plane(const SpinPair& sp, HalfInt m) {
  if (m.abs() > sp.jmax()) {
    domain_fail("enumerate_m_plane: |m|=" + m.abs().str() + " exceeds jmax=" + sp.jmax().str());
  }
  const std::int64_t d = sp.line_of(m);
  const std::int64_t base = sp.rank_before_line(d);
  const std::int64_t count = sp.plane_count(m);
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) out.push_back(base + k);
  return out;
}

std::vector<ProductLabel> plane_labels(const SpinPair& sp, HalfInt m) {
  if (m.abs() > sp.jmax()) {
    domain_fail("plane_labels: |m|=" + m.abs().str() + " exceeds jmax=" + sp.jmax().str());
  }
  const std::int64_t count = sp.plane_count(m);
  std::vector<ProductLabel> out;
  out.reserve(static_cast<std::size_t>(count));
  HalfInt m2 = sp.m2_max(m);
  for (std::int64_t k = 0; k < count; ++k, m2 -= HalfInt(1)) out.push_back({m - m2, m2});
  return out;
}

std::vector<CoupledLabel> coupled_labels(const SpinPair& sp) {
  std::vector<CoupledLabel> out;
  out.reserve(static_cast<std::size_t>(sp.dim()));
  for (std::int64_t d = 0; d < sp.num_planes(); ++d) {
    const HalfInt m = sp.m_of_line(d);
    for (HalfInt j = sp.jmax(); j >= sp.jmin() && j >= m.abs(); j -= HalfInt(1)) {
      out.push_back({j, m});
    }
  }
  return out;
}

std::int64_t coupled_index(const SpinPair& sp, const CoupledLabel& c) {
  if (!sp.contains(c)) {
    domain_fail("coupled_index: label |" + c.j.str() + "," + c.m.str() +
                "⟩ outside pyramid of (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }
  // Within a plane the admissible j descend from jmax, so the offset is
  // jmax − j; plane sizes match the product-side ranks.
  return sp.rank_before_line(sp.line_of(c.m)) + (sp.jmax().twice() - c.j.twice()) / 2;
}

}  // namespace spinwalk
