// SPDX-License-Identifier: MIT

#include "spinwalk/plan.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace spinwalk {

namespace {

[[noreturn]] void domain_fail(const std::string& msg) { throw std::domain_error(msg); }

std::string label_str(HalfInt j, HalfInt m) { return "|" + j.str() + "," + m.str() + ">"; }

HalfInt shift(HalfInt x, int by_twice) { return HalfInt::from_twice(x.twice() + by_twice); }

/// Departing/arriving pair of the move anchored at (j, m), forward direction.
void anchor_pair(StepKind kind, HalfInt j, HalfInt m, CoupledLabel& from, CoupledLabel& to) {
  switch (kind) {
    case StepKind::M:
      from = {j, m};
      to = {j, shift(m, -2)};
      return;
    case StepKind::L:
      from = {j, m};
      to = {shift(j, -2), shift(m, -2)};
      return;
    case StepKind::R:
      from = {j, shift(m, -2)};
      to = {shift(j, -2), m};
      return;
  }
  domain_fail("pulse_time: unknown step kind");
}

}  // namespace

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::M: return "M";
    case StepKind::L: return "L";
    case StepKind::R: return "R";
  }
  return "?";
}

CoupledLabel WalkPlan::start_label() const {
  return steps.empty() ? target : steps.front().from;
}

CoupledLabel WalkPlan::end_label() const {
  return steps.empty() ? target : steps.back().to;
}

CoupledLabel origin_label(const SpinPair& sp, Origin origin) {
  switch (origin) {
    case Origin::Top: return {sp.jmax(), sp.jmax()};
    case Origin::Bottom: return {sp.jmax(), HalfInt::from_twice(-sp.jmax().twice())};
    case Origin::Auto: break;
  }
  domain_fail("origin_label: origin must be resolved to top or bottom");
}

double pulse_time(StepKind kind, const SpinPair& sp, HalfInt j, HalfInt m) {
  CoupledLabel from, to;
  anchor_pair(kind, j, m, from, to);
  if (!sp.contains(from) || !sp.contains(to)) {
    domain_fail(std::string("pulse_time: ") + step_kind_name(kind) + " move " +
                label_str(from.j, from.m) + " <-> " + label_str(to.j, to.m) +
                " leaves the pyramid of (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }

  double denom = 0.0;
  switch (kind) {
    case StepKind::M:
      denom = 2.0 * j_ladder(j, m, -1);
      break;
    case StepKind::L: {
      const double jj = j.value();
      denom = (4.0 * jj * jj - 1.0) * alpha(sp, j) * j0(shift(j, -2), m);
      break;
    }
    case StepKind::R: {
      const double jj = j.value();
      denom = (4.0 * jj * jj - 1.0) * alpha(sp, j) * j0(j, HalfInt::from_twice(-m.twice()));
      break;
    }
  }
  if (denom <= 0.0) {
    domain_fail(std::string("pulse_time: ") + step_kind_name(kind) + " transition " +
                label_str(from.j, from.m) + " <-> " + label_str(to.j, to.m) +
                " is blocked (zero two-level coefficient)");
  }
  return std::numbers::pi / denom;
}

namespace {

WalkStep make_step(StepKind kind, const SpinPair& sp, HalfInt j, HalfInt m) {
  WalkStep s;
  s.kind = kind;
  anchor_pair(kind, j, m, s.from, s.to);
  s.t = pulse_time(kind, sp, j, m);
  s.phase_fix = kind == StepKind::M ? Complex{0.0, 1.0} : Complex{1.0, 0.0};
  return s;
}

}  // namespace

WalkPlan plan(const SpinPair& sp, const CoupledLabel& target, Origin origin) {
  if (!sp.contains(target)) {
    domain_fail("plan: target " + label_str(target.j, target.m) +
                " outside the pyramid of (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }
  if (origin == Origin::Auto) {
    origin = target.m.twice() >= 0 ? Origin::Top : Origin::Bottom;
  }

  WalkPlan p{sp, origin, target, {}, Complex{1.0, 0.0}};
  CoupledLabel cur = origin_label(sp, origin);
  if (origin == Origin::Top) {
    while (cur.j > target.j) {  // descend the right edge: (j,j) -> (j-1,j-1)
      p.steps.push_back(make_step(StepKind::L, sp, cur.j, cur.m));
      cur = p.steps.back().to;
    }
    while (cur.m > target.m) {  // swap down in m at fixed j
      p.steps.push_back(make_step(StepKind::M, sp, cur.j, cur.m));
      cur = p.steps.back().to;
    }
  } else {
    while (cur.j > target.j) {  // climb the left edge: (j,-j) -> (j-1,-j+1)
      p.steps.push_back(make_step(StepKind::R, sp, cur.j, shift(cur.m, 2)));
      cur = p.steps.back().to;
    }
    while (cur.m < target.m) {  // swap up in m at fixed j
      WalkStep s = make_step(StepKind::M, sp, cur.j, shift(cur.m, 2));
      std::swap(s.from, s.to);  // climbing traversal of the symmetric swap
      p.steps.push_back(s);
      cur = p.steps.back().to;
    }
  }
  return p;
}

WalkPlan reverse(const WalkPlan& p) {
  WalkPlan r{p.sp, p.origin, p.target, {}, Complex{1.0, 0.0}};
  r.steps.reserve(p.steps.size());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    WalkStep s = *it;
    std::swap(s.from, s.to);
    r.steps.push_back(s);
  }
  // Swaps transfer with +1 both ways (the i·U convention); the pinched moves
  // pick up −1 when traversed against their designated direction, i.e. when
  // departing the lower-j member of the pair.
  for (const auto& s : r.steps) {
    if (s.kind != StepKind::M && s.from.j < s.to.j) {
      r.global_phase = -r.global_phase;
    }
  }
  return r;
}

}  // namespace spinwalk
