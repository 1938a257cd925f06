// SPDX-License-Identifier: MIT

#include "spinwalk/elements.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinwalk {

namespace {

constexpr Complex kHalfI{0.0, 0.5};

[[noreturn]] void domain_fail(const std::string& what) { throw std::domain_error(what); }

void require_in_multiplet(const char* who, HalfInt j, HalfInt m) {
  if (m.abs() > j || (j.twice() - m.twice()) % 2 != 0) {
    domain_fail(std::string(who) + ": m=" + m.str() + " not in multiplet j=" + j.str());
  }
}

void require_coupled_j(const char* who, const SpinPair& sp, HalfInt j, HalfInt hi) {
  if (j < sp.jmin() || j > hi || (j.twice() - sp.jmax().twice()) % 2 != 0) {
    domain_fail(std::string(who) + ": j=" + j.str() + " outside [" + sp.jmin().str() + ", " +
                hi.str() + "] for (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }
}

}  // namespace

double j_ladder(HalfInt j, HalfInt m, int sign) {
  require_in_multiplet("j_ladder", j, m);
  // (j+1±m)(j∓m) in quarters of doubled values.
  const double a = 0.5 * static_cast<double>(j.twice() + 2 + sign * m.twice());
  const double b = 0.5 * static_cast<double>(j.twice() - sign * m.twice());
  return std::sqrt(a * b);
}

double lambda_eig(const SpinPair& sp, HalfInt j) {
  require_coupled_j("lambda_eig", sp, j, sp.jmax());
  auto casimir = [](HalfInt x) {
    return 0.25 * static_cast<double>(x.twice()) * static_cast<double>(x.twice() + 2);
  };
  return 0.5 * (casimir(j) - casimir(sp.j1()) - casimir(sp.j2()));
}

double zeta(HalfInt j, HalfInt m) {
  require_in_multiplet("zeta", j, m);
  const double a = 0.5 * static_cast<double>(j.twice() + m.twice());
  const double b = 0.5 * static_cast<double>(j.twice() - m.twice());
  return std::sqrt(a * b);
}

double alpha(const SpinPair& sp, HalfInt j) {
  require_coupled_j("alpha", sp, j, sp.jmax() + HalfInt(1));
  // Moves below jmin or above jmax are forbidden; the matching coefficients
  // are exactly zero. This also covers j = 1/2 (only possible when
  // jmin = 1/2), where the raw ratio would be indeterminate.
  if (j == sp.jmin() || j == sp.jmax() + HalfInt(1)) return 0.0;
  const double jj = j.value();
  const double top = sp.jmax().value() + 1.0;
  const double bot = sp.jmin().value();
  const double radicand =
      (top * top - jj * jj) * (jj * jj - bot * bot) / (4.0 * jj * jj - 1.0);
  if (radicand < 0.0) {
    throw std::logic_error("alpha: negative radicand at j=" + j.str() + " for (" +
                           sp.j1().str() + "," + sp.j2().str() + ")");
  }
  return std::sqrt(radicand);
}

double j0(HalfInt j, HalfInt m) {
  const std::int64_t twice_sum = j.twice() + m.twice();
  if (twice_sum % 2 != 0 || twice_sum < -2) {
    domain_fail("j0: requires integer j+m >= -1, got j=" + j.str() + ", m=" + m.str());
  }
  const double a = 0.5 * static_cast<double>(twice_sum + 2);
  const double b = 0.5 * static_cast<double>(twice_sum);
  const double radicand = a * b;
  if (radicand < 0.0) {
    domain_fail("j0: negative radicand at j=" + j.str() + ", m=" + m.str());
  }
  return std::sqrt(radicand);
}

CoupledAction coupled_action(OpKind kind, const SpinPair& sp, const CoupledLabel& src) {
  if (!sp.contains(src)) {
    domain_fail("coupled_action: source |" + src.j.str() + "," + src.m.str() +
                "⟩ outside pyramid of (" + sp.j1().str() + "," + sp.j2().str() + ")");
  }
  const HalfInt j = src.j;
  const HalfInt m = src.m;
  const HalfInt one(1);
  CoupledAction act{src, {}};
  auto emit = [&](CoupledLabel target, Complex coeff) {
    if (sp.contains(target) && std::abs(coeff) > 0.0) act.terms.emplace_back(target, coeff);
  };
  // The j−1 and j+1 structural factors below vanish automatically on
  // forbidden moves; emit() additionally drops targets outside the pyramid.
  switch (kind) {
    case OpKind::Az: {
      if (j > sp.jmin()) emit({j - one, m}, kHalfI * zeta(j, m) * alpha(sp, j));
      if (j < sp.jmax()) emit({j + one, m}, -kHalfI * zeta(j + one, m) * alpha(sp, j + one));
      break;
    }
    case OpKind::Ap: {
      if (j > sp.jmin()) emit({j - one, m + one}, kHalfI * alpha(sp, j) * j0(j - one, -m));
      if (j < sp.jmax()) emit({j + one, m + one}, kHalfI * alpha(sp, j + one) * j0(j + one, m));
      break;
    }
    case OpKind::Am: {
      if (j > sp.jmin()) emit({j - one, m - one}, -kHalfI * alpha(sp, j) * j0(j - one, m));
      if (j < sp.jmax()) emit({j + one, m - one}, -kHalfI * alpha(sp, j + one) * j0(j + one, -m));
      break;
    }
    case OpKind::Sz: {
      if (j > sp.jmin()) emit({j - one, m}, -0.5 * j.value() * alpha(sp, j) * zeta(j, m));
      if (j < sp.jmax()) {
        emit({j + one, m}, -0.5 * (j.value() + 1.0) * alpha(sp, j + one) * zeta(j + one, m));
      }
      break;
    }
    case OpKind::Sp: {
      if (j > sp.jmin()) {
        emit({j - one, m + one}, -0.5 * j.value() * alpha(sp, j) * j0(j - one, -m));
      }
      if (j < sp.jmax()) {
        emit({j + one, m + one}, 0.5 * (j.value() + 1.0) * alpha(sp, j + one) * j0(j + one, m));
      }
      break;
    }
    case OpKind::Sm: {
      if (j > sp.jmin()) {
        emit({j - one, m - one}, 0.5 * j.value() * alpha(sp, j) * j0(j - one, m));
      }
      if (j < sp.jmax()) {
        emit({j + one, m - one}, -0.5 * (j.value() + 1.0) * alpha(sp, j + one) * j0(j + one, -m));
      }
      break;
    }
    case OpKind::Lambda: {
      emit({j, m}, lambda_eig(sp, j));
      break;
    }
    case OpKind::M: {
      // In-plane lowering |j,m⟩ → |j,m−1⟩, acting on all j in parallel.
      emit({j, m - one}, j_ladder(j, m, -1));
      break;
    }
    case OpKind::L: {
      // Down-left move |j,m⟩ → |j−1,m−1⟩ of the left-pinched walk.
      if (j > sp.jmin()) {
        const double lam = (4.0 * j.value() * j.value() - 1.0) * alpha(sp, j) * j0(j - one, m);
        emit({j - one, m - one}, kHalfI * lam);
      }
      break;
    }
    case OpKind::R: {
      // Up-right move |j,m−1⟩ → |j−1,m⟩; src is the departing state, so the
      // walk window is anchored at mw = src.m + 1 with jw = src.j.
      const HalfInt mw = m + one;
      if (j > sp.jmin()) {
        const double lam = (4.0 * j.value() * j.value() - 1.0) * alpha(sp, j) * j0(j, -mw);
        emit({j - one, mw}, kHalfI * lam);
      }
      break;
    }
  }
  return act;
}

}  // namespace spinwalk
