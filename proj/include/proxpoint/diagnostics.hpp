#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <optional>
#include <vector>

#include "proxpoint/algorithms.hpp"
#include "proxpoint/operators.hpp"
#include "proxpoint/rng.hpp"
#include "proxpoint/space.hpp"

namespace proxpoint {

// ---------------------------------------------------------------------------
// Resolvent limit curve: |J_lambda(u) - P_F(u)| over increasing lambda
// ---------------------------------------------------------------------------

template <typename Scalar>
struct LimitCurve {
  struct Point {
    Scalar lambda;
    Scalar distance;
  };
  std::vector<Point> points;

  Scalar first_distance() const { return points.front().distance; }
  Scalar last_distance() const { return points.back().distance; }
};

template <typename Scalar>
LimitCurve<Scalar> resolvent_limit_curve(const Operator<Scalar>& op,
                                         const std::type_identity_t<VecX<Scalar>>& u,
                                         const std::vector<Scalar>& lambdas,
                                         Scalar inner_tol = Scalar(1e-12)) {
  if (lambdas.empty()) throw ParameterError("resolvent_limit_curve: empty lambda list");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > Scalar(0)))
      throw ParameterError("resolvent_limit_curve: lambdas must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      throw ParameterError("resolvent_limit_curve: lambdas must be strictly increasing");
  }
  VecX<Scalar> pfu = zero_projection(op, u);  // throws NoSolutionError when F is empty
  LimitCurve<Scalar> curve;
  curve.points.reserve(lambdas.size());
  for (Scalar lam : lambdas) {
    VecX<Scalar> j = resolvent(op, lam, u, inner_tol);
    curve.points.push_back({lam, (j - pfu).norm()});
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Boundedness certificate: |x_n| <= |x_start| c^(n-start) + c1/(1-c)
// ---------------------------------------------------------------------------

template <typename Scalar>
struct BoundednessCertificate {
  Scalar c = Scalar(0);
  Scalar c1 = Scalar(0);
  bool holds = false;
  std::optional<Index> first_violation;
};

/// Checks the geometric bound with slack 1e-9 over every recorded index at or
/// after `start` (the trace prefix where |alpha_n| may exceed c is skipped by
/// passing the first admissible index).
template <typename Scalar>
BoundednessCertificate<Scalar> check_boundedness(const Trace<Scalar>& tr, Scalar c, Scalar c1,
                                                 Index start = 0) {
  if (!(c >= Scalar(0) && c < Scalar(1)))
    throw ParameterError("check_boundedness: c must lie in [0,1)");
  if (!(c1 > Scalar(0))) throw ParameterError("check_boundedness: c1 must be positive");
  if (tr.records.empty()) throw ParameterError("check_boundedness: empty trace");
  if (start < 0 || start >= static_cast<Index>(tr.records.size()))
    throw ParameterError("check_boundedness: start index out of range");

  BoundednessCertificate<Scalar> cert;
  cert.c = c;
  cert.c1 = c1;
  cert.holds = true;
  const Scalar x0n = tr.records[static_cast<size_t>(start)].x.norm();
  const Scalar tail = c1 / (Scalar(1) - c);
  Scalar cpow = Scalar(1);
  for (size_t k = static_cast<size_t>(start); k < tr.records.size(); ++k) {
    Scalar bound = x0n * cpow + tail + Scalar(1e-9);
    if (tr.records[k].x.norm() > bound) {
      cert.holds = false;
      cert.first_violation = tr.records[k].n;
      return cert;
    }
    cpow *= c;
  }
  return cert;
}

template <typename Scalar>
struct BoundednessConstants {
  Scalar c = Scalar(0);
  Scalar c1 = Scalar(0);
  Index start = 0;
};

/// Assembles (c, c1) from run data following the contraction estimate behind
/// the boundedness certificate: start at the first index from which
/// sup |alpha_n| < 1, take c as that supremum, and
/// c1 = sup|u_n| + sup(|alpha_n| |e_n|) + |p| with p a zero-set point.
template <typename Scalar>
BoundednessConstants<Scalar> boundedness_constants(const Trace<Scalar>& tr,
                                                   const std::type_identity_t<VecX<Scalar>>& p) {
  if (tr.records.empty()) throw ParameterError("boundedness_constants: empty trace");
  const auto& recs = tr.records;
  Index start = -1;
  Scalar c = Scalar(0);
  for (size_t s = 0; s < recs.size(); ++s) {
    Scalar m = Scalar(0);
    for (size_t k = s; k < recs.size(); ++k) m = std::max(m, std::abs(recs[k].alpha_or_lambda));
    if (m < Scalar(1)) {
      start = static_cast<Index>(s);
      c = m;
      break;
    }
  }
  if (start < 0)
    throw ParameterError("boundedness_constants: |alpha_n| never drops below 1");
  Scalar sup_u = Scalar(0), sup_ae = Scalar(0);
  for (size_t k = static_cast<size_t>(start); k < recs.size(); ++k) {
    sup_u = std::max(sup_u, recs[k].u_norm);
    sup_ae = std::max(sup_ae, std::abs(recs[k].alpha_or_lambda) * recs[k].e_norm);
  }
  return {c, sup_u + sup_ae + p.norm(), start};
}

// ---------------------------------------------------------------------------
// Nonexpansiveness probe
// ---------------------------------------------------------------------------

template <typename Scalar>
struct NonexpansiveReport {
  int trials = 0;
  Scalar max_ratio = Scalar(0);
  Scalar beta_at_max = Scalar(0);
  bool passed = false;
};

/// Samples (x, y, beta) triples and measures |J_b(x) - J_b(y)| / |x - y|.
/// The pair separation is kept in [1, 4] so the measured ratio is not
/// dominated by subtraction rounding at large beta. Passes when the maximum
/// ratio stays within 1 + 1e-12.
template <typename Scalar>
NonexpansiveReport<Scalar> probe_nonexpansive(const Operator<Scalar>& op, int trials,
                                              std::uint64_t seed, Scalar beta_lo = Scalar(1e-3),
                                              Scalar beta_hi = Scalar(1e3)) {
  if (trials < 1) throw ParameterError("probe_nonexpansive: trials must be >= 1");
  NonexpansiveReport<Scalar> rep;
  rep.trials = trials;
  const Index d = op.dim();
  for (int t = 0; t < trials; ++t) {
    rng::Stream rs(seed, static_cast<std::uint64_t>(t));
    VecX<Scalar> x = (Scalar(2) * rs.normal_vec(d).template cast<Scalar>()).eval();
    VecX<Scalar> dir = rs.normal_vec(d).template cast<Scalar>();
    Scalar dn = dir.norm();
    if (dn == Scalar(0)) {
      dir = VecX<Scalar>::Unit(d, 0);
      dn = Scalar(1);
    }
    Scalar sep = static_cast<Scalar>(rs.log_uniform(1.0, 4.0));
    VecX<Scalar> y = x + (sep / dn) * dir;
    Scalar beta = static_cast<Scalar>(
        rs.log_uniform(static_cast<double>(beta_lo), static_cast<double>(beta_hi)));
    Scalar denom = (x - y).norm();
    if (denom == Scalar(0)) continue;  // excluded by construction, guard anyway
    Scalar ratio = (resolvent(op, beta, x) - resolvent(op, beta, y)).norm() / denom;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.beta_at_max = beta;
    }
  }
  rep.passed = rep.max_ratio <= Scalar(1) + Scalar(1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// Projection variational inequality
// ---------------------------------------------------------------------------

/// True iff inner(u - p, q - p) <= 1e-8 for every sample q; the defining
/// inequality of the metric projection p = P_F(u).
template <typename Scalar>
bool check_projection_vi(const std::type_identity_t<VecX<Scalar>>& u,
                         const std::type_identity_t<VecX<Scalar>>& p,
                         const std::vector<VecX<Scalar>>& samples) {
  for (const auto& q : samples) {
    if (inner((u - p).eval(), (q - p).eval()) > Scalar(1e-8)) return false;
  }
  return true;
}

}  // namespace proxpoint
