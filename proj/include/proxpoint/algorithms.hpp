#pragma once

#include <cmath>
#include <limits>
#include <type_traits>
#include <string>
#include <vector>

#include "proxpoint/errors.hpp"
#include "proxpoint/operators.hpp"
#include "proxpoint/schedules.hpp"
#include "proxpoint/space.hpp"

namespace proxpoint {

// Naming note: the per-record `residual_norm` is the norm of the graph
// residual z_n with z_n in A(x_n), reconstructed from the resolvent argument.
// The observed-mode iterates (simulate_observed) are a different sequence
// that also gets called z_n in places; here they live in the `x` column of
// observed-mode traces and the exact companion is tracked via `observed_gap`.

enum class Variant { General, Ppa, Xu, Xu2, Simple };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::General: return "general";
    case Variant::Ppa: return "ppa";
    case Variant::Xu: return "xu";
    case Variant::Xu2: return "xu2";
    case Variant::Simple: return "simple";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "general") return Variant::General;
  if (s == "ppa") return Variant::Ppa;
  if (s == "xu") return Variant::Xu;
  if (s == "xu2") return Variant::Xu2;
  if (s == "simple") return Variant::Simple;
  throw ParameterError("unknown variant '" + s + "'");
}

enum class RunStatus { Converged, MaxIter, Diverged };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "CONVERGED";
    case RunStatus::MaxIter: return "MAX_ITER";
    case RunStatus::Diverged: return "DIVERGED";
  }
  return "?";
}

template <typename Scalar>
struct RunConfig {
  Index max_iter = 10000;
  Scalar stop_tol = Scalar(1e-6);
  Scalar divergence_threshold = Scalar(1e12);
  Scalar inner_tol = Scalar(1e-12);
  int max_inner = 100;

  void validate() const {
    if (max_iter < 1) throw ParameterError("RunConfig: max_iter must be positive");
    if (!(stop_tol > Scalar(0))) throw ParameterError("RunConfig: stop_tol must be positive");
    if (!(divergence_threshold > stop_tol))
      throw ParameterError("RunConfig: stop_tol must be below divergence_threshold");
    if (!(inner_tol > Scalar(0))) throw ParameterError("RunConfig: inner_tol must be positive");
    if (max_inner < 1) throw ParameterError("RunConfig: max_inner must be positive");
  }
};

template <typename Scalar>
struct IterationState {
  Index n = 0;
  VecX<Scalar> x;
};

template <typename Scalar>
struct TraceRecord {
  Index n = 0;
  VecX<Scalar> x;                 // iterate x_n (observed z_n in observed mode)
  Scalar beta = Scalar(0);        // beta_n
  Scalar alpha_or_lambda = Scalar(0);
  Scalar u_norm = Scalar(0);      // |u_n| (|anchor| for xu/xu2, 0 for ppa)
  Scalar e_norm = Scalar(0);      // |e_n|
  Scalar input_norm = Scalar(0);  // |resolvent argument built from this record|
  Scalar residual_norm = Scalar(0);   // |z_n|, 0 at n = 0 by convention
  Scalar dist_to_target = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar observed_gap = std::numeric_limits<Scalar>::quiet_NaN();  // |x_n - z_n|
};

template <typename Scalar>
struct Trace {
  std::vector<TraceRecord<Scalar>> records;
  RunStatus status = RunStatus::MaxIter;
  bool observed_mode = false;

  Index iterations() const { return static_cast<Index>(records.size()) - 1; }

  Scalar final_dist() const {
    return records.empty() ? std::numeric_limits<Scalar>::quiet_NaN()
                           : records.back().dist_to_target;
  }

  Scalar min_dist() const {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    bool any = false;
    for (const auto& r : records)
      if (!std::isnan(r.dist_to_target)) {
        best = std::min(best, r.dist_to_target);
        any = true;
      }
    return any ? best : std::numeric_limits<Scalar>::quiet_NaN();
  }

  /// First record index with dist_to_target <= tol, or -1.
  Index first_below(Scalar tol) const {
    for (const auto& r : records)
      if (!std::isnan(r.dist_to_target) && r.dist_to_target <= tol) return r.n;
    return -1;
  }

  Scalar max_observed_gap() const {
    Scalar m = Scalar(0);
    for (const auto& r : records)
      if (!std::isnan(r.observed_gap)) m = std::max(m, r.observed_gap);
    return m;
  }

  Scalar max_x_norm() const {
    Scalar m = Scalar(0);
    for (const auto& r : records) m = std::max(m, r.x.norm());
    return m;
  }
};

/// The resolvent argument of one step of the given variant.
template <typename Scalar>
VecX<Scalar> step_argument(Variant variant, const VecX<Scalar>& x, Scalar aux,
                           const std::type_identity_t<VecX<Scalar>>& u_term,
                           const std::type_identity_t<VecX<Scalar>>& e) {
  switch (variant) {
    case Variant::General: return u_term + aux * (x + e);
    case Variant::Ppa: return x + e;
    case Variant::Xu: return aux * u_term + (Scalar(1) - aux) * x + e;
    case Variant::Xu2: return aux * u_term + (Scalar(1) - aux) * (x + e);
    case Variant::Simple: return u_term;
  }
  return x;
}

/// One iteration of the selected variant. `aux` carries alpha_n for the
/// general variant and lambda_n for the anchored ones; it is ignored by
/// ppa/simple.
template <typename Scalar>
IterationState<Scalar> step(Variant variant, const Operator<Scalar>& op,
                            const IterationState<Scalar>& state, Scalar beta, Scalar aux,
                            const std::type_identity_t<VecX<Scalar>>& u_term,
                            const std::type_identity_t<VecX<Scalar>>& e,
                            Scalar inner_tol = Scalar(1e-12), int max_inner = 100) {
  if (variant == Variant::Xu || variant == Variant::Xu2) {
    if (!(aux >= Scalar(0) && aux <= Scalar(1)))
      throw ParameterError("step: lambda must lie in [0,1]");
  }
  VecX<Scalar> arg = step_argument(variant, state.x, aux, u_term, e);
  if (!arg.allFinite())
    throw NonFiniteIterate("step: non-finite resolvent argument", state.n + 1);
  VecX<Scalar> x = resolvent(op, beta, arg, inner_tol, max_inner);
  if (!x.allFinite()) throw NonFiniteIterate("step: non-finite iterate", state.n + 1);
  return {state.n + 1, std::move(x)};
}

namespace detail {

template <typename Scalar>
ValidationReport validate_for_variant(Variant variant, const ScheduleSet<Scalar>& sch) {
  switch (variant) {
    case Variant::General:
      return validate(HypothesisSet::HGeneral, sch.beta, sch.alpha_or_lambda, sch.u, sch.error);
    case Variant::Simple:
      // alpha is identically zero regardless of the configured schedule
      return validate(HypothesisSet::HGeneral, sch.beta, ScalarSchedule<Scalar>::constant(0),
                      sch.u, sch.error);
    case Variant::Xu:
      return validate(HypothesisSet::WangCui, sch.beta, sch.alpha_or_lambda, sch.u, sch.error);
    case Variant::Xu2: {
      // Either the Wang-Cui frame or (through u_n = lambda_n*u,
      // alpha_n = 1 - lambda_n) the general hypotheses with lambda -> 1.
      ValidationReport wc =
          validate(HypothesisSet::WangCui, sch.beta, sch.alpha_or_lambda, sch.u, sch.error);
      if (wc.all_passed()) return wc;
      auto alpha = ScalarSchedule<Scalar>::one_minus(sch.alpha_or_lambda);
      auto u_red = VectorSchedule<Scalar>::halpern(
          sch.u.limit(), VecX<Scalar>::Zero(sch.u.dim()), sch.alpha_or_lambda);
      return validate(HypothesisSet::HGeneral, sch.beta, alpha, u_red, sch.error);
    }
    case Variant::Ppa:
      return validate_ppa_classic(sch.beta, sch.error);
  }
  return {};
}

}  // namespace detail

/// Full run of a variant: iterates until the stopping rule fires. A run is
/// CONVERGED only when the step size and (when an oracle exists) the distance
/// to the target are both within stop_tol.
template <typename Scalar>
Trace<Scalar> run(Variant variant, const Operator<Scalar>& op, const ScheduleSet<Scalar>& sch,
                  std::type_identity_t<VecX<Scalar>> x0, const RunConfig<Scalar>& cfg,
                  bool no_validate = false) {
  cfg.validate();
  detail::require_same_dim(x0.size(), op.dim(), "run x0");
  detail::require_same_dim(sch.u.dim(), op.dim(), "run u schedule");
  detail::require_same_dim(sch.error.dim(), op.dim(), "run error model");
  require_finite(x0, "run x0");

  if (!no_validate) {
    ValidationReport rep = detail::validate_for_variant(variant, sch);
    if (!rep.all_passed()) throw ScheduleRejected(std::move(rep));
  }

  using Vec = VecX<Scalar>;
  const bool anchored = variant == Variant::Xu || variant == Variant::Xu2;
  const Vec anchor = anchored ? sch.u.limit() : Vec::Zero(op.dim());
  const Vec zero = Vec::Zero(op.dim());

  const ZeroSet<Scalar>& zs = op.zero_set();
  bool has_target = !zs.is_empty();
  Vec target;
  if (has_target && variant != Variant::Ppa) target = zs.project(sch.u.limit());

  auto dist_fn = [&](const Vec& x) -> Scalar {
    if (!has_target) return std::numeric_limits<Scalar>::quiet_NaN();
    if (variant == Variant::Ppa) return (x - zs.project(x)).norm();
    return (x - target).norm();
  };

  auto u_term_at = [&](Index n) -> Vec {
    if (variant == Variant::Ppa) return zero;
    if (anchored) return anchor;
    return sch.u.at(n);
  };
  auto aux_at = [&](Index n) -> Scalar {
    if (variant == Variant::Ppa) return Scalar(0);
    if (variant == Variant::Simple) return Scalar(0);
    return sch.alpha_or_lambda.at(n);
  };

  auto make_record = [&](Index n, const Vec& xn, Scalar resid) {
    TraceRecord<Scalar> rec;
    rec.n = n;
    rec.x = xn;
    rec.beta = sch.beta.at(n);
    rec.alpha_or_lambda = aux_at(n);
    Vec ut = u_term_at(n);
    Vec en = sch.error.at(n);
    // anchored variants inject lambda_n * u; that is what the record carries
    rec.u_norm = anchored ? std::abs(rec.alpha_or_lambda) * ut.norm() : ut.norm();
    rec.e_norm = en.norm();
    rec.input_norm = step_argument(variant, xn, rec.alpha_or_lambda, ut, en).norm();
    rec.residual_norm = resid;
    rec.dist_to_target = dist_fn(xn);
    return rec;
  };

  Trace<Scalar> tr;
  tr.records.reserve(static_cast<size_t>(std::min<Index>(cfg.max_iter + 1, 1 << 20)));
  IterationState<Scalar> state{0, std::move(x0)};
  tr.records.push_back(make_record(0, state.x, Scalar(0)));
  tr.status = RunStatus::MaxIter;

  for (Index n = 0; n < cfg.max_iter; ++n) {
    Scalar beta_n = sch.beta.at(n);
    Scalar aux_n = aux_at(n);
    Vec ut = u_term_at(n);
    Vec en = sch.error.at(n);
    IterationState<Scalar> next;
    Vec arg;
    try {
      arg = step_argument(variant, state.x, aux_n, ut, en);
      next = step(variant, op, state, beta_n, aux_n, ut, en, cfg.inner_tol, cfg.max_inner);
    } catch (const NonFiniteIterate&) {
      tr.status = RunStatus::Diverged;
      return tr;
    }
    Scalar resid = (arg - next.x).norm() / beta_n;
    Scalar step_size = (next.x - state.x).norm();
    state = std::move(next);
    tr.records.push_back(make_record(state.n, state.x, resid));

    if (state.x.norm() > cfg.divergence_threshold) {
      tr.status = RunStatus::Diverged;
      return tr;
    }
    Scalar d = tr.records.back().dist_to_target;
    bool dist_ok = std::isnan(d) || d <= cfg.stop_tol;
    if (step_size <= cfg.stop_tol && dist_ok) {
      tr.status = RunStatus::Converged;
      return tr;
    }
  }
  return tr;
}

/// Simulation with per-step solver error: the observed sequence
///   z_{n+1} = J_{beta_n}(u_n + alpha_n z_n) + e_{n+1},  z_0 = 0,
/// alongside the exact companion driven by the same realized errors,
///   x_{n+1} = J_{beta_n}(u_n + alpha_n (x_n + e_n)),   x_0 = 0, e_0 = 0.
/// Trace rows carry the observed iterate; observed_gap records |x_n - z_n|.
template <typename Scalar>
Trace<Scalar> simulate_observed(const Operator<Scalar>& op, const ScheduleSet<Scalar>& sch,
                                const RunConfig<Scalar>& cfg, bool no_validate = false) {
  cfg.validate();
  detail::require_same_dim(sch.u.dim(), op.dim(), "simulate_observed u schedule");
  detail::require_same_dim(sch.error.dim(), op.dim(), "simulate_observed error model");
  if (!no_validate) {
    ValidationReport rep = detail::validate_for_variant(Variant::General, sch);
    if (!rep.all_passed()) throw ScheduleRejected(std::move(rep));
  }

  using Vec = VecX<Scalar>;
  const ZeroSet<Scalar>& zs = op.zero_set();
  bool has_target = !zs.is_empty();
  Vec target;
  if (has_target) target = zs.project(sch.u.limit());
  auto dist_fn = [&](const Vec& z) -> Scalar {
    if (!has_target) return std::numeric_limits<Scalar>::quiet_NaN();
    return (z - target).norm();
  };
  auto e_real = [&](Index n) -> Vec {
    return n == 0 ? Vec::Zero(op.dim()) : sch.error.at(n);
  };

  Vec z = Vec::Zero(op.dim());
  Vec x = Vec::Zero(op.dim());

  auto make_record = [&](Index n, const Vec& zn, const Vec& xn, Scalar resid) {
    TraceRecord<Scalar> rec;
    rec.n = n;
    rec.x = zn;
    rec.beta = sch.beta.at(n);
    rec.alpha_or_lambda = sch.alpha_or_lambda.at(n);
    Vec ut = sch.u.at(n);
    rec.u_norm = ut.norm();
    rec.e_norm = e_real(n).norm();
    rec.input_norm = (ut + rec.alpha_or_lambda * zn).norm();
    rec.residual_norm = resid;
    rec.dist_to_target = dist_fn(zn);
    rec.observed_gap = (xn - zn).norm();
    return rec;
  };

  Trace<Scalar> tr;
  tr.observed_mode = true;
  tr.records.push_back(make_record(0, z, x, Scalar(0)));
  tr.status = RunStatus::MaxIter;

  for (Index n = 0; n < cfg.max_iter; ++n) {
    Scalar beta_n = sch.beta.at(n);
    Scalar alpha_n = sch.alpha_or_lambda.at(n);
    Vec u_n = sch.u.at(n);
    Vec arg_z = u_n + alpha_n * z;
    Vec arg_x = u_n + alpha_n * (x + e_real(n));
    if (!arg_z.allFinite() || !arg_x.allFinite()) {
      tr.status = RunStatus::Diverged;
      return tr;
    }
    Vec y = resolvent(op, beta_n, arg_z, cfg.inner_tol, cfg.max_inner);
    Vec x_next = resolvent(op, beta_n, arg_x, cfg.inner_tol, cfg.max_inner);
    Vec z_next = y + e_real(n + 1);
    if (!z_next.allFinite() || !x_next.allFinite()) {
      tr.status = RunStatus::Diverged;
      return tr;
    }
    Scalar resid = (arg_z - y).norm() / beta_n;
    Scalar step_size = (z_next - z).norm();
    z = std::move(z_next);
    x = std::move(x_next);
    tr.records.push_back(make_record(n + 1, z, x, resid));

    if (z.norm() > cfg.divergence_threshold) {
      tr.status = RunStatus::Diverged;
      return tr;
    }
    Scalar d = tr.records.back().dist_to_target;
    bool dist_ok = std::isnan(d) || d <= cfg.stop_tol;
    if (step_size <= cfg.stop_tol && dist_ok) {
      tr.status = RunStatus::Converged;
      return tr;
    }
  }
  return tr;
}

}  // namespace proxpoint
