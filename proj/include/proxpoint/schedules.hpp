#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "proxpoint/errors.hpp"
#include "proxpoint/rng.hpp"
#include "proxpoint/space.hpp"

namespace proxpoint {

// ---------------------------------------------------------------------------
// Scalar parameter sequences
// ---------------------------------------------------------------------------

enum class LimitTag { DivergesToInfinity, Finite, None };

template <typename Scalar>
struct ScalarLimit {
  LimitTag tag = LimitTag::None;
  Scalar value = Scalar(0);  // meaningful when tag == Finite
};

/// A scalar sequence n -> s_n from a small family algebra. Immutable; pure
/// evaluation at any index. Asymptotic behaviour (limits, decay rates,
/// positivity) is derived structurally from the family and its parameters so
/// validators never have to take numeric limits.
template <typename Scalar>
class ScalarSchedule {
 public:
  enum class Family { Const, Poly, Geom, Inv, OneMinus };

  static ScalarSchedule constant(Scalar v) { return ScalarSchedule(Family::Const, v, 0, 0); }
  /// a*(n+1)^p
  static ScalarSchedule poly(Scalar a, Scalar p) { return ScalarSchedule(Family::Poly, a, p, 0); }
  /// a*r^n
  static ScalarSchedule geom(Scalar a, Scalar r) { return ScalarSchedule(Family::Geom, a, 0, r); }
  /// a/(n+1)
  static ScalarSchedule inv(Scalar a) { return ScalarSchedule(Family::Inv, a, 0, 0); }
  /// 1 - inner_n
  static ScalarSchedule one_minus(ScalarSchedule inner) {
    ScalarSchedule s(Family::OneMinus, 0, 0, 0);
    s.inner_ = std::make_shared<const ScalarSchedule>(std::move(inner));
    return s;
  }

  Family family() const { return family_; }
  const ScalarSchedule& inner() const {
    if (!inner_) throw ParameterError("ScalarSchedule: no inner schedule");
    return *inner_;
  }

  Scalar at(Index n) const {
    if (n < 0) throw ParameterError("ScalarSchedule::at: n must be nonnegative");
    switch (family_) {
      case Family::Const: return a_;
      case Family::Poly: return a_ * std::pow(Scalar(n + 1), p_);
      case Family::Geom: return a_ * std::pow(r_, Scalar(n));
      case Family::Inv: return a_ / Scalar(n + 1);
      case Family::OneMinus: return Scalar(1) - inner_->at(n);
    }
    return Scalar(0);
  }

  ScalarLimit<Scalar> limit() const {
    switch (family_) {
      case Family::Const:
        return {LimitTag::Finite, a_};
      case Family::Poly:
        if (a_ == Scalar(0) || p_ < Scalar(0)) return {LimitTag::Finite, Scalar(0)};
        if (p_ == Scalar(0)) return {LimitTag::Finite, a_};
        return a_ > Scalar(0) ? ScalarLimit<Scalar>{LimitTag::DivergesToInfinity, Scalar(0)}
                              : ScalarLimit<Scalar>{LimitTag::None, Scalar(0)};
      case Family::Geom:
        if (a_ == Scalar(0) || std::abs(r_) < Scalar(1)) return {LimitTag::Finite, Scalar(0)};
        if (r_ == Scalar(1)) return {LimitTag::Finite, a_};
        if (r_ > Scalar(1))
          return a_ > Scalar(0) ? ScalarLimit<Scalar>{LimitTag::DivergesToInfinity, Scalar(0)}
                                : ScalarLimit<Scalar>{LimitTag::None, Scalar(0)};
        return {LimitTag::None, Scalar(0)};  // r <= -1: oscillates
      case Family::Inv:
        return {LimitTag::Finite, Scalar(0)};
      case Family::OneMinus: {
        ScalarLimit<Scalar> in = inner_->limit();
        if (in.tag == LimitTag::Finite) return {LimitTag::Finite, Scalar(1) - in.value};
        return {LimitTag::None, Scalar(0)};
      }
    }
    return {LimitTag::None, Scalar(0)};
  }

  bool vanishes() const {
    ScalarLimit<Scalar> l = limit();
    return l.tag == LimitTag::Finite && l.value == Scalar(0);
  }

  bool diverges_to_infinity() const { return limit().tag == LimitTag::DivergesToInfinity; }

  /// Supremum of s_n over n >= 0 (+inf when unbounded above).
  Scalar sup() const {
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    switch (family_) {
      case Family::Const: return a_;
      case Family::Poly:
        if (a_ == Scalar(0)) return Scalar(0);
        if (a_ > Scalar(0)) return p_ > Scalar(0) ? inf : a_;
        return p_ > Scalar(0) ? a_ : Scalar(0);  // negative, rising toward 0
      case Family::Geom:
        if (a_ == Scalar(0)) return Scalar(0);
        if (r_ > Scalar(1)) return a_ > Scalar(0) ? inf : a_ * Scalar(1);  // a<0: max at n=0
        if (r_ >= Scalar(0)) return a_ > Scalar(0) ? a_ : Scalar(0);
        // r < 0: alternating; bounded by |a|*max(1, |r|^n)
        return std::abs(r_) <= Scalar(1) ? std::abs(a_) : inf;
      case Family::Inv: return a_ > Scalar(0) ? a_ : Scalar(0);
      case Family::OneMinus: return Scalar(1) - inner_->inf();
    }
    return inf;
  }

  /// Infimum of s_n over n >= 0 (-inf when unbounded below).
  Scalar inf() const {
    const Scalar ninf = -std::numeric_limits<Scalar>::infinity();
    switch (family_) {
      case Family::Const: return a_;
      case Family::Poly:
        if (a_ == Scalar(0)) return Scalar(0);
        if (a_ > Scalar(0)) return p_ > Scalar(0) ? a_ : Scalar(0);
        return p_ > Scalar(0) ? ninf : a_;
      case Family::Geom:
        if (a_ == Scalar(0)) return Scalar(0);
        if (r_ > Scalar(1)) return a_ > Scalar(0) ? a_ : ninf;
        if (r_ >= Scalar(0)) return a_ > Scalar(0) ? Scalar(0) : a_;
        return std::abs(r_) <= Scalar(1) ? -std::abs(a_) : ninf;
      case Family::Inv: return a_ > Scalar(0) ? Scalar(0) : a_;
      case Family::OneMinus: return Scalar(1) - inner_->sup();
    }
    return ninf;
  }

  bool strictly_positive() const {
    switch (family_) {
      case Family::Const: return a_ > Scalar(0);
      case Family::Poly: return a_ > Scalar(0);
      case Family::Geom: return a_ > Scalar(0) && r_ > Scalar(0);
      case Family::Inv: return a_ > Scalar(0);
      case Family::OneMinus: return inner_->sup() < Scalar(1);
    }
    return false;
  }

  bool bounded() const {
    return std::isfinite(static_cast<double>(sup())) && std::isfinite(static_cast<double>(inf()));
  }

  /// True when the sequence is identically zero.
  bool identically_zero() const {
    switch (family_) {
      case Family::Const:
      case Family::Inv: return a_ == Scalar(0);
      case Family::Poly:
      case Family::Geom: return a_ == Scalar(0);
      case Family::OneMinus: return false;
    }
    return false;
  }

  /// Polynomial decay exponent q > 0 such that |s_n| ~ n^(-q), when that is
  /// derivable from the family (Inv -> 1, Poly with p < 0 -> -p).
  std::optional<Scalar> poly_decay_rate() const {
    if (identically_zero()) return std::nullopt;
    switch (family_) {
      case Family::Inv: return Scalar(1);
      case Family::Poly:
        if (p_ < Scalar(0)) return -p_;
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  /// True when |s_n| decays at a geometric rate (summable, beats any
  /// polynomial growth).
  bool geometric_decay() const {
    return family_ == Family::Geom && std::abs(r_) < Scalar(1) && a_ != Scalar(0);
  }

  /// Family-level test for a divergent series sum. Deliberately conservative:
  /// derivable only for sequences with a nonzero limit, Inv, and Poly with
  /// -1 <= p < 0.
  bool sum_diverges() const {
    ScalarLimit<Scalar> l = limit();
    if (l.tag == LimitTag::DivergesToInfinity) return true;
    if (l.tag == LimitTag::Finite && l.value != Scalar(0)) return true;
    if (family_ == Family::Inv && a_ != Scalar(0)) return true;
    if (family_ == Family::Poly && a_ != Scalar(0) && p_ >= Scalar(-1) && p_ < Scalar(0))
      return true;
    return false;
  }

  /// Rebinds one named family parameter; used by the sweep runner.
  void set_param(const std::string& key, Scalar value) {
    auto fail = [&]() {
      throw ParameterError("schedule parameter '" + key + "' does not exist for family " +
                           family_name());
    };
    if (key == "a") {
      if (family_ == Family::Const || family_ == Family::OneMinus) fail();
      a_ = value;
    } else if (key == "p") {
      if (family_ != Family::Poly) fail();
      p_ = value;
    } else if (key == "r") {
      if (family_ != Family::Geom) fail();
      r_ = value;
    } else if (key == "v") {
      if (family_ != Family::Const) fail();
      a_ = value;
    } else {
      fail();
    }
  }

  std::string family_name() const {
    switch (family_) {
      case Family::Const: return "const";
      case Family::Poly: return "poly";
      case Family::Geom: return "geom";
      case Family::Inv: return "inv";
      case Family::OneMinus: return "oneminus";
    }
    return "?";
  }

  std::string describe() const {
    std::ostringstream os;
    switch (family_) {
      case Family::Const: os << "const(" << a_ << ")"; break;
      case Family::Poly: os << "poly(" << a_ << "," << p_ << ")"; break;
      case Family::Geom: os << "geom(" << a_ << "," << r_ << ")"; break;
      case Family::Inv: os << "inv(" << a_ << ")"; break;
      case Family::OneMinus: os << "oneminus(" << inner_->describe() << ")"; break;
    }
    return os.str();
  }

 private:
  ScalarSchedule(Family f, Scalar a, Scalar p, Scalar r) : family_(f), a_(a), p_(p), r_(r) {}

  Family family_;
  Scalar a_, p_, r_;
  std::shared_ptr<const ScalarSchedule> inner_;
};

// ---------------------------------------------------------------------------
// Vector-valued sequences (the anchor term u_n)
// ---------------------------------------------------------------------------

/// A vector sequence n -> u_n. Every family converges; limit() returns the
/// declared limit vector.
template <typename Scalar>
class VectorSchedule {
 public:
  enum class Family { Const, Converging, Halpern };
  using Vec = VecX<Scalar>;

  static VectorSchedule constant(Vec u) {
    require_finite(u, "VectorSchedule::constant");
    VectorSchedule s(Family::Const, u.size());
    s.u_ = std::move(u);
    return s;
  }

  /// u + d/(n+1)^p with p > 0.
  static VectorSchedule converging(Vec u, Vec d, Scalar p) {
    detail::require_same_dim(u.size(), d.size(), "VectorSchedule::converging");
    require_finite(u, "VectorSchedule::converging");
    require_finite(d, "VectorSchedule::converging");
    if (!(p > Scalar(0)))
      throw ParameterError("VectorSchedule::converging: p must be positive");
    VectorSchedule s(Family::Converging, u.size());
    s.u_ = std::move(u);
    s.d_ = std::move(d);
    s.p_ = p;
    return s;
  }

  /// lambda_n*u + (1 - lambda_n)*y0.
  static VectorSchedule halpern(Vec u, Vec y0, ScalarSchedule<Scalar> lambda) {
    detail::require_same_dim(u.size(), y0.size(), "VectorSchedule::halpern");
    require_finite(u, "VectorSchedule::halpern");
    require_finite(y0, "VectorSchedule::halpern");
    VectorSchedule s(Family::Halpern, u.size());
    s.u_ = std::move(u);
    s.y0_ = std::move(y0);
    s.lambda_ = std::make_shared<const ScalarSchedule<Scalar>>(std::move(lambda));
    return s;
  }

  Family family() const { return family_; }
  Index dim() const { return dim_; }
  const Vec& anchor() const { return u_; }

  Vec at(Index n) const {
    if (n < 0) throw ParameterError("VectorSchedule::at: n must be nonnegative");
    switch (family_) {
      case Family::Const: return u_;
      case Family::Converging:
        return u_ + d_ / std::pow(Scalar(n + 1), p_);
      case Family::Halpern: {
        Scalar lam = lambda_->at(n);
        return lam * u_ + (Scalar(1) - lam) * y0_;
      }
    }
    return u_;
  }

  bool has_limit() const {
    if (family_ != Family::Halpern) return true;
    return lambda_->limit().tag == LimitTag::Finite;
  }

  /// Declared limit of the sequence.
  Vec limit() const {
    switch (family_) {
      case Family::Const:
      case Family::Converging:
        return u_;
      case Family::Halpern: {
        ScalarLimit<Scalar> l = lambda_->limit();
        if (l.tag != LimitTag::Finite)
          throw ParameterError("VectorSchedule: halpern weight sequence has no finite limit");
        return l.value * u_ + (Scalar(1) - l.value) * y0_;
      }
    }
    return u_;
  }

  std::string describe() const {
    switch (family_) {
      case Family::Const: return "const";
      case Family::Converging: return "converging";
      case Family::Halpern: return "halpern(" + lambda_->describe() + ")";
    }
    return "?";
  }

 private:
  VectorSchedule(Family f, Index dim) : family_(f), dim_(dim) {}

  Family family_;
  Index dim_;
  Vec u_, d_, y0_;
  Scalar p_ = Scalar(1);
  std::shared_ptr<const ScalarSchedule<Scalar>> lambda_;
};

// ---------------------------------------------------------------------------
// Error models (the sequence e_n)
// ---------------------------------------------------------------------------

/// Deterministic error sequences. The random model derives each e_n from
/// (seed, n) alone, so evaluation order never matters and repeated calls are
/// bit-identical.
template <typename Scalar>
class ErrorModel {
 public:
  enum class Family { Zero, BoundedRandom, Growing, Summable };
  enum class Tag { Summable, Bounded, Unbounded };
  using Vec = VecX<Scalar>;

  static ErrorModel zero(Index dim) { return ErrorModel(Family::Zero, dim); }

  /// e_n uniform in the ball of the given radius, keyed by (seed, n).
  static ErrorModel bounded_random(Scalar bound, std::uint64_t seed, Index dim) {
    if (!(bound >= Scalar(0)))
      throw ParameterError("ErrorModel::bounded_random: bound must be nonnegative");
    ErrorModel m(Family::BoundedRandom, dim);
    m.bound_ = bound;
    m.seed_ = seed;
    return m;
  }

  /// (n+1)^q * v with q > 0.
  static ErrorModel growing(Vec v, Scalar q) {
    if (!(q > Scalar(0))) throw ParameterError("ErrorModel::growing: q must be positive");
    require_finite(v, "ErrorModel::growing");
    ErrorModel m(Family::Growing, v.size());
    m.v_ = std::move(v);
    m.q_ = q;
    return m;
  }

  /// r^n * v with 0 < r < 1.
  static ErrorModel summable(Vec v, Scalar r) {
    if (!(r > Scalar(0) && r < Scalar(1)))
      throw ParameterError("ErrorModel::summable: r must lie in (0,1)");
    require_finite(v, "ErrorModel::summable");
    ErrorModel m(Family::Summable, v.size());
    m.v_ = std::move(v);
    m.r_ = r;
    return m;
  }

  Family family() const { return family_; }
  Index dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  Scalar bound() const { return bound_; }

  Vec at(Index n) const {
    if (n < 0) throw ParameterError("ErrorModel::at: n must be nonnegative");
    switch (family_) {
      case Family::Zero: return Vec::Zero(dim_);
      case Family::BoundedRandom: {
        rng::Stream st(seed_, static_cast<std::uint64_t>(n));
        return st.ball_point(dim_, static_cast<double>(bound_)).template cast<Scalar>();
      }
      case Family::Growing:
        return std::pow(Scalar(n + 1), q_) * v_;
      case Family::Summable:
        return std::pow(r_, Scalar(n)) * v_;
    }
    return Vec::Zero(dim_);
  }

  Tag tag() const {
    switch (family_) {
      case Family::Zero:
      case Family::Summable: return Tag::Summable;
      case Family::BoundedRandom: return Tag::Bounded;
      case Family::Growing: return Tag::Unbounded;
    }
    return Tag::Bounded;
  }

  /// Polynomial growth exponent of |e_n| (Growing only).
  std::optional<Scalar> poly_growth_rate() const {
    if (family_ == Family::Growing && !v_.isZero(Scalar(0))) return q_;
    return std::nullopt;
  }

  bool identically_zero() const {
    switch (family_) {
      case Family::Zero: return true;
      case Family::BoundedRandom: return bound_ == Scalar(0);
      case Family::Growing:
      case Family::Summable: return v_.isZero(Scalar(0));
    }
    return false;
  }

  ErrorModel with_seed(std::uint64_t seed) const {
    ErrorModel m = *this;
    m.seed_ = seed;
    return m;
  }

  void set_bound(Scalar bound) {
    if (family_ != Family::BoundedRandom)
      throw ParameterError("error.bound only exists for the bounded family");
    if (!(bound >= Scalar(0))) throw ParameterError("error.bound must be nonnegative");
    bound_ = bound;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (family_) {
      case Family::Zero: os << "zero"; break;
      case Family::BoundedRandom: os << "bounded(" << bound_ << "," << seed_ << ")"; break;
      case Family::Growing: os << "growing(q=" << q_ << ")"; break;
      case Family::Summable: os << "summable(r=" << r_ << ")"; break;
    }
    return os.str();
  }

 private:
  ErrorModel(Family f, Index dim) : family_(f), dim_(dim) {}

  Family family_;
  Index dim_;
  Vec v_;
  Scalar bound_ = Scalar(0), q_ = Scalar(1), r_ = Scalar(1) / Scalar(2);
  std::uint64_t seed_ = 0;
};

// ---------------------------------------------------------------------------
// Schedule sets and hypothesis validation
// ---------------------------------------------------------------------------

template <typename Scalar>
struct ScheduleSet {
  ScalarSchedule<Scalar> beta;             // step sizes beta_n > 0
  ScalarSchedule<Scalar> alpha_or_lambda;  // alpha_n (general) or lambda_n (anchored)
  VectorSchedule<Scalar> u;                // anchor sequence u_n
  ErrorModel<Scalar> error;                // e_n

  /// beta_n = n+1, alpha_n = 1/(n+1), u_n == u, e_n == 0.
  static ScheduleSet defaults(VecX<Scalar> u_vec) {
    Index d = u_vec.size();
    return ScheduleSet{ScalarSchedule<Scalar>::poly(1, 1), ScalarSchedule<Scalar>::inv(1),
                       VectorSchedule<Scalar>::constant(std::move(u_vec)),
                       ErrorModel<Scalar>::zero(d)};
  }
};

enum class HypothesisSet { HGeneral, WangCui };

inline HypothesisSet parse_hypothesis_set(const std::string& s) {
  if (s == "H_GENERAL" || s == "h_general") return HypothesisSet::HGeneral;
  if (s == "WANG_CUI" || s == "wang_cui") return HypothesisSet::WangCui;
  throw ParameterError("unknown hypothesis-set tag '" + s + "'");
}

struct ValidationItem {
  std::string condition;
  bool passed;
  std::string reason;
};

struct ValidationReport {
  std::string hypothesis_set;
  std::vector<ValidationItem> items;

  bool all_passed() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& it : items)
      os << (it.passed ? "pass" : "FAIL") << "  " << it.condition << ": " << it.reason << "\n";
    return os.str();
  }

  std::vector<std::string> failed_conditions() const {
    std::vector<std::string> out;
    for (const auto& it : items)
      if (!it.passed) out.push_back(it.condition);
    return out;
  }
};

/// Schedule set rejected by the hypothesis validator.
class ScheduleRejected : public std::runtime_error {
 public:
  explicit ScheduleRejected(ValidationReport report)
      : std::runtime_error(make_message(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string make_message(const ValidationReport& r) {
    std::string msg = "schedule set rejected (" + r.hypothesis_set + "):";
    for (const auto& c : r.failed_conditions()) msg += " [" + c + "]";
    return msg;
  }
  ValidationReport report_;
};

namespace detail {

// alpha_n * e_n -> 0, decided by family tags.
template <typename Scalar>
ValidationItem product_vanishes(const ScalarSchedule<Scalar>& alpha,
                                const ErrorModel<Scalar>& err) {
  ValidationItem item{"alpha_n * e_n -> 0", false, ""};
  if (alpha.identically_zero() || err.identically_zero()) {
    item.passed = true;
    item.reason = "one factor is identically zero";
    return item;
  }
  switch (err.tag()) {
    case ErrorModel<Scalar>::Tag::Summable:
      if (alpha.bounded()) {
        item.passed = true;
        item.reason = "errors vanish and " + alpha.describe() + " is bounded";
      } else {
        item.reason = alpha.describe() + " is unbounded";
      }
      return item;
    case ErrorModel<Scalar>::Tag::Bounded:
      if (alpha.vanishes()) {
        item.passed = true;
        item.reason = "errors bounded and " + alpha.describe() + " -> 0";
      } else {
        item.reason = "errors only bounded but " + alpha.describe() + " does not vanish";
      }
      return item;
    case ErrorModel<Scalar>::Tag::Unbounded: {
      if (alpha.geometric_decay()) {
        item.passed = true;
        item.reason = "geometric decay of alpha beats polynomial error growth";
        return item;
      }
      auto p = alpha.poly_decay_rate();
      auto q = err.poly_growth_rate();
      if (p && q && *q < *p) {
        item.passed = true;
        std::ostringstream os;
        os << "decay rate " << *p << " exceeds growth rate " << *q;
        item.reason = os.str();
      } else if (p && q) {
        std::ostringstream os;
        os << "growth rate " << *q << " not below decay rate " << *p;
        item.reason = os.str();
      } else {
        item.reason = "product tag not derivable from families";
      }
      return item;
    }
  }
  return item;
}

}  // namespace detail

/// Structural check of a schedule set against a hypothesis set. Conditions
/// are decided by family algebra, not numeric limit-taking; each item carries
/// a reason string.
template <typename Scalar>
ValidationReport validate(HypothesisSet hset, const ScalarSchedule<Scalar>& beta,
                          const ScalarSchedule<Scalar>& alpha_or_lambda,
                          const VectorSchedule<Scalar>& u, const ErrorModel<Scalar>& err) {
  ValidationReport rep;
  auto add = [&rep](std::string cond, bool ok, std::string why) {
    rep.items.push_back({std::move(cond), ok, std::move(why)});
  };

  if (hset == HypothesisSet::HGeneral) {
    rep.hypothesis_set = "H_GENERAL";
    add("beta_n > 0", beta.strictly_positive(), beta.describe());
    add("beta_n -> infinity", beta.diverges_to_infinity(),
        beta.diverges_to_infinity() ? beta.describe() + " diverges"
                                    : beta.describe() + " does not diverge to infinity");
    add("alpha_n -> 0", alpha_or_lambda.vanishes(),
        alpha_or_lambda.describe() +
            (alpha_or_lambda.vanishes() ? " vanishes" : " does not vanish"));
    rep.items.push_back(detail::product_vanishes(alpha_or_lambda, err));
    bool uconv = u.has_limit();
    add("u_n -> u", uconv, uconv ? u.describe() + " converges" : "no declared limit");
    return rep;
  }

  rep.hypothesis_set = "WANG_CUI";
  const auto& lam = alpha_or_lambda;
  add("beta_n > 0", beta.strictly_positive(), beta.describe());
  {
    ScalarLimit<Scalar> bl = beta.limit();
    bool ok = beta.strictly_positive() &&
              (bl.tag == LimitTag::DivergesToInfinity ||
               (bl.tag == LimitTag::Finite && bl.value > Scalar(0)));
    add("liminf beta_n > 0", ok,
        ok ? beta.describe() + " stays away from zero" : beta.describe() + " approaches zero");
  }
  {
    bool ok = lam.strictly_positive() && lam.sup() <= Scalar(1);
    add("lambda_n in (0,1]", ok,
        ok ? lam.describe() : lam.describe() + " leaves the unit interval");
  }
  add("lambda_n -> 0", lam.vanishes(),
      lam.describe() + (lam.vanishes() ? " vanishes" : " does not vanish"));
  add("sum lambda_n = infinity", lam.sum_diverges(),
      lam.sum_diverges() ? "series diverges at family level"
                         : "divergent sum not derivable from family");
  {
    bool summable = err.tag() == ErrorModel<Scalar>::Tag::Summable;
    bool ratio_ok = false;
    std::string why;
    if (summable) {
      why = "errors summable";
    } else if (err.identically_zero()) {
      summable = true;
      why = "errors identically zero";
    } else {
      // |e_n|/lambda_n -> 0 by tag arithmetic.
      auto p = lam.poly_decay_rate();
      auto q = err.poly_growth_rate();
      if (err.tag() == ErrorModel<Scalar>::Tag::Unbounded && p && q) {
        ratio_ok = false;  // growing errors over vanishing lambda never vanish
        why = "errors grow while lambda vanishes";
      } else {
        why = "bounded errors: |e_n|/lambda_n -> 0 not derivable";
      }
    }
    add("e_n summable or |e_n|/lambda_n -> 0", summable || ratio_ok, why);
  }
  return rep;
}

/// Classical admissibility for the plain proximal point iteration:
/// liminf beta_n > 0 and summable errors.
template <typename Scalar>
ValidationReport validate_ppa_classic(const ScalarSchedule<Scalar>& beta,
                                      const ErrorModel<Scalar>& err) {
  ValidationReport rep;
  rep.hypothesis_set = "PPA_CLASSIC";
  ScalarLimit<Scalar> bl = beta.limit();
  bool bpos = beta.strictly_positive() &&
              (bl.tag == LimitTag::DivergesToInfinity ||
               (bl.tag == LimitTag::Finite && bl.value > Scalar(0)));
  rep.items.push_back({"liminf beta_n > 0", bpos, beta.describe()});
  bool esum = err.tag() == ErrorModel<Scalar>::Tag::Summable || err.identically_zero();
  rep.items.push_back({"sum |e_n| < infinity", esum, err.describe()});
  return rep;
}

}  // namespace proxpoint
