#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include "proxpoint/errors.hpp"
#include "proxpoint/rng.hpp"
#include "proxpoint/space.hpp"

namespace proxpoint {

enum class OpKind { Identity, Quadratic, NormalConeBox, NormalConeBall, Skew, Constant, SmoothConvex };

inline const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::Identity: return "identity";
    case OpKind::Quadratic: return "quadratic";
    case OpKind::NormalConeBox: return "normal_cone_box";
    case OpKind::NormalConeBall: return "normal_cone_ball";
    case OpKind::Skew: return "skew";
    case OpKind::Constant: return "constant";
    case OpKind::SmoothConvex: return "smooth_convex";
  }
  return "?";
}

/// Smooth convex integrands for the SmoothConvex kind; the operator acts
/// coordinatewise as f'(x_i - shift_i).
enum class SmoothFn { Quartic, LogCosh };

namespace detail {

template <typename Scalar>
Scalar smooth_value(SmoothFn f, Scalar t) {
  switch (f) {
    case SmoothFn::Quartic: {
      Scalar t2 = t * t;
      return t2 * t2 / Scalar(4);
    }
    case SmoothFn::LogCosh: {
      // log(cosh t) = |t| - log 2 + log1p(exp(-2|t|)), overflow-safe
      Scalar a = std::abs(t);
      return a - Scalar(0.6931471805599453094172321214581766) + std::log1p(std::exp(Scalar(-2) * a));
    }
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar smooth_deriv(SmoothFn f, Scalar t) {
  switch (f) {
    case SmoothFn::Quartic: return t * t * t;
    case SmoothFn::LogCosh: return std::tanh(t);
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar smooth_second(SmoothFn f, Scalar t) {
  switch (f) {
    case SmoothFn::Quartic: return Scalar(3) * t * t;
    case SmoothFn::LogCosh: {
      Scalar a = std::abs(t);
      if (a > Scalar(350)) return Scalar(4) * std::exp(Scalar(-2) * a);
      Scalar c = std::cosh(t);
      return Scalar(1) / (c * c);
    }
  }
  return Scalar(0);
}

// Root of g(w) = w + beta*f'(w) - rhs. g is strictly increasing with g' >= 1
// and the root shares the sign of rhs, so [min(0,rhs), max(0,rhs)] brackets it.
// Guarded Newton: bisect whenever the Newton step leaves the bracket. After
// the tolerance is met, one extra Newton step is taken if it improves |g|.
template <typename Scalar>
struct ScalarRoot {
  Scalar w;
  Scalar g;
  bool converged;
};

template <typename Scalar>
ScalarRoot<Scalar> solve_scalar_prox(SmoothFn f, Scalar beta, Scalar rhs, Scalar tol,
                                     int max_iter) {
  Scalar lo = std::min(Scalar(0), rhs);
  Scalar hi = std::max(Scalar(0), rhs);
  Scalar w = rhs / (Scalar(1) + beta * smooth_second(f, Scalar(0)));
  if (!(w > lo && w < hi)) w = (lo + hi) / Scalar(2);
  Scalar g = w + beta * smooth_deriv(f, w) - rhs;
  for (int it = 0; it < max_iter; ++it) {
    if (g > Scalar(0)) hi = w; else lo = w;
    if (std::abs(g) <= tol) {
      Scalar gp = Scalar(1) + beta * smooth_second(f, w);
      Scalar wn = w - g / gp;
      if (wn > lo && wn < hi) {
        Scalar gn = wn + beta * smooth_deriv(f, wn) - rhs;
        if (std::abs(gn) < std::abs(g)) return {wn, gn, true};
      }
      return {w, g, true};
    }
    Scalar gp = Scalar(1) + beta * smooth_second(f, w);
    Scalar wn = w - g / gp;
    if (!(wn > lo && wn < hi)) wn = (lo + hi) / Scalar(2);
    if (wn == w) return {w, g, std::abs(g) <= tol};
    w = wn;
    g = w + beta * smooth_deriv(f, w) - rhs;
  }
  return {w, g, std::abs(g) <= tol};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Zero-set oracles
// ---------------------------------------------------------------------------

/// Ground-truth description of F = A^{-1}(0), with exact metric projection
/// and sampling. Subspace holds an affine flat: origin + span(basis), basis
/// orthonormal (zero columns mean the flat is the whole space restricted to
/// the origin point; that case is represented as Point instead).
template <typename Scalar>
class ZeroSet {
 public:
  enum class Kind { Point, Box, Ball, Subspace, Empty };
  using Vec = VecX<Scalar>;
  using Mat = MatX<Scalar>;

  static ZeroSet point(Vec p) {
    ZeroSet z(Kind::Point, p.size());
    z.point_ = std::move(p);
    return z;
  }
  static ZeroSet box(Vec lo, Vec hi) {
    ZeroSet z(Kind::Box, lo.size());
    z.lo_ = std::move(lo);
    z.hi_ = std::move(hi);
    return z;
  }
  static ZeroSet ball(Vec center, Scalar radius) {
    ZeroSet z(Kind::Ball, center.size());
    z.center_ = std::move(center);
    z.radius_ = radius;
    return z;
  }
  static ZeroSet subspace(Vec origin, Mat basis) {
    ZeroSet z(Kind::Subspace, origin.size());
    z.origin_ = std::move(origin);
    z.basis_ = std::move(basis);
    return z;
  }
  static ZeroSet empty(Index dim) { return ZeroSet(Kind::Empty, dim); }

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool is_empty() const { return kind_ == Kind::Empty; }

  /// Metric projection of u onto the set.
  Vec project(const Vec& u) const {
    detail::require_same_dim(u.size(), dim_, "ZeroSet::project");
    switch (kind_) {
      case Kind::Point: return point_;
      case Kind::Box: return u.cwiseMax(lo_).cwiseMin(hi_);
      case Kind::Ball: {
        Vec d = u - center_;
        Scalar r = d.norm();
        if (r <= radius_) return u;
        return center_ + (radius_ / r) * d;
      }
      case Kind::Subspace:
        return origin_ + basis_ * (basis_.transpose() * (u - origin_));
      case Kind::Empty:
        throw NoSolutionError("no solution exists: zero set is empty");
    }
    return u;
  }

  /// Random member of the set; `scale` sizes the draw for unbounded flats.
  Vec sample(rng::Stream& rs, Scalar scale = Scalar(1)) const {
    switch (kind_) {
      case Kind::Point: return point_;
      case Kind::Box: {
        Vec q(dim_);
        for (Index i = 0; i < dim_; ++i)
          q[i] = lo_[i] + (hi_[i] - lo_[i]) * static_cast<Scalar>(rs.uniform01());
        return q;
      }
      case Kind::Ball:
        return center_ + rs.ball_point(dim_, static_cast<double>(radius_)).template cast<Scalar>();
      case Kind::Subspace: {
        Index k = basis_.cols();
        Vec z = scale * rs.normal_vec(k).template cast<Scalar>();
        return origin_ + basis_ * z;
      }
      case Kind::Empty:
        throw NoSolutionError("no solution exists: zero set is empty");
    }
    return point_;
  }

 private:
  ZeroSet(Kind k, Index dim) : kind_(k), dim_(dim) {}

  Kind kind_;
  Index dim_;
  Vec point_, lo_, hi_, center_, origin_;
  Mat basis_;
  Scalar radius_ = Scalar(0);
};

// ---------------------------------------------------------------------------
// The operator catalog
// ---------------------------------------------------------------------------

/// A maximal monotone operator from the catalog. Immutable after
/// construction; the factories validate structural invariants and precompute
/// the zero-set oracle.
template <typename Scalar>
class Operator {
 public:
  using Vec = VecX<Scalar>;
  using Mat = MatX<Scalar>;

  static Operator identity(Index dim) {
    require_dim(dim);
    Operator op(OpKind::Identity, dim);
    op.zero_set_ = ZeroSet<Scalar>::point(Vec::Zero(dim));
    return op;
  }

  /// A x = Q x - b with Q symmetric positive semidefinite and b in range(Q);
  /// the zero set is the solution flat of Q x = b.
  static Operator quadratic(Mat Q, Vec b) {
    require_dim(Q.rows());
    if (Q.rows() != Q.cols()) throw ParameterError("quadratic: Q must be square");
    detail::require_same_dim(Q.rows(), b.size(), "quadratic");
    require_finite(Q, "quadratic Q");
    require_finite(b, "quadratic b");
    if (((Q - Q.transpose()).cwiseAbs().maxCoeff()) > Scalar(1e-12))
      throw ParameterError("quadratic: Q must be symmetric within 1e-12");

    Eigen::SelfAdjointEigenSolver<Mat> eig(Q);
    if (eig.info() != Eigen::Success) throw ParameterError("quadratic: eigendecomposition failed");
    const Vec& lam = eig.eigenvalues();
    if (lam.minCoeff() < Scalar(-1e-10))
      throw ParameterError("quadratic: Q must be positive semidefinite (eigenvalue below -1e-10)");

    Scalar lmax = std::max(Scalar(1), lam.maxCoeff());
    Scalar null_tol = Scalar(1e-10) * lmax;
    Index nullity = 0;
    for (Index i = 0; i < lam.size(); ++i)
      if (lam[i] <= null_tol) ++nullity;

    // Minimum-norm solution of Q x = b via the eigenbasis.
    Vec coeffs = eig.eigenvectors().transpose() * b;
    Vec x0 = Vec::Zero(b.size());
    for (Index i = 0; i < lam.size(); ++i)
      if (lam[i] > null_tol) x0 += (coeffs[i] / lam[i]) * eig.eigenvectors().col(i);
    if ((Q * x0 - b).norm() > Scalar(1e-8) * std::max(Scalar(1), b.norm()))
      throw ParameterError(
          "quadratic: b is not in the range of Q, the zero set would be empty");

    Operator op(OpKind::Quadratic, Q.rows());
    op.Q_ = std::move(Q);
    op.b_ = std::move(b);
    if (nullity == 0) {
      op.zero_set_ = ZeroSet<Scalar>::point(std::move(x0));
    } else {
      Mat basis(op.dim_, nullity);
      Index c = 0;
      for (Index i = 0; i < lam.size(); ++i)
        if (lam[i] <= null_tol) basis.col(c++) = eig.eigenvectors().col(i);
      op.zero_set_ = ZeroSet<Scalar>::subspace(std::move(x0), std::move(basis));
    }
    return op;
  }

  /// Normal cone of the box [lo, hi].
  static Operator normal_cone_box(Vec lo, Vec hi) {
    require_dim(lo.size());
    detail::require_same_dim(lo.size(), hi.size(), "normal_cone_box");
    require_finite(lo, "normal_cone_box lo");
    require_finite(hi, "normal_cone_box hi");
    if (((hi - lo).minCoeff()) < Scalar(0))
      throw ParameterError("normal_cone_box: lo must be <= hi componentwise");
    Operator op(OpKind::NormalConeBox, lo.size());
    op.zero_set_ = ZeroSet<Scalar>::box(lo, hi);
    op.lo_ = std::move(lo);
    op.hi_ = std::move(hi);
    return op;
  }

  /// Normal cone of the closed ball B(center, radius).
  static Operator normal_cone_ball(Vec center, Scalar radius) {
    require_dim(center.size());
    require_finite(center, "normal_cone_ball center");
    if (!(radius > Scalar(0))) throw ParameterError("normal_cone_ball: radius must be positive");
    Operator op(OpKind::NormalConeBall, center.size());
    op.zero_set_ = ZeroSet<Scalar>::ball(center, radius);
    op.center_ = std::move(center);
    op.radius_ = radius;
    return op;
  }

  /// A x = S x with S antisymmetric; the zero set is the kernel of S.
  static Operator skew(Mat S) {
    require_dim(S.rows());
    if (S.rows() != S.cols()) throw ParameterError("skew: S must be square");
    require_finite(S, "skew S");
    if (((S + S.transpose()).cwiseAbs().maxCoeff()) > Scalar(1e-12))
      throw ParameterError("skew: S + S^T must vanish within 1e-12");

    Operator op(OpKind::Skew, S.rows());
    Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    Scalar smax = sv.size() > 0 ? sv[0] : Scalar(0);
    Scalar tol = Scalar(1e-10) * std::max(Scalar(1), smax);
    Index nullity = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv[i] <= tol) ++nullity;
    if (nullity == 0) {
      op.zero_set_ = ZeroSet<Scalar>::point(Vec::Zero(S.rows()));
    } else {
      Mat basis = svd.matrixV().rightCols(nullity);
      op.zero_set_ = ZeroSet<Scalar>::subspace(Vec::Zero(S.rows()), std::move(basis));
    }
    op.S_ = std::move(S);
    return op;
  }

  /// A x = {c} for every x. The zero set is empty unless c = 0.
  static Operator constant(Vec c) {
    require_dim(c.size());
    require_finite(c, "constant c");
    Operator op(OpKind::Constant, c.size());
    if (c.isZero(Scalar(0))) {
      op.zero_set_ =
          ZeroSet<Scalar>::subspace(Vec::Zero(c.size()), Mat::Identity(c.size(), c.size()));
    } else {
      op.zero_set_ = ZeroSet<Scalar>::empty(c.size());
    }
    op.c_ = std::move(c);
    return op;
  }

  /// A = grad(phi) for phi(x) = sum_i f(x_i - shift_i); the minimizer is
  /// exactly `shift`.
  static Operator smooth_convex(SmoothFn fn, Vec shift) {
    require_dim(shift.size());
    require_finite(shift, "smooth_convex shift");
    Operator op(OpKind::SmoothConvex, shift.size());
    op.fn_ = fn;
    op.zero_set_ = ZeroSet<Scalar>::point(shift);
    op.shift_ = std::move(shift);
    return op;
  }

  OpKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const ZeroSet<Scalar>& zero_set() const { return zero_set_; }

  const Mat& Q() const { return Q_; }
  const Vec& b() const { return b_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const Vec& center() const { return center_; }
  Scalar radius() const { return radius_; }
  const Mat& S() const { return S_; }
  const Vec& c() const { return c_; }
  SmoothFn smooth_fn() const { return fn_; }
  const Vec& shift() const { return shift_; }

 private:
  Operator(OpKind k, Index dim) : kind_(k), dim_(dim), zero_set_(ZeroSet<Scalar>::empty(dim)) {}

  static void require_dim(Index d) {
    if (d < 1) throw ParameterError("operator dimension must be >= 1");
  }

  OpKind kind_;
  Index dim_;
  ZeroSet<Scalar> zero_set_;
  Mat Q_, S_;
  Vec b_, lo_, hi_, center_, c_, shift_;
  Scalar radius_ = Scalar(0);
  SmoothFn fn_ = SmoothFn::Quartic;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Single-valued selection of A x. Normal cones return 0 strictly inside
/// their set and refuse boundary or exterior points.
template <typename Scalar>
VecX<Scalar> evaluate(const Operator<Scalar>& op, const std::type_identity_t<VecX<Scalar>>& x) {
  detail::require_same_dim(x.size(), op.dim(), "evaluate");
  using Vec = VecX<Scalar>;
  switch (op.kind()) {
    case OpKind::Identity: return x;
    case OpKind::Quadratic: return op.Q() * x - op.b();
    case OpKind::Skew: return op.S() * x;
    case OpKind::Constant: return op.c();
    case OpKind::SmoothConvex: {
      Vec g(x.size());
      for (Index i = 0; i < x.size(); ++i)
        g[i] = detail::smooth_deriv(op.smooth_fn(), x[i] - op.shift()[i]);
      return g;
    }
    case OpKind::NormalConeBox:
      for (Index i = 0; i < x.size(); ++i)
        if (!(x[i] > op.lo()[i] && x[i] < op.hi()[i]))
          throw SetValuedError(
              "evaluate: normal cone is set-valued on the boundary; use graph_contains");
      return Vec::Zero(x.size());
    case OpKind::NormalConeBall:
      if (!((x - op.center()).norm() < op.radius()))
        throw SetValuedError(
            "evaluate: normal cone is set-valued on the boundary; use graph_contains");
      return Vec::Zero(x.size());
  }
  return Vec::Zero(x.size());
}

/// Membership of [x, y] in the graph of A, with all comparisons relaxed by
/// tol. Points outside the domain yield false, never an error.
template <typename Scalar>
bool graph_contains(const Operator<Scalar>& op, const std::type_identity_t<VecX<Scalar>>& x,
                    const std::type_identity_t<VecX<Scalar>>& y, Scalar tol) {
  if (!(tol > Scalar(0))) throw ParameterError("graph_contains: tol must be positive");
  detail::require_same_dim(x.size(), op.dim(), "graph_contains");
  detail::require_same_dim(y.size(), op.dim(), "graph_contains");
  switch (op.kind()) {
    case OpKind::Identity: return (y - x).norm() <= tol;
    case OpKind::Quadratic: return (y - (op.Q() * x - op.b())).norm() <= tol;
    case OpKind::Skew: return (y - op.S() * x).norm() <= tol;
    case OpKind::Constant: return (y - op.c()).norm() <= tol;
    case OpKind::SmoothConvex: {
      Scalar sq = Scalar(0);
      for (Index i = 0; i < x.size(); ++i) {
        Scalar d = y[i] - detail::smooth_deriv(op.smooth_fn(), x[i] - op.shift()[i]);
        sq += d * d;
      }
      return std::sqrt(sq) <= tol;
    }
    case OpKind::NormalConeBox: {
      for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < op.lo()[i] - tol || x[i] > op.hi()[i] + tol) return false;
        bool at_hi = x[i] >= op.hi()[i] - tol;
        bool at_lo = x[i] <= op.lo()[i] + tol;
        bool ok = (at_hi && y[i] >= -tol) || (at_lo && y[i] <= tol) || std::abs(y[i]) <= tol;
        if (!ok) return false;
      }
      return true;
    }
    case OpKind::NormalConeBall: {
      VecX<Scalar> d = x - op.center();
      Scalar r = d.norm();
      if (r > op.radius() + tol) return false;
      if (y.norm() <= tol) return true;
      if (r < op.radius() - tol) return false;  // interior: only 0 allowed
      VecX<Scalar> u = d / r;
      Scalar t = y.dot(u);
      return t >= -tol && (y - t * u).norm() <= tol;
    }
  }
  return false;
}

/// Resolvent (I + beta A)^{-1} y. Closed forms everywhere except
/// SmoothConvex, which runs a guarded per-coordinate Newton iteration on
/// g(x) = x + beta*grad(phi)(x) - y until |g| <= inner_tol.
template <typename Scalar>
VecX<Scalar> resolvent(const Operator<Scalar>& op, Scalar beta,
                       const std::type_identity_t<VecX<Scalar>>& y,
                       Scalar inner_tol = Scalar(1e-12), int max_inner = 100) {
  if (!(beta > Scalar(0))) throw ParameterError("resolvent: beta must be positive");
  if (!(inner_tol > Scalar(0))) throw ParameterError("resolvent: inner_tol must be positive");
  detail::require_same_dim(y.size(), op.dim(), "resolvent");
  using Vec = VecX<Scalar>;
  using Mat = MatX<Scalar>;
  switch (op.kind()) {
    case OpKind::Identity: return y / (Scalar(1) + beta);
    case OpKind::Quadratic: {
      Mat A = Mat::Identity(op.dim(), op.dim()) + beta * op.Q();
      return A.ldlt().solve((y + beta * op.b()).eval());
    }
    case OpKind::NormalConeBox: return y.cwiseMax(op.lo()).cwiseMin(op.hi());
    case OpKind::NormalConeBall: {
      Vec d = y - op.center();
      Scalar r = d.norm();
      if (r <= op.radius()) return y;
      return op.center() + (op.radius() / r) * d;
    }
    case OpKind::Skew: {
      Mat A = Mat::Identity(op.dim(), op.dim()) + beta * op.S();
      return A.partialPivLu().solve(y);
    }
    case OpKind::Constant: return y - beta * op.c();
    case OpKind::SmoothConvex: {
      const Index d = op.dim();
      const Scalar per_coord_tol =
          inner_tol / std::sqrt(static_cast<Scalar>(d));
      Vec x(d);
      bool ok = true;
      for (Index i = 0; i < d; ++i) {
        auto root = detail::solve_scalar_prox(op.smooth_fn(), beta, y[i] - op.shift()[i],
                                              per_coord_tol, max_inner);
        x[i] = op.shift()[i] + root.w;
        ok = ok && root.converged;
      }
      if (!ok) {
        Scalar gsq = Scalar(0);
        for (Index i = 0; i < d; ++i) {
          Scalar g = (x[i] - op.shift()[i]) +
                     beta * detail::smooth_deriv(op.smooth_fn(), x[i] - op.shift()[i]) -
                     (y[i] - op.shift()[i]);
          gsq += g * g;
        }
        throw InnerSolveFailure("resolvent: inner solve did not reach inner_tol",
                                static_cast<double>(std::sqrt(gsq)), max_inner);
      }
      return x;
    }
  }
  return y;
}

/// Metric projection of u onto F = A^{-1}(0) via the zero-set oracle.
template <typename Scalar>
VecX<Scalar> zero_projection(const Operator<Scalar>& op,
                             const std::type_identity_t<VecX<Scalar>>& u) {
  detail::require_same_dim(u.size(), op.dim(), "zero_projection");
  return op.zero_set().project(u);
}

/// phi(x) for the subdifferential kinds with an evaluable objective
/// (Quadratic: x'Qx/2 - b'x; SmoothConvex: sum f(x_i - shift_i)).
template <typename Scalar>
Scalar objective_value(const Operator<Scalar>& op, const std::type_identity_t<VecX<Scalar>>& x) {
  detail::require_same_dim(x.size(), op.dim(), "objective_value");
  switch (op.kind()) {
    case OpKind::Quadratic:
      return Scalar(0.5) * x.dot(op.Q() * x) - op.b().dot(x);
    case OpKind::SmoothConvex: {
      Scalar v = Scalar(0);
      for (Index i = 0; i < x.size(); ++i)
        v += detail::smooth_value(op.smooth_fn(), x[i] - op.shift()[i]);
      return v;
    }
    default:
      throw ParameterError("objective_value: no evaluable objective for this kind");
  }
}

}  // namespace proxpoint
