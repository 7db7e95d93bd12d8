#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>

#include "proxpoint/errors.hpp"

namespace proxpoint {

using Index = Eigen::Index;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": incompatible operands (dim " << a << " vs " << b << ")";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace detail

/// Euclidean scalar product of two vectors of equal dimension.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& x,
                                const Eigen::MatrixBase<DerivedB>& y) {
  detail::require_same_dim(x.size(), y.size(), "inner");
  return x.dot(y);
}

/// Euclidean norm, sqrt(inner(x, x)).
template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& x) {
  return x.norm();
}

/// a*x + b*y, componentwise.
template <typename DerivedA, typename DerivedB>
VecX<typename DerivedA::Scalar> combine(typename DerivedA::Scalar a,
                                        const Eigen::MatrixBase<DerivedA>& x,
                                        typename DerivedB::Scalar b,
                                        const Eigen::MatrixBase<DerivedB>& y) {
  detail::require_same_dim(x.size(), y.size(), "combine");
  return a * x + b * y;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
  return x.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* what) {
  if (!x.allFinite()) {
    throw ParameterError(std::string(what) + ": entries must be finite");
  }
}

/// Parses a whitespace-separated list of decimal literals.
inline VecX<double> parse_vector(const std::string& text) {
  std::istringstream is(text);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  if (!is.eof()) throw ParameterError("parse_vector: invalid literal in \"" + text + "\"");
  if (vals.empty()) throw ParameterError("parse_vector: empty vector literal");
  VecX<double> out(static_cast<Index>(vals.size()));
  for (Index i = 0; i < out.size(); ++i) out[i] = vals[static_cast<size_t>(i)];
  require_finite(out, "parse_vector");
  return out;
}

}  // namespace proxpoint
