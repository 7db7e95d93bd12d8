#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "proxpoint/algorithms.hpp"

namespace proxpoint {

/// Shortest round-trip decimal form; stable across runs for byte-identical
/// output.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Trace serialization. One row per record; row 0 is the starting point and
/// carries residual 0 by convention.
template <typename Scalar>
void write_trace_csv(std::ostream& os, const Trace<Scalar>& tr) {
  os << "n,beta,alpha,unorm,enorm,xnorm,residual,dist_to_target";
  Index d = tr.records.empty() ? 0 : tr.records.front().x.size();
  for (Index i = 0; i < d; ++i) os << ",x" << i;
  os << "\n";
  for (const auto& r : tr.records) {
    os << r.n << ',' << format_double(static_cast<double>(r.beta)) << ','
       << format_double(static_cast<double>(r.alpha_or_lambda)) << ','
       << format_double(static_cast<double>(r.u_norm)) << ','
       << format_double(static_cast<double>(r.e_norm)) << ','
       << format_double(static_cast<double>(r.x.norm())) << ','
       << format_double(static_cast<double>(r.residual_norm)) << ','
       << format_double(static_cast<double>(r.dist_to_target));
    for (Index i = 0; i < r.x.size(); ++i)
      os << ',' << format_double(static_cast<double>(r.x[i]));
    os << "\n";
  }
}

}  // namespace proxpoint
