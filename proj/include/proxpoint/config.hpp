#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "proxpoint/algorithms.hpp"
#include "proxpoint/operators.hpp"
#include "proxpoint/schedules.hpp"
#include "proxpoint/space.hpp"

namespace proxpoint {

/// A fully assembled experiment: operator, variant, schedules, start point,
/// run controls.
struct Experiment {
  Operator<double> op;
  Variant variant;
  ScheduleSet<double> schedules;
  VecX<double> x0;
  RunConfig<double> run_cfg;
  std::uint64_t seed;
  std::string output;
  bool observed;
};

namespace cfgdetail {

struct Entry {
  std::string value;
  int line;
};

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline double parse_real(const std::string& s, int line, const std::string& what) {
  try {
    size_t pos;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, what + ": invalid number '" + s + "'");
  }
}

inline long long parse_int(const std::string& s, int line, const std::string& what) {
  try {
    size_t pos;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, what + ": invalid integer '" + s + "'");
  }
}

inline std::uint64_t parse_seed(const std::string& s, int line, const std::string& what) {
  try {
    size_t pos;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, what + ": invalid seed '" + s + "'");
  }
}

inline VecX<double> parse_vec(const std::string& s, int line, const std::string& what) {
  try {
    return parse_vector(s);
  } catch (const std::exception& e) {
    throw ConfigError(line, what + ": " + e.what());
  }
}

// Scalar schedule literal: const:v | poly:a:p | geom:a:r | inv:a |
// oneminus:<literal>
inline ScalarSchedule<double> parse_scalar_schedule(const std::string& text, int line,
                                                    const std::string& what) {
  auto toks = split(text, ':');
  const std::string& fam = toks[0];
  auto need = [&](size_t n) {
    if (toks.size() != n)
      throw ConfigError(line, what + ": family '" + fam + "' expects " + std::to_string(n - 1) +
                                   " parameter(s) in '" + text + "'");
  };
  if (fam == "const") {
    need(2);
    return ScalarSchedule<double>::constant(parse_real(toks[1], line, what));
  }
  if (fam == "poly") {
    need(3);
    return ScalarSchedule<double>::poly(parse_real(toks[1], line, what),
                                        parse_real(toks[2], line, what));
  }
  if (fam == "geom") {
    need(3);
    return ScalarSchedule<double>::geom(parse_real(toks[1], line, what),
                                        parse_real(toks[2], line, what));
  }
  if (fam == "inv") {
    need(2);
    return ScalarSchedule<double>::inv(parse_real(toks[1], line, what));
  }
  if (fam == "oneminus") {
    if (toks.size() < 2)
      throw ConfigError(line, what + ": oneminus needs an inner schedule in '" + text + "'");
    std::string rest = text.substr(fam.size() + 1);
    return ScalarSchedule<double>::one_minus(parse_scalar_schedule(rest, line, what));
  }
  throw ConfigError(line, what + ": unknown schedule family '" + fam + "'");
}

// Vector schedule literal: const:<vec> | converging:p:<vec u>:<vec d> |
// halpern:<vec u>:<vec y0>:<scalar literal>
inline VectorSchedule<double> parse_vector_schedule(const std::string& text, int line,
                                                    const std::string& what) {
  auto toks = split(text, ':');
  const std::string& fam = toks[0];
  if (fam == "const") {
    if (toks.size() != 2)
      throw ConfigError(line, what + ": const expects one vector in '" + text + "'");
    return VectorSchedule<double>::constant(parse_vec(toks[1], line, what));
  }
  if (fam == "converging") {
    if (toks.size() != 4)
      throw ConfigError(line, what + ": converging expects p:<u>:<d> in '" + text + "'");
    try {
      return VectorSchedule<double>::converging(parse_vec(toks[2], line, what),
                                                parse_vec(toks[3], line, what),
                                                parse_real(toks[1], line, what));
    } catch (const ParameterError& e) {
      throw ConfigError(line, what + ": " + e.what());
    }
  }
  if (fam == "halpern") {
    if (toks.size() < 4)
      throw ConfigError(line, what + ": halpern expects <u>:<y0>:<lambda literal> in '" + text + "'");
    std::string rest = text;
    // strip "halpern:<u>:<y0>:"
    rest = rest.substr(fam.size() + 1);
    rest = rest.substr(toks[1].size() + 1);
    rest = rest.substr(toks[2].size() + 1);
    return VectorSchedule<double>::halpern(parse_vec(toks[1], line, what),
                                           parse_vec(toks[2], line, what),
                                           parse_scalar_schedule(rest, line, what));
  }
  throw ConfigError(line, what + ": unknown vector schedule family '" + fam + "'");
}

// Error literal: zero | bounded:<bound>:<seed> | growing:<q>:<vec> |
// summable:<r>:<vec>
inline ErrorModel<double> parse_error_model(const std::string& text, int line,
                                            const std::string& what, Index dim) {
  auto toks = split(text, ':');
  const std::string& fam = toks[0];
  try {
    if (fam == "zero") {
      if (toks.size() != 1) throw ConfigError(line, what + ": zero takes no parameters");
      return ErrorModel<double>::zero(dim);
    }
    if (fam == "bounded") {
      if (toks.size() != 3)
        throw ConfigError(line, what + ": bounded expects bound:seed in '" + text + "'");
      return ErrorModel<double>::bounded_random(parse_real(toks[1], line, what),
                                                parse_seed(toks[2], line, what), dim);
    }
    if (fam == "growing") {
      if (toks.size() != 3)
        throw ConfigError(line, what + ": growing expects q:<vector> in '" + text + "'");
      return ErrorModel<double>::growing(parse_vec(toks[2], line, what),
                                         parse_real(toks[1], line, what));
    }
    if (fam == "summable") {
      if (toks.size() != 3)
        throw ConfigError(line, what + ": summable expects r:<vector> in '" + text + "'");
      return ErrorModel<double>::summable(parse_vec(toks[2], line, what),
                                          parse_real(toks[1], line, what));
    }
  } catch (const ParameterError& e) {
    throw ConfigError(line, what + ": " + e.what());
  }
  throw ConfigError(line, what + ": unknown error family '" + fam + "'");
}

class KeyMap {
 public:
  void insert(const std::string& key, const std::string& value, int line) {
    if (map_.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
    map_[key] = {value, line};
  }
  std::optional<Entry> get(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    used_.insert(it->first);
    return it->second;
  }
  Entry require(const std::string& key) {
    auto e = get(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return *e;
  }
  void check_all_used() const {
    for (const auto& [k, v] : map_)
      if (!used_.count(k)) throw ConfigError(v.line, "unknown key '" + k + "'");
  }

 private:
  std::map<std::string, Entry> map_;
  std::set<std::string> used_;
};

inline MatX<double> parse_matrix(const std::string& text, Index dim, int line,
                                 const std::string& what) {
  VecX<double> flat = parse_vec(text, line, what);
  if (flat.size() != dim * dim)
    throw ConfigError(line, what + ": expected " + std::to_string(dim * dim) +
                                " row-major entries, got " + std::to_string(flat.size()));
  MatX<double> M(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) M(r, c) = flat[r * dim + c];
  return M;
}

inline Operator<double> build_operator(KeyMap& keys, Index dim) {
  Entry op = keys.require("operator");
  const std::string& kind = op.value;
  try {
    if (kind == "identity") return Operator<double>::identity(dim);
    if (kind == "quadratic") {
      Entry q = keys.require("Q");
      Entry b = keys.require("b");
      return Operator<double>::quadratic(parse_matrix(q.value, dim, q.line, "Q"),
                                         parse_vec(b.value, b.line, "b"));
    }
    if (kind == "normal_cone_box") {
      Entry lo = keys.require("lo");
      Entry hi = keys.require("hi");
      return Operator<double>::normal_cone_box(parse_vec(lo.value, lo.line, "lo"),
                                               parse_vec(hi.value, hi.line, "hi"));
    }
    if (kind == "normal_cone_ball") {
      Entry c = keys.require("center");
      Entry r = keys.require("radius");
      return Operator<double>::normal_cone_ball(parse_vec(c.value, c.line, "center"),
                                                parse_real(r.value, r.line, "radius"));
    }
    if (kind == "skew") {
      Entry s = keys.require("S");
      return Operator<double>::skew(parse_matrix(s.value, dim, s.line, "S"));
    }
    if (kind == "constant") {
      Entry c = keys.require("c");
      return Operator<double>::constant(parse_vec(c.value, c.line, "c"));
    }
    if (kind == "smooth_convex") {
      Entry f = keys.require("func");
      SmoothFn fn;
      if (f.value == "quartic") fn = SmoothFn::Quartic;
      else if (f.value == "logcosh") fn = SmoothFn::LogCosh;
      else throw ConfigError(f.line, "unknown smooth function '" + f.value + "'");
      VecX<double> shift = VecX<double>::Zero(dim);
      if (auto sh = keys.get("shift")) shift = parse_vec(sh->value, sh->line, "shift");
      return Operator<double>::smooth_convex(fn, shift);
    }
  } catch (const ParameterError& e) {
    throw ConfigError(op.line, std::string("operator: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw ConfigError(op.line, std::string("operator: ") + e.what());
  }
  throw ConfigError(op.line, "unknown operator kind '" + kind + "'");
}

}  // namespace cfgdetail

/// Loads an experiment from a flat `key = value` config file. '#' starts a
/// comment. Errors carry the offending line number. PROXPOINT_SEED in the
/// environment overrides the config seed.
inline Experiment load_experiment(const std::string& path) {
  using namespace cfgdetail;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  KeyMap keys;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected 'key = value', got '" + trim(raw) + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "empty key");
    if (value.empty()) throw ConfigError(lineno, "empty value for key '" + key + "'");
    keys.insert(key, value, lineno);
  }

  Entry dim_e = keys.require("dim");
  long long dim_v = parse_int(dim_e.value, dim_e.line, "dim");
  if (dim_v < 1) throw ConfigError(dim_e.line, "dim must be >= 1");
  Index dim = static_cast<Index>(dim_v);

  Operator<double> op = build_operator(keys, dim);

  Variant variant = Variant::General;
  if (auto v = keys.get("variant")) {
    try {
      variant = parse_variant(v->value);
    } catch (const ParameterError& e) {
      throw ConfigError(v->line, e.what());
    }
  }

  ScalarSchedule<double> beta = ScalarSchedule<double>::poly(1, 1);
  if (auto b = keys.get("beta")) beta = parse_scalar_schedule(b->value, b->line, "beta");

  const bool anchored = variant == Variant::Xu || variant == Variant::Xu2;
  ScalarSchedule<double> aol =
      variant == Variant::General ? ScalarSchedule<double>::inv(1)
                                  : ScalarSchedule<double>::constant(0);
  if (anchored) {
    Entry lam = keys.require("lambda");
    aol = parse_scalar_schedule(lam.value, lam.line, "lambda");
  } else if (auto a = keys.get("alpha")) {
    aol = parse_scalar_schedule(a->value, a->line, "alpha");
  }

  VectorSchedule<double> u = VectorSchedule<double>::constant(VecX<double>::Zero(dim));
  if (variant == Variant::Ppa) {
    if (auto ue = keys.get("u")) u = parse_vector_schedule(ue->value, ue->line, "u");
  } else {
    Entry ue = keys.require("u");
    u = parse_vector_schedule(ue.value, ue.line, "u");
  }
  if (u.dim() != dim) throw ConfigError("u schedule dimension disagrees with dim");

  ErrorModel<double> err = ErrorModel<double>::zero(dim);
  std::optional<int> err_line;
  if (auto e = keys.get("error")) {
    err = parse_error_model(e->value, e->line, "error", dim);
    err_line = e->line;
  }
  if (err.dim() != dim)
    throw ConfigError(err_line.value_or(0), "error model dimension disagrees with dim");

  VecX<double> x0 = VecX<double>::Zero(dim);
  if (auto xe = keys.get("x0")) {
    x0 = parse_vec(xe->value, xe->line, "x0");
    if (x0.size() != dim) throw ConfigError(xe->line, "x0 dimension disagrees with dim");
  }

  RunConfig<double> rc;
  if (auto e = keys.get("max_iter")) {
    long long v = parse_int(e->value, e->line, "max_iter");
    if (v < 1) throw ConfigError(e->line, "max_iter must be positive");
    rc.max_iter = static_cast<Index>(v);
  }
  if (auto e = keys.get("stop_tol")) rc.stop_tol = parse_real(e->value, e->line, "stop_tol");
  if (auto e = keys.get("divergence_threshold"))
    rc.divergence_threshold = parse_real(e->value, e->line, "divergence_threshold");
  if (auto e = keys.get("inner_tol")) rc.inner_tol = parse_real(e->value, e->line, "inner_tol");
  if (auto e = keys.get("max_inner")) {
    long long v = parse_int(e->value, e->line, "max_inner");
    if (v < 1) throw ConfigError(e->line, "max_inner must be positive");
    rc.max_inner = static_cast<int>(v);
  }
  try {
    rc.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }

  std::uint64_t seed = err.seed();
  if (auto s = keys.get("seed")) seed = parse_seed(s->value, s->line, "seed");
  if (const char* env = std::getenv("PROXPOINT_SEED")) {
    seed = parse_seed(env, 0, "PROXPOINT_SEED");
  }
  err = err.with_seed(seed);

  std::string output = "trace.csv";
  if (auto o = keys.get("output")) output = o->value;

  bool observed = false;
  if (auto m = keys.get("mode")) {
    if (m->value == "observed") observed = true;
    else if (m->value == "exact") observed = false;
    else throw ConfigError(m->line, "mode must be 'exact' or 'observed'");
  }

  keys.check_all_used();

  return Experiment{std::move(op), variant,
                    ScheduleSet<double>{std::move(beta), std::move(aol), std::move(u),
                                        std::move(err)},
                    std::move(x0), rc, seed, std::move(output), observed};
}

/// Rebinds one swept parameter on a loaded experiment. Accepted names:
/// beta.<param>, alpha.<param>, lambda.<param>, u, x0, error.bound.
inline void apply_sweep_value(Experiment& e, const std::string& name, const std::string& value) {
  using namespace cfgdetail;
  auto as_real = [&]() {
    try {
      size_t pos;
      double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ParameterError("sweep value '" + value + "' is not a number");
    }
  };
  if (name == "u") {
    VecX<double> v = parse_vector(value);
    if (v.size() != e.op.dim()) throw ParameterError("sweep u: dimension disagrees with operator");
    e.schedules.u = VectorSchedule<double>::constant(std::move(v));
    return;
  }
  if (name == "x0") {
    VecX<double> v = parse_vector(value);
    if (v.size() != e.op.dim()) throw ParameterError("sweep x0: dimension disagrees with operator");
    e.x0 = std::move(v);
    return;
  }
  if (name == "error.bound") {
    e.schedules.error.set_bound(as_real());
    return;
  }
  auto dot = name.find('.');
  if (dot != std::string::npos) {
    std::string head = name.substr(0, dot);
    std::string param = name.substr(dot + 1);
    if (head == "beta") {
      e.schedules.beta.set_param(param, as_real());
      return;
    }
    if (head == "alpha" || head == "lambda") {
      e.schedules.alpha_or_lambda.set_param(param, as_real());
      return;
    }
  }
  throw ParameterError("unknown sweep parameter '" + name +
                       "' (expected beta.*, alpha.*, lambda.*, u, x0, error.bound)");
}

}  // namespace proxpoint
