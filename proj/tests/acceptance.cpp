// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run directly or via `ctest -R acceptance`.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "proxpoint/config.hpp"
#include "proxpoint/csv.hpp"
#include "proxpoint/diagnostics.hpp"

using namespace proxpoint;
using Op = Operator<double>;
using SS = ScalarSchedule<double>;
using VS = VectorSchedule<double>;
using EM = ErrorModel<double>;
using Vec = VecX<double>;
using Mat = MatX<double>;
namespace fs = std::filesystem;

namespace {

void report(const char* criterion, bool ok) {
  std::printf("%-60s %s\n", criterion, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(ok, criterion);
}

// ---------------------------------------------------------------------------
// The acceptance catalog: one instance per operator kind and dimension.
// Anchors come in two flavours: `u_near` sits close to the solution set (the
// practical recommendation for fast runs; the approach term scales like
// |u - P_F u| / beta_n), `u_far` is an ordinary faraway point for the
// resolvent-limit checks.
// ---------------------------------------------------------------------------

struct Instance {
  std::string name;
  Op op;
  Vec u_near;
  Vec u_far;
  Vec x0;
};

Mat rotation_blocks(Index d) {
  Mat s = Mat::Zero(d, d);
  for (Index i = 0; i + 1 < d; i += 2) {
    s(i, i + 1) = -1;
    s(i + 1, i) = 1;
  }
  return s;
}

std::vector<Instance> catalog(Index d) {
  std::vector<Instance> out;
  const Vec ones = Vec::Ones(d);
  const Vec unit_ones = ones / ones.norm();
  const Vec e1 = Vec::Unit(d, 0);
  const Vec ed = Vec::Unit(d, d - 1);

  out.push_back({"identity", Op::identity(d), 0.003 * unit_ones, 2.0 * unit_ones, ones});

  {
    Mat q;
    if (d == 1) {
      q = Mat::Constant(1, 1, 1.5);
    } else if (d == 2) {
      q = Mat(2, 2);
      q << 2, 0.3, 0.3, 1.2;
    } else {
      q = Mat::Zero(d, d);
      for (Index i = 0; i < d; ++i) q(i, i) = static_cast<double>(i + 1);
    }
    Vec p(d);
    for (Index i = 0; i < d; ++i) p[i] = 1.0 - static_cast<double>(i) / (2.0 * d);
    Vec b = q * p;
    out.push_back({"quadratic", Op::quadratic(q, b), p + 0.003 * e1, p + 2.0 * e1, Vec::Zero(d)});
  }

  out.push_back({"normal_cone_box", Op::normal_cone_box(-ones, ones), 1.01 * ed, 2.0 * ones,
                 0.5 * ones});
  out.push_back({"normal_cone_ball", Op::normal_cone_ball(Vec::Zero(d), 1.0), 1.01 * e1,
                 2.0 * ones, 0.3 * ones});
  out.push_back({"skew", Op::skew(rotation_blocks(d)), 0.003 * unit_ones, 2.0 * unit_ones, ones});
  out.push_back({"smooth_convex", Op::smooth_convex(SmoothFn::LogCosh, Vec(0.3 * ones)),
                 Vec(0.3 * ones + 0.003 * e1), Vec(0.3 * ones + 2.0 * e1), Vec::Zero(d)});
  return out;
}

const std::vector<Index> kDims = {1, 2, 10};

Trace<double> run_near(const Instance& inst, const EM& err, Index max_iter, double stop_tol) {
  ScheduleSet<double> sch{SS::poly(1, 1), SS::inv(1), VS::constant(inst.u_near), err};
  RunConfig<double> cfg;
  cfg.max_iter = max_iter;
  cfg.stop_tol = stop_tol;
  return run(Variant::General, inst.op, sch, inst.x0, cfg);
}

// ---------------------------------------------------------------------------
// CLI harness
// ---------------------------------------------------------------------------

std::string cli_path() {
  if (const char* p = std::getenv("PROXPOINT_CLI")) return p;
  return PROXPOINT_CLI_DEFAULT;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path p =
        fs::temp_directory_path() / ("proxpoint_accept_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  fs::path out = scratch_dir() / "stdout.txt";
  fs::path err = scratch_dir() / "stderr.txt";
  std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + cli_path() + " " + args +
                    " > " + out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return {code, slurp(out), slurp(err)};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("criterion 1: strong convergence to the projected anchor") {
  bool ok = true;
  for (Index d : kDims) {
    for (const auto& inst : catalog(d)) {
      auto t0 = std::chrono::steady_clock::now();
      Trace<double> tr = run_near(inst, EM::zero(d), 10000, 1e-6);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      bool converged = tr.min_dist() <= 1e-6;
      bool fast = secs < 5.0;
      if (!(converged && fast))
        std::printf("  [c1] %s d=%lld min_dist=%.3g secs=%.2f\n", inst.name.c_str(),
                    static_cast<long long>(d), tr.min_dist(), secs);
      ok = ok && converged && fast;
    }
  }
  report("criterion 1: convergence |x_n - P_F u| <= 1e-6 in 1e4", ok);
}

TEST_CASE("criterion 2: robustness to bounded and growing errors") {
  bool ok = true;
  std::uint64_t seed = 1000;
  for (Index d : kDims) {
    for (const auto& inst : catalog(d)) {
      Trace<double> tb = run_near(inst, EM::bounded_random(1.0, seed++, d), 100000, 1e-3);
      bool bounded_ok = tb.min_dist() <= 1e-3;
      Vec v = Vec::Ones(d) / std::sqrt(static_cast<double>(d));
      Trace<double> tg = run_near(inst, EM::growing(v, 0.5), 100000, 1e-2);
      bool growing_ok = tg.min_dist() <= 1e-2;
      if (!(bounded_ok && growing_ok))
        std::printf("  [c2] %s d=%lld bounded=%.3g growing=%.3g\n", inst.name.c_str(),
                    static_cast<long long>(d), tb.min_dist(), tg.min_dist());
      ok = ok && bounded_ok && growing_ok;
    }
  }
  report("criterion 2: error robustness (1e-3 bounded, 1e-2 growing)", ok);
}

TEST_CASE("criterion 3: boundedness dichotomy") {
  bool ok = true;

  // empty zero set: the run must blow past 1e6 and be flagged
  {
    Op c = Op::constant((Vec(2) << 1, 0).finished());
    ScheduleSet<double> sch{SS::poly(1, 2), SS::inv(1),
                            VS::constant((Vec(2) << 2, 0).finished()), EM::zero(2)};
    RunConfig<double> cfg;
    cfg.max_iter = 10000;
    cfg.divergence_threshold = 1e6;
    Trace<double> tr = run(Variant::General, c, sch, Vec::Zero(2), cfg);
    ok = ok && tr.status == RunStatus::Diverged && tr.max_x_norm() > 1e6;
  }

  // nonempty zero sets: the geometric bound holds with the assembled
  // constants from the first index where |alpha_n| <= c < 1 (n >= 1 here)
  for (Index d : kDims) {
    for (const auto& inst : catalog(d)) {
      Trace<double> tr = run_near(inst, EM::zero(d), 10000, 1e-6);
      Vec p = zero_projection(inst.op, inst.u_near);
      auto consts = boundedness_constants(tr, p);
      bool start_ok = consts.start == 1 && consts.c == 0.5;
      auto cert = check_boundedness(tr, consts.c, consts.c1, consts.start);
      if (!(start_ok && cert.holds))
        std::printf("  [c3] %s d=%lld holds=%d\n", inst.name.c_str(), static_cast<long long>(d),
                    int(cert.holds));
      ok = ok && start_ok && cert.holds;
    }
  }
  report("criterion 3: divergence flag + boundedness certificates", ok);
}

TEST_CASE("criterion 4: resolvent limit curve reaches the projection") {
  bool ok = true;
  std::vector<double> lambdas;
  for (double l = 1.0; l <= 1e6 + 1; l *= 10) lambdas.push_back(l);
  for (Index d : kDims) {
    for (const auto& inst : catalog(d)) {
      auto curve = resolvent_limit_curve(inst.op, inst.u_far, lambdas);
      bool small = curve.last_distance() <= 1e-3;
      bool dominated = curve.last_distance() <= curve.first_distance() + 1e-12;
      if (!(small && dominated))
        std::printf("  [c4] %s d=%lld dist(1)=%.3g dist(1e6)=%.3g\n", inst.name.c_str(),
                    static_cast<long long>(d), curve.first_distance(), curve.last_distance());
      ok = ok && small && dominated;
    }
  }
  report("criterion 4: limit curve <= 1e-3 at 1e6, dominated by dist(1)", ok);
}

TEST_CASE("criterion 5: reduction identities") {
  bool ok = true;
  {
    Mat q(2, 2);
    q << 2, 0.3, 0.3, 1.2;
    Vec p = (Vec(2) << 1, 0.75).finished();
    Op quad = Op::quadratic(q, Vec(q * p));
    Vec u = (Vec(2) << 3, 1).finished();
    SS lambda = SS::one_minus(SS::inv(1));
    EM err = EM::bounded_random(0.5, 4242, 2);

    ScheduleSet<double> xu2{SS::poly(1, 1), lambda, VS::constant(u), err};
    ScheduleSet<double> gen{SS::poly(1, 1), SS::one_minus(lambda),
                            VS::halpern(u, Vec::Zero(2), lambda), err};
    RunConfig<double> cfg;
    cfg.max_iter = 1000;
    cfg.stop_tol = 1e-300;
    Trace<double> a = run(Variant::Xu2, quad, xu2, (Vec(2) << 5, -5).finished(), cfg, true);
    Trace<double> b = run(Variant::General, quad, gen, (Vec(2) << 5, -5).finished(), cfg, true);
    ok = ok && a.records.size() == 1001 && a.records.size() == b.records.size();
    double worst = 0;
    for (size_t k = 0; k < a.records.size() && ok; ++k)
      for (Index i = 0; i < 2; ++i)
        worst = std::max(worst, std::abs(a.records[k].x[i] - b.records[k].x[i]));
    ok = ok && worst <= 1e-14;
  }
  {
    Op id = Op::identity(2);
    EM err = EM::bounded_random(1.0, 777, 2);
    VS u = VS::converging((Vec(2) << 1, -1).finished(), (Vec(2) << 2, 3).finished(), 1.0);
    ScheduleSet<double> s1{SS::poly(1, 1), SS::constant(0), u, err};
    RunConfig<double> cfg;
    cfg.max_iter = 1000;
    cfg.stop_tol = 1e-300;
    Trace<double> a = run(Variant::Simple, id, s1, (Vec(2) << 4, 4).finished(), cfg);
    Trace<double> b = run(Variant::General, id, s1, (Vec(2) << 4, 4).finished(), cfg);
    ok = ok && a.records.size() == b.records.size();
    for (size_t k = 0; k < a.records.size() && ok; ++k)
      ok = ok && a.records[k].x == b.records[k].x;  // bit-identical
  }
  report("criterion 5: general<->xu2 (1e-14), simple<->general (exact)", ok);
}

TEST_CASE("criterion 6: resolvent correctness oracles") {
  bool ok = true;
  // quartic: x + x^3 = 2 has the exact root 1
  {
    Op quartic = Op::smooth_convex(SmoothFn::Quartic, Vec::Zero(1));
    Vec x = resolvent(quartic, 1.0, Vec::Constant(1, 2.0), 1e-12);
    ok = ok && std::abs(x[0] - 1.0) <= 1e-10;
  }
  // quadratic graph consistency: (y - x)/beta = Q x - b
  {
    Mat q(3, 3);
    q << 3, 0.5, 0, 0.5, 2, 0.25, 0, 0.25, 1;
    Vec p = (Vec(3) << 1, -1, 2).finished();
    Op quad = Op::quadratic(q, Vec(q * p));
    rng::Stream rs(606);
    for (double beta : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
      for (int t = 0; t < 20; ++t) {
        Vec y = 3.0 * rs.normal_vec(3);
        Vec x = resolvent(quad, beta, y);
        Vec lhs = (y - x) / beta;
        Vec rhs = evaluate(quad, x);
        ok = ok && (lhs - rhs).norm() <= 1e-10;
      }
    }
  }
  // proximal envelope gradient by central differences
  {
    rng::Stream rs(607);
    std::vector<Op> ops;
    Mat q2(2, 2);
    q2 << 2, 0.5, 0.5, 1;
    ops.push_back(Op::quadratic(q2, (Vec(2) << 1, -1).finished()));
    ops.push_back(Op::smooth_convex(SmoothFn::Quartic, (Vec(2) << 0.1, -0.2).finished()));
    ops.push_back(Op::smooth_convex(SmoothFn::LogCosh, (Vec(2) << 0, 0.3).finished()));
    for (const auto& op : ops) {
      for (double beta : {0.5, 2.0}) {
        auto envelope = [&](const Vec& y) {
          Vec j = resolvent(op, beta, y, 1e-14);
          return objective_value(op, j) + (j - y).squaredNorm() / (2.0 * beta);
        };
        for (int t = 0; t < 10; ++t) {
          Vec y = 2.0 * rs.normal_vec(2);
          Vec j = resolvent(op, beta, y, 1e-14);
          Vec grad = (y - j) / beta;
          const double h = 1e-5;
          for (Index i = 0; i < 2; ++i) {
            Vec yp = y, ym = y;
            yp[i] += h;
            ym[i] -= h;
            double fd = (envelope(yp) - envelope(ym)) / (2.0 * h);
            ok = ok && std::abs(fd - grad[i]) <= 1e-5;
          }
        }
      }
    }
  }
  report("criterion 6: inner solve, graph and envelope oracles", ok);
}

TEST_CASE("criterion 7: nonexpansiveness probe across the catalog") {
  bool ok = true;
  std::uint64_t seed = 9000;
  for (Index d : kDims) {
    for (const auto& inst : catalog(d)) {
      auto rep = probe_nonexpansive(inst.op, 1000, seed++);
      if (!rep.passed)
        std::printf("  [c7] %s d=%lld max_ratio=%.17g\n", inst.name.c_str(),
                    static_cast<long long>(d), rep.max_ratio);
      ok = ok && rep.passed;
    }
  }
  ok = ok && probe_nonexpansive(Op::constant((Vec(2) << 1, 0).finished()), 1000, seed).passed;
  report("criterion 7: max ratio <= 1 + 1e-12 over 1000 trials", ok);
}

TEST_CASE("criterion 8: observed iterates stay within the error bound") {
  bool ok = true;
  std::vector<Op> ops;
  ops.push_back(Op::identity(2));
  ops.push_back(Op::quadratic(Mat::Identity(2, 2), (Vec(2) << 1, 1).finished()));
  std::uint64_t seed = 31;
  for (const auto& op : ops) {
    ScheduleSet<double> sch{SS::poly(1, 1), SS::inv(1),
                            VS::constant((Vec(2) << 1.4, 0.7).finished()),
                            EM::bounded_random(0.1, seed++, 2)};
    RunConfig<double> cfg;
    cfg.max_iter = 1000;
    cfg.stop_tol = 1e-300;
    Trace<double> tr = simulate_observed(op, sch, cfg);
    ok = ok && tr.records.size() == 1001;
    ok = ok && tr.max_observed_gap() > 0.0 && tr.max_observed_gap() <= 0.1;
  }
  report("criterion 8: max |x_n - z_n| <= 0.1 over 1e3 steps", ok);
}

TEST_CASE("criterion 9: CLI exit codes and byte-identical traces") {
  bool ok = true;
  const std::string dir = scratch_dir().string();

  // exit 0: convergent run
  fs::path cfg0 = write_file("converge.cfg",
                             "dim = 2\n"
                             "operator = quadratic\n"
                             "Q = 1 0 0 1\n"
                             "b = 1 1\n"
                             "u = const:1.003 1.004\n"
                             "stop_tol = 1e-6\n"
                             "max_iter = 10000\n"
                             "output = " + dir + "/converge.csv\n");
  auto r0 = run_cli("run " + cfg0.string());
  ok = ok && r0.exit_code == 0;
  ok = ok && r0.out.find("status=CONVERGED") != std::string::npos;

  // exit 2: iteration budget exhausted
  fs::path cfg2 = write_file("budget.cfg",
                             "dim = 2\n"
                             "operator = quadratic\n"
                             "Q = 1 0 0 1\n"
                             "b = 1 1\n"
                             "u = const:1.003 1.004\n"
                             "stop_tol = 1e-6\n"
                             "max_iter = 50\n"
                             "output = " + dir + "/budget.csv\n");
  auto r2 = run_cli("run " + cfg2.string());
  ok = ok && r2.exit_code == 2;
  // CSV rows = iterations + 1 (+ header)
  ok = ok && count_lines(slurp(dir + "/budget.csv")) == 52;

  // exit 3: empty zero set diverges (flag exercised too)
  fs::path cfg3 = write_file("diverge.cfg",
                             "dim = 2\n"
                             "operator = constant\n"
                             "c = 1 0\n"
                             "u = const:2 0\n"
                             "beta = poly:1:2\n"
                             "divergence_threshold = 1e6\n"
                             "max_iter = 20000\n"
                             "output = " + dir + "/diverge.csv\n");
  auto r3 = run_cli("run " + cfg3.string() + " --no-validate");
  ok = ok && r3.exit_code == 3;

  // exit 4: validator rejection names the failed condition
  fs::path cfg4 = write_file("reject.cfg",
                             "dim = 2\n"
                             "operator = identity\n"
                             "u = const:2 0\n"
                             "beta = const:1\n"
                             "output = " + dir + "/reject.csv\n");
  auto r4 = run_cli("run " + cfg4.string());
  ok = ok && r4.exit_code == 4;
  ok = ok && r4.err.find("beta_n -> infinity") != std::string::npos;

  // exit 4: line-numbered parse diagnostic
  fs::path cfg4b = write_file("malformed.cfg", "dim = 2\nbogus line\n");
  auto r4b = run_cli("run " + cfg4b.string());
  ok = ok && r4b.exit_code == 4;
  ok = ok && r4b.err.find("line 2") != std::string::npos;

  // determinism: identical config + seed => byte-identical CSV
  fs::path cfgd = write_file("det.cfg",
                             "dim = 2\n"
                             "operator = quadratic\n"
                             "Q = 1 0 0 1\n"
                             "b = 1 1\n"
                             "u = const:1.4 0.7\n"
                             "error = bounded:0.5:42\n"
                             "stop_tol = 1e-12\n"
                             "max_iter = 300\n"
                             "output = " + dir + "/det.csv\n");
  auto d1 = run_cli("run " + cfgd.string() + " --quiet");
  std::string csv1 = slurp(dir + "/det.csv");
  auto d2 = run_cli("run " + cfgd.string() + " --quiet");
  std::string csv2 = slurp(dir + "/det.csv");
  ok = ok && d1.exit_code == 2 && d2.exit_code == 2 && !csv1.empty() && csv1 == csv2;

  // PROXPOINT_SEED overrides the configured seed deterministically
  auto e1 = run_cli("run " + cfgd.string() + " --quiet", "PROXPOINT_SEED=9");
  std::string csve1 = slurp(dir + "/det.csv");
  auto e2 = run_cli("run " + cfgd.string() + " --quiet", "PROXPOINT_SEED=9");
  std::string csve2 = slurp(dir + "/det.csv");
  ok = ok && e1.exit_code == 2 && csve1 == csve2 && csve1 != csv1;

  report("criterion 9: exit codes 0/2/3/4 + byte-identical CSV", ok);
}

TEST_CASE("cli: sweep orders anchors by distance to the solution set") {
  const std::string dir = scratch_dir().string();
  fs::path cfg = write_file("sweep.cfg",
                            "dim = 2\n"
                            "operator = normal_cone_box\n"
                            "lo = 0 0\n"
                            "hi = 1 1\n"
                            "u = const:2 0\n"
                            "x0 = 0.5 0.5\n"
                            "stop_tol = 1e-6\n"
                            "max_iter = 1000\n"
                            "output = " + dir + "/sweep.csv\n");
  auto r = run_cli("sweep " + cfg.string() + " --param u --values \"2 0;1.1 0\"");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir + "/sweep_cell0.csv"));
  CHECK(fs::exists(dir + "/sweep_cell1.csv"));

  // parse iters_to_tol per cell
  std::istringstream is(r.out);
  std::string line;
  long iters[2] = {-1, -1};
  int cell = 0;
  while (std::getline(is, line) && cell < 2) {
    auto pos = line.find("iters_to_tol=");
    if (pos == std::string::npos) continue;
    iters[cell++] = std::strtol(line.c_str() + pos + 13, nullptr, 10);
  }
  REQUIRE(cell == 2);
  CHECK(iters[0] >= 0);
  CHECK(iters[1] >= 0);
  // cell 1 anchors closer to the box, so it is at least as fast
  CHECK(iters[1] <= iters[0]);

  // degenerate sweep reproduces a plain run byte for byte
  auto one = run_cli("sweep " + cfg.string() + " --param u --values \"2 0\"");
  CHECK(one.exit_code == 0);
  auto plain = run_cli("run " + cfg.string() + " --quiet");
  CHECK(plain.exit_code == 0);
  CHECK(slurp(dir + "/sweep_cell0.csv") == slurp(dir + "/sweep.csv"));

  // empty value list is a config error
  auto empty = run_cli("sweep " + cfg.string() + " --param u --values \"\"");
  CHECK(empty.exit_code == 4);

  // unknown parameter name is a config error
  auto bad = run_cli("sweep " + cfg.string() + " --param nope --values 1,2");
  CHECK(bad.exit_code == 4);
}

TEST_CASE("cli: observed mode, scalar sweeps, unwritable output") {
  const std::string dir = scratch_dir().string();
  fs::path obs = write_file("observed.cfg",
                            "dim = 2\n"
                            "operator = identity\n"
                            "u = const:1.4 0.7\n"
                            "error = bounded:0.1:11\n"
                            "mode = observed\n"
                            "max_iter = 200\n"
                            "stop_tol = 1e-300\n"
                            "output = " + dir + "/observed.csv\n");
  auto r = run_cli("run " + obs.string());
  CHECK(r.exit_code == 2);
  auto pos = r.out.find("max_gap=");
  REQUIRE(pos != std::string::npos);
  double gap = std::strtod(r.out.c_str() + pos + 8, nullptr);
  CHECK(gap > 0.0);
  CHECK(gap <= 0.1);

  fs::path base = write_file("betasweep.cfg",
                             "dim = 2\n"
                             "operator = quadratic\n"
                             "Q = 1 0 0 1\n"
                             "b = 1 1\n"
                             "u = const:1.003 1.004\n"
                             "stop_tol = 1e-5\n"
                             "max_iter = 20000\n"
                             "output = " + dir + "/bs.csv\n");
  auto sw = run_cli("sweep " + base.string() + " --param beta.p --values 0.5,1,2");
  CHECK(sw.exit_code == 0);
  for (int i = 0; i < 3; ++i)
    CHECK(fs::exists(dir + "/bs_cell" + std::to_string(i) + ".csv"));
  int rows = 0;
  std::istringstream is(sw.out);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("cell=", 0) == 0) ++rows;
  CHECK(rows == 3);

  fs::path unwritable = write_file("unwritable.cfg",
                                   "dim = 1\n"
                                   "operator = identity\n"
                                   "u = const:0.5\n"
                                   "max_iter = 5\n"
                                   "output = /nonexistent_dir_proxpoint/x.csv\n");
  auto uw = run_cli("run " + unwritable.string());
  CHECK(uw.exit_code == 4);
}

TEST_CASE("cli: check subcommand") {
  fs::path good = write_file("check_good.cfg",
                             "dim = 2\n"
                             "operator = identity\n"
                             "u = const:2 0\n");
  auto g = run_cli("check " + good.string());
  CHECK(g.exit_code == 0);
  CHECK(g.out.find("overall=pass") != std::string::npos);

  fs::path skip = write_file("check_skip.cfg",
                             "dim = 2\n"
                             "operator = constant\n"
                             "c = 1 0\n"
                             "u = const:2 0\n");
  auto s = run_cli("check " + skip.string());
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("F empty: skipped") != std::string::npos);

  fs::path bad = write_file("check_bad.cfg",
                            "dim = 2\n"
                            "operator = identity\n"
                            "u = const:2 0\n"
                            "alpha = const:1\n");
  auto b = run_cli("check " + bad.string());
  CHECK(b.exit_code == 1);
  CHECK(b.out.find("status=fail") != std::string::npos);

  auto c = run_cli("catalog");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("normal_cone_box") != std::string::npos);

  auto m = run_cli("check /nonexistent.cfg");
  CHECK(m.exit_code == 4);
}
