// corrdyn: command-line driver for the correspondence-dynamics library.
//
// Subcommands: radius, kset, pset, julia, dual, centre (solve|verify),
// postcrit, cycles (solve|trace), leo, hausdorff, verify. Rasters are PGM,
// clouds are CSV, records and reports are JSON; every artifact echoes the
// resolved configuration. CORRDYN_THREADS caps parallelism (0 = hardware).
// Exit status: 0 success, 1 operational error, 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <corrdyn/branchsys.hpp>
#include <corrdyn/centres.hpp>
#include <corrdyn/cifs.hpp>
#include <corrdyn/correspondence.hpp>
#include <corrdyn/escape.hpp>
#include <corrdyn/io.hpp>
#include <corrdyn/julia.hpp>
#include <corrdyn/raster.hpp>
#include <corrdyn/rng.hpp>
#include <corrdyn/types.hpp>
#include <corrdyn/verify.hpp>

namespace {

using namespace corrdyn;

int env_threads() {
  const char* s = std::getenv("CORRDYN_THREADS");
  if (!s || !*s) return 0;
  const int t = std::atoi(s);
  return t > 0 ? t : 0;
}

Complex parse_complex(const std::string& s) {
  double re = 0.0, im = 0.0;
  if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) != 2)
    throw std::invalid_argument("expected a complex value as 're,im', got '" + s + "'");
  return {re, im};
}

RasterBounds parse_bounds(const std::string& s) {
  RasterBounds b{};
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &b.re_min, &b.re_max, &b.im_min, &b.im_max) != 4)
    throw std::invalid_argument(
        "expected bounds as 're_min,re_max,im_min,im_max', got '" + s + "'");
  if (!(b.re_min < b.re_max && b.im_min < b.im_max))
    throw std::invalid_argument("bounds must satisfy re_min < re_max and im_min < im_max");
  return b;
}

std::string fmt_complex(Complex z) {
  return fmt17(z.real()) + "," + fmt17(z.imag());
}

std::string fmt_word(const std::vector<int>& word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(word[i]);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    if (!content.empty() && content.back() != '\n') std::fputc('\n', stdout);
  } else {
    write_text_file(path, content);
  }
}

// Shared flag bundle; each subcommand registers only the fields it uses.
struct Args {
  int p = 2, q = 1;
  std::string c = "0,0";
  std::string centre = "0,0";
  std::string guess = "0,0";
  std::string start;                 // julia seed point, empty = default policy
  std::string to;                    // cycles trace target parameter
  std::string bounds;                // empty = derived from the escaping radius
  std::string out;
  std::vector<int> word{0, 0};
  int width = 512, height = 512;
  int cap = 64;
  int depth = 8;
  int probe_depth = 64;
  int tail = 8;
  int n = 1;
  int escape_depth = 64;
  int steps = 50;
  int burn = 50;
  int walkers = 8;
  int nmax = 30;
  std::size_t points = 10000;
  std::uint64_t seed = 1;
  double lambda = 1.1;
  double tol = 1e-6;
  double radius = 1e-2;
  double eps = 5e-2;
  bool from_postcritical = false;
};

int cmd_radius(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const double R = escaping_radius(P, a.lambda);
  std::printf("# radius p=%d q=%d c=%s lambda=%s margin=1e-06\n%s\n", P.p, P.q,
              fmt_complex(P.c).c_str(), fmt17(a.lambda).c_str(), fmt17(R).c_str());
  return 0;
}

int cmd_kset(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  EscapeConfig cfg;
  cfg.lambda = a.lambda;
  cfg.depth_cap = a.cap;
  const double R = escaping_radius(P, cfg);
  const RasterBounds b = a.bounds.empty() ? RasterBounds{-R, R, -R, R} : parse_bounds(a.bounds);
  const Raster r = raster_dynamical(P, cfg, b, a.width, a.height, env_threads());
  std::ostringstream meta;
  meta << "kset p=" << P.p << " q=" << P.q << " c=" << fmt_complex(P.c) << " bounds="
       << fmt17(b.re_min) << "," << fmt17(b.re_max) << "," << fmt17(b.im_min) << ","
       << fmt17(b.im_max) << " width=" << a.width << " height=" << a.height << " cap=" << a.cap
       << " lambda=" << fmt17(a.lambda);
  write_text_file(a.out, to_pgm(r, meta.str()));
  std::printf("wrote %s (%dx%d, cap %d, R=%s)\n", a.out.c_str(), a.width, a.height, a.cap,
              fmt17(R).c_str());
  return 0;
}

int cmd_pset(const Args& a) {
  EscapeConfig cfg;
  cfg.lambda = a.lambda;
  cfg.depth_cap = a.cap;
  const RasterBounds b =
      a.bounds.empty() ? RasterBounds{-2.0, 2.0, -2.0, 2.0} : parse_bounds(a.bounds);
  const Raster r = raster_parameter(a.p, a.q, cfg, b, a.width, a.height, env_threads());
  std::ostringstream meta;
  meta << "pset p=" << a.p << " q=" << a.q << " bounds=" << fmt17(b.re_min) << ","
       << fmt17(b.re_max) << "," << fmt17(b.im_min) << "," << fmt17(b.im_max) << " width="
       << a.width << " height=" << a.height << " cap=" << a.cap << " lambda=" << fmt17(a.lambda);
  write_text_file(a.out, to_pgm(r, meta.str()));
  std::printf("wrote %s (%dx%d, cap %d)\n", a.out.c_str(), a.width, a.height, a.cap);
  return 0;
}

int cmd_julia(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const Complex start = a.start.empty() ? default_seed(P) : parse_complex(a.start);
  const PointCloud cloud =
      inverse_iteration(P, start, a.burn, a.points, a.seed, a.walkers, env_threads());
  std::ostringstream meta;
  meta << "julia p=" << P.p << " q=" << P.q << " c=" << fmt_complex(P.c) << " points="
       << a.points << " burn=" << a.burn << " rng_seed=" << a.seed << " walkers=" << a.walkers
       << " start=" << fmt_complex(start);
  emit(a.out, cloud_to_csv(cloud, meta.str()));
  return 0;
}

int cmd_dual(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  if (a.from_postcritical) {
    const DualProbe probe = dual_from_postcritical(P, a.probe_depth, a.tail);
    ordered_json out;
    out["config"] = {{"p", P.p}, {"q", P.q}, {"c", complex_to_json(P.c)},
                     {"depth", a.probe_depth}, {"tail", a.tail}};
    out["outcome"] = probe.outcome == DualProbeOutcome::empty        ? "empty"
                     : probe.outcome == DualProbeOutcome::attracting ? "attracting"
                                                                     : "inconclusive";
    out["detail"] = probe.detail;
    ordered_json pts = ordered_json::array();
    for (const Complex z : probe.points.points) pts.push_back(complex_to_json(z));
    out["points"] = pts;
    ordered_json cycles = ordered_json::array();
    for (const CycleRecord& rec : probe.cycles) cycles.push_back(cycle_to_json(rec));
    out["cycles"] = cycles;
    emit(a.out, out.dump(2));
    return 0;
  }

  const Complex centre = parse_complex(a.centre);
  std::ostringstream meta;
  meta << "dual p=" << P.p << " q=" << P.q << " c=" << fmt_complex(P.c) << " centre="
       << fmt_complex(centre) << " word=" << fmt_word(a.word) << " tol=" << fmt17(a.tol);
  if (std::abs(P.c - centre) < 1e-12) {
    const PointCloud cloud = dual_julia_at_centre(P, a.word);
    emit(a.out, cloud_to_csv(cloud, meta.str() + " mode=at-centre"));
  } else {
    const BranchSystem sys = build_branch_system(P, centre, a.word);
    const PointCloud cloud = dual_julia(sys, a.tol);
    emit(a.out, cloud_to_csv(cloud, meta.str() + " mode=cifs d_c=" + fmt17(sys.d)));
  }
  return 0;
}

ordered_json verify_result_json(const CorrParams& P, const CentreVerifyResult& res) {
  ordered_json out;
  out["config"] = {{"p", P.p}, {"q", P.q}, {"c", complex_to_json(P.c)}};
  out["status"] = res.status == CentreStatus::simple       ? "simple"
                  : res.status == CentreStatus::not_centre ? "not_centre"
                                                           : "undecided";
  out["detail"] = res.detail;
  if (res.status == CentreStatus::simple) out["record"] = centre_to_json(res.record);
  return out;
}

int cmd_centre_solve(const Args& a) {
  const Complex c = centre_solve(a.p, a.q, a.word, parse_complex(a.guess));
  const CorrParams P{a.p, a.q, c};
  const CentreVerifyResult res =
      simple_centre_verify(P, static_cast<int>(a.word.size()), a.escape_depth);
  ordered_json out = verify_result_json(P, res);
  out["config"]["word"] = a.word;
  out["config"]["guess"] = complex_to_json(parse_complex(a.guess));
  out["solved_c"] = complex_to_json(c);
  emit(a.out, out.dump(2));
  return 0;
}

int cmd_centre_verify(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const CentreVerifyResult res = simple_centre_verify(P, a.n, a.escape_depth);
  ordered_json out = verify_result_json(P, res);
  out["config"]["n"] = a.n;
  out["config"]["escape_depth"] = a.escape_depth;
  emit(a.out, out.dump(2));
  return 0;
}

int cmd_postcrit(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const PostcriticalCloud pc = postcritical_cloud(P, a.depth);
  std::ostringstream meta;
  meta << "postcrit p=" << P.p << " q=" << P.q << " c=" << fmt_complex(P.c) << " depth="
       << a.depth << " radius=" << fmt17(pc.radius) << " bounded=" << pc.bounded.points.size()
       << " escaped=" << pc.escaped.size();
  emit(a.out, cloud_to_csv(pc.bounded, meta.str()));
  return 0;
}

int cmd_cycles_solve(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const CycleRecord rec = repelling_cycle(P, a.word, parse_complex(a.guess));
  ordered_json out = cycle_to_json(rec);
  out["config"] = {{"p", P.p}, {"q", P.q}, {"c", complex_to_json(P.c)}, {"word", a.word},
                   {"guess", complex_to_json(parse_complex(a.guess))}};
  emit(a.out, out.dump(2));
  return 0;
}

int cmd_cycles_trace(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const CycleRecord rec = repelling_cycle(P, a.word, parse_complex(a.guess));
  const Complex target = parse_complex(a.to);
  if (a.steps < 2) throw std::invalid_argument("cycles trace: --steps must be >= 2");
  std::vector<Complex> path;
  path.reserve(a.steps);
  for (int i = 0; i < a.steps; ++i)
    path.push_back(P.c + (target - P.c) * (static_cast<double>(i) / (a.steps - 1)));
  const MotionTrace trace = trace_cycle_motion(P, rec, a.word, path);
  ordered_json out = motion_to_json(trace);
  out["config"] = {{"p", P.p}, {"q", P.q}, {"c", complex_to_json(P.c)},
                   {"to", complex_to_json(target)}, {"word", a.word}, {"steps", a.steps}};
  emit(a.out, out.dump(2));
  return 0;
}

int cmd_leo(const Args& a) {
  const CorrParams P{a.p, a.q, parse_complex(a.c)};
  const Complex start = a.start.empty() ? default_seed(P) : parse_complex(a.start);
  const PointCloud cloud =
      inverse_iteration(P, start, a.burn, a.points, a.seed, a.walkers, env_threads());
  Complex centre;
  if (a.centre == "pick") {
    CounterRng rng(a.seed, 99);
    centre = cloud.points.at(rng.below(static_cast<std::uint32_t>(cloud.points.size())));
  } else {
    centre = parse_complex(a.centre);
  }
  const LeoResult res = leo_cover(P, cloud, centre, a.radius, a.eps, a.nmax);
  ordered_json out;
  out["config"] = {{"p", P.p}, {"q", P.q},       {"c", complex_to_json(P.c)},
                   {"points", a.points},         {"rng_seed", a.seed},
                   {"centre", complex_to_json(centre)}, {"radius", a.radius},
                   {"eps", a.eps},               {"n_max", a.nmax}};
  out["covered"] = res.covered;
  out["n"] = res.n;
  out["final_size"] = res.final_size;
  emit(a.out, out.dump(2));
  return 0;
}

int cmd_hausdorff(const std::string& file_a, const std::string& file_b, const Args& a) {
  const PointCloud A = cloud_from_csv(read_file(file_a));
  const PointCloud B = cloud_from_csv(read_file(file_b));
  const double d = hausdorff_distance(A, B);
  if (a.out.empty()) {
    std::printf("# hausdorff a=%s (%zu points) b=%s (%zu points)\n%s\n", file_a.c_str(),
                A.points.size(), file_b.c_str(), B.points.size(), fmt17(d).c_str());
  } else {
    ordered_json out;
    out["config"] = {{"a", file_a}, {"b", file_b}};
    out["points_a"] = A.points.size();
    out["points_b"] = B.points.size();
    out["distance"] = d;
    emit(a.out, out.dump(2));
  }
  return 0;
}

int cmd_verify(const std::string& suite, const Args& a) {
  const VerifyReport rep = run_suite(suite, env_threads());
  for (const CriterionResult& r : rep.results)
    std::printf("criterion %2d: %s  %s (%s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
  std::string fails;
  for (const int id : rep.failed_ids()) {
    if (!fails.empty()) fails += ", ";
    fails += std::to_string(id);
  }
  if (rep.failed() == 0)
    std::printf("suite %s: %d passed, 0 failed\n", suite.c_str(), rep.passed());
  else
    std::printf("suite %s: %d passed, %d failed (criteria %s)\n", suite.c_str(), rep.passed(),
                rep.failed(), fails.c_str());
  if (!a.out.empty()) write_text_file(a.out, verify_report_to_json(rep).dump(2));
  return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrdyn: dynamics of the correspondence family (w - c)^q = z^p"};
  app.require_subcommand(1);

  Args a;
  std::string suite = "all";
  std::string file_a, file_b;

  const auto add_params = [&](CLI::App* cmd, bool with_c) {
    cmd->add_option("--p", a.p, "numerator exponent p (p > q, p >= 2)");
    cmd->add_option("--q", a.q, "denominator exponent q (q >= 1)");
    if (with_c) cmd->add_option("--c", a.c, "parameter c as 're,im'");
  };

  CLI::App* radius = app.add_subcommand("radius", "print the escaping radius");
  add_params(radius, true);
  radius->add_option("--lambda", a.lambda, "growth factor (> 1)");

  CLI::App* kset = app.add_subcommand("kset", "escape-depth raster of the dynamical plane (PGM)");
  add_params(kset, true);
  kset->add_option("--bounds", a.bounds, "re_min,re_max,im_min,im_max (default [-R,R]^2)");
  kset->add_option("--width", a.width, "pixels per row");
  kset->add_option("--height", a.height, "pixel rows");
  kset->add_option("--cap", a.cap, "survival depth cap");
  kset->add_option("--lambda", a.lambda, "growth factor (> 1)");
  kset->add_option("-o,--out", a.out, "output PGM path")->required();

  CLI::App* pset = app.add_subcommand("pset", "escape-depth raster of the parameter plane (PGM)");
  add_params(pset, false);
  pset->add_option("--bounds", a.bounds, "re_min,re_max,im_min,im_max (default [-2,2]^2)");
  pset->add_option("--width", a.width, "pixels per row");
  pset->add_option("--height", a.height, "pixel rows");
  pset->add_option("--cap", a.cap, "survival depth cap");
  pset->add_option("--lambda", a.lambda, "growth factor (> 1)");
  pset->add_option("-o,--out", a.out, "output PGM path")->required();

  CLI::App* julia = app.add_subcommand("julia", "backward-orbit cloud of the Julia set (CSV)");
  add_params(julia, true);
  julia->add_option("--points", a.points, "cloud size");
  julia->add_option("--burn", a.burn, "burn-in steps per walker");
  julia->add_option("--seed", a.seed, "rng seed");
  julia->add_option("--walkers", a.walkers, "independent walkers");
  julia->add_option("--start", a.start, "start point 're,im' (default: solved fixed point)");
  julia->add_option("-o,--out", a.out, "output CSV path (default stdout)");

  CLI::App* dual = app.add_subcommand("dual", "dual Julia set via the contracting system");
  add_params(dual, true);
  dual->add_option("--centre", a.centre, "simple centre 're,im'");
  dual->add_option("--word", a.word, "cycle word of root indices")->delimiter(',');
  dual->add_option("--tol", a.tol, "limit-set resolution");
  dual->add_flag("--from-postcritical", a.from_postcritical,
                 "probe the dual set from the post-critical orbit instead (JSON)");
  dual->add_option("--depth", a.probe_depth, "post-critical probe depth");
  dual->add_option("--tail", a.tail, "post-critical probe tail length");
  dual->add_option("-o,--out", a.out, "output path (default stdout)");

  CLI::App* centre = app.add_subcommand("centre", "simple-centre solving and certification");
  centre->require_subcommand(1);
  CLI::App* centre_solve_cmd = centre->add_subcommand("solve", "Newton-solve a centre (JSON)");
  add_params(centre_solve_cmd, false);
  centre_solve_cmd->add_option("--word", a.word, "cycle word of root indices")->delimiter(',');
  centre_solve_cmd->add_option("--guess", a.guess, "initial parameter guess 're,im'")->required();
  centre_solve_cmd->add_option("--escape-depth", a.escape_depth, "sibling escape cap");
  centre_solve_cmd->add_option("-o,--out", a.out, "output JSON path (default stdout)");
  CLI::App* centre_verify_cmd =
      centre->add_subcommand("verify", "certify a parameter as a simple centre (JSON)");
  add_params(centre_verify_cmd, true);
  centre_verify_cmd->add_option("--n", a.n, "cycle length to certify")->required();
  centre_verify_cmd->add_option("--escape-depth", a.escape_depth, "sibling escape cap");
  centre_verify_cmd->add_option("-o,--out", a.out, "output JSON path (default stdout)");

  CLI::App* postcrit = app.add_subcommand("postcrit", "bounded post-critical points (CSV)");
  add_params(postcrit, true);
  postcrit->add_option("--depth", a.depth, "forward depth");
  postcrit->add_option("-o,--out", a.out, "output CSV path (default stdout)");

  CLI::App* cycles = app.add_subcommand("cycles", "periodic cycles of the correspondence");
  cycles->require_subcommand(1);
  CLI::App* cycles_solve_cmd = cycles->add_subcommand("solve", "Newton-solve a cycle word (JSON)");
  add_params(cycles_solve_cmd, true);
  cycles_solve_cmd->add_option("--word", a.word, "cycle word of root indices")->delimiter(',');
  cycles_solve_cmd->add_option("--guess", a.guess, "initial point guess 're,im'")->required();
  cycles_solve_cmd->add_option("-o,--out", a.out, "output JSON path (default stdout)");
  CLI::App* cycles_trace_cmd =
      cycles->add_subcommand("trace", "continue a cycle along a parameter path (JSON)");
  add_params(cycles_trace_cmd, true);
  cycles_trace_cmd->add_option("--word", a.word, "cycle word of root indices")->delimiter(',');
  cycles_trace_cmd->add_option("--guess", a.guess, "initial point guess 're,im'")->required();
  cycles_trace_cmd->add_option("--to", a.to, "target parameter 're,im'")->required();
  cycles_trace_cmd->add_option("--steps", a.steps, "path points including both ends");
  cycles_trace_cmd->add_option("-o,--out", a.out, "output JSON path (default stdout)");

  CLI::App* leo = app.add_subcommand("leo", "forward covering of the cloud from a small disk");
  add_params(leo, true);
  leo->add_option("--points", a.points, "cloud size");
  leo->add_option("--burn", a.burn, "burn-in steps per walker");
  leo->add_option("--seed", a.seed, "rng seed");
  leo->add_option("--walkers", a.walkers, "independent walkers");
  leo->add_option("--start", a.start, "cloud start point 're,im' (default: solved fixed point)");
  leo->add_option("--centre", a.centre, "disk centre 're,im', or 'pick' for an rng cloud point")
      ->default_val("pick");
  leo->add_option("--radius", a.radius, "disk radius");
  leo->add_option("--eps", a.eps, "coverage tolerance");
  leo->add_option("--nmax", a.nmax, "step cap");
  leo->add_option("-o,--out", a.out, "output JSON path (default stdout)");

  CLI::App* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two clouds");
  hausdorff->add_option("a", file_a, "first CSV cloud")->required();
  hausdorff->add_option("b", file_b, "second CSV cloud")->required();
  hausdorff->add_option("-o,--out", a.out, "output JSON path (default: print the distance)");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name: all | quadratic");
  verify->add_option("-o,--out", a.out, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (radius->parsed()) return cmd_radius(a);
    if (kset->parsed()) return cmd_kset(a);
    if (pset->parsed()) return cmd_pset(a);
    if (julia->parsed()) return cmd_julia(a);
    if (dual->parsed()) return cmd_dual(a);
    if (centre->parsed())
      return centre_solve_cmd->parsed() ? cmd_centre_solve(a) : cmd_centre_verify(a);
    if (postcrit->parsed()) return cmd_postcrit(a);
    if (cycles->parsed())
      return cycles_solve_cmd->parsed() ? cmd_cycles_solve(a) : cmd_cycles_trace(a);
    if (leo->parsed()) return cmd_leo(a);
    if (hausdorff->parsed()) return cmd_hausdorff(file_a, file_b, a);
    if (verify->parsed()) return cmd_verify(suite, a);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
