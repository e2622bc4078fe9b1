#pragma once

// End-to-end verification suite. Each criterion exercises one documented
// property of the library against a pinned tolerance and reports the measured
// value in its detail string. The suite is shared by the `corrdyn verify`
// subcommand and the acceptance test binary; all constants live here so the
// two entry points cannot drift apart.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

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

namespace corrdyn {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values alongside the pinned thresholds
};

struct VerifyReport {
  std::string suite;
  std::vector<CriterionResult> results;

  int passed() const {
    int n = 0;
    for (const CriterionResult& r : results) n += r.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(results.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }
  std::vector<int> failed_ids() const {
    std::vector<int> ids;
    for (const CriterionResult& r : results)
      if (!r.pass) ids.push_back(r.id);
    return ids;
  }
};

namespace verify_detail {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline Complex golden() { return Complex{(1.0 + std::sqrt(5.0)) / 2.0, 0.0}; }

// Criterion 1: at the two classically solvable parameters, the backward
// random walk must land exactly on the known set. (2,1,0): unit circle;
// (2,1,-2): the real segment [-2,2].
inline CriterionResult crit_quadratic(int threads) {
  CriterionResult r{1, "quadratic oracles: unit circle and [-2,2] segment", false, ""};

  const CorrParams P0{2, 1, Complex{0.0, 0.0}};
  const PointCloud circle = inverse_iteration(P0, default_seed(P0), 50, 10000, 1, 8, threads);
  double dev_circle = 0.0;
  for (const Complex z : circle.points)
    dev_circle = std::max(dev_circle, std::abs(std::abs(z) - 1.0));

  const CorrParams P2{2, 1, Complex{-2.0, 0.0}};
  const PointCloud segment = inverse_iteration(P2, default_seed(P2), 50, 10000, 1, 8, threads);
  double dev_im = 0.0, re_lo = 0.0, re_hi = 0.0;
  for (const Complex z : segment.points) {
    dev_im = std::max(dev_im, std::abs(z.imag()));
    re_lo = std::min(re_lo, z.real());
    re_hi = std::max(re_hi, z.real());
  }

  const bool ok_circle = dev_circle < 1e-9;
  const bool ok_segment = dev_im < 1e-7 && re_lo >= -2.0 - 1e-9 && re_hi <= 2.0 + 1e-9;
  r.pass = ok_circle && ok_segment;
  r.detail = "max||z|-1| = " + num(dev_circle) + " (tol 1e-9); max|Im z| = " + num(dev_im) +
             " (tol 1e-7); Re range [" + num(re_lo) + ", " + num(re_hi) + "]";
  return r;
}

// Criterion 2: beyond the escaping radius every forward image grows by the
// factor the radius was solved for. 1e5 annulus samples per parameter.
inline CriterionResult crit_escape_growth(int) {
  CriterionResult r{2, "escaping radius forces monotone escape", false, ""};
  const std::vector<std::pair<int, int>> pqs{{2, 1}, {4, 2}, {7, 6}};
  const std::vector<Complex> cs{{0.0, 0.0}, {-1.0, 0.0}, {0.0, 2.0}};
  long violations = 0, total = 0;
  std::uint64_t stream = 0;
  for (const auto& pq : pqs) {
    for (const Complex c : cs) {
      const CorrParams P{pq.first, pq.second, c};
      const double R = escaping_radius(P, 1.1);
      CounterRng rng(0xE5CAFEull, stream++);
      for (int i = 0; i < 100000; ++i) {
        const double rad = R * (1.0 + rng.uniform());
        const double ang = 2.0 * kPi * rng.uniform();
        const Complex z{rad * std::cos(ang), rad * std::sin(ang)};
        for (const Complex w : forward_images(P, z).images) {
          ++total;
          if (!(std::abs(w) > 1.1 * std::abs(z))) ++violations;
        }
      }
    }
  }
  r.pass = violations == 0;
  r.detail = std::to_string(violations) + " violations across " + std::to_string(total) +
             " forward images (need 0)";
  return r;
}

// Criterion 3: the period-2 simple centre at (4,2,-1) certifies, its bounded
// post-critical set is exactly {0,-1}, and the whole root family it belongs
// to (a^(d-1) = -1 inside (2d,2), d = 2..5) certifies the same way.
inline CriterionResult crit_simple_centres(int) {
  CriterionResult r{3, "simple centre certificates across the root family", false, ""};

  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const CentreVerifyResult base = simple_centre_verify(P, 2, 12);
  const bool base_ok = base.status == CentreStatus::simple &&
                       base.record.escape_certificate <= 12;

  const PostcriticalCloud pc = postcritical_cloud(P, 6);
  std::vector<Complex> bounded = pc.bounded.points;
  std::sort(bounded.begin(), bounded.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  const bool orbit_ok = bounded.size() == 2 &&
                        std::abs(bounded[0] - Complex{-1.0, 0.0}) < 1e-10 &&
                        std::abs(bounded[1]) < 1e-10;

  int family_total = 0, family_ok = 0;
  int worst_cert = base.record.escape_certificate;
  for (int d = 2; d <= 5; ++d) {
    for (int k = 0; k + 1 < d; ++k) {
      const double theta = kPi * (2.0 * k + 1.0) / (d - 1.0);
      const Complex a{std::cos(theta), std::sin(theta)};
      const CorrParams Pd{2 * d, 2, a};
      const CentreVerifyResult res = simple_centre_verify(Pd, 2, 12);
      ++family_total;
      if (res.status == CentreStatus::simple && res.record.escape_certificate <= 12) {
        ++family_ok;
        worst_cert = std::max(worst_cert, res.record.escape_certificate);
      }
    }
  }

  r.pass = base_ok && orbit_ok && family_ok == family_total;
  r.detail = "base centre " + std::string(base_ok ? "certified" : "FAILED") +
             ", bounded orbit {0,-1} " + (orbit_ok ? "exact" : "WRONG") + ", family " +
             std::to_string(family_ok) + "/" + std::to_string(family_total) +
             " certified, worst escape certificate " + std::to_string(worst_cert) +
             " (cap 12)";
  return r;
}

// Criterion 4: at the centre the dual set is the finite cycle {0,-1}; just
// off the centre the induced contracting system has disjoint first-level
// images and geometrically shrinking cylinders over 8 levels.
inline CriterionResult crit_rigidity(int) {
  CriterionResult r{4, "finite dual set and geometric cylinder decay", false, ""};

  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const PointCloud at_centre = dual_julia_at_centre(P, {0, 0});
  bool centre_ok = at_centre.points.size() == 2;
  if (centre_ok) {
    double d0 = 1e9, d1 = 1e9;
    for (const Complex z : at_centre.points) {
      d0 = std::min(d0, std::abs(z));
      d1 = std::min(d1, std::abs(z - Complex{-1.0, 0.0}));
    }
    centre_ok = d0 < 1e-12 && d1 < 1e-12;
  }

  const CorrParams Pc{4, 2, Complex{-1.0 + 1e-2, 0.0}};
  const BranchSystem sys = build_branch_system(Pc, Complex{-1.0, 0.0}, {0, 0});
  const CIFSystem F = cifs_from_system(sys);

  bool disjoint = true;
  for (std::size_t i = 0; i < F.images.size(); ++i)
    for (std::size_t j = i + 1; j < F.images.size(); ++j)
      if (std::abs(F.images[i].center - F.images[j].center) <=
          F.images[i].radius + F.images[j].radius)
        disjoint = false;

  // Max cylinder diameter per level from 17 sample points of the base disk
  // pushed through every word of that length.
  const int q = static_cast<int>(F.psi.size());
  std::vector<Complex> samples{F.base.center};
  for (int k = 0; k < 16; ++k) {
    const double t = 2.0 * kPi * k / 16.0;
    samples.push_back(F.base.center + F.base.radius * Complex{std::cos(t), std::sin(t)});
  }
  std::vector<double> level_diam;
  for (int lvl = 1; lvl <= 8; ++lvl) {
    double worst = 0.0;
    long words = 1;
    for (int i = 0; i < lvl; ++i) words *= q;
    for (long w = 0; w < words; ++w) {
      std::vector<Complex> img = samples;
      long code = w;
      for (int i = 0; i < lvl; ++i) {
        const int digit = static_cast<int>(code % q);
        code /= q;
        for (Complex& z : img) z = cifs_apply(F, digit, z);
      }
      for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b)
          worst = std::max(worst, std::abs(img[a] - img[b]));
    }
    level_diam.push_back(worst);
  }

  // Least-squares fit of log(diam) against the level index.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(level_diam.size());
  for (int i = 0; i < n; ++i) {
    const double x = i + 1.0, y = std::log(level_diam[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (int i = 0; i < n; ++i) {
    const double y = std::log(level_diam[i]);
    const double fit = intercept + slope * (i + 1.0);
    ss_res += (y - fit) * (y - fit);
    ss_tot += (y - sy / n) * (y - sy / n);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  const double factor = std::exp(slope);

  r.pass = centre_ok && disjoint && factor < 1.0 && r2 > 0.99;
  r.detail = "dual at centre " + std::string(centre_ok ? "= {0,-1}" : "WRONG") +
             "; first-level images " + (disjoint ? "disjoint" : "OVERLAP") +
             "; decay factor " + num(factor) + " per level (need < 1), fit R^2 = " + num(r2) +
             " (need > 0.99)";
  return r;
}

// Criterion 5: the forward orbit of the critical point settles onto the dual
// set computed independently through the contracting system.
inline CriterionResult crit_critical_attraction(int) {
  CriterionResult r{5, "critical orbit attracted to the dual set", false, ""};
  const CorrParams Pc{4, 2, Complex{-1.0 + 1e-2, 0.0}};
  const BranchSystem sys = build_branch_system(Pc, Complex{-1.0, 0.0}, {0, 0});
  const PointCloud dual = dual_julia(sys, 1e-6);
  const OmegaReport om = omega_forward(sys, Complex{0.0, 0.0}, 20, 1e-6, &dual);
  r.pass = om.dist_to_dual < 1e-6;
  r.detail = "tail distance to dual cloud = " + num(om.dist_to_dual) +
             " (tol 1e-6) after " + std::to_string(om.steps) + " steps";
  return r;
}

// Criterion 6: the backward limit set does not depend on the starting point.
// Two distant admissible seeds, identical random branch choices, two rng
// seeds; the walks must collapse onto the same cloud.
inline CriterionResult crit_seed_independence(int threads) {
  CriterionResult r{6, "backward limit independent of the seed point", false, ""};
  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const Complex phi = golden();
  const Complex omg{-0.5, std::sqrt(3.0) / 2.0};
  double worst = 0.0;
  for (std::uint64_t s : {1ull, 2ull}) {
    const PointCloud A = inverse_iteration(P, phi, 50, 10000, s, 8, threads);
    const PointCloud B = inverse_iteration(P, omg, 50, 10000, s, 8, threads);
    worst = std::max(worst, hausdorff_distance(A, B));
  }
  r.pass = worst < 2e-2;
  r.detail = "worst Hausdorff distance across rng seeds {1,2} = " + num(worst) +
             " (tol 2e-2)";
  return r;
}

// Criterion 7: the golden-ratio fixed point solves, carries its known
// multiplier, and sits inside the backward cloud.
inline CriterionResult crit_repelling_in_cloud(int threads) {
  CriterionResult r{7, "repelling fixed point lies in the backward cloud", false, ""};
  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const CycleRecord cyc = repelling_cycle(P, {0}, Complex{1.5, 0.0});
  const Complex phi = golden();
  const double mult_oracle = 1.0 + std::sqrt(5.0);
  const bool solved = std::abs(cyc.points.at(0) - phi) < 1e-6 &&
                      std::abs(cyc.multiplier - Complex{mult_oracle, 0.0}) < 1e-6 &&
                      cyc.cls == "repelling";
  const PointCloud cloud = inverse_iteration(P, phi, 50, 10000, 1, 8, threads);
  double dmin = 1e9;
  for (const Complex z : cloud.points) dmin = std::min(dmin, std::abs(z - cyc.points.at(0)));
  r.pass = solved && dmin < 1e-2;
  r.detail = "fixed point error " + num(std::abs(cyc.points.at(0) - phi)) + ", multiplier " +
             num(std::abs(cyc.multiplier)) + " (oracle " + num(mult_oracle) +
             "), distance to cloud " + num(dmin) + " (tol 1e-2)";
  return r;
}

// Criterion 8: at (4,2,2) the filled set should have empty interior, so the
// escape-raster boundary band and the backward cloud should trace the same
// set to pixel accuracy, and the dual probe should come back empty.
inline CriterionResult crit_exterior_boundary(int threads) {
  CriterionResult r{8, "escape boundary matches backward cloud at (4,2,2)", false, ""};
  const CorrParams P{4, 2, Complex{2.0, 0.0}};
  const double R = escaping_radius(P, 1.1);

  const PointCloud cloud = inverse_iteration(P, default_seed(P), 100, 100000, 8675309, 8, threads);

  EscapeConfig cfg;
  cfg.depth_cap = 7;
  const RasterBounds bounds{-R, R, -R, R};
  const int W = 512, H = 512;
  const Raster ras = raster_dynamical(P, cfg, bounds, W, H, threads);

  // Boundary band: pixels that survive to the cap but touch a pixel that
  // does not (4-neighbourhood).
  std::vector<Complex> boundary;
  const auto value = [&](int col, int row) { return ras.values[row * W + col]; };
  for (int row = 0; row < H; ++row) {
    for (int col = 0; col < W; ++col) {
      if (value(col, row) < cfg.depth_cap) continue;
      const bool edge = (col > 0 && value(col - 1, row) < cfg.depth_cap) ||
                        (col + 1 < W && value(col + 1, row) < cfg.depth_cap) ||
                        (row > 0 && value(col, row - 1) < cfg.depth_cap) ||
                        (row + 1 < H && value(col, row + 1) < cfg.depth_cap);
      if (edge) boundary.push_back(pixel_center(bounds, W, H, col, row));
    }
  }

  const double d = hausdorff_distance(boundary, cloud.points);
  const double diag = std::hypot(2.0 * R / W, 2.0 * R / H);
  const bool boundary_ok = d < 1.5 * diag;

  const DualProbe probe = dual_from_postcritical(P);
  const bool dual_ok = probe.outcome == DualProbeOutcome::empty;

  r.pass = boundary_ok && dual_ok;
  r.detail = "boundary-cloud Hausdorff = " + num(d) + " = " + num(d / diag) +
             " pixel diagonals (need < 1.5); dual probe " +
             (dual_ok ? "empty" : "NOT EMPTY");
  return r;
}

// Criterion 9: cloud continuity in the parameter. Backward trees rooted at
// the continued fixed point; the distance must shrink with the perturbation.
inline CriterionResult crit_continuity(int) {
  CriterionResult r{9, "cloud continuity in the parameter near (4,2,-1)", false, ""};
  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const CycleRecord base = repelling_cycle(P, {0}, Complex{1.5, 0.0});
  const PointCloud treeA = backward_tree(P, base.points.at(0), 7);
  std::vector<double> dist;
  for (const double delta : {1e-2, 1e-3, 1e-4}) {
    const CorrParams Pd{4, 2, Complex{-1.0 + delta, 0.0}};
    const CycleRecord fp = repelling_cycle(Pd, {0}, base.points.at(0));
    const PointCloud treeB = backward_tree(Pd, fp.points.at(0), 7);
    dist.push_back(hausdorff_distance(treeA, treeB));
  }
  r.pass = dist[0] > dist[1] && dist[1] > dist[2] && dist[1] < 5e-2;
  r.detail = "d_H at |c-c'| = 1e-2/1e-3/1e-4: " + num(dist[0]) + " / " + num(dist[1]) +
             " / " + num(dist[2]) + " (need strictly decreasing, middle < 5e-2)";
  return r;
}

// Criterion 10: forward covering from a small disk. On the unit circle the
// covering step count must match the arc-doubling prediction; at (4,2,-1)
// the disk must cover the cloud within 30 steps.
inline CriterionResult crit_leo(int threads) {
  CriterionResult r{10, "forward covering from a radius-1e-2 disk", false, ""};

  const CorrParams Pc{2, 1, Complex{0.0, 0.0}};
  const PointCloud circle = inverse_iteration(Pc, default_seed(Pc), 50, 100000, 11, 8, threads);
  const LeoResult on_circle = leo_cover(Pc, circle, Complex{1.0, 0.0}, 1e-2, 5e-2, 30);
  // Arc doubling: a radius-eps arc doubles per step until it wraps the circle.
  const int oracle = static_cast<int>(std::ceil(std::log2(2.0 * kPi / 1e-2)));
  const bool circle_ok = on_circle.covered && std::abs(on_circle.n - oracle) <= 1;

  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const PointCloud cloud = inverse_iteration(P, golden(), 50, 100000, 1, 8, threads);
  CounterRng rng(0xABCD0003ull, 0);
  const std::size_t idx =
      static_cast<std::size_t>(rng.uniform() * static_cast<double>(cloud.points.size()));
  const LeoResult web = leo_cover(P, cloud, cloud.points.at(idx), 1e-2, 5e-2, 30);
  const bool web_ok = web.covered;

  r.pass = circle_ok && web_ok;
  r.detail = "circle covered at n = " + std::to_string(on_circle.n) + " (oracle " +
             std::to_string(oracle) + " +-1); (4,2,-1) " +
             (web_ok ? "covered at n = " + std::to_string(web.n)
                     : "NOT covered by step 30 (final set " +
                           std::to_string(web.final_size) + " points)");
  return r;
}

// Criterion 11: nested region inclusions between neighbouring parameters.
inline CriterionResult crit_inclusion(int) {
  CriterionResult r{11, "nested parameter-region inclusions", false, ""};
  const CorrParams P{4, 2, Complex{-1.0 + 1e-4, 0.0}};
  const double R = escaping_radius(P, 1.1);
  std::vector<Complex> samples;
  samples.reserve(10000);
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j)
      samples.emplace_back(-R + 2.0 * R * (i + 0.5) / 100.0,
                           -R + 2.0 * R * (j + 0.5) / 100.0);
  const InclusionReport rep = region_inclusion_check(P, Complex{-1.0, 0.0}, 5, samples);
  r.pass = rep.violations == 0;
  r.detail = std::to_string(rep.violations) + " violations across " +
             std::to_string(rep.total) + " grid samples (need 0)";
  return r;
}

// Criterion 12: the branch-system base radius shrinks as the parameter
// approaches the centre, with every construction invariant holding.
inline CriterionResult crit_system_scaling(int) {
  CriterionResult r{12, "branch-system base radius shrinks toward the centre", false, ""};
  std::vector<double> radii;
  bool checks_ok = true;
  for (const double delta : {1e-3, 1e-4, 1e-5}) {
    const CorrParams P{4, 2, Complex{-1.0 + delta, 0.0}};
    const BranchSystem sys = build_branch_system(P, Complex{-1.0, 0.0}, {0, 0});
    radii.push_back(sys.d);
    const SystemCheckReport rep = verify_system(sys);
    checks_ok = checks_ok && rep.pass();
  }
  r.pass = checks_ok && radii[0] > radii[1] && radii[1] > radii[2];
  r.detail = "d_c at |c-a| = 1e-3/1e-4/1e-5: " + num(radii[0]) + " / " + num(radii[1]) +
             " / " + num(radii[2]) + " (need strictly decreasing); invariants " +
             (checks_ok ? "all pass" : "FAILED");
  return r;
}

// Criterion 13: artifacts are byte-identical across thread counts and reruns.
inline CriterionResult crit_determinism(int) {
  CriterionResult r{13, "thread-count invariance of emitted artifacts", false, ""};

  const CorrParams P{4, 2, Complex{-1.0, 0.0}};
  const Complex seed = default_seed(P);
  std::vector<std::string> csvs;
  for (const int t : {1, 2, 8})
    csvs.push_back(cloud_to_csv(inverse_iteration(P, seed, 50, 10000, 7, 8, t)));
  const std::string csv_rerun = cloud_to_csv(inverse_iteration(P, seed, 50, 10000, 7, 8, 1));
  const bool csv_ok = csvs[0] == csvs[1] && csvs[1] == csvs[2] && csvs[0] == csv_rerun;

  const CorrParams P8{4, 2, Complex{2.0, 0.0}};
  const double R = escaping_radius(P8, 1.1);
  EscapeConfig cfg;
  cfg.depth_cap = 7;
  const RasterBounds bounds{-R, R, -R, R};
  std::vector<std::string> pgms;
  for (const int t : {1, 2, 8})
    pgms.push_back(to_pgm(raster_dynamical(P8, cfg, bounds, 128, 128, t)));
  const bool pgm_ok = pgms[0] == pgms[1] && pgms[1] == pgms[2];

  const std::string j1 = cycle_to_json(repelling_cycle(P, {0}, Complex{1.5, 0.0})).dump();
  const std::string j2 = cycle_to_json(repelling_cycle(P, {0}, Complex{1.5, 0.0})).dump();
  const bool json_ok = j1 == j2;

  r.pass = csv_ok && pgm_ok && json_ok;
  r.detail = std::string("cloud CSV ") + (csv_ok ? "identical" : "DIFFERS") +
             " across threads {1,2,8} and rerun; raster PGM " +
             (pgm_ok ? "identical" : "DIFFERS") + "; cycle JSON rerun " +
             (json_ok ? "identical" : "DIFFERS");
  return r;
}

}  // namespace verify_detail

inline CriterionResult run_criterion(int id, int threads = 0) {
  using namespace verify_detail;
  switch (id) {
    case 1: return crit_quadratic(threads);
    case 2: return crit_escape_growth(threads);
    case 3: return crit_simple_centres(threads);
    case 4: return crit_rigidity(threads);
    case 5: return crit_critical_attraction(threads);
    case 6: return crit_seed_independence(threads);
    case 7: return crit_repelling_in_cloud(threads);
    case 8: return crit_exterior_boundary(threads);
    case 9: return crit_continuity(threads);
    case 10: return crit_leo(threads);
    case 11: return crit_inclusion(threads);
    case 12: return crit_system_scaling(threads);
    case 13: return crit_determinism(threads);
  }
  throw std::invalid_argument("run_criterion: id must be in 1..13");
}

inline std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") {
    std::vector<int> ids(13);
    for (int i = 0; i < 13; ++i) ids[i] = i + 1;
    return ids;
  }
  if (suite == "quadratic") return {1};
  throw std::invalid_argument("suite_criteria: unknown suite '" + suite + "'");
}

inline VerifyReport run_suite(const std::string& suite = "all", int threads = 0) {
  VerifyReport rep;
  rep.suite = suite;
  for (const int id : suite_criteria(suite)) {
    try {
      rep.results.push_back(run_criterion(id, threads));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
      rep.results.push_back(std::move(r));
    }
  }
  return rep;
}

inline ordered_json verify_report_to_json(const VerifyReport& rep) {
  ordered_json out;
  out["suite"] = rep.suite;
  out["passed"] = rep.passed();
  out["failed"] = rep.failed();
  ordered_json arr = ordered_json::array();
  for (const CriterionResult& r : rep.results)
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  out["criteria"] = arr;
  return out;
}

}  // namespace corrdyn
