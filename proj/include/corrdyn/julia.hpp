#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "escape.hpp"
#include "parallel.hpp"
#include "rng.hpp"

// Julia-set sampling and comparison: random backward orbits, full backward
// trees, repelling cycles by Newton iteration on anchored words, exact
// Hausdorff distance, finite-step expansivity (covering) probes, and cycle
// continuation along parameter paths.

namespace corrdyn {

// ---------------------------------------------------------------------------
// Hausdorff distance, exact. A uniform bucket grid over the target cloud
// accelerates nearest-neighbour queries; ring expansion stops only when no
// unvisited cell can beat the current best, so the result equals the brute
// force scan bit for bit.
// ---------------------------------------------------------------------------

namespace detail {

class NearestGrid {
public:
  explicit NearestGrid(const std::vector<Complex>& pts) : pts_(pts) {
    double re_lo = pts[0].real(), re_hi = pts[0].real();
    double im_lo = pts[0].imag(), im_hi = pts[0].imag();
    for (const Complex& p : pts) {
      re_lo = std::min(re_lo, p.real());
      re_hi = std::max(re_hi, p.real());
      im_lo = std::min(im_lo, p.imag());
      im_hi = std::max(im_hi, p.imag());
    }
    re_lo_ = re_lo;
    im_lo_ = im_lo;
    const double span = std::max(re_hi - re_lo, im_hi - im_lo);
    const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
    cell_ = span > 0.0 ? span / side : 1.0;
    nx_ = std::max(1, static_cast<int>((re_hi - re_lo) / cell_) + 1);
    ny_ = std::max(1, static_cast<int>((im_hi - im_lo) / cell_) + 1);
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t i = 0; i < pts.size(); ++i)
      buckets_[index_of(pts[i])].push_back(i);
  }

  // Squared distance to the nearest cloud point.
  double nearest2(Complex query) const {
    const int qx = clampx(static_cast<int>((query.real() - re_lo_) / cell_));
    const int qy = clampy(static_cast<int>((query.imag() - im_lo_) / cell_));
    double best = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      // Once every cell within ring-1 is scanned, any unvisited point is at
      // least (ring-1)*cell away; stop when that bound cannot improve best.
      if (best < std::numeric_limits<double>::infinity() && ring >= 2) {
        const double bound = (ring - 1) * cell_;
        if (bound * bound > best) break;
      }
      const int x0 = qx - ring, x1 = qx + ring;
      const int y0 = qy - ring, y1 = qy + ring;
      for (int y = y0; y <= y1; ++y) {
        if (y < 0 || y >= ny_) continue;
        for (int x = x0; x <= x1; ++x) {
          if (x < 0 || x >= nx_) continue;
          if (ring > 0 && x != x0 && x != x1 && y != y0 && y != y1) continue;  // interior done
          for (const std::size_t i : buckets_[static_cast<std::size_t>(y) * nx_ + x]) {
            const double dre = pts_[i].real() - query.real();
            const double dim = pts_[i].imag() - query.imag();
            const double d2 = dre * dre + dim * dim;
            if (d2 < best) best = d2;
          }
        }
      }
    }
    return best;
  }

private:
  std::size_t index_of(Complex p) const {
    const int x = clampx(static_cast<int>((p.real() - re_lo_) / cell_));
    const int y = clampy(static_cast<int>((p.imag() - im_lo_) / cell_));
    return static_cast<std::size_t>(y) * nx_ + x;
  }
  int clampx(int x) const { return std::min(std::max(x, 0), nx_ - 1); }
  int clampy(int y) const { return std::min(std::max(y, 0), ny_ - 1); }

  const std::vector<Complex>& pts_;
  double re_lo_ = 0.0, im_lo_ = 0.0, cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace detail

inline double directed_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty())
    throw EmptyCloud("directed_hausdorff: empty point cloud");
  const detail::NearestGrid grid(b);
  double worst = 0.0;
  for (const Complex& p : a) worst = std::max(worst, grid.nearest2(p));
  return std::sqrt(worst);
}

inline double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

inline double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  return hausdorff_distance(a.points, b.points);
}

// True when every point of `cloud` lies within eps of some point of `set`.
inline bool covers_within(const std::vector<Complex>& cloud, const std::vector<Complex>& set,
                          double eps) {
  if (cloud.empty()) return true;
  if (set.empty()) return false;
  const detail::NearestGrid grid(set);
  const double e2 = eps * eps;
  for (const Complex& p : cloud)
    if (grid.nearest2(p) > e2) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Random backward orbits. Walkers draw preimage indices from disjoint
// counter-based RNG streams, so the concatenated output (walker order, then
// step order) is bit-identical for any thread count.
// ---------------------------------------------------------------------------

inline PointCloud inverse_iteration(const CorrParams& P, Complex seed, int burn_in,
                                    std::size_t n_points, std::uint64_t rng_seed,
                                    int walkers = 8, int threads = 0);

// Full backward tree: all p^depth preimages of the seed at the given depth,
// deduplicated within 1e-12.
inline PointCloud backward_tree(const CorrParams& P, Complex seed, int depth,
                                std::size_t budget = std::size_t{1} << 22) {
  std::vector<Complex> level{seed};
  for (int d = 0; d < depth; ++d) {
    if (level.size() * static_cast<std::size_t>(P.p) > budget)
      throw DepthOverflow("backward_tree: point budget exhausted");
    std::vector<Complex> next;
    next.reserve(level.size() * P.p);
    for (const Complex z : level)
      for (const Complex w : backward_images(P, z).preimages) next.push_back(w);
    level.swap(next);
  }
  std::sort(level.begin(), level.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> dedup;
  dedup.reserve(level.size());
  for (const Complex z : level) {
    bool dup = false;
    for (std::size_t k = dedup.size(); k-- > 0;) {
      if (z.real() - dedup[k].real() > 1e-12) break;
      if (std::abs(z - dedup[k]) <= 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) dedup.push_back(z);
  }
  PointCloud out;
  out.points = std::move(dedup);
  out.meta = {P.p, P.q, P.c, "backward_tree", depth, 0};
  return out;
}

// ---------------------------------------------------------------------------
// Repelling cycles: Newton iteration on F_w(z) - z where F_w follows the
// root-index word. The orbit and the chain-rule derivative are recomputed
// from scratch at each iterate (re-anchoring), which sidesteps branch-cut
// drift near the axis.
// ---------------------------------------------------------------------------

inline CycleRecord repelling_cycle(const CorrParams& P, const std::vector<int>& word,
                                   Complex seed) {
  if (word.empty()) throw std::invalid_argument("repelling_cycle: empty word");
  Complex z = seed;
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const std::vector<Complex> orbit = apply_word_forward(P, z, word);
    Complex deriv{1.0, 0.0};
    Complex prev = z;
    for (const Complex x : orbit) {
      deriv *= branch_derivative(P, prev, x);
      prev = x;
    }
    const Complex fz = orbit.back();
    const Complex denom = deriv - Complex{1.0, 0.0};
    if (std::abs(denom) < 1e-14)
      throw NoConvergence("repelling_cycle: Newton step singular (multiplier near 1)");
    const Complex step = (fz - z) / denom;
    z -= step;
    if (std::abs(step) < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("repelling_cycle: no convergence within 100 iterations");

  std::vector<Complex> orbit = apply_word_forward(P, z, word);
  // Minimal period: first return of the orbit to the solved point.
  int period = static_cast<int>(word.size());
  for (int t = 0; t + 1 < static_cast<int>(orbit.size()); ++t) {
    if (std::abs(orbit[t] - z) < 1e-9) {
      period = t + 1;
      break;
    }
  }
  CycleRecord rec;
  rec.period = period;
  rec.points.push_back(z);
  for (int t = 0; t + 1 < period; ++t) rec.points.push_back(orbit[t]);
  Complex mult{1.0, 0.0};
  Complex prev = z;
  for (int t = 0; t < period; ++t) {
    const Complex nxt = apply_word_forward(P, prev, {word[t % word.size()]}).back();
    mult *= branch_derivative(P, prev, nxt);
    prev = nxt;
  }
  rec.multiplier = mult;
  rec.cls = classify_multiplier(mult);
  return rec;
}

// ---------------------------------------------------------------------------
// Post-critical proximity guard used by inverse_iteration seeding.
// ---------------------------------------------------------------------------

namespace detail {

// Truncated forward cloud of the critical point, value-deduplicated per
// level; branches past R are followed only until they leave 2R. Falls back
// to shallower depth when the branch count explodes.
inline std::vector<Complex> postcritical_probe_points(const CorrParams& P, int depth,
                                                      std::size_t budget) {
  const double R = escaping_radius(P, 1.1);
  std::vector<Complex> all;
  for (int try_depth = depth; try_depth >= 4; try_depth /= 2) {
    all.clear();
    std::vector<Complex> level{Complex{0.0, 0.0}};
    bool overflow = false;
    for (int d = 0; d < try_depth && !level.empty(); ++d) {
      std::vector<Complex> next;
      for (const Complex z : level) {
        for (const Complex w : forward_images(P, z).images) {
          bool dup = false;
          for (const Complex u : next)
            if (std::abs(u - w) <= 1e-12) {
              dup = true;
              break;
            }
          if (dup) continue;
          all.push_back(w);
          if (std::abs(w) <= 2.0 * R) next.push_back(w);
        }
        if (all.size() > budget) {
          overflow = true;
          break;
        }
      }
      if (overflow) break;
      level.swap(next);
    }
    if (!overflow) return all;
  }
  return all;
}

}  // namespace detail

inline PointCloud inverse_iteration(const CorrParams& P, Complex seed, int burn_in,
                                    std::size_t n_points, std::uint64_t rng_seed, int walkers,
                                    int threads) {
  if (walkers < 1) throw std::invalid_argument("inverse_iteration: walkers must be >= 1");
  const double R = escaping_radius(P, 1.1);
  if (!(std::abs(seed) <= R))
    throw std::invalid_argument("inverse_iteration: seed must lie in the escaping-radius disk");
  for (const Complex p : detail::postcritical_probe_points(P, 32, std::size_t{1} << 16))
    if (std::abs(seed - p) <= 1e-9)
      throw SeedOnPostCritical("inverse_iteration: seed within 1e-9 of the post-critical set");

  PointCloud out;
  out.points.assign(n_points, Complex{0.0, 0.0});
  out.meta = {P.p, P.q, P.c, "inverse_iteration", burn_in, rng_seed};

  // Quota per walker; walker w emits its points contiguously at offset[w].
  std::vector<std::size_t> quota(walkers, n_points / walkers);
  for (std::size_t w = 0; w < n_points % walkers; ++w) ++quota[w];
  std::vector<std::size_t> offset(walkers, 0);
  for (int w = 1; w < walkers; ++w) offset[w] = offset[w - 1] + quota[w - 1];

  parallel_for(static_cast<std::size_t>(walkers), [&](std::size_t w) {
    CounterRng rng(rng_seed, w);
    Complex z = seed;
    const std::size_t emit = quota[w];
    for (std::size_t t = 0; t < static_cast<std::size_t>(burn_in) + emit; ++t) {
      const PreimageSet pre = backward_images(P, z);
      z = pre.preimages[rng.below(static_cast<std::uint32_t>(P.p))];
      if (t >= static_cast<std::size_t>(burn_in))
        out.points[offset[w] + (t - burn_in)] = z;
    }
  }, threads);
  return out;
}

// Default seed policy: the first Newton-converged repelling fixed point that
// clears the post-critical guard, scanning root indices and a deterministic
// fan of starting guesses; falls back to rng-drawn points on |z| = R/2.
inline Complex default_seed(const CorrParams& P, std::uint64_t rng_seed = 0xC0FFEEull) {
  const double R = escaping_radius(P, 1.1);
  const std::vector<Complex> post =
      detail::postcritical_probe_points(P, 32, std::size_t{1} << 16);
  const auto clear_of_post = [&](Complex z) {
    for (const Complex p : post)
      if (std::abs(z - p) <= 1e-9) return false;
    return true;
  };
  for (int k = 0; k < P.q; ++k) {
    for (int g = 0; g < 8; ++g) {
      const Complex guess = std::polar(0.5 * R, kPi * g / 4.0);
      try {
        const CycleRecord rec = repelling_cycle(P, {k}, guess);
        const Complex fp = rec.points[0];
        if (rec.cls == "repelling" && std::abs(fp) <= R && clear_of_post(fp)) return fp;
      } catch (const Error&) {
      } catch (const std::invalid_argument&) {
      }
    }
  }
  CounterRng rng(rng_seed, 0x5EEDull);
  for (int t = 0; t < 64; ++t) {
    const Complex z = std::polar(0.5 * R, 2.0 * kPi * rng.uniform());
    if (clear_of_post(z)) return z;
  }
  throw SeedOnPostCritical("default_seed: no admissible seed found");
}

// ---------------------------------------------------------------------------
// Finite-step covering probe (local expansivity): grow the cloud points
// inside a disk by full forward-image sets until the whole cloud is within
// eps, pruning points that have left the escaping radius for good.
// ---------------------------------------------------------------------------

struct LeoResult {
  bool covered = false;
  int n = 0;                 // least covering step when covered
  std::size_t final_size = 0;
};

inline LeoResult leo_cover(const CorrParams& P, const PointCloud& cloud, Complex center,
                           double radius, double eps, int n_max,
                           std::size_t budget = std::size_t{1} << 22) {
  std::vector<Complex> set;
  for (const Complex z : cloud.points)
    if (std::abs(z - center) <= radius) set.push_back(z);
  if (set.empty()) throw EmptySeed("leo_cover: no cloud points inside the seed disk");

  const double prune = escaping_radius(P, 1.1) + eps;
  for (int n = 0; n <= n_max; ++n) {
    if (covers_within(cloud.points, set, eps)) return {true, n, set.size()};
    if (n == n_max) break;
    std::vector<Complex> next;
    next.reserve(set.size() * P.q);
    for (const Complex z : set)
      for (const Complex w : forward_images(P, z).images)
        if (std::abs(w) <= prune) next.push_back(w);
    std::sort(next.begin(), next.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > budget) throw DepthOverflow("leo_cover: point budget exhausted");
    if (next.empty()) break;  // everything escaped; coverage can no longer improve
    set.swap(next);
  }
  return {false, n_max, set.size()};
}

// ---------------------------------------------------------------------------
// Cycle continuation along a parameter path. Newton re-solves the word cycle
// at each path point, seeded from the previous solution; stops early if the
// stability class changes.
// ---------------------------------------------------------------------------

struct MotionTrace {
  Complex base_c{0.0, 0.0};
  std::vector<Complex> path;
  std::vector<CycleRecord> cycles;   // one per completed path point
  bool truncated = false;
  std::string reason;
};

inline MotionTrace trace_cycle_motion(const CorrParams& P, const CycleRecord& cycle,
                                      const std::vector<int>& word,
                                      const std::vector<Complex>& c_path) {
  if (c_path.empty()) throw std::invalid_argument("trace_cycle_motion: empty path");
  if (std::abs(c_path.front() - P.c) > 1e-12)
    throw std::invalid_argument("trace_cycle_motion: path must start at the base parameter");

  MotionTrace trace;
  trace.base_c = P.c;
  trace.path = c_path;
  Complex z = cycle.points.at(0);
  const std::string base_cls = cycle.cls;
  for (const Complex c : c_path) {
    const CorrParams Pc{P.p, P.q, c};
    const CycleRecord rec = repelling_cycle(Pc, word, z);  // generic Newton cycle solve
    if (rec.cls != base_cls) {
      trace.truncated = true;
      trace.reason = "ClassChanged: multiplier crossed the unit circle";
      break;
    }
    trace.cycles.push_back(rec);
    z = rec.points[0];
  }
  return trace;
}

}  // namespace corrdyn
