#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "correspondence.hpp"
#include "escape.hpp"
#include "types.hpp"

// Disk-chain systems around the cycle of a simple centre. The chain
//
//   B_d -> D_1 -> D_2 -> ... -> D_n,   D_1 = {|z - c| < d^beta},
//
// carries one anchored branch phi_i per step. A system is "critical" when
// 0 lies in D_n and "branches" when D_n sits compactly inside B_d - {0}
// within a sector of angle 2 pi / p at the origin (the univalence test).
// Construction is backed by sampled verification, not interval arithmetic;
// verify_system re-runs every check on demand.

namespace corrdyn {

enum class SystemKind { critical, branches };

struct BranchSystem {
  CorrParams params;
  double d = 0.0;                     // radius of the base disk B_d
  SystemKind kind = SystemKind::critical;
  std::vector<Disk> disks;            // D_1..D_n
  std::vector<BranchAnchor> anchors;  // phi_i anchored at (center_i, center_{i+1})
  int escape_depth = 0;               // m: sampled siblings leave B_R within m steps
};

namespace detail {

// Deterministic polar grid on a closed disk: the center plus `rings`
// concentric circles of `spokes` points, outermost on the boundary.
inline std::vector<Complex> disk_grid(const Disk& D, int rings, int spokes) {
  std::vector<Complex> pts;
  pts.reserve(1 + static_cast<std::size_t>(rings) * spokes);
  pts.push_back(D.center);
  for (int r = 1; r <= rings; ++r) {
    const double rad = D.radius * r / rings;
    for (int s = 0; s < spokes; ++s)
      pts.push_back(D.center + std::polar(rad, 2.0 * kPi * s / spokes));
  }
  return pts;
}

// Largest sampled |phi'| over a disk grid for the branch pinned by `anchor`.
inline double max_abs_derivative(const CorrParams& P, const BranchAnchor& anchor, const Disk& D,
                                 int rings = 4, int spokes = 48) {
  double worst = 0.0;
  for (const Complex z : disk_grid(D, rings, spokes)) {
    const Complex w = apply_branch(P, anchor, z);
    worst = std::max(worst, std::abs(branch_derivative(P, z, w)));
  }
  return worst;
}

// Disk radii along the chain: r_1 = d^beta and r_{i+1} = 1.05 L_i r_i with
// L_i the sampled derivative maximum on D_i. The 1.05 slack absorbs the gap
// between the sampled and the true maximum.
inline std::vector<Disk> chain_disks(const CorrParams& P, const std::vector<Complex>& centers,
                                     const std::vector<BranchAnchor>& anchors, double d) {
  std::vector<Disk> disks;
  disks.reserve(centers.size());
  disks.push_back({centers[0], std::pow(d, P.beta())});
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double L = max_abs_derivative(P, anchors[i], disks[i]);
    disks.push_back({centers[i + 1], disks[i].radius * 1.05 * L});
  }
  return disks;
}

}  // namespace detail

// Sampled upper bound for |g'| on D_1, where g = phi_{n-1} o ... o phi_1:
// the product of per-disk derivative maxima, inflated by a 1.5 safety factor.
inline double derivative_bound_C0(const CorrParams& P, const std::vector<Disk>& disks,
                                  const std::vector<BranchAnchor>& anchors) {
  if (disks.empty() || anchors.size() + 1 != disks.size())
    throw std::invalid_argument("derivative_bound_C0: need n disks and n-1 anchors");
  double prod = 1.0;
  for (std::size_t i = 0; i < anchors.size(); ++i)
    prod *= detail::max_abs_derivative(P, anchors[i], disks[i]);
  return 1.5 * prod;
}

// g_c(c): push the parameter through the anchored branch chain.
inline Complex f_of_c(const CorrParams& P, const BranchSystem& sys) {
  Complex z = P.c;
  for (const BranchAnchor& a : sys.anchors) z = apply_branch(P, a, z);
  return z;
}

// ---------------------------------------------------------------------------
// Verification. Five checks:
//   1. disks D_1..D_n pairwise disjoint (center gap exceeds radius sum);
//   2. D_n placement by kind (critical: 0 in D_n and D_n inside B_d;
//      branches: D_n compactly in B_d - {0});
//   3. sector test r_n < |center_n| sin(pi/p) (branches only);
//   4. D_1 = {|z - c| < d^beta};
//   5. sampled escaping region: for grid points z of D_i the chain image
//      lands in D_{i+1} and every sibling image leaves B_R within m steps;
//      grid points of D_n map into D_1 under all q branches.
// ---------------------------------------------------------------------------

struct SystemCheckReport {
  bool disjoint = false;
  bool placement = false;
  bool sector = false;
  bool d1_radius = false;
  bool escaping = false;
  int escape_depth = 0;        // recomputed m when the escaping check passes
  long chain_violations = 0;   // chain or wrap images outside the next disk
  long stuck_siblings = 0;     // siblings still inside B_R at the depth cap
  bool pass() const { return disjoint && placement && sector && d1_radius && escaping; }
};

inline SystemCheckReport verify_system(const BranchSystem& sys, int rings = 3, int spokes = 24,
                                       const EscapeConfig& cfg = {}) {
  const CorrParams& P = sys.params;
  const std::vector<Disk>& D = sys.disks;
  const std::size_t n = D.size();
  SystemCheckReport rep;
  if (n == 0 || sys.anchors.size() + 1 != n || !(sys.d > 0.0)) return rep;

  rep.disjoint = true;
  for (std::size_t i = 0; i < n && rep.disjoint; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(std::abs(D[i].center - D[j].center) > D[i].radius + D[j].radius)) {
        rep.disjoint = false;
        break;
      }

  const Disk& last = D[n - 1];
  if (sys.kind == SystemKind::critical) {
    rep.placement = last.contains(Complex{0.0, 0.0}) && std::abs(last.center) + last.radius < sys.d;
    rep.sector = true;  // vacuous for critical systems
  } else {
    rep.placement = std::abs(last.center) + last.radius < sys.d &&
                    std::abs(last.center) - last.radius > 0.0;
    rep.sector = last.radius < std::abs(last.center) * std::sin(kPi / P.p);
  }

  const double r1 = std::pow(sys.d, P.beta());
  rep.d1_radius = std::abs(D[0].radius - r1) <= 1e-12 * r1 && D[0].center == P.c;

  // Sampled escaping-region check.
  const double R = escaping_radius(P, cfg);
  int m = 1;
  bool sampling_ok = true;
  try {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (const Complex z : detail::disk_grid(D[i], rings, spokes)) {
        const Complex w_chain = apply_branch(P, sys.anchors[i], z);
        if (!D[i + 1].contains(w_chain)) ++rep.chain_violations;
        const ImageSet imgs = forward_images(P, z);
        std::size_t chain_idx = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < imgs.images.size(); ++k) {
          const double dist = std::abs(imgs.images[k] - w_chain);
          if (dist < best) {
            best = dist;
            chain_idx = k;
          }
        }
        for (std::size_t k = 0; k < imgs.images.size(); ++k) {
          if (k == chain_idx) continue;
          const int sd = survival_depth(P, imgs.images[k], cfg, R);
          if (sd >= cfg.depth_cap)
            ++rep.stuck_siblings;
          else
            m = std::max(m, sd + 1);
        }
      }
    }
    // Wrap: D_n feeds the base disk, so all q images return to D_1.
    for (const Complex z : detail::disk_grid(D[n - 1], rings, spokes))
      for (const Complex w : forward_images(P, z).images)
        if (!D[0].contains(w)) ++rep.chain_violations;
  } catch (const Error&) {
    sampling_ok = false;
  }
  rep.escaping = sampling_ok && rep.chain_violations == 0 && rep.stuck_siblings == 0;
  if (rep.escaping) rep.escape_depth = m;
  return rep;
}

namespace detail {

inline std::string first_failure(const SystemCheckReport& rep) {
  if (!rep.disjoint) return "disks not pairwise disjoint";
  if (!rep.placement) return "final disk placement invalid for its kind";
  if (!rep.sector) return "final disk not inside a sector of angle 2 pi / p";
  if (!rep.d1_radius) return "first disk is not {|z - c| < d^beta}";
  if (rep.stuck_siblings > 0) return "some sibling images never leave the escape disk";
  return "chain images leave the next disk";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructors.
// ---------------------------------------------------------------------------

// Critical system at the given d: disk centers are the orbit of 0 under the
// cycle word at the system's own parameter, anchors are consecutive orbit
// pairs (exact correspondence points).
inline BranchSystem build_critical_system(const CorrParams& P, const std::vector<int>& word,
                                          double d) {
  if (word.empty()) throw std::invalid_argument("build_critical_system: empty cycle word");
  if (!(d > 0.0)) throw std::invalid_argument("build_critical_system: d must be positive");

  const std::vector<Complex> centers = apply_word_forward(P, Complex{0.0, 0.0}, word);
  std::vector<BranchAnchor> anchors;
  for (std::size_t i = 0; i + 1 < centers.size(); ++i)
    anchors.push_back({centers[i], centers[i + 1]});

  BranchSystem sys;
  sys.params = P;
  sys.d = d;
  sys.kind = SystemKind::critical;
  sys.anchors = anchors;
  try {
    sys.disks = detail::chain_disks(P, centers, anchors, d);
  } catch (const Error& e) {
    throw ConstructionFailed(std::string("build_critical_system: chain sampling failed: ") +
                             e.what());
  }
  const SystemCheckReport rep = verify_system(sys);
  if (!rep.pass())
    throw ConstructionFailed("build_critical_system: " + detail::first_failure(rep));
  sys.escape_depth = rep.escape_depth;
  return sys;
}

// System of branches near a simple centre. The centre's cycle fixes each
// branch germ; shifting its anchor targets by (c - centre) re-anchors the
// same germ exactly at the working parameter, and continuation along short
// segments transports it to the chain centers. The base radius solves
//   C0 d^beta = |f(c)| sin(pi / p) / 1.5
// by fixed-point iteration in d (C0 is sampled on the disks at d), landing
// strictly inside the admissible interval (1, 2) of safety factors.
inline BranchSystem build_branch_system(const CorrParams& P, Complex centre,
                                        const std::vector<int>& word) {
  if (word.empty()) throw std::invalid_argument("build_branch_system: empty cycle word");

  const CorrParams Pa{P.p, P.q, centre};
  const std::vector<Complex> cycle = apply_word_forward(Pa, Complex{0.0, 0.0}, word);
  if (!(std::abs(cycle.back()) <= 1e-10))
    throw ConstructionFailed("build_branch_system: word does not close the cycle at the centre");

  const std::size_t n = word.size();
  const Complex shift = P.c - centre;
  BranchSystem sys;
  sys.params = P;
  sys.kind = SystemKind::branches;

  std::vector<Complex> centers{P.c};
  try {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const BranchAnchor germ{cycle[i], cycle[i + 1] + shift};
      centers.push_back(apply_branch(P, germ, centers[i]));
      sys.anchors.push_back({centers[i], centers[i + 1]});
    }
  } catch (const Error& e) {
    throw ConstructionFailed(std::string("build_branch_system: center continuation failed: ") +
                             e.what());
  }

  const Complex fc = centers.back();
  if (std::abs(fc) < 1e-12)
    throw TooCloseToCenter("build_branch_system: |f(c)| below 1e-12");

  // Solve C0(d) d^beta = K for d, where K = |f(c)| sin(pi/p) / 1.5. The
  // iteration starts from the C0 >= 1.5 floor (an upper bound for d) and
  // contracts because C0 varies slowly with d.
  const double K = std::abs(fc) * std::sin(kPi / P.p) / 1.5;
  const double expnt = static_cast<double>(P.q) / static_cast<double>(P.p);
  double d = std::pow(K / 1.5, expnt);
  bool sized = false;
  for (int it = 0; it < 100; ++it) {
    std::vector<Disk> disks;
    try {
      disks = detail::chain_disks(P, centers, sys.anchors, d);
    } catch (const Error&) {
      d *= 0.5;  // chain sampling hit a singularity; shrink and retry
      continue;
    }
    const double C0 = derivative_bound_C0(P, disks, sys.anchors);
    const double d_next = std::pow(K / C0, expnt);
    sys.disks = std::move(disks);
    if (std::abs(d_next - d) <= 1e-9 * d) {
      sys.d = d;
      sized = true;
      break;
    }
    d = d_next;
  }
  if (!sized)
    throw ConstructionFailed("build_branch_system: base-radius sizing did not converge");

  const SystemCheckReport rep = verify_system(sys);
  if (!rep.pass()) throw ConstructionFailed("build_branch_system: " + detail::first_failure(rep));
  sys.escape_depth = rep.escape_depth;
  return sys;
}

}  // namespace corrdyn
