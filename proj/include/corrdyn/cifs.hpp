#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "branchsys.hpp"
#include "julia.hpp"

// Conformal iterated function system induced by a system of branches: the q
// composite contractions f_k = phi_{n-1} o ... o phi_1 o psi_k on the final
// disk D_n, their Hutchinson dynamics, the limit set, attracting cycles from
// periodic symbol words, the dual Julia set, and the restricted forward
// (omega-limit) iteration on the disk chain.

namespace corrdyn {

struct CIFSystem {
  BranchSystem system;              // parent, kind = branches
  Disk base;                        // = D_n
  std::vector<BranchAnchor> psi;    // q root branches D_n -> D_1
  std::vector<Disk> images;         // per-map image disk estimates f_k(base)
  double lambda_est = 0.0;          // sampled contraction bound, < 1
};

// f_k(z): root branch psi_k followed by the parent's anchored chain.
inline Complex cifs_apply(const CIFSystem& F, int k, Complex z) {
  const CorrParams& P = F.system.params;
  Complex x = apply_branch(P, F.psi.at(static_cast<std::size_t>(k)), z);
  for (const BranchAnchor& a : F.system.anchors) x = apply_branch(P, a, x);
  return x;
}

// |f_k'(z)| via the chain rule along the composite orbit.
inline Complex cifs_derivative(const CIFSystem& F, int k, Complex z) {
  const CorrParams& P = F.system.params;
  Complex x = apply_branch(P, F.psi.at(static_cast<std::size_t>(k)), z);
  Complex deriv = branch_derivative(P, z, x);
  for (const BranchAnchor& a : F.system.anchors) {
    const Complex y = apply_branch(P, a, x);
    deriv *= branch_derivative(P, x, y);
    x = y;
  }
  return deriv;
}

inline CIFSystem cifs_from_system(const BranchSystem& sys) {
  if (sys.kind != SystemKind::branches)
    throw std::invalid_argument("cifs_from_system: system must be of kind branches");
  const CorrParams& P = sys.params;

  CIFSystem F;
  F.system = sys;
  F.base = sys.disks.back();
  const ImageSet roots = forward_images(P, F.base.center);
  for (int k = 0; k < P.q; ++k) F.psi.push_back({F.base.center, roots.images[k]});

  // Sampled per-map Lipschitz bounds on the base disk, 1.05 inflation.
  F.lambda_est = 0.0;
  for (int k = 0; k < P.q; ++k) {
    double lip = 0.0;
    for (const Complex z : detail::disk_grid(F.base, 4, 48))
      lip = std::max(lip, std::abs(cifs_derivative(F, k, z)));
    lip *= 1.05;
    F.lambda_est = std::max(F.lambda_est, lip);
    F.images.push_back({cifs_apply(F, k, F.base.center), lip * F.base.radius});
  }
  if (!(F.lambda_est < 1.0))
    throw NotContracting("cifs_from_system: sampled contraction bound is >= 1");
  for (const Disk& E : F.images)
    if (!(std::abs(E.center - F.base.center) + E.radius < F.base.radius))
      throw NotContracting("cifs_from_system: image disk not compactly inside the base");
  for (std::size_t j = 0; j < F.images.size(); ++j)
    for (std::size_t k = j + 1; k < F.images.size(); ++k)
      if (!(std::abs(F.images[j].center - F.images[k].center) >
            F.images[j].radius + F.images[k].radius))
        throw OverlapDetected("cifs_from_system: image disks intersect");
  return F;
}

// One Hutchinson step: union of all f_k images, outer loop k, inner loop
// point index.
inline PointCloud hutchinson_step(const CIFSystem& F, const PointCloud& cloud) {
  PointCloud out;
  out.meta = cloud.meta;
  out.meta.generator = "hutchinson";
  out.points.reserve(cloud.points.size() * F.psi.size());
  for (int k = 0; k < static_cast<int>(F.psi.size()); ++k)
    for (const Complex z : cloud.points) out.points.push_back(cifs_apply(F, k, z));
  return out;
}

// One point per level-j cylinder, j chosen so the cylinder-diameter bound
// lambda^j 2r drops below tol.
inline PointCloud limit_set(const CIFSystem& F, double tol,
                            std::size_t budget = std::size_t{1} << 20) {
  if (!(tol > 0.0)) throw std::invalid_argument("limit_set: tol must be positive");
  const std::size_t q = F.psi.size();
  int j = 0;
  double bound = 2.0 * F.base.radius;
  std::size_t count = 1;
  while (!(bound < tol)) {
    bound *= F.lambda_est;
    ++j;
    if (count > budget / q)
      throw DepthOverflow("limit_set: point budget exhausted before tolerance met");
    count *= q;
  }
  PointCloud cloud;
  cloud.points = {F.base.center};
  cloud.meta = {F.system.params.p, F.system.params.q, F.system.params.c, "hutchinson", j, 0};
  for (int t = 0; t < j; ++t) cloud = hutchinson_step(F, cloud);
  cloud.meta.depth = j;
  return cloud;
}

// ---------------------------------------------------------------------------
// Dual Julia set. Near a simple centre it is the union of one piece per
// disk: the limit set in D_n, its psi-images in D_1, and their chain
// pushforwards. At a simple centre itself it degenerates to the finite
// cycle of 0.
// ---------------------------------------------------------------------------

inline PointCloud dual_julia(const BranchSystem& sys, double tol,
                             std::size_t budget = std::size_t{1} << 20) {
  const CIFSystem F = cifs_from_system(sys);
  const PointCloud core = limit_set(F, tol, budget);
  PointCloud out;
  out.meta = core.meta;
  out.meta.generator = "dual";
  out.points = core.points;

  const CorrParams& P = sys.params;
  std::vector<Complex> piece;
  piece.reserve(core.points.size() * F.psi.size());
  for (int k = 0; k < static_cast<int>(F.psi.size()); ++k)
    for (const Complex z : core.points) piece.push_back(apply_branch(P, F.psi[k], z));
  out.points.insert(out.points.end(), piece.begin(), piece.end());
  for (std::size_t i = 0; i + 1 < sys.anchors.size(); ++i) {
    for (Complex& z : piece) z = apply_branch(P, sys.anchors[i], z);
    out.points.insert(out.points.end(), piece.begin(), piece.end());
  }
  return out;
}

// Finite dual set at a verified simple centre: the cycle points of 0.
inline PointCloud dual_julia_at_centre(const CorrParams& P, const std::vector<int>& word) {
  const std::vector<Complex> orbit = apply_word_forward(P, Complex{0.0, 0.0}, word);
  if (!(std::abs(orbit.back()) <= 1e-10))
    throw std::invalid_argument("dual_julia_at_centre: word does not close the cycle of 0");
  PointCloud out;
  out.points.push_back(Complex{0.0, 0.0});
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i) out.points.push_back(orbit[i]);
  out.meta = {P.p, P.q, P.c, "cycles", static_cast<int>(word.size()), 0};
  return out;
}

// ---------------------------------------------------------------------------
// Attracting cycle coded by a periodic symbol word (rightmost symbol applied
// first). Banach iteration of the composite to its fixed point, then the
// full f_c-orbit through the branch chain with minimal-period reduction.
// ---------------------------------------------------------------------------

inline CycleRecord attracting_cycle(const CIFSystem& F, const std::vector<int>& word) {
  if (word.empty()) throw std::invalid_argument("attracting_cycle: empty word");
  const CorrParams& P = F.system.params;
  const auto composite = [&](Complex z) {
    for (std::size_t s = word.size(); s-- > 0;) z = cifs_apply(F, word[s], z);
    return z;
  };
  Complex x = F.base.center;
  for (int it = 0; it < 200000; ++it) {
    const Complex next = composite(x);
    const double step = std::abs(next - x);
    x = next;
    if (step < 1e-12) break;
  }

  // Full orbit: each symbol contributes n correspondence steps.
  const std::size_t n = F.system.disks.size();
  std::vector<Complex> pts{x};
  for (std::size_t s = word.size(); s-- > 0;) {
    Complex z = pts.back();
    z = apply_branch(P, F.psi[static_cast<std::size_t>(word[s])], z);
    pts.push_back(z);
    for (const BranchAnchor& a : F.system.anchors) {
      z = apply_branch(P, a, z);
      pts.push_back(z);
    }
  }
  const std::size_t full = word.size() * n;  // pts has full+1 entries, last ~ first

  std::size_t period = full;
  for (std::size_t t = 1; t < full; ++t) {
    if (full % t != 0) continue;
    bool ok = true;
    for (std::size_t s = 0; s + t <= full && ok; ++s)
      if (std::abs(pts[s + t] - pts[s]) > 1e-9) ok = false;
    if (ok) {
      period = t;
      break;
    }
  }

  CycleRecord rec;
  rec.period = static_cast<int>(period);
  rec.points.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(period));
  Complex mult{1.0, 0.0};
  for (std::size_t s = 0; s < period; ++s)
    mult *= branch_derivative(P, pts[s], pts[s + 1]);
  rec.multiplier = mult;
  rec.cls = classify_multiplier(mult);
  return rec;
}

// ---------------------------------------------------------------------------
// Forward iteration restricted to the system's disks: single anchored branch
// on D_1..D_{n-1}, all q images on D_n and B_d. The set is deduplicated
// exactly; the tail is the union of the last n snapshots.
// ---------------------------------------------------------------------------

struct OmegaReport {
  PointCloud tail;
  double dist_to_dual = std::numeric_limits<double>::quiet_NaN();
  int steps = 0;
  std::size_t max_set = 0;
};

inline OmegaReport omega_forward(const BranchSystem& sys, Complex z, int n_steps, double tol,
                                 const PointCloud* reference = nullptr,
                                 std::size_t budget = std::size_t{1} << 20) {
  const CorrParams& P = sys.params;
  const std::size_t n = sys.disks.size();
  const auto disk_index = [&](Complex x) -> int {
    for (std::size_t i = 0; i < n; ++i)
      if (sys.disks[i].contains(x)) return static_cast<int>(i);
    if (std::abs(x) < sys.d) return static_cast<int>(n);  // base disk B_d
    return -1;
  };
  if (disk_index(z) < 0)
    throw DomainEscape("omega_forward: start point outside the system's disks");

  std::vector<Complex> set{z};
  std::vector<std::vector<Complex>> snapshots;
  for (int step = 0; step < n_steps; ++step) {
    std::vector<Complex> next;
    next.reserve(set.size() * P.q);
    for (const Complex x : set) {
      const int i = disk_index(x);
      if (i < 0) throw DomainEscape("omega_forward: orbit left the system's disks");
      if (i + 1 < static_cast<int>(n)) {
        next.push_back(apply_branch(P, sys.anchors[static_cast<std::size_t>(i)], x));
      } else {
        // final disk or base disk: the restriction is genuinely multivalued
        for (const Complex w : forward_images(P, x).images) next.push_back(w);
      }
    }
    std::sort(next.begin(), next.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > budget) throw DepthOverflow("omega_forward: point budget exhausted");
    set.swap(next);
    snapshots.push_back(set);
    if (snapshots.size() > n) snapshots.erase(snapshots.begin());
  }

  OmegaReport rep;
  rep.steps = n_steps;
  for (const std::vector<Complex>& snap : snapshots) {
    rep.tail.points.insert(rep.tail.points.end(), snap.begin(), snap.end());
    rep.max_set = std::max(rep.max_set, snap.size());
  }
  rep.tail.meta = {P.p, P.q, P.c, "forward", n_steps, 0};

  if (reference != nullptr) {
    rep.dist_to_dual = hausdorff_distance(rep.tail.points, reference->points);
  } else if (sys.kind == SystemKind::branches) {
    const PointCloud dual = dual_julia(sys, tol, budget);
    rep.dist_to_dual = hausdorff_distance(rep.tail.points, dual.points);
  }
  return rep;
}

}  // namespace corrdyn
