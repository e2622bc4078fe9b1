#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "correspondence.hpp"
#include "types.hpp"

// Escaping radius and survival-depth machinery.
//
// With lambda > 1 fixed, let x0 be the greatest real root of
//   x^{p/q} - lambda x - |c| = 0.
// For |z| > x0 every forward image satisfies |w| >= |z|^{p/q} - |c| > lambda |z|,
// so once an orbit leaves the closed disk of radius R = x0 + margin it grows
// geometrically and never returns. The filled set K_c is the set of points
// with at least one forward orbit that stays in |z| <= R forever; truncated
// at depth_cap this becomes survival_depth.

namespace corrdyn {

struct EscapeConfig {
  double lambda = 1.1;
  int depth_cap = 64;           // rasters default to 64; point queries use 256
  double radius_margin = 1e-6;
};

inline double escaping_radius(const CorrParams& P, double lambda, double margin = 1e-6) {
  if (!(lambda > 1.0)) throw std::invalid_argument("escaping_radius: lambda must exceed 1");
  const double a = std::abs(P.c);
  const double beta = P.beta();
  const auto f = [&](double x) { return std::pow(x, beta) - lambda * x - a; };

  double hi = std::max(1.0, lambda + a);
  while (f(hi) <= 0.0) hi *= 2.0;
  // f is convex on x > 0 and f(0+) <= 0, so there is exactly one sign change
  // below hi; bisection converges to the greatest root x0.
  double lo = 1e-12;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi) + margin;
}

inline double escaping_radius(const CorrParams& P, const EscapeConfig& cfg) {
  return escaping_radius(P, cfg.lambda, cfg.radius_margin);
}

// Largest k <= depth_cap such that some forward orbit of z stays in the
// closed disk |.| <= R through step k. Iterative DFS over the q-ary forward
// tree; subtrees rooted outside the disk are pruned (they can never return).
inline int survival_depth(const CorrParams& P, Complex z, const EscapeConfig& cfg, double R) {
  if (!(std::abs(z) <= R)) return 0;
  if (cfg.depth_cap <= 0) return 0;

  struct Node {
    Complex z;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back({z, 0});
  int best = 0;
  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    const ImageSet imgs = forward_images(P, n.z);
    for (std::size_t j = imgs.images.size(); j-- > 0;) {
      const Complex w = imgs.images[j];
      if (!(std::abs(w) <= R)) continue;  // pruned: escaped for good
      const int d = n.depth + 1;
      if (d > best) best = d;
      if (d == cfg.depth_cap) return cfg.depth_cap;
      stack.push_back({w, d});
    }
  }
  return best;
}

inline int survival_depth(const CorrParams& P, Complex z, const EscapeConfig& cfg = {}) {
  return survival_depth(P, z, cfg, escaping_radius(P, cfg));
}

// ---------------------------------------------------------------------------
// Materialized pruned orbit tree (small depths only). Escaped nodes carry the
// flag and never get children.
// ---------------------------------------------------------------------------

struct OrbitTreeNode {
  Complex z;
  int depth = 0;
  bool escaped = false;
  std::size_t parent = 0;               // index into nodes; root points to itself
  std::vector<std::size_t> children;
};

struct OrbitTree {
  std::vector<OrbitTreeNode> nodes;     // nodes[0] is the root
  double radius = 0.0;
};

inline OrbitTree build_orbit_tree(const CorrParams& P, Complex z, const EscapeConfig& cfg,
                                  std::size_t node_budget = std::size_t{1} << 20) {
  OrbitTree tree;
  tree.radius = escaping_radius(P, cfg);
  tree.nodes.push_back({z, 0, !(std::abs(z) <= tree.radius), 0, {}});
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].escaped || tree.nodes[i].depth >= cfg.depth_cap) continue;
    const ImageSet imgs = forward_images(P, tree.nodes[i].z);
    for (const Complex w : imgs.images) {
      if (tree.nodes.size() >= node_budget)
        throw DepthOverflow("build_orbit_tree: node budget exhausted");
      const int d = tree.nodes[i].depth + 1;
      tree.nodes.push_back({w, d, !(std::abs(w) <= tree.radius), i, {}});
      tree.nodes[i].children.push_back(tree.nodes.size() - 1);
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Truncated escaping-region inclusion check.
//
// R_{k,c} denotes the set of points with some forward orbit staying in B_R
// through step k (same disk B_R for both parameters). For c close to c0 the
// chain R_{m+2,c} subset R_{m+1,c0} subset R_{m,c} holds; the check counts
// sample points violating either inclusion.
// ---------------------------------------------------------------------------

struct InclusionReport {
  long violations = 0;
  long total = 0;
  int m = 0;
  Complex c{0.0, 0.0};
  Complex c0{0.0, 0.0};
  double radius = 0.0;
};

inline InclusionReport region_inclusion_check(const CorrParams& P, Complex c0, int m,
                                              const std::vector<Complex>& samples,
                                              const EscapeConfig& cfg = {}) {
  if (m < 1) throw std::invalid_argument("region_inclusion_check: m must be >= 1");
  const CorrParams P0{P.p, P.q, c0};
  // A single escaping radius valid for both parameters.
  const double R = std::max(escaping_radius(P, cfg.lambda, 0.0),
                            escaping_radius(P0, cfg.lambda, 0.0)) +
                   cfg.radius_margin;
  const auto member = [&](const CorrParams& Q, Complex z, int k) {
    EscapeConfig local = cfg;
    local.depth_cap = k;
    return survival_depth(Q, z, local, R) == k;
  };

  InclusionReport rep;
  rep.m = m;
  rep.c = P.c;
  rep.c0 = c0;
  rep.radius = R;
  rep.total = static_cast<long>(samples.size());
  for (const Complex z : samples) {
    const bool in_m2_c = member(P, z, m + 2);
    const bool in_m1_c0 = member(P0, z, m + 1);
    const bool in_m_c = member(P, z, m);
    if ((in_m2_c && !in_m1_c0) || (in_m1_c0 && !in_m_c)) ++rep.violations;
  }
  return rep;
}

}  // namespace corrdyn
