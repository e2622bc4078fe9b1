#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "correspondence.hpp"
#include "escape.hpp"
#include "julia.hpp"
#include "types.hpp"

// Centres of the parameter plane: a parameter c is a centre when the orbit
// of 0 returns to 0, and a simple centre when that return is the only
// non-escaping branch of the critical orbit tree. Also: truncated
// post-critical clouds and a probe that classifies the dual Julia set from
// the bounded part of the critical orbit.

namespace corrdyn {

inline constexpr double kTolCenter = 1e-10;

struct CentreRecord {
  int p = 2, q = 1;
  Complex c{0.0, 0.0};
  int period = 0;
  std::vector<int> word;         // root indices realizing the cycle of 0
  bool simple = false;
  int escape_certificate = 0;    // max steps any sampled sibling needs to exit B_R
  std::vector<std::string> caveats;
};

// Newton solve of O_word(c) = 0, where O_word(c) is the endpoint of the
// orbit of 0 under the word at parameter c. The derivative in c comes from
// central finite differences; verification is stricter than the search.
inline Complex centre_solve(int p, int q, const std::vector<int>& word, Complex c_guess) {
  if (word.empty()) throw std::invalid_argument("centre_solve: empty word");
  const auto endpoint = [&](Complex c) {
    return apply_word_forward({p, q, c}, Complex{0.0, 0.0}, word).back();
  };
  const double h = 1e-7;
  Complex c = c_guess;
  for (int it = 0; it < 64; ++it) {
    const Complex v = endpoint(c);
    const Complex dv = (endpoint(c + h) - endpoint(c - h)) / (2.0 * h);
    if (!(std::abs(dv) > 0.0))
      throw NoConvergence("centre_solve: vanishing derivative in the Newton step");
    const Complex step = v / dv;
    c -= step;
    if (std::abs(step) < 1e-12) return c;
  }
  throw NoConvergence("centre_solve: no convergence within 64 iterations");
}

// ---------------------------------------------------------------------------
// Simple-centre verification: enumerate the q-ary forward value tree of 0 to
// depth n. A branch hitting 0 (within tol) is a return and is not expanded;
// values at |z| <= 1e-12 expand to the single exact image c. A simple centre
// has exactly one returning branch, and every non-returning endpoint must
// leave B_R within the caller's escape_depth budget.
// ---------------------------------------------------------------------------

enum class CentreStatus { simple, not_centre, undecided };

struct CentreVerifyResult {
  CentreStatus status = CentreStatus::not_centre;
  CentreRecord record;   // populated when status == simple
  std::string detail;
};

inline CentreVerifyResult simple_centre_verify(const CorrParams& P, int n, int escape_depth,
                                               std::size_t budget = std::size_t{1} << 20) {
  if (n < 1) throw std::invalid_argument("simple_centre_verify: n must be >= 1");
  if (escape_depth < 1)
    throw std::invalid_argument("simple_centre_verify: escape_depth must be >= 1");

  const double R = escaping_radius(P, 1.1);
  EscapeConfig cfg;
  cfg.depth_cap = escape_depth;

  struct Node {
    Complex z;
    int depth;
    std::vector<int> syms;
  };
  std::vector<Node> stack{{Complex{0.0, 0.0}, 0, {}}};
  std::vector<std::pair<int, std::vector<int>>> returns;
  int certificate = 0;
  bool undecided = false;
  std::string undecided_detail;
  std::size_t expanded = 0;

  while (!stack.empty()) {
    const Node nd = std::move(stack.back());
    stack.pop_back();
    if (++expanded > budget)
      throw DepthOverflow("simple_centre_verify: tree budget exhausted");

    if (nd.depth >= 1 && std::abs(nd.z) <= kTolCenter) {
      returns.emplace_back(nd.depth, nd.syms);
      continue;
    }
    if (nd.depth == n) {
      const int sd = survival_depth(P, nd.z, cfg, R);
      if (sd >= escape_depth) {
        undecided = true;
        undecided_detail = "branch neither returns nor escapes within the depth budget";
      } else {
        certificate = std::max(certificate, std::abs(nd.z) > R ? 0 : sd + 1);
      }
      continue;
    }
    if (std::abs(nd.z) <= 1e-12) {
      std::vector<int> syms = nd.syms;
      syms.push_back(0);
      stack.push_back({P.c, nd.depth + 1, std::move(syms)});
      continue;
    }
    const ImageSet imgs = forward_images(P, nd.z);
    for (int j = P.q; j-- > 0;) {
      std::vector<int> syms = nd.syms;
      syms.push_back(j);
      stack.push_back({imgs.images[static_cast<std::size_t>(j)], nd.depth + 1, std::move(syms)});
    }
  }

  CentreVerifyResult out;
  if (returns.empty()) {
    out.status = CentreStatus::not_centre;
    out.detail = "no branch of the depth-" + std::to_string(n) + " orbit tree returns to 0";
    return out;
  }
  if (returns.size() > 1) {
    out.status = CentreStatus::not_centre;
    out.detail = "multiple returning branches; the critical orbit is not a single cycle";
    return out;
  }
  if (undecided) {
    out.status = CentreStatus::undecided;
    out.detail = undecided_detail;
    return out;
  }
  out.status = CentreStatus::simple;
  out.record.p = P.p;
  out.record.q = P.q;
  out.record.c = P.c;
  out.record.period = returns[0].first;
  out.record.word = returns[0].second;
  out.record.simple = true;
  out.record.escape_certificate = certificate;
  if (std::abs(P.c) <= 1e-12)
    out.record.caveats.push_back("zero_parameter: no system of branches exists at c = 0");
  if (returns[0].first < n)
    out.record.caveats.push_back("minimal period is below the requested depth");
  return out;
}

// ---------------------------------------------------------------------------
// Truncated post-critical cloud: forward images of 0 level by level, values
// deduplicated within 1e-12 per level. Points beyond 2R are dropped (and
// recorded); the bounded part collects everything inside B_R.
// ---------------------------------------------------------------------------

struct PostcriticalCloud {
  std::vector<std::vector<Complex>> levels;  // kept values per depth 1..depth
  PointCloud bounded;                        // |z| <= R across all levels, deduplicated
  std::vector<Complex> escaped;              // dropped once beyond 2R
  double radius = 0.0;
  int depth = 0;
};

namespace detail {

inline void dedup_within(std::vector<Complex>& pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> out;
  out.reserve(pts.size());
  for (const Complex z : pts) {
    bool dup = false;
    for (std::size_t k = out.size(); k-- > 0;) {
      if (z.real() - out[k].real() > tol) break;
      if (std::abs(z - out[k]) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(z);
  }
  pts.swap(out);
}

}  // namespace detail

inline PostcriticalCloud postcritical_cloud(const CorrParams& P, int depth,
                                            std::size_t budget = std::size_t{1} << 20) {
  if (depth < 1) throw std::invalid_argument("postcritical_cloud: depth must be >= 1");
  PostcriticalCloud out;
  out.radius = escaping_radius(P, 1.1);
  out.depth = depth;

  std::vector<Complex> frontier{Complex{0.0, 0.0}};
  std::size_t total = 0;
  for (int k = 0; k < depth && !frontier.empty(); ++k) {
    std::vector<Complex> next;
    next.reserve(frontier.size() * P.q);
    for (const Complex z : frontier)
      for (const Complex w : forward_images(P, z).images) next.push_back(w);
    detail::dedup_within(next, 1e-12);

    std::vector<Complex> level;
    for (const Complex w : next) {
      if (std::abs(w) > 2.0 * out.radius)
        out.escaped.push_back(w);
      else
        level.push_back(w);
    }
    total += level.size();
    if (total > budget) throw DepthOverflow("postcritical_cloud: point budget exhausted");
    out.levels.push_back(level);
    frontier = out.levels.back();
  }

  for (const std::vector<Complex>& level : out.levels)
    for (const Complex z : level)
      if (std::abs(z) <= out.radius) out.bounded.points.push_back(z);
  detail::dedup_within(out.bounded.points, 1e-12);
  out.bounded.meta = {P.p, P.q, P.c, "forward", depth, 0};
  return out;
}

// ---------------------------------------------------------------------------
// Dual-set probe from the critical orbit. The dual Julia set is the closure
// of attracting cycles, and every attracting cycle attracts a branch of the
// critical orbit. Hence: if the bounded critical frontier empties, the dual
// set is empty; if the frontier is trapped in a small forward-closed core,
// the core's cycles decide (all repelling: empty; any attracting: those
// points). Anything else is reported inconclusive, never guessed.
// ---------------------------------------------------------------------------

enum class DualProbeOutcome { empty, attracting, inconclusive };

struct DualProbe {
  DualProbeOutcome outcome = DualProbeOutcome::inconclusive;
  PointCloud points;                // attracting cycle points when attracting
  std::vector<CycleRecord> cycles;  // cycles extracted from the trapped core
  std::string detail;
};

inline DualProbe dual_from_postcritical(const CorrParams& P, int depth = 64, int tail = 8,
                                        std::size_t core_cap = 64,
                                        std::size_t frontier_cap = std::size_t{1} << 14) {
  DualProbe probe;
  const double R = escaping_radius(P, 1.1);

  std::vector<Complex> frontier{Complex{0.0, 0.0}};
  std::vector<std::vector<Complex>> ring;
  for (int k = 0; k < depth; ++k) {
    std::vector<Complex> next;
    next.reserve(frontier.size() * P.q);
    for (const Complex z : frontier)
      for (const Complex w : forward_images(P, z).images)
        if (std::abs(w) <= R) next.push_back(w);
    detail::dedup_within(next, 1e-12);
    if (next.empty()) {
      probe.outcome = DualProbeOutcome::empty;
      probe.detail = "every branch of the critical orbit escapes B_R";
      return probe;
    }
    if (next.size() > frontier_cap) {
      probe.detail = "bounded critical frontier keeps growing";
      return probe;
    }
    frontier.swap(next);
    ring.push_back(frontier);
    if (ring.size() > static_cast<std::size_t>(tail)) ring.erase(ring.begin());
  }

  std::vector<Complex> core;
  for (const std::vector<Complex>& level : ring)
    core.insert(core.end(), level.begin(), level.end());
  detail::dedup_within(core, 1e-9);
  if (core.size() > core_cap) {
    probe.detail = "no small trapped core in the critical orbit tail";
    return probe;
  }

  // Forward closure of the core within B_R, with exact image values kept
  // per edge for multiplier products.
  const auto core_index = [&](Complex w) -> int {
    for (std::size_t i = 0; i < core.size(); ++i)
      if (std::abs(w - core[i]) <= 1e-9) return static_cast<int>(i);
    return -1;
  };
  struct Edge {
    int to;
    Complex value;  // exact forward image represented by core[to]
  };
  std::vector<std::vector<Edge>> edges(core.size());
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (const Complex w : forward_images(P, core[i]).images) {
      if (!(std::abs(w) <= R)) continue;
      const int j = core_index(w);
      if (j < 0) {
        probe.detail = "critical orbit tail is not forward closed";
        return probe;
      }
      edges[i].push_back({j, w});
    }
  }

  // Enumerate simple cycles (start node = smallest index on the cycle).
  struct Frame {
    int node;
    std::size_t next_edge;
  };
  std::size_t states = 0;
  for (int start = 0; start < static_cast<int>(core.size()); ++start) {
    std::vector<Frame> path{{start, 0}};
    std::vector<char> on_path(core.size(), 0);
    on_path[static_cast<std::size_t>(start)] = 1;
    while (!path.empty()) {
      if (++states > (std::size_t{1} << 16)) {
        probe.detail = "cycle enumeration budget exhausted";
        return probe;
      }
      Frame& top = path.back();
      if (top.next_edge >= edges[static_cast<std::size_t>(top.node)].size()) {
        on_path[static_cast<std::size_t>(top.node)] = 0;
        path.pop_back();
        continue;
      }
      const Edge e = edges[static_cast<std::size_t>(top.node)][top.next_edge++];
      if (e.to == start) {
        CycleRecord rec;
        rec.period = static_cast<int>(path.size());
        Complex mult{1.0, 0.0};
        for (std::size_t s = 0; s < path.size(); ++s) {
          const int node = path[s].node;
          const Edge& step = edges[static_cast<std::size_t>(node)][path[s].next_edge - 1];
          rec.points.push_back(core[static_cast<std::size_t>(node)]);
          mult *= branch_derivative(P, core[static_cast<std::size_t>(node)], step.value);
        }
        rec.multiplier = mult;
        rec.cls = classify_multiplier(mult);
        probe.cycles.push_back(rec);
      } else if (e.to > start && !on_path[static_cast<std::size_t>(e.to)]) {
        on_path[static_cast<std::size_t>(e.to)] = 1;
        path.push_back({e.to, 0});
      }
    }
  }
  if (probe.cycles.empty()) {
    probe.detail = "trapped core contains no cycle";
    return probe;
  }

  bool any_attracting = false, any_indifferent = false;
  for (const CycleRecord& rec : probe.cycles) {
    if (rec.cls == "attracting") any_attracting = true;
    if (rec.cls == "indifferent") any_indifferent = true;
  }
  if (any_attracting) {
    probe.outcome = DualProbeOutcome::attracting;
    probe.detail = "attracting cycle(s) in the critical orbit tail";
    for (const CycleRecord& rec : probe.cycles)
      if (rec.cls == "attracting")
        probe.points.points.insert(probe.points.points.end(), rec.points.begin(),
                                   rec.points.end());
    detail::dedup_within(probe.points.points, 1e-12);
    probe.points.meta = {P.p, P.q, P.c, "cycles", depth, 0};
    return probe;
  }
  if (any_indifferent) {
    probe.detail = "indifferent cycle in the critical orbit tail";
    return probe;
  }
  probe.outcome = DualProbeOutcome::empty;
  probe.detail = "all cycles in the critical orbit tail are repelling";
  return probe;
}

}  // namespace corrdyn
