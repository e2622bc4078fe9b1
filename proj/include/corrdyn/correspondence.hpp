#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "types.hpp"

// Multivalued dynamics of (w - c)^q = z^p with p > q >= 1:
// forward images, backward images, anchored branch continuation, and the
// branch derivative dw/dz = p z^{p-1} / (q (w - c)^{q-1}).

namespace corrdyn {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTolResid = 1e-9;

// Principal argument in (-pi, pi]. atan2 alone maps im == -0.0 on the
// negative real axis to -pi; pin that edge so enumeration is reproducible.
inline double principal_arg(Complex z) {
  if (z.imag() == 0.0) return z.real() < 0.0 ? kPi : 0.0;
  return std::atan2(z.imag(), z.real());
}

// Integer power by plain multiplication: deterministic evaluation order.
inline Complex pow_int(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

// Exactly q forward images, ordered by root index j = 0..q-1:
//   w_j = c + |z|^{p/q} exp(i (p Arg z + 2 pi j) / q).
struct ImageSet {
  std::vector<Complex> images;
};

// Exactly p backward images, ordered by root index j = 0..p-1:
//   z_j = |w - c|^{q/p} exp(i (q Arg(w - c) + 2 pi j) / p).
struct PreimageSet {
  std::vector<Complex> preimages;
};

// A point (source, target) on the correspondence graph: target in f(source).
// Anchors pin a single-valued branch for analytic continuation.
struct BranchAnchor {
  Complex source{0.0, 0.0};
  Complex target{0.0, 0.0};
};

inline ImageSet forward_images(const CorrParams& P, Complex z) {
  ImageSet out;
  out.images.reserve(P.q);
  if (z == Complex{0.0, 0.0}) {
    for (int j = 0; j < P.q; ++j) out.images.push_back(P.c);
    return out;
  }
  const double r = std::abs(z);
  const double th = principal_arg(z);
  const double mag = std::pow(r, P.beta());
  for (int j = 0; j < P.q; ++j) {
    const double ang = (P.p * th + 2.0 * kPi * j) / P.q;
    out.images.push_back(P.c + std::polar(mag, ang));
  }
  return out;
}

inline PreimageSet backward_images(const CorrParams& P, Complex w) {
  PreimageSet out;
  out.preimages.reserve(P.p);
  const Complex u = w - P.c;
  if (u == Complex{0.0, 0.0}) {
    for (int j = 0; j < P.p; ++j) out.preimages.emplace_back(0.0, 0.0);
    return out;
  }
  const double r = std::abs(u);
  const double th = principal_arg(u);
  const double mag = std::pow(r, static_cast<double>(P.q) / static_cast<double>(P.p));
  for (int j = 0; j < P.p; ++j) {
    const double ang = (P.q * th + 2.0 * kPi * j) / P.p;
    out.preimages.push_back(std::polar(mag, ang));
  }
  return out;
}

// Relative defect of the defining relation at a candidate pair (z, w).
inline double residual(const CorrParams& P, Complex z, Complex w) {
  const double scale = std::max(1.0, std::pow(std::abs(z), static_cast<double>(P.p)));
  return std::abs(pow_int(w - P.c, P.q) - pow_int(z, P.p)) / scale;
}

// dw/dz of the branch through (z, w). Singular at the critical point z = 0
// and at the branch point w = c.
inline Complex branch_derivative(const CorrParams& P, Complex z, Complex w) {
  if (z == Complex{0.0, 0.0})
    throw SingularDerivative("branch_derivative: z = 0 is the critical point");
  if (w == P.c)
    throw SingularDerivative("branch_derivative: w = c is the branch point");
  return (static_cast<double>(P.p) * pow_int(z, P.p - 1)) /
         (static_cast<double>(P.q) * pow_int(w - P.c, P.q - 1));
}

// One continuation step: move the anchored branch from anchor.source to z1.
// The new target is the forward image nearest to the first-order prediction
// target + f'(anchor) (z1 - source); the step is accepted only when that
// image is more than twice closer to the prediction than any other image.
inline BranchAnchor continue_branch(const CorrParams& P, const BranchAnchor& a, Complex z1) {
  if (z1 == Complex{0.0, 0.0})
    throw std::invalid_argument("continue_branch: z1 must be nonzero");

  Complex pred = a.target;
  if (a.source != Complex{0.0, 0.0} && a.target != P.c)
    pred += branch_derivative(P, a.source, a.target) * (z1 - a.source);

  const ImageSet imgs = forward_images(P, z1);
  std::size_t best = 0;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < imgs.images.size(); ++j) {
    const double d = std::abs(imgs.images[j] - pred);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = j;
    } else if (d < d2) {
      d2 = d;
    }
  }
  if (imgs.images.size() > 1 && !(d2 > 2.0 * d1))
    throw AmbiguousContinuation("continue_branch: images not 2x separated around prediction");
  return BranchAnchor{z1, imgs.images[best]};
}

// Continuation from anchor.source to z along the straight segment, bisecting
// the step whenever a single hop is ambiguous. Returns the branch value at z.
inline Complex apply_branch(const CorrParams& P, const BranchAnchor& a, Complex z,
                            int max_depth = 60) {
  struct Walker {
    const CorrParams& P;
    int max_depth;
    BranchAnchor go(BranchAnchor from, Complex to, int depth) const {
      if (to == from.source) return from;
      try {
        return continue_branch(P, from, to);
      } catch (const AmbiguousContinuation&) {
        const double span = std::abs(to - from.source);
        if (depth <= 0 || span < 1e-13 * (1.0 + std::abs(to))) throw;
        const Complex mid = from.source + (to - from.source) * 0.5;
        const BranchAnchor half = go(from, mid, depth - 1);
        return go(half, to, depth - 1);
      }
    }
  };
  return Walker{P, max_depth}.go(a, z, max_depth).target;
}

// Forward orbit along a fixed root-index word; returns the orbit points
// (one per symbol). Symbols are 0-based indices into forward_images.
inline std::vector<Complex> apply_word_forward(const CorrParams& P, Complex z,
                                               const std::vector<int>& word) {
  std::vector<Complex> orbit;
  orbit.reserve(word.size());
  Complex cur = z;
  for (const int idx : word) {
    if (idx < 0 || idx >= P.q)
      throw std::invalid_argument("apply_word_forward: symbol out of range [0, q)");
    cur = forward_images(P, cur).images[static_cast<std::size_t>(idx)];
    orbit.push_back(cur);
  }
  return orbit;
}

}  // namespace corrdyn
