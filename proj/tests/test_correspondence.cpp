#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <corrdyn/correspondence.hpp>
#include <corrdyn/rng.hpp>

#include "helpers.hpp"

using namespace corrdyn;
using testutil::same_set;

TEST_CASE("forward images enumerate the q roots in index order", "[correspondence]") {
  SECTION("degree (4,2) at c = -1") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const ImageSet s = forward_images(P, {-1.0, 0.0});
    REQUIRE(s.images.size() == 2);
    REQUIRE(same_set(s.images, {{0.0, 0.0}, {-2.0, 0.0}}, 1e-12));
  }
  SECTION("critical point maps to q copies of c") {
    const CorrParams P{7, 6, {0.0, 2.0}};
    const ImageSet s = forward_images(P, {0.0, 0.0});
    REQUIRE(s.images.size() == 6);
    for (const Complex w : s.images) REQUIRE(std::abs(w - P.c) == 0.0);
  }
  SECTION("single-valued quadratic") {
    const CorrParams P{2, 1, {0.25, 0.0}};
    const ImageSet s = forward_images(P, {1.0, 0.0});
    REQUIRE(s.images.size() == 1);
    REQUIRE(std::abs(s.images[0] - Complex{1.25, 0.0}) < 1e-15);
  }
}

TEST_CASE("every forward image satisfies the defining relation", "[correspondence]") {
  const std::vector<CorrParams> params = {
      {2, 1, {0.25, 0.0}}, {4, 2, {-1.0, 0.0}}, {7, 6, {0.0, 2.0}}, {5, 2, {1.0, 1.0}}};
  CounterRng rng(0x11AA22, 0);
  for (const CorrParams& P : params) {
    for (int t = 0; t < 200; ++t) {
      const double r = 0.5 + 1.5 * rng.uniform();
      const Complex z = std::polar(r, 2.0 * kPi * rng.uniform());
      const ImageSet s = forward_images(P, z);
      REQUIRE(s.images.size() == static_cast<std::size_t>(P.q));
      for (const Complex w : s.images) REQUIRE(residual(P, z, w) < 1e-9);
      // Distinct roots away from the critical point.
      for (std::size_t i = 0; i < s.images.size(); ++i)
        for (std::size_t j = i + 1; j < s.images.size(); ++j)
          REQUIRE(std::abs(s.images[i] - s.images[j]) > 1e-12);
    }
  }
}

TEST_CASE("backward images enumerate the p roots", "[correspondence]") {
  SECTION("quadratic square roots") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const PreimageSet s = backward_images(P, {4.0, 0.0});
    REQUIRE(s.preimages.size() == 2);
    REQUIRE(same_set(s.preimages, {{2.0, 0.0}, {-2.0, 0.0}}, 1e-12));
  }
  SECTION("degree (4,2): preimages of 0 at c = -1 are the fourth roots of unity") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const PreimageSet s = backward_images(P, {0.0, 0.0});
    REQUIRE(s.preimages.size() == 4);
    REQUIRE(same_set(s.preimages, {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, 1e-12));
  }
  SECTION("branch point pulls back to p copies of the critical point") {
    const CorrParams P{5, 3, {0.3, -0.7}};
    const PreimageSet s = backward_images(P, P.c);
    REQUIRE(s.preimages.size() == 5);
    for (const Complex z : s.preimages) REQUIRE(std::abs(z) == 0.0);
  }
}

TEST_CASE("forward and backward enumerations are mutually consistent", "[correspondence]") {
  const CorrParams P{4, 2, {-1.0, 0.0}};
  CounterRng rng(0x33CC44, 0);
  for (int t = 0; t < 100; ++t) {
    const Complex z = std::polar(0.5 + rng.uniform(), 2.0 * kPi * rng.uniform());
    for (const Complex w : forward_images(P, z).images) {
      // z must reappear among the preimages of w.
      double best = 1e300;
      for (const Complex back : backward_images(P, w).preimages)
        best = std::min(best, std::abs(back - z));
      REQUIRE(best < 1e-9);
    }
    const Complex w = std::polar(0.5 + rng.uniform(), 2.0 * kPi * rng.uniform());
    for (const Complex back : backward_images(P, w).preimages) {
      double best = 1e300;
      for (const Complex fwd : forward_images(P, back).images)
        best = std::min(best, std::abs(fwd - w));
      REQUIRE(best < 1e-9);
    }
  }
}

TEST_CASE("branch continuation follows the anchored branch", "[correspondence]") {
  SECTION("quadratic branch") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const BranchAnchor a{{1.0, 0.0}, {1.0, 0.0}};
    const BranchAnchor next = continue_branch(P, a, {1.1, 0.0});
    REQUIRE(std::abs(next.target - Complex{1.21, 0.0}) < 1e-12);
  }
  SECTION("square-root branch of (4,2)") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const BranchAnchor a{{-1.0, 0.0}, {0.0, 0.0}};
    const BranchAnchor next = continue_branch(P, a, {-0.99, 0.0});
    // This branch is w = c + z^2.
    REQUIRE(std::abs(next.target - Complex{-0.0199, 0.0}) < 1e-12);
  }
  SECTION("a half-turn step is rejected as ambiguous") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const BranchAnchor a{{1.0, 0.0}, {0.0, 0.0}};
    REQUIRE_THROWS_AS(continue_branch(P, a, {-1.0, 0.0}), AmbiguousContinuation);
  }
  SECTION("zero step target is rejected") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const BranchAnchor a{{1.0, 0.0}, {0.0, 0.0}};
    REQUIRE_THROWS_AS(continue_branch(P, a, {0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("segment continuation bisects around ambiguous hops", "[correspondence]") {
  // The branch w = c + z^2 of (4,2) continued from 1 to i along the segment:
  // a single hop is too coarse but bisection resolves it.
  const CorrParams P{4, 2, {-1.0, 0.0}};
  const BranchAnchor a{{1.0, 0.0}, {0.0, 0.0}};
  const Complex w = apply_branch(P, a, {0.0, 1.0});
  REQUIRE(std::abs(w - Complex{-2.0, 0.0}) < 1e-12);
}

TEST_CASE("branch derivative matches closed forms and finite differences", "[correspondence]") {
  SECTION("closed forms") {
    const CorrParams P1{2, 1, {0.25, 0.0}};
    REQUIRE(std::abs(branch_derivative(P1, {1.0, 0.0}, {1.25, 0.0}) - Complex{2.0, 0.0}) < 1e-12);

    const CorrParams P2{4, 2, {-1.0, 0.0}};
    REQUIRE(std::abs(branch_derivative(P2, {-1.0, 0.0}, {0.0, 0.0}) - Complex{-2.0, 0.0}) < 1e-12);

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const CorrParams P3{2, 1, {0.0, 0.0}};
    REQUIRE(std::abs(branch_derivative(P3, {phi, 0.0}, {phi * phi, 0.0}) -
                     Complex{2.0 * phi, 0.0}) < 1e-12);
  }
  SECTION("finite-difference cross-check") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const BranchAnchor a{{-1.0, 0.0}, {0.0, 0.0}};
    const double h = 1e-6;
    const Complex w_plus = continue_branch(P, a, {-1.0 + h, 0.0}).target;
    const Complex fd = (w_plus - a.target) / h;
    REQUIRE(std::abs(fd - branch_derivative(P, a.source, a.target)) < 1e-4);
  }
  SECTION("singular configurations throw") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    REQUIRE_THROWS_AS(branch_derivative(P, {0.0, 0.0}, {-1.0, 0.0}), SingularDerivative);
    REQUIRE_THROWS_AS(branch_derivative(P, {1.0, 0.0}, P.c), SingularDerivative);
  }
}

TEST_CASE("word application walks the indexed forward orbit", "[correspondence]") {
  SECTION("cycle word of the period-two centre") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const std::vector<Complex> orbit = apply_word_forward(P, {0.0, 0.0}, {0, 0});
    REQUIRE(orbit.size() == 2);
    REQUIRE(std::abs(orbit[0] - Complex{-1.0, 0.0}) < 1e-12);
    REQUIRE(std::abs(orbit[1]) < 1e-12);
  }
  SECTION("quadratic analogue") {
    const CorrParams P{2, 1, {-1.0, 0.0}};
    const std::vector<Complex> orbit = apply_word_forward(P, {0.0, 0.0}, {0, 0});
    REQUIRE(orbit.size() == 2);
    REQUIRE(std::abs(orbit[0] - Complex{-1.0, 0.0}) < 1e-12);
    REQUIRE(std::abs(orbit[1]) < 1e-12);
  }
  SECTION("first step from the critical point is c") {
    const CorrParams P{7, 6, {0.0, 2.0}};
    const std::vector<Complex> orbit = apply_word_forward(P, {0.0, 0.0}, {3});
    REQUIRE(orbit.size() == 1);
    REQUIRE(std::abs(orbit[0] - P.c) == 0.0);
  }
  SECTION("out-of-range symbols are rejected") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    REQUIRE_THROWS_AS(apply_word_forward(P, {0.5, 0.0}, {1}), std::invalid_argument);
  }
}
