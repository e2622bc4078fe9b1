#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <corrdyn/julia.hpp>

#include "helpers.hpp"

using namespace corrdyn;
using testutil::min_dist;
using testutil::same_set;

TEST_CASE("random backward orbits sample the known Julia sets", "[julia]") {
  SECTION("unit circle") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const PointCloud cloud = inverse_iteration(P, {1.0, 0.0}, 50, 2000, 3, 8);
    REQUIRE(cloud.points.size() == 2000);
    for (const Complex z : cloud.points) REQUIRE(std::abs(std::abs(z) - 1.0) < 1e-9);
  }
  SECTION("real segment at c = -2") {
    const CorrParams P{2, 1, {-2.0, 0.0}};
    const PointCloud cloud = inverse_iteration(P, default_seed(P), 50, 2000, 3, 8);
    for (const Complex z : cloud.points) {
      REQUIRE(std::abs(z.imag()) < 1e-7);
      REQUIRE(z.real() >= -2.0 - 1e-9);
      REQUIRE(z.real() <= 2.0 + 1e-9);
    }
  }
}

TEST_CASE("backward-orbit seeding is guarded", "[julia]") {
  const CorrParams P{2, 1, {0.0, 0.0}};
  REQUIRE_THROWS_AS(inverse_iteration(P, {0.0, 0.0}, 10, 100, 1, 8), SeedOnPostCritical);
  REQUIRE_THROWS_AS(inverse_iteration(P, {3.0, 0.0}, 10, 100, 1, 8), std::invalid_argument);
  REQUIRE_THROWS_AS(inverse_iteration(P, {1.0, 0.0}, 10, 100, 1, 0), std::invalid_argument);
}

TEST_CASE("backward orbits are bit-identical across reruns and thread counts", "[julia]") {
  const CorrParams P{4, 2, {-1.0, 0.0}};
  const Complex seed = default_seed(P);
  const PointCloud a = inverse_iteration(P, seed, 30, 1500, 9, 5, 1);
  const PointCloud b = inverse_iteration(P, seed, 30, 1500, 9, 5, 3);
  const PointCloud c = inverse_iteration(P, seed, 30, 1500, 9, 5, 1);
  REQUIRE(a.points == b.points);
  REQUIRE(a.points == c.points);
}

TEST_CASE("full backward trees enumerate iterated preimages", "[julia]") {
  SECTION("depth zero is the seed itself") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const PointCloud t = backward_tree(P, {1.0, 0.0}, 0);
    REQUIRE(t.points == std::vector<Complex>{{1.0, 0.0}});
  }
  SECTION("third preimages of 1 under squaring are the eighth roots of unity") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const PointCloud t = backward_tree(P, {1.0, 0.0}, 3);
    REQUIRE(t.points.size() == 8);
    std::vector<Complex> roots;
    for (int k = 0; k < 8; ++k) roots.push_back(std::polar(1.0, 2.0 * kPi * k / 8.0));
    REQUIRE(same_set(t.points, roots, 1e-9));
  }
  SECTION("every tree point maps forward to the seed within the tree depth") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const Complex seed{2.0, 0.0};
    const PointCloud t = backward_tree(P, seed, 2);
    REQUIRE(!t.points.empty());
    for (const Complex z : t.points) {
      double best = 1e300;
      for (const Complex w1 : forward_images(P, z).images)
        for (const Complex w2 : forward_images(P, w1).images)
          best = std::min(best, std::abs(w2 - seed));
      REQUIRE(best < 1e-6);
    }
  }
}

TEST_CASE("Newton cycle solves land on known fixed points", "[julia]") {
  SECTION("squaring map") {
    const CycleRecord rec = repelling_cycle({2, 1, {0.0, 0.0}}, {0}, {0.9, 0.0});
    REQUIRE(rec.period == 1);
    REQUIRE(rec.points.size() == 1);
    REQUIRE(std::abs(rec.points[0] - Complex{1.0, 0.0}) < 1e-10);
    REQUIRE(std::abs(rec.multiplier - Complex{2.0, 0.0}) < 1e-9);
    REQUIRE(rec.cls == "repelling");
  }
  SECTION("golden-ratio fixed point of the basilica parameter") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const CycleRecord rec = repelling_cycle({2, 1, {-1.0, 0.0}}, {0}, {1.5, 0.0});
    REQUIRE(std::abs(rec.points[0] - Complex{phi, 0.0}) < 1e-10);
    REQUIRE(std::abs(rec.multiplier - Complex{1.0 + std::sqrt(5.0), 0.0}) < 1e-9);
  }
  SECTION("the same fixed point persists in the (4,2) correspondence") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const CycleRecord rec = repelling_cycle({4, 2, {-1.0, 0.0}}, {0}, {1.5, 0.0});
    REQUIRE(std::abs(rec.points[0] - Complex{phi, 0.0}) < 1e-10);
    REQUIRE(std::abs(std::abs(rec.multiplier) - (1.0 + std::sqrt(5.0))) < 1e-9);
    REQUIRE(rec.cls == "repelling");
  }
}

TEST_CASE("Hausdorff distance is exact on closed forms", "[julia]") {
  SECTION("identical clouds and singletons") {
    const std::vector<Complex> a{{0.1, 0.2}, {3.0, -1.0}, {-2.0, 0.5}};
    REQUIRE(hausdorff_distance(a, a) == 0.0);
    const std::vector<Complex> origin{{0.0, 0.0}};
    const std::vector<Complex> far{{3.0, 4.0}};
    REQUIRE(hausdorff_distance(origin, far) == 5.0);
    REQUIRE_THROWS_AS(directed_hausdorff({}, a), EmptyCloud);
  }
  SECTION("concentric circles") {
    std::vector<Complex> inner, outer;
    for (int k = 0; k < 1000; ++k) {
      inner.push_back(std::polar(1.0, 2.0 * kPi * k / 1000.0));
      outer.push_back(std::polar(1.1, 2.0 * kPi * k / 1000.0));
    }
    REQUIRE(std::abs(hausdorff_distance(inner, outer) - 0.1) < 2e-3);
  }
  SECTION("bucket-grid acceleration agrees with the brute-force scan") {
    CounterRng rng(0xD15C0, 0);
    std::vector<Complex> a, b;
    for (int k = 0; k < 300; ++k) {
      a.push_back({2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0});
      b.push_back({2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0});
    }
    const auto directed_brute = [](const std::vector<Complex>& u, const std::vector<Complex>& v) {
      double worst = 0.0;
      for (const Complex p : u) {
        double best = 1e300;
        for (const Complex s : v) {
          const double dre = s.real() - p.real(), dim = s.imag() - p.imag();
          best = std::min(best, dre * dre + dim * dim);
        }
        worst = std::max(worst, best);
      }
      return std::sqrt(worst);
    };
    const double brute = std::max(directed_brute(a, b), directed_brute(b, a));
    REQUIRE(hausdorff_distance(a, b) == brute);
  }
}

TEST_CASE("coverage predicate", "[julia]") {
  std::vector<Complex> circle;
  for (int k = 0; k < 64; ++k) circle.push_back(std::polar(1.0, 2.0 * kPi * k / 64.0));
  REQUIRE(covers_within(circle, circle, 1e-12));
  REQUIRE(covers_within(circle, {{0.0, 0.0}}, 1.001));
  REQUIRE(!covers_within(circle, {{0.0, 0.0}}, 0.999));
  REQUIRE(covers_within({}, {{0.0, 0.0}}, 0.1));
  REQUIRE(!covers_within(circle, {}, 0.1));
}

TEST_CASE("finite-step covering probe on the unit circle", "[julia]") {
  const CorrParams P{2, 1, {0.0, 0.0}};
  const PointCloud cloud = inverse_iteration(P, {1.0, 0.0}, 50, 40000, 3, 8);
  SECTION("a disk containing the whole cloud covers at step zero") {
    const LeoResult res = leo_cover(P, cloud, cloud.points[0], 3.0, 5e-2, 30);
    REQUIRE(res.covered);
    REQUIRE(res.n == 0);
    REQUIRE(res.final_size == cloud.points.size());
  }
  SECTION("a small arc expands to cover the circle in about log2(2 pi / r) steps") {
    const LeoResult res = leo_cover(P, cloud, {1.0, 0.0}, 3e-2, 5e-2, 30);
    REQUIRE(res.covered);
    REQUIRE(res.n >= 5);
    REQUIRE(res.n <= 15);
    REQUIRE(res.final_size > 300);
  }
  SECTION("an empty seed disk is an error") {
    REQUIRE_THROWS_AS(leo_cover(P, cloud, {50.0, 0.0}, 1e-3, 5e-2, 30), EmptySeed);
  }
}

TEST_CASE("cycle continuation along parameter paths", "[julia]") {
  SECTION("a constant path reproduces the base cycle") {
    const CorrParams P{2, 1, {-1.0, 0.0}};
    const CycleRecord base = repelling_cycle(P, {0}, {1.5, 0.0});
    const std::vector<Complex> path{P.c, P.c, P.c};
    const MotionTrace trace = trace_cycle_motion(P, base, {0}, path);
    REQUIRE(!trace.truncated);
    REQUIRE(trace.cycles.size() == 3);
    for (const CycleRecord& rec : trace.cycles)
      REQUIRE(std::abs(rec.points[0] - base.points[0]) < 1e-12);
  }
  SECTION("the quadratic fixed point follows its closed form along the real axis") {
    const CorrParams P{2, 1, {0.0, 0.0}};
    const CycleRecord base = repelling_cycle(P, {0}, {0.9, 0.0});
    std::vector<Complex> path;
    for (int k = 0; k < 50; ++k) path.push_back({-0.5 * k / 49.0, 0.0});
    const MotionTrace trace = trace_cycle_motion(P, base, {0}, path);
    REQUIRE(!trace.truncated);
    REQUIRE(trace.cycles.size() == 50);
    for (std::size_t i = 0; i < trace.cycles.size(); ++i) {
      const double c = path[i].real();
      const double fp = (1.0 + std::sqrt(1.0 - 4.0 * c)) / 2.0;
      REQUIRE(std::abs(trace.cycles[i].points[0] - Complex{fp, 0.0}) < 1e-8);
      REQUIRE(trace.cycles[i].cls == "repelling");
    }
  }
  SECTION("continuation truncates when the attracting fixed point turns repelling") {
    const CorrParams P{2, 1, {-0.5, 0.0}};
    const CycleRecord base = repelling_cycle(P, {0}, {-0.3, 0.0});
    REQUIRE(base.cls == "attracting");
    std::vector<Complex> path;
    for (int k = 0; k < 21; ++k) path.push_back({-0.5 - 0.5 * k / 20.0, 0.0});
    const MotionTrace trace = trace_cycle_motion(P, base, {0}, path);
    REQUIRE(trace.truncated);
    REQUIRE(trace.cycles.size() == 10);
    REQUIRE(trace.reason.find("ClassChanged") != std::string::npos);
  }
  SECTION("the golden fixed point stays repelling on a short (4,2) path") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const CycleRecord base = repelling_cycle(P, {0}, {1.5, 0.0});
    std::vector<Complex> path;
    for (int k = 0; k < 21; ++k) path.push_back({-1.0 + 1e-2 * k / 20.0, 0.0});
    const MotionTrace trace = trace_cycle_motion(P, base, {0}, path);
    REQUIRE(!trace.truncated);
    REQUIRE(trace.cycles.size() == 21);
    double min_mult = 1e300;
    for (const CycleRecord& rec : trace.cycles)
      min_mult = std::min(min_mult, std::abs(rec.multiplier));
    REQUIRE(min_mult > 3.2);
  }
  SECTION("the path must start at the base parameter") {
    const CorrParams P{2, 1, {-1.0, 0.0}};
    const CycleRecord base = repelling_cycle(P, {0}, {1.5, 0.0});
    REQUIRE_THROWS_AS(trace_cycle_motion(P, base, {0}, {{-0.9, 0.0}}), std::invalid_argument);
  }
}

TEST_CASE("default seeds are pinned repelling fixed points", "[julia]") {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  REQUIRE(std::abs(default_seed({4, 2, {-1.0, 0.0}}) - Complex{phi, 0.0}) < 1e-9);
  REQUIRE(std::abs(default_seed({2, 1, {0.0, 0.0}}) - Complex{1.0, 0.0}) < 1e-9);
  REQUIRE(std::abs(default_seed({2, 1, {-2.0, 0.0}}) - Complex{-1.0, 0.0}) < 1e-9);
}

TEST_CASE("sampled Julia set avoids the attracting cycle", "[julia]") {
  const CorrParams P{4, 2, {-1.0, 0.0}};
  const PointCloud cloud = inverse_iteration(P, default_seed(P), 50, 10000, 1, 8);
  REQUIRE(min_dist(cloud.points, {0.0, 0.0}) > 0.1);
  REQUIRE(min_dist(cloud.points, {-1.0, 0.0}) > 0.1);
}

TEST_CASE("sampled Julia set is nearly backward invariant", "[julia]") {
  const CorrParams P{4, 2, {-1.0, 0.0}};
  const PointCloud cloud = inverse_iteration(P, default_seed(P), 50, 4000000, 1, 8);
  const detail::NearestGrid grid(cloud.points);
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < cloud.points.size() && checked < 100000; i += 97) {
    for (const Complex z : backward_images(P, cloud.points[i]).preimages) {
      worst = std::max(worst, grid.nearest2(z));
      ++checked;
    }
  }
  REQUIRE(std::sqrt(worst) < 1e-2);
}
