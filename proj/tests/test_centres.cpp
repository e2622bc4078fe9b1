#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <corrdyn/centres.hpp>

#include "helpers.hpp"

using namespace corrdyn;

TEST_CASE("centre solve converges to known parameters", "[centres]") {
  REQUIRE(std::abs(centre_solve(2, 1, {0}, {0.1, 0.0})) < 1e-9);
  REQUIRE(std::abs(centre_solve(2, 1, {0, 0}, {-0.9, 0.0}) - Complex{-1.0, 0.0}) < 1e-9);
  REQUIRE(std::abs(centre_solve(4, 2, {0, 0}, {-0.9, 0.0}) - Complex{-1.0, 0.0}) < 1e-9);
  REQUIRE_THROWS_AS(centre_solve(2, 1, {}, {0.1, 0.0}), std::invalid_argument);
}

TEST_CASE("simple-centre verification at the period-two centre", "[centres]") {
  const CorrParams P{4, 2, {-1.0, 0.0}};
  const CentreVerifyResult res = simple_centre_verify(P, 2, 12);
  REQUIRE(res.status == CentreStatus::simple);
  REQUIRE(res.record.simple);
  REQUIRE(res.record.period == 2);
  REQUIRE(res.record.word == std::vector<int>{0, 0});
  REQUIRE(res.record.escape_certificate == 0);  // the sibling -2 is already outside B_R
  REQUIRE(res.record.caveats.empty());
}

TEST_CASE("simple-centre verification rejects non-centres and flags caveats", "[centres]") {
  SECTION("a nearby non-centre parameter") {
    const CentreVerifyResult res = simple_centre_verify({4, 2, {-0.9, 0.0}}, 2, 12);
    REQUIRE(res.status == CentreStatus::not_centre);
  }
  SECTION("c = 0 is a centre but carries the zero-parameter caveat") {
    const CentreVerifyResult res = simple_centre_verify({2, 1, {0.0, 0.0}}, 1, 12);
    REQUIRE(res.status == CentreStatus::simple);
    REQUIRE(res.record.period == 1);
    bool flagged = false;
    for (const std::string& s : res.record.caveats)
      if (s.find("zero_parameter") != std::string::npos) flagged = true;
    REQUIRE(flagged);
  }
  SECTION("a depth above the minimal period is reported") {
    const CentreVerifyResult res = simple_centre_verify({4, 2, {-1.0, 0.0}}, 4, 12);
    REQUIRE(res.status == CentreStatus::simple);
    REQUIRE(res.record.period == 2);
    bool flagged = false;
    for (const std::string& s : res.record.caveats)
      if (s.find("minimal period") != std::string::npos) flagged = true;
    REQUIRE(flagged);
  }
  SECTION("argument validation") {
    REQUIRE_THROWS_AS(simple_centre_verify({2, 1, {0.0, 0.0}}, 0, 12), std::invalid_argument);
    REQUIRE_THROWS_AS(simple_centre_verify({2, 1, {0.0, 0.0}}, 1, 0), std::invalid_argument);
  }
}

TEST_CASE("truncated post-critical clouds", "[centres]") {
  SECTION("at the period-two centre the bounded part is the cycle") {
    const CorrParams P{4, 2, {-1.0, 0.0}};
    const PostcriticalCloud pc = postcritical_cloud(P, 6);
    REQUIRE(pc.levels.size() == 6);
    REQUIRE(pc.radius == escaping_radius(P, 1.1));
    REQUIRE(pc.bounded.points.size() == 2);
    REQUIRE(std::abs(pc.bounded.points[0] - Complex{-1.0, 0.0}) < 1e-10);
    REQUIRE(std::abs(pc.bounded.points[1]) < 1e-10);
    REQUIRE(!pc.escaped.empty());
  }
  SECTION("at c = 0 the cloud is the fixed critical value") {
    const PostcriticalCloud pc = postcritical_cloud({2, 1, {0.0, 0.0}}, 5);
    REQUIRE(pc.bounded.points.size() == 1);
    REQUIRE(std::abs(pc.bounded.points[0]) == 0.0);
  }
  SECTION("far outside the connectedness locus everything escapes immediately") {
    const PostcriticalCloud pc = postcritical_cloud({2, 1, {10.0, 0.0}}, 8);
    REQUIRE(pc.bounded.points.empty());
    REQUIRE(pc.levels.size() == 1);
    REQUIRE(pc.escaped.size() == 1);
    REQUIRE(std::abs(pc.escaped[0] - Complex{10.0, 0.0}) < 1e-12);
  }
  SECTION("depth must be positive") {
    REQUIRE_THROWS_AS(postcritical_cloud({2, 1, {0.0, 0.0}}, 0), std::invalid_argument);
  }
}

TEST_CASE("dual-set probe classifies the critical orbit tail", "[centres]") {
  SECTION("just off the centre the probe finds the attracting cycles") {
    const DualProbe probe = dual_from_postcritical({4, 2, {-1.0 + 1e-3, 0.0}});
    REQUIRE(probe.outcome == DualProbeOutcome::attracting);
    REQUIRE(probe.points.points.size() == 8);
    REQUIRE(probe.cycles.size() == 6);
    for (const Complex z : probe.points.points) {
      const double gap = std::min(std::abs(z), std::abs(z + Complex{1.0, 0.0}));
      REQUIRE(gap < 0.1);
    }
  }
  SECTION("at the centre itself the trapped tail cycles are repelling") {
    const DualProbe probe = dual_from_postcritical({4, 2, {-1.0, 0.0}});
    REQUIRE(probe.outcome == DualProbeOutcome::empty);
    REQUIRE(probe.cycles.size() == 2);
  }
  SECTION("an exterior parameter with a repelling trapped tail") {
    const DualProbe probe = dual_from_postcritical({4, 2, {2.0, 0.0}});
    REQUIRE(probe.outcome == DualProbeOutcome::empty);
    REQUIRE(probe.detail.find("repelling") != std::string::npos);
    REQUIRE(!probe.cycles.empty());
  }
  SECTION("a fully escaping critical orbit") {
    const DualProbe probe = dual_from_postcritical({2, 1, {10.0, 0.0}});
    REQUIRE(probe.outcome == DualProbeOutcome::empty);
    REQUIRE(probe.detail.find("escapes") != std::string::npos);
  }
}
