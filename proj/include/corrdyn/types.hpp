#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corrdyn {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Error taxonomy. Each class corresponds to one contract failure mode of the
// public operations; callers can catch the base Error for blanket handling.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class AmbiguousContinuation : public Error { public: using Error::Error; };
class SingularDerivative    : public Error { public: using Error::Error; };
class ConstructionFailed    : public Error { public: using Error::Error; };
class TooCloseToCenter      : public Error { public: using Error::Error; };
class NotContracting        : public Error { public: using Error::Error; };
class OverlapDetected       : public Error { public: using Error::Error; };
class DepthOverflow         : public Error { public: using Error::Error; };
class DomainEscape          : public Error { public: using Error::Error; };
class NoConvergence         : public Error { public: using Error::Error; };
class SeedOnPostCritical    : public Error { public: using Error::Error; };
class EmptyCloud            : public Error { public: using Error::Error; };
class EmptySeed             : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Parameters of the correspondence (w - c)^q = z^p.
//
// The exponent ratio beta = p/q is kept as the exact integer pair (p, q);
// beta() is a convenience projection to double. (p, q) is deliberately not
// reduced: (4,2) is a different correspondence from (2,1).
// ---------------------------------------------------------------------------
struct CorrParams {
  int p = 2;
  int q = 1;
  Complex c{0.0, 0.0};

  CorrParams() = default;
  CorrParams(int p_, int q_, Complex c_) : p(p_), q(q_), c(c_) {
    if (q < 1 || p <= q || p < 2)
      throw std::invalid_argument("CorrParams requires p > q >= 1 and p >= 2");
  }

  double beta() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::pair<int, int> beta_exact() const { return {p, q}; }
};

// Open round disk {|z - center| < radius}.
struct Disk {
  Complex center{0.0, 0.0};
  double radius = 0.0;

  bool contains(Complex z) const { return std::abs(z - center) < radius; }
};

struct CloudMeta {
  int p = 0;
  int q = 0;
  Complex c{0.0, 0.0};
  std::string generator;          // which operation produced the cloud
  int depth = 0;                  // depth / level / step count, op specific
  std::uint64_t rng_seed = 0;     // 0 when the generator is deterministic
};

// Finite point set in the plane plus provenance. Serialized as CSV "re,im".
struct PointCloud {
  std::vector<Complex> points;
  CloudMeta meta;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

// One periodic orbit of the correspondence together with its multiplier
// (chain-rule product of the branch derivatives along the cycle).
struct CycleRecord {
  int period = 0;
  std::vector<Complex> points;    // points[0] is the solved representative
  Complex multiplier{0.0, 0.0};
  std::string cls;                // "attracting" | "repelling" | "indifferent"
};

// Classification dead band around |multiplier| == 1.
inline std::string classify_multiplier(Complex multiplier) {
  const double m = std::abs(multiplier);
  if (m < 1.0 - 1e-9) return "attracting";
  if (m > 1.0 + 1e-9) return "repelling";
  return "indifferent";
}

}  // namespace corrdyn
