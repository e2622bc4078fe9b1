#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "escape.hpp"
#include "parallel.hpp"

// Survival-depth rasters over dynamical and parameter planes, and their
// binary PGM (P5) serialization.

namespace corrdyn {

struct RasterBounds {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
};

// Row-major grid of survival depths; row 0 is the top of the image (im_max).
struct Raster {
  RasterBounds bounds;
  int width = 0;
  int height = 0;
  int depth_cap = 0;
  std::vector<int> values;
};

// Pixel-center sampling.
inline Complex pixel_center(const RasterBounds& b, int width, int height, int col, int row) {
  const double dx = (b.re_max - b.re_min) / width;
  const double dy = (b.im_max - b.im_min) / height;
  return Complex{b.re_min + (col + 0.5) * dx, b.im_max - (row + 0.5) * dy};
}

inline Raster raster_dynamical(const CorrParams& P, const EscapeConfig& cfg,
                               const RasterBounds& bounds, int width, int height,
                               int threads = 0) {
  Raster r{bounds, width, height, cfg.depth_cap, {}};
  r.values.assign(static_cast<std::size_t>(width) * height, 0);
  const double R = escaping_radius(P, cfg);
  parallel_for(static_cast<std::size_t>(height), [&](std::size_t row) {
    for (int col = 0; col < width; ++col) {
      const Complex z = pixel_center(bounds, width, height, col, static_cast<int>(row));
      r.values[row * width + col] = survival_depth(P, z, cfg, R);
    }
  }, threads);
  return r;
}

// Parameter-plane raster: each pixel is a value of c and the tracked orbit is
// the critical orbit of 0. The escaping radius depends on |c| per pixel.
inline Raster raster_parameter(int p, int q, const EscapeConfig& cfg,
                               const RasterBounds& bounds, int width, int height,
                               int threads = 0) {
  Raster r{bounds, width, height, cfg.depth_cap, {}};
  r.values.assign(static_cast<std::size_t>(width) * height, 0);
  parallel_for(static_cast<std::size_t>(height), [&](std::size_t row) {
    for (int col = 0; col < width; ++col) {
      const Complex c = pixel_center(bounds, width, height, col, static_cast<int>(row));
      const CorrParams P{p, q, c};
      r.values[row * width + col] = survival_depth(P, Complex{0.0, 0.0}, cfg);
    }
  }, threads);
  return r;
}

// Binary PGM. 8-bit with maxval = depth_cap when depth_cap <= 255, otherwise
// 16-bit big-endian. An optional comment line carries the resolved config.
inline std::string to_pgm(const Raster& r, const std::string& comment = "") {
  std::string out = "P5\n";
  if (!comment.empty()) out += "# " + comment + "\n";
  out += std::to_string(r.width) + " " + std::to_string(r.height) + "\n";
  const bool wide = r.depth_cap > 255;
  const int maxval = wide ? std::min(r.depth_cap, 65535) : r.depth_cap;
  out += std::to_string(maxval) + "\n";
  out.reserve(out.size() + r.values.size() * (wide ? 2 : 1));
  for (const int v : r.values) {
    const int cl = std::min(v, maxval);
    if (wide) {
      out.push_back(static_cast<char>((cl >> 8) & 0xFF));
      out.push_back(static_cast<char>(cl & 0xFF));
    } else {
      out.push_back(static_cast<char>(cl & 0xFF));
    }
  }
  return out;
}

}  // namespace corrdyn
