#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "branchsys.hpp"
#include "centres.hpp"
#include "escape.hpp"
#include "julia.hpp"
#include "types.hpp"

// Serialization: point clouds as CSV (17 significant digits, optional leading
// "#" comment carrying the run configuration), records as JSON with a stable
// key order.

namespace corrdyn {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string cloud_to_csv(const PointCloud& cloud, const std::string& comment = "") {
  std::string out;
  out.reserve(cloud.points.size() * 48 + 64);
  if (!comment.empty()) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  out += "re,im\n";
  for (const Complex z : cloud.points) {
    out += fmt17(z.real());
    out += ',';
    out += fmt17(z.imag());
    out += '\n';
  }
  return out;
}

inline PointCloud cloud_from_csv(const std::string& text) {
  PointCloud cloud;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("re,", 0) == 0) continue;  // header
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("cloud_from_csv: malformed row: " + line);
    cloud.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return cloud;
}

inline ordered_json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const ordered_json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline ordered_json cycle_to_json(const CycleRecord& rec) {
  ordered_json pts = ordered_json::array();
  for (const Complex z : rec.points) pts.push_back(complex_to_json(z));
  return {{"period", rec.period},
          {"points", pts},
          {"multiplier", complex_to_json(rec.multiplier)},
          {"class", rec.cls}};
}

inline ordered_json system_to_json(const BranchSystem& sys) {
  ordered_json disks = ordered_json::array();
  for (const Disk& D : sys.disks)
    disks.push_back({{"re", D.center.real()}, {"im", D.center.imag()}, {"r", D.radius}});
  ordered_json anchors = ordered_json::array();
  for (const BranchAnchor& a : sys.anchors)
    anchors.push_back({{"z", complex_to_json(a.source)}, {"w", complex_to_json(a.target)}});
  return {{"p", sys.params.p},
          {"q", sys.params.q},
          {"c", complex_to_json(sys.params.c)},
          {"d", sys.d},
          {"kind", sys.kind == SystemKind::critical ? "critical" : "branches"},
          {"m", sys.escape_depth},
          {"disks", disks},
          {"anchors", anchors}};
}

inline BranchSystem system_from_json(const ordered_json& j) {
  BranchSystem sys;
  sys.params = CorrParams{j.at("p").get<int>(), j.at("q").get<int>(), complex_from_json(j.at("c"))};
  sys.d = j.at("d").get<double>();
  sys.kind = j.at("kind").get<std::string>() == "critical" ? SystemKind::critical
                                                           : SystemKind::branches;
  sys.escape_depth = j.at("m").get<int>();
  for (const ordered_json& dj : j.at("disks"))
    sys.disks.push_back({Complex{dj.at("re").get<double>(), dj.at("im").get<double>()},
                         dj.at("r").get<double>()});
  for (const ordered_json& aj : j.at("anchors"))
    sys.anchors.push_back({complex_from_json(aj.at("z")), complex_from_json(aj.at("w"))});
  return sys;
}

inline ordered_json centre_to_json(const CentreRecord& rec) {
  return {{"p", rec.p},
          {"q", rec.q},
          {"c", complex_to_json(rec.c)},
          {"n", rec.period},
          {"word", rec.word},
          {"simple", rec.simple},
          {"escape_certificate", rec.escape_certificate},
          {"caveats", rec.caveats}};
}

inline ordered_json inclusion_to_json(const InclusionReport& rep) {
  return {{"violations", rep.violations},
          {"total", rep.total},
          {"m", rep.m},
          {"c", complex_to_json(rep.c)},
          {"c0", complex_to_json(rep.c0)},
          {"radius", rep.radius}};
}

inline ordered_json motion_to_json(const MotionTrace& trace) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < trace.cycles.size(); ++i) {
    ordered_json rec = cycle_to_json(trace.cycles[i]);
    rec["c"] = complex_to_json(trace.path[i]);
    arr.push_back(rec);
  }
  return {{"base_c", complex_to_json(trace.base_c)},
          {"truncated", trace.truncated},
          {"reason", trace.reason},
          {"cycles", arr}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write_text_file: write failed for " + path);
}

}  // namespace corrdyn
