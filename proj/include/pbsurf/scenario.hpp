#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbsurf {

/// Parsed scenario config (flat key-value lines grouped in [sections];
/// grammar documented in the README).
struct SurfaceSpec {
  std::string type;  // "sphere" | "torus"
  int subdiv = 3;
  double radius = 1.0;
  int nx = 16, ny = 16;
  double lx = 1.0, ly = 1.0;
};

struct HalfspaceTerm {
  std::string axis;  // "x" | "y" | "z"
  bool greater = false;
  double value = 0;
};

struct CoverSetSpec {
  std::string name;
  std::string kind;  // "halfspace" | "cap" | "rect" | "field"
  std::vector<HalfspaceTerm> halfspaces;
  double cap_cx = 0, cap_cy = 0, cap_cz = 1, cap_cos = 0.5;
  double rect_x0 = 0, rect_x1 = 1, rect_y0 = 0, rect_y1 = 1;
  std::string field_name;
  double field_threshold = 0;
};

struct CoverSpec {
  std::string mode = "strict";  // "strict" | "majority"
  std::vector<CoverSetSpec> sets;
};

struct PartitionSpec {
  int margin = 2;
  double sharpness = 2.0;
};

struct Scenario {
  SurfaceSpec surface;
  CoverSpec cover;
  PartitionSpec partition;
  std::string task;
  std::map<std::string, std::string> task_params;
  std::uint64_t seed = 0;
  std::string svg_out;  // optional side outputs, relative to the out dir
  std::string csv_out;

  double task_double(const std::string& key, double fallback) const;
  int task_int(const std::string& key, int fallback) const;
  std::string task_string(const std::string& key, const std::string& fallback) const;
};

/// Parses the config text. Throws std::runtime_error with a line-numbered
/// diagnostic naming the offending field.
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

}  // namespace pbsurf
