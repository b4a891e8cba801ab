#include "pbsurf/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pbsurf {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, int line, const std::string& field) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail(line, "field '" + field + "': bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "field '" + field + "': bad number '" + s + "'");
  }
}

int to_int(const std::string& s, int line, const std::string& field) {
  const double v = to_double(s, line, field);
  const int i = static_cast<int>(v);
  if (i != v) fail(line, "field '" + field + "': expected integer, got '" + s + "'");
  return i;
}

CoverSetSpec parse_cover_set(const std::string& value, int line) {
  // NAME : kind args...
  const auto colon = value.find(':');
  if (colon == std::string::npos) fail(line, "cover set: expected 'NAME : kind ...'");
  CoverSetSpec set;
  set.name = trim(value.substr(0, colon));
  if (set.name.empty()) fail(line, "cover set: empty name");
  const std::string body = trim(value.substr(colon + 1));

  if (body.rfind("halfspace", 0) == 0) {
    set.kind = "halfspace";
    // conjunction of 'halfspace AXIS < VALUE' terms joined by '&'
    std::string rest = body;
    while (!rest.empty()) {
      const auto amp = rest.find('&');
      const std::string term = trim(amp == std::string::npos ? rest : rest.substr(0, amp));
      rest = amp == std::string::npos ? "" : trim(rest.substr(amp + 1));
      const auto toks = split_ws(term);
      if (toks.size() != 4 || toks[0] != "halfspace" || (toks[2] != "<" && toks[2] != ">"))
        fail(line, "cover set '" + set.name + "': expected 'halfspace AXIS <|> VALUE', got '" + term + "'");
      if (toks[1] != "x" && toks[1] != "y" && toks[1] != "z")
        fail(line, "cover set '" + set.name + "': unknown axis '" + toks[1] + "'");
      set.halfspaces.push_back({toks[1], toks[2] == ">", to_double(toks[3], line, "halfspace value")});
    }
  } else if (body.rfind("cap", 0) == 0) {
    set.kind = "cap";
    const auto toks = split_ws(body);
    if (toks.size() != 5) fail(line, "cover set '" + set.name + "': expected 'cap CX CY CZ COS'");
    set.cap_cx = to_double(toks[1], line, "cap cx");
    set.cap_cy = to_double(toks[2], line, "cap cy");
    set.cap_cz = to_double(toks[3], line, "cap cz");
    set.cap_cos = to_double(toks[4], line, "cap cos");
  } else if (body.rfind("rect", 0) == 0) {
    set.kind = "rect";
    const auto toks = split_ws(body);
    if (toks.size() != 5) fail(line, "cover set '" + set.name + "': expected 'rect X0 X1 Y0 Y1'");
    set.rect_x0 = to_double(toks[1], line, "rect x0");
    set.rect_x1 = to_double(toks[2], line, "rect x1");
    set.rect_y0 = to_double(toks[3], line, "rect y0");
    set.rect_y1 = to_double(toks[4], line, "rect y1");
  } else if (body.rfind("field", 0) == 0) {
    set.kind = "field";
    const auto toks = split_ws(body);
    if (toks.size() != 4 || toks[2] != ">")
      fail(line, "cover set '" + set.name + "': expected 'field NAME > THRESHOLD'");
    set.field_name = toks[1];
    set.field_threshold = to_double(toks[3], line, "field threshold");
  } else {
    fail(line, "cover set '" + set.name + "': unknown kind in '" + body + "'");
  }
  return set;
}

}  // namespace

double Scenario::task_double(const std::string& key, double fallback) const {
  const auto it = task_params.find(key);
  return it == task_params.end() ? fallback : std::stod(it->second);
}

int Scenario::task_int(const std::string& key, int fallback) const {
  const auto it = task_params.find(key);
  return it == task_params.end() ? fallback : std::stoi(it->second);
}

std::string Scenario::task_string(const std::string& key, const std::string& fallback) const {
  const auto it = task_params.find(key);
  return it == task_params.end() ? fallback : it->second;
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool have_surface = false;

  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = s.substr(1, s.size() - 2);
      if (section != "surface" && section != "cover" && section != "partition" &&
          section != "task" && section != "output")
        fail(line, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");

    if (section.empty()) {
      if (key == "seed")
        sc.seed = static_cast<std::uint64_t>(std::stoull(value));
      else
        fail(line, "unknown top-level field '" + key + "' (only 'seed' is allowed)");
    } else if (section == "surface") {
      have_surface = true;
      if (key == "type") {
        if (value != "sphere" && value != "torus") fail(line, "surface type must be sphere or torus");
        sc.surface.type = value;
      } else if (key == "subdiv")
        sc.surface.subdiv = to_int(value, line, key);
      else if (key == "radius")
        sc.surface.radius = to_double(value, line, key);
      else if (key == "nx")
        sc.surface.nx = to_int(value, line, key);
      else if (key == "ny")
        sc.surface.ny = to_int(value, line, key);
      else if (key == "lx")
        sc.surface.lx = to_double(value, line, key);
      else if (key == "ly")
        sc.surface.ly = to_double(value, line, key);
      else
        fail(line, "unknown surface field '" + key + "'");
    } else if (section == "cover") {
      if (key == "mode") {
        if (value != "strict" && value != "majority") fail(line, "cover mode must be strict or majority");
        sc.cover.mode = value;
      } else if (key == "set") {
        sc.cover.sets.push_back(parse_cover_set(value, line));
      } else {
        fail(line, "unknown cover field '" + key + "'");
      }
    } else if (section == "partition") {
      if (key == "margin")
        sc.partition.margin = to_int(value, line, key);
      else if (key == "sharpness")
        sc.partition.sharpness = to_double(value, line, key);
      else
        fail(line, "unknown partition field '" + key + "'");
    } else if (section == "task") {
      if (key == "name")
        sc.task = value;
      else
        sc.task_params[key] = value;
    } else if (section == "output") {
      if (key == "svg")
        sc.svg_out = value;
      else if (key == "csv")
        sc.csv_out = value;
      else
        fail(line, "unknown output field '" + key + "'");
    }
  }

  if (!have_surface || sc.surface.type.empty())
    throw std::runtime_error("config: missing field 'type' in required section [surface]");
  if (sc.task.empty())
    throw std::runtime_error("config: missing field 'name' in required section [task]");
  const std::vector<std::string> tasks = {"kappa",       "essential", "verify-thm14", "coarea",
                                          "minimize-pb", "lemma34",   "thm14-averaging"};
  bool known = false;
  for (const auto& t : tasks) known = known || t == sc.task;
  if (!known) throw std::runtime_error("config: unknown task '" + sc.task + "'");
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace pbsurf
