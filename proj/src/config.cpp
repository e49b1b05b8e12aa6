#include "growth/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace growth {

std::string format_double(double x) {
  if (x == kNegInf) return "-inf";
  if (x == -kNegInf) return "inf";
  if (x != x) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "-inf") return kNegInf;
  if (text == "inf") return -kNegInf;
  double out = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    throw std::invalid_argument("bad number: '" + text + "'");
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_int(const std::string& text) {
  long out = 0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer: '" + text + "'");
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item));
  }
  return out;
}

std::string join_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(xs[i]);
  }
  return out;
}

}  // namespace

GridSpec RunConfig::make_grid() const {
  return GridSpec::log_grid(grid_k_min, grid_k_max, grid_k_count, grid_h_min,
                            grid_h_max, grid_h_count);
}

std::vector<double> RunConfig::make_ratio_nodes() const {
  return GridSpec::log_spaced(ratio_min, ratio_max, ratio_count);
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "model.A") cfg.model.A = parse_double(val);
      else if (key == "model.alpha") cfg.model.alpha = parse_double(val);
      else if (key == "model.beta") cfg.model.beta = parse_double(val);
      else if (key == "model.n") cfg.model.n = parse_double(val);
      else if (key == "model.delta_k") cfg.model.delta_k = parse_double(val);
      else if (key == "model.delta_h") cfg.model.delta_h = parse_double(val);
      else if (key == "model.B") cfg.model.B = parse_double(val);
      else if (key == "model.gamma") cfg.model.gamma = parse_double(val);
      else if (key == "model.theta") cfg.model.theta = Theta(parse_double(val));
      else if (key == "model.phi") cfg.model.phi = PhiSpec::parse(val);
      else if (key == "grid.k_min") cfg.grid_k_min = parse_double(val);
      else if (key == "grid.k_max") cfg.grid_k_max = parse_double(val);
      else if (key == "grid.k_count") cfg.grid_k_count = static_cast<int>(parse_int(val));
      else if (key == "grid.h_min") cfg.grid_h_min = parse_double(val);
      else if (key == "grid.h_max") cfg.grid_h_max = parse_double(val);
      else if (key == "grid.h_count") cfg.grid_h_count = static_cast<int>(parse_int(val));
      else if (key == "grid.ratio_min") cfg.ratio_min = parse_double(val);
      else if (key == "grid.ratio_max") cfg.ratio_max = parse_double(val);
      else if (key == "grid.ratio_count") cfg.ratio_count = static_cast<int>(parse_int(val));
      else if (key == "solve.tol") cfg.solve.tol = parse_double(val);
      else if (key == "solve.max_iterations") cfg.solve.max_iterations = static_cast<int>(parse_int(val));
      else if (key == "solve.inner_points") cfg.solve.inner_points = static_cast<int>(parse_int(val));
      else if (key == "solve.inner_search") {
        if (val == "grid-refinement") cfg.solve.inner_search = InnerSearch::grid_refinement;
        else if (val == "golden-section-nested") cfg.solve.inner_search = InnerSearch::golden_section_nested;
        else throw std::invalid_argument("unknown inner_search '" + val + "'");
      }
      else if (key == "solve.hull_rule") {
        if (val == "clip") cfg.solve.hull_rule = HullRule::clip;
        else if (val == "scale") cfg.solve.hull_rule = HullRule::scale;
        else throw std::invalid_argument("unknown hull_rule '" + val + "'");
      }
      else if (key == "solve.value_floor") cfg.solve.value_floor = parse_double(val);
      else if (key == "sweep.parameter") cfg.sweep_parameter = val;
      else if (key == "sweep.values") cfg.sweep_values = parse_list(val);
      else if (key == "check.samples") cfg.check_samples = static_cast<int>(parse_int(val));
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(val));
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "model.A = " << format_double(model.A) << "\n";
  os << "model.alpha = " << format_double(model.alpha) << "\n";
  os << "model.beta = " << format_double(model.beta) << "\n";
  os << "model.n = " << format_double(model.n) << "\n";
  os << "model.delta_k = " << format_double(model.delta_k) << "\n";
  os << "model.delta_h = " << format_double(model.delta_h) << "\n";
  os << "model.B = " << format_double(model.B) << "\n";
  os << "model.gamma = " << format_double(model.gamma) << "\n";
  os << "model.theta = " << format_double(model.theta.value()) << "\n";
  os << "model.phi = " << model.phi.to_string() << "\n";
  os << "grid.k_min = " << format_double(grid_k_min) << "\n";
  os << "grid.k_max = " << format_double(grid_k_max) << "\n";
  os << "grid.k_count = " << grid_k_count << "\n";
  os << "grid.h_min = " << format_double(grid_h_min) << "\n";
  os << "grid.h_max = " << format_double(grid_h_max) << "\n";
  os << "grid.h_count = " << grid_h_count << "\n";
  os << "grid.ratio_min = " << format_double(ratio_min) << "\n";
  os << "grid.ratio_max = " << format_double(ratio_max) << "\n";
  os << "grid.ratio_count = " << ratio_count << "\n";
  os << "solve.tol = " << format_double(solve.tol) << "\n";
  os << "solve.max_iterations = " << solve.max_iterations << "\n";
  os << "solve.inner_points = " << solve.inner_points << "\n";
  os << "solve.inner_search = "
     << (solve.inner_search == InnerSearch::grid_refinement
             ? "grid-refinement"
             : "golden-section-nested")
     << "\n";
  os << "solve.hull_rule = "
     << (solve.hull_rule == HullRule::clip ? "clip" : "scale") << "\n";
  os << "solve.value_floor = " << format_double(solve.value_floor) << "\n";
  if (!sweep_parameter.empty()) {
    os << "sweep.parameter = " << sweep_parameter << "\n";
    os << "sweep.values = " << join_list(sweep_values) << "\n";
  }
  os << "check.samples = " << check_samples << "\n";
  os << "seed = " << seed << "\n";
  return os.str();
}

}  // namespace growth
