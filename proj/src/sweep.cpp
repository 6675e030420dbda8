#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "errors.hpp"
#include "json_io.hpp"
#include "report.hpp"

namespace levitrap {

const std::vector<std::string>& sweep_parameter_whitelist() {
  static const std::vector<std::string> names = {
      "radius",         "mean_power", "numerical_aperture", "ambient_pressure",
      "accommodation",  "asymmetry_xy", "effective_distance", "gain_1",
      "gain_2",         "gain_3"};
  return names;
}

void apply_parameter(Scenario& s, const std::string& name, double value) {
  if (name == "radius") {
    s.particle.radius = value;
  } else if (name == "mean_power") {
    s.beam.mean_power = value;
  } else if (name == "numerical_aperture") {
    s.beam.numerical_aperture = value;
  } else if (name == "ambient_pressure") {
    s.gas.ambient_pressure = value;
  } else if (name == "accommodation") {
    s.gas.accommodation = value;
  } else if (name == "asymmetry_xy") {
    s.beam.asymmetry_xy = value;
  } else if (name == "effective_distance") {
    if (!s.detection) throw ValidationError("sweep over effective_distance requires a detection section");
    s.detection->effective_distance = value;
  } else if (name == "gain_1" || name == "gain_2" || name == "gain_3") {
    if (!s.feedback || s.feedback->scheme == FeedbackScheme::none)
      throw ValidationError("sweep over a gain requires an active feedback section");
    s.feedback->gains[name.back() - '1'] = GainRule::explicit_gain(value);
  } else {
    std::string known;
    for (const auto& n : sweep_parameter_whitelist()) known += " " + n;
    throw ParseError("unknown sweep parameter '" + name + "'; known parameters:" + known);
  }
}

SweepAxis parse_sweep_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw ParseError("sweep spec must look like name=start:stop:steps[:log]");
  SweepAxis axis;
  axis.name = spec.substr(0, eq);
  {
    // validate the name eagerly so typos fail before any evaluation
    Scenario probe;
    probe.detection.emplace();
    probe.feedback.emplace();
    probe.feedback->scheme = FeedbackScheme::parametric;
    apply_parameter(probe, axis.name, 1.0);
  }
  std::string rest = spec.substr(eq + 1);
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    const auto colon = rest.find(':', pos);
    parts.push_back(rest.substr(pos, colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw ParseError("sweep spec must look like name=start:stop:steps[:log]");
  bool log_spacing = false;
  if (parts.size() == 4) {
    if (parts[3] != "log") throw ParseError("the 4th sweep field must be 'log'");
    log_spacing = true;
  }
  double start = 0.0, stop = 0.0;
  long steps = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    steps = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ParseError("sweep spec fields must be numeric: '" + spec + "'");
  }
  if (steps < 1 || steps > 1'000'000) throw ParseError("sweep steps must be in [1, 1e6]");
  if (log_spacing && (start <= 0.0 || stop <= 0.0))
    throw ParseError("log spacing requires positive endpoints");
  axis.values.reserve(steps);
  for (long i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    axis.values.push_back(log_spacing
                              ? start * std::pow(stop / start, t)
                              : start + (stop - start) * t);
  }
  return axis;
}

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEVITRAP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

std::string run_sweep(const Scenario& base, const std::vector<SweepAxis>& axes,
                      int threads) {
  if (axes.empty() || axes.size() > 2)
    throw ParseError("sweep takes one or two parameter specs");

  struct Point {
    std::vector<double> params;
    std::vector<std::pair<std::string, std::string>> scalars;
    std::string error;
  };
  std::vector<Point> points;
  const size_t n_outer = axes[0].values.size();
  const size_t n_inner = axes.size() == 2 ? axes[1].values.size() : 1;
  points.resize(n_outer * n_inner);
  for (size_t i = 0; i < n_outer; ++i)
    for (size_t j = 0; j < n_inner; ++j) {
      auto& p = points[i * n_inner + j];
      p.params.push_back(axes[0].values[i]);
      if (axes.size() == 2) p.params.push_back(axes[1].values[j]);
    }

  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const size_t idx = cursor.fetch_add(1);
      if (idx >= points.size()) break;
      Point& p = points[idx];
      try {
        Scenario s = base;
        apply_parameter(s, axes[0].name, p.params[0]);
        if (axes.size() == 2) apply_parameter(s, axes[1].name, p.params[1]);
        const PipelineResult res = run_pipeline(s);
        nlohmann::json doc = report_document(s, res);
        doc.erase("generated_at");
        doc.erase("tool");
        doc.erase("warnings");
        // flatten through the CSV helper, then split its rows
        const std::string csv = json_to_csv(doc);
        size_t pos = csv.find('\n') + 1;  // skip header
        while (pos < csv.size()) {
          const size_t end = csv.find('\n', pos);
          const std::string line = csv.substr(pos, end - pos);
          const size_t comma = line.find(',');
          p.scalars.emplace_back(line.substr(0, comma), line.substr(comma + 1));
          pos = end + 1;
        }
      } catch (const std::exception& e) {
        p.error = e.what();
      }
    }
  };
  const int n_threads = std::min<int>(thread_count(threads), points.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // header from the first successful point; identical structure everywhere
  std::vector<std::string> columns;
  for (const auto& p : points) {
    if (p.error.empty()) {
      for (const auto& [k, v] : p.scalars) columns.push_back(k);
      break;
    }
  }

  std::string out;
  for (const auto& a : axes) out += a.name + ",";
  for (const auto& c : columns) out += c + ",";
  out += "error\n";
  for (const auto& p : points) {
    for (double v : p.params) out += format_double(v) + ",";
    if (p.error.empty() && p.scalars.size() == columns.size()) {
      for (const auto& [k, v] : p.scalars) out += v + ",";
      out += "\n";
    } else {
      for (size_t c = 0; c < columns.size(); ++c) out += ",";
      std::string err = p.error;
      std::replace(err.begin(), err.end(), '\n', ' ');
      if (err.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : err) {
          if (ch == '"') quoted += '"';
          quoted += ch;
        }
        quoted += '"';
        err = quoted;
      }
      out += err + "\n";
    }
  }
  return out;
}

}  // namespace levitrap
