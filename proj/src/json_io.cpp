#include "json_io.hpp"

#include <cstdio>
#include <sstream>

namespace levitrap {

namespace {

using nlohmann::json;

void dump_value(const json& v, int indent, int depth, std::string& out);

void pad(std::string& out, int indent, int depth) {
  if (indent > 0) out.append(static_cast<size_t>(indent) * depth, ' ');
}

void dump_object(const json& v, int indent, int depth, std::string& out) {
  if (v.empty()) {
    out += "{}";
    return;
  }
  out += '{';
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {  // nlohmann objects iterate sorted
    if (!first) out += ',';
    first = false;
    if (indent > 0) out += '\n';
    pad(out, indent, depth + 1);
    out += json(it.key()).dump();
    out += indent > 0 ? ": " : ":";
    dump_value(it.value(), indent, depth + 1, out);
  }
  if (indent > 0) out += '\n';
  pad(out, indent, depth);
  out += '}';
}

void dump_array(const json& v, int indent, int depth, std::string& out) {
  if (v.empty()) {
    out += "[]";
    return;
  }
  out += '[';
  bool first = true;
  for (const auto& item : v) {
    if (!first) out += ',';
    first = false;
    if (indent > 0) out += '\n';
    pad(out, indent, depth + 1);
    dump_value(item, indent, depth + 1, out);
  }
  if (indent > 0) out += '\n';
  pad(out, indent, depth);
  out += ']';
}

void dump_value(const json& v, int indent, int depth, std::string& out) {
  switch (v.type()) {
    case json::value_t::object:
      dump_object(v, indent, depth, out);
      break;
    case json::value_t::array:
      dump_array(v, indent, depth, out);
      break;
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
      break;
  }
}

void flatten(const json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      flatten(it.value(), key, rows);
    }
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i)
      flatten(v.at(i), prefix + "." + std::to_string(i), rows);
  } else if (v.is_number_float()) {
    rows.emplace_back(prefix, format_double(v.get<double>()));
  } else if (v.is_string()) {
    rows.emplace_back(prefix, v.get<std::string>());
  } else {
    rows.emplace_back(prefix, v.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double v) {
  // JSON has no literal for non-finite numbers; null mirrors what the
  // vendored parser emits for them.
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string dump_deterministic(const json& doc, int indent) {
  std::string out;
  dump_value(doc, indent, 0, out);
  if (indent > 0) out += '\n';
  return out;
}

std::string json_to_csv(const json& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) {
    out += csv_escape(k);
    out += ',';
    out += csv_escape(v);
    out += '\n';
  }
  return out;
}

}  // namespace levitrap
