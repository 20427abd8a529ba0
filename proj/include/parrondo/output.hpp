#ifndef PARRONDO_OUTPUT_HPP
#define PARRONDO_OUTPUT_HPP

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace parrondo {

enum class Format { Text, Json, Csv };

inline Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + name + "' (expected text|json|csv)");
}

/// Default output format, overridable through PARRONDO_FORMAT.
inline Format default_format() {
  if (const char* env = std::getenv("PARRONDO_FORMAT")) return parse_format(env);
  return Format::Text;
}

enum class Method { Engine, ClosedForm, Simulation };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Engine: return "engine";
    case Method::ClosedForm: return "closed-form";
    default: return "simulation";
  }
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Six significant digits with trailing zeros kept, matching the tables.
inline std::string format_six_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  std::string s(buf);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

/// One machine-readable result row. The exact field renders a rational as
/// "num/den" and is present only when the value was computed in rational
/// arithmetic; the float field is its double rendering.
struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::string> exact;
  std::optional<double> float_value;
  Method method = Method::Engine;
  std::optional<std::string> classification;
};

inline std::string to_json(const OutputRecord& rec) {
  nlohmann::ordered_json j;
  j["command"] = rec.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.params) params[k] = v;
  j["params"] = params;
  j["exact"] = rec.exact ? nlohmann::ordered_json(*rec.exact) : nlohmann::ordered_json(nullptr);
  j["float"] = rec.float_value ? nlohmann::ordered_json(*rec.float_value)
                               : nlohmann::ordered_json(nullptr);
  j["method"] = to_string(rec.method);
  j["classification"] =
      rec.classification ? nlohmann::ordered_json(*rec.classification) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

inline std::string to_csv(const OutputRecord& rec) {
  std::string params;
  for (const auto& [k, v] : rec.params) {
    if (!params.empty()) params += '|';
    params += k + "=" + v;
  }
  std::string line = "command,params,exact,float,method,classification\n";
  line += rec.command + "," + params + "," + (rec.exact ? *rec.exact : "") + "," +
          (rec.float_value ? format_double(*rec.float_value) : "") + "," +
          to_string(rec.method) + "," + (rec.classification ? *rec.classification : "");
  return line;
}

inline std::string to_text(const OutputRecord& rec) {
  std::string s = rec.command;
  for (const auto& [k, v] : rec.params) s += " " + k + "=" + v;
  s += "\n";
  if (rec.exact) s += "  exact  " + *rec.exact + "\n";
  if (rec.float_value) s += "  float  " + format_double(*rec.float_value) + "\n";
  if (rec.classification) s += "  class  " + *rec.classification + "\n";
  s += "  method " + std::string(to_string(rec.method));
  return s;
}

inline std::string render(const OutputRecord& rec, Format format) {
  switch (format) {
    case Format::Json: return to_json(rec);
    case Format::Csv: return to_csv(rec);
    default: return to_text(rec);
  }
}

}  // namespace parrondo

#endif  // PARRONDO_OUTPUT_HPP
