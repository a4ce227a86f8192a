#include "skew/json_out.hpp"

#include <cmath>
#include <cstdio>

namespace skew {

namespace {

void write(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close;
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        write(j[i], indent, depth + 1, out);
      }
      out += nl;
      out += close;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  out += "\n";
  return out;
}

}  // namespace skew
