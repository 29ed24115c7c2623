#include "json_text.hpp"

#include <cmath>
#include <fstream>

#include "unitsurf/errors.hpp"
#include "unitsurf/number_format.hpp"

namespace unitsurf::cli {

namespace {

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

bool is_flat(const Json& v) {
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void emit(const Json& v, std::string& out, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        indent(out, depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), out, depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      indent(out, depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      // Short numeric tuples such as [theta, z] stay on one line.
      if (v.empty() || is_flat(v)) {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          emit(v[i], out, depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        indent(out, depth + 1);
        emit(v[i], out, depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      indent(out, depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isfinite(d)) {
        append_double(out, d);
      } else {
        out += "null";
      }
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string to_text(const Json& value) {
  std::string out;
  emit(value, out, 0);
  out += '\n';
  return out;
}

void write_json(const Json& value, const std::filesystem::path& path) {
  const std::string text = to_text(value);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SinkError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw SinkError("write to " + path.string() + " failed");
}

}  // namespace unitsurf::cli
