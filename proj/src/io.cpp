#include "harmstable/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace harmstable {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_samples_csv(std::ostream& os, const std::vector<SampleRow>& rows) {
  os << "replication,n,value\n";
  for (const SampleRow& r : rows) {
    os << r.replication << ',' << r.n << ',' << format_g17(r.value) << '\n';
  }
}

void write_ecdf_csv(std::ostream& os, std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  os << "x,F\n";
  const double count = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    os << format_g17(sample[i]) << ',' << format_g17(static_cast<double>(i + 1) / count) << '\n';
  }
}

namespace {

void write_value(std::ostream& os, const nlohmann::ordered_json& v, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::number_float: {
      const double x = v.get<double>();
      os << (std::isfinite(x) ? format_g17(x) : "null");
      break;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad;
        write_value(os, v[i], depth + 1);
        os << (i + 1 < v.size() ? ",\n" : "\n");
      }
      os << close << ']';
      break;
    }
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [key, item] : v.items()) {
        os << pad << nlohmann::json(key).dump() << ": ";
        write_value(os, item, depth + 1);
        os << (++i < v.size() ? ",\n" : "\n");
      }
      os << close << '}';
      break;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::ordered_json& value) {
  write_value(os, value, 0);
  os << '\n';
}

}  // namespace harmstable
