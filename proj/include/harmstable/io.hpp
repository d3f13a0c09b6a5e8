#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace harmstable {

/// printf("%.17g"): enough digits for a lossless double round trip.
std::string format_g17(double v);

struct SampleRow {
  std::size_t replication;
  long n;
  double value;
};

/// `replication,n,value` rows.
void write_samples_csv(std::ostream& os, const std::vector<SampleRow>& rows);

/// Empirical distribution function as `x,F` rows, one per sorted sample point.
void write_ecdf_csv(std::ostream& os, std::vector<double> sample);

/// Pretty-printed JSON with every floating-point number in %.17g form and
/// non-finite numbers written as null.
void write_json(std::ostream& os, const nlohmann::ordered_json& value);

}  // namespace harmstable
