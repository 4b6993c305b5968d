#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bmom {

struct NamedColumn {
  std::string name;
  std::vector<double> values;
};

// A parsed input file: the selected response and regressor columns plus a
// digest of the raw bytes so reports can say exactly what they analyzed.
struct LoadedData {
  NamedColumn y;
  std::vector<NamedColumn> x;
  std::size_t rows = 0;
  std::uint64_t content_hash = 0;  // FNV-1a over the file bytes
  std::string path;
};

// Reads a comma-separated file with one header row: UTF-8, '.' decimal
// point, no quoting, every row the same width. Errors cite the file line
// and column name. Unknown or duplicate selected columns are errors;
// x_names may be empty.
LoadedData load_csv(const std::string& path, const std::string& y_name,
                    const std::vector<std::string>& x_names);

std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace bmom
