#pragma once

#include <string>
#include <vector>

#include "mfs/types.hpp"

namespace mfs {

// Numeric CSV table: one header row, then rows of finite decimal values.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;  // rows x columns, aligned with header
};

// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

// Parse errors carry the 1-based line number. Blank or ragged rows and
// non-finite values are rejected; a file with a header but no data rows is
// reported at line 2.
CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

// Sample tables use the fixed header x1,...,xs,y.
struct SampleTable {
  Matrix points;  // n x s
  Vector responses;
};
SampleTable read_samples(const std::string& path);
void write_samples(const std::string& path, const Matrix& points,
                   const Vector* responses);  // null responses -> x-only file

// Points with or without a trailing y column (ignored when present).
Matrix read_points(const std::string& path);

}  // namespace mfs
