#include "mfs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mfs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_field(const std::string& field, const std::string& path,
                   std::size_t lineno) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(lineno) +
                    ": not a number: '" + field + "'");
  }
  while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
    ++pos;
  if (pos != field.size())
    throw DataError(path + ":" + std::to_string(lineno) +
                    ": trailing characters in '" + field + "'");
  if (!std::isfinite(v))
    throw DataError(path + ":" + std::to_string(lineno) +
                    ": non-finite value '" + field + "'");
  return v;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  CsvTable table;
  std::string line;
  std::size_t lineno = 0;

  // Header: first non-comment line.
  for (;;) {
    if (!std::getline(in, line))
      throw DataError(path + ":" + std::to_string(lineno + 1) +
                      ": missing header row");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    break;
  }
  table.header = split_fields(line);
  if (table.header.empty() || line.empty())
    throw DataError(path + ":" + std::to_string(lineno) + ": empty header row");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())
      throw DataError(path + ":" + std::to_string(lineno) + ": blank row");
    if (line[0] == '#') continue;  // metadata comment
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size())
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_field(f, path, lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw DataError(path + ":" + std::to_string(lineno + 1) + ": no data rows");

  table.values.resize(static_cast<Index>(rows.size()),
                      static_cast<Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < table.header.size(); ++j)
    out << (j ? "," : "") << table.header[j];
  out << "\n";
  for (Index i = 0; i < table.values.rows(); ++i) {
    for (Index j = 0; j < table.values.cols(); ++j)
      out << (j ? "," : "") << format_double(table.values(i, j));
    out << "\n";
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

SampleTable read_samples(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::size_t cols = table.header.size();
  if (cols < 2)
    throw DataError(path + ":1: sample files need columns x1..xs and y");
  for (std::size_t j = 0; j + 1 < cols; ++j) {
    const std::string want = "x" + std::to_string(j + 1);
    if (table.header[j] != want)
      throw DataError(path + ":1: expected header column '" + want +
                      "', got '" + table.header[j] + "'");
  }
  if (table.header.back() != "y")
    throw DataError(path + ":1: expected final header column 'y', got '" +
                    table.header.back() + "'");
  SampleTable s;
  s.points = table.values.leftCols(static_cast<Index>(cols - 1));
  s.responses = table.values.rightCols(1);
  return s;
}

Matrix read_points(const std::string& path) {
  const CsvTable table = read_csv(path);
  std::size_t s = table.header.size();
  if (!table.header.empty() && table.header.back() == "y") --s;
  if (s < 1)
    throw DataError(path + ":1: point files need columns x1..xs");
  for (std::size_t j = 0; j < s; ++j) {
    const std::string want = "x" + std::to_string(j + 1);
    if (table.header[j] != want)
      throw DataError(path + ":1: expected header column '" + want +
                      "', got '" + table.header[j] + "'");
  }
  return table.values.leftCols(static_cast<Index>(s));
}

void write_samples(const std::string& path, const Matrix& points,
                   const Vector* responses) {
  if (responses && responses->size() != points.rows())
    throw DimensionError("write_samples: point/response count mismatch");
  CsvTable table;
  for (Index j = 0; j < points.cols(); ++j)
    table.header.push_back("x" + std::to_string(j + 1));
  if (responses) {
    table.header.push_back("y");
    table.values.resize(points.rows(), points.cols() + 1);
    table.values.leftCols(points.cols()) = points;
    table.values.rightCols(1) = *responses;
  } else {
    table.values = points;
  }
  write_csv(path, table);
}

}  // namespace mfs
