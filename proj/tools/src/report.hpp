#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace cbolab::cli {

// Shortest round-trip text for a double.
std::string num(double x);

// Comma separated file with a fixed header; every row must match its width.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);

 private:
  std::filesystem::path path_;
  std::size_t width_;
  std::ofstream out_;
};

// Coordinate column names: prefix_0, prefix_1, ...
std::vector<std::string> indexed(const std::string& prefix, std::size_t count);

// Appends the cells of a vector.
void append(std::vector<std::string>& cells, std::span<const double> values);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws std::runtime_error when the column is missing.
  std::size_t column(const std::string& name) const;
};

// Throws std::runtime_error if the file cannot be read or has no header.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace cbolab::cli
