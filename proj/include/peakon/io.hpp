#pragma once

#include "peakon/diagnostics.hpp"
#include "peakon/grid.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace peakon {

struct Snapshot {
  double t = 0.0;
  double theta = 0.0;
  GridFunction m;
};

extern const char* const kDiagnosticsHeader;

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows);
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rows);

// {t, L, N, theta, re[], im[]}
std::string snapshot_json(const Snapshot& s);
void write_snapshot(const std::filesystem::path& path, const Snapshot& s);
// Throws InvalidParameter on malformed or inconsistent files.
Snapshot read_snapshot(const std::filesystem::path& path);
Snapshot parse_snapshot(const std::string& text);

// Plain table with a header row; cells are written as given.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& t);
void write_csv(const std::filesystem::path& path, const Table& t);

// Shortest representation that round-trips a double; "nan", "inf", "-inf".
std::string format_double(double v);

}  // namespace peakon
