#include "peakon/io.hpp"

#include "peakon/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace peakon {

const char* const kDiagnosticsHeader = "t,l1_m,linf_m,H1,H2,max_abs_u,max_abs_ux,inf_Jx,min_spacing_ratio";

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows) {
  out << kDiagnosticsHeader;
  const bool besov = !rows.empty() && rows.front().besov_h_s.has_value();
  if (besov) out << ",besov_h_s";
  out << "\n";
  for (const DiagnosticsRecord& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.l1_m) << ',' << format_double(r.linf_m) << ','
        << format_double(r.H1) << ',' << format_double(r.H2) << ',' << format_double(r.max_abs_u) << ','
        << format_double(r.max_abs_ux) << ',' << format_double(r.inf_Jx) << ',' << format_double(r.min_spacing_ratio);
    if (besov) out << ',' << format_double(r.besov_h_s.value_or(std::nan("")));
    out << "\n";
  }
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rows) {
  std::ofstream out = open_out(path);
  write_diagnostics_csv(out, rows);
}

std::string snapshot_json(const Snapshot& s) {
  const ArrayXcd& v = s.m.values();
  nlohmann::json j;
  j["t"] = s.t;
  j["L"] = s.m.grid().half_length();
  j["N"] = s.m.grid().point_count();
  j["theta"] = s.theta;
  std::vector<double> re(v.size()), im(v.size());
  for (Index k = 0; k < v.size(); ++k) re[k] = v[k].real(), im[k] = v[k].imag();
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  std::ofstream out = open_out(path);
  out << snapshot_json(s) << "\n";
}

Snapshot parse_snapshot(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    const double L = j.at("L").get<double>();
    const Index N = j.at("N").get<Index>();
    const std::vector<double> re = j.at("re").get<std::vector<double>>();
    const std::vector<double> im = j.at("im").get<std::vector<double>>();
    if (static_cast<Index>(re.size()) != N || static_cast<Index>(im.size()) != N)
      throw InvalidParameter("snapshot arrays do not match N");
    ArrayXcd v(N);
    for (Index k = 0; k < N; ++k) v[k] = cplx(re[k], im[k]);
    Snapshot s{j.at("t").get<double>(), j.at("theta").get<double>(), GridFunction(Grid(L, N), v)};
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("snapshot is missing fields: ") + e.what());
  }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read snapshot " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

void write_csv(std::ostream& out, const Table& t) {
  for (size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << csv_cell(t.header[i]);
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
}

void write_csv(const std::filesystem::path& path, const Table& t) {
  std::ofstream out = open_out(path);
  write_csv(out, t);
}

}  // namespace peakon
