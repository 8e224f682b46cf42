#include "eulerfan/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace eulerfan::io {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("cannot create directory " + path);
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // keep \n on every platform
  if (!out) throw std::runtime_error("cannot open " + path);
  return out;
}
}  // namespace

void write_table(const std::string& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << g17(row[i]);
    out << "\n";
  }
}

void write_report(const std::string& path,
                  const std::vector<fan::CheckLine>& checks) {
  auto out = open_out(path);
  out << "check,value,threshold,pass\n";
  for (const auto& c : checks)
    out << c.name << "," << g17(c.value) << "," << g17(c.threshold) << ","
        << (c.pass ? "1" : "0") << "\n";
}

void write_key_values(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << "," << v << "\n";
}

}  // namespace eulerfan::io
