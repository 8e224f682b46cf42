#ifndef EULERFAN_IO_HPP
#define EULERFAN_IO_HPP

#include <string>
#include <vector>

#include "eulerfan/subsolution.hpp"

namespace eulerfan::io {

// 17 significant digits; round-trips doubles exactly and keeps outputs
// byte-deterministic.
std::string g17(double v);

void ensure_dir(const std::string& path);

void write_table(const std::string& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

void write_report(const std::string& path,
                  const std::vector<fan::CheckLine>& checks);

void write_key_values(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace eulerfan::io

#endif
