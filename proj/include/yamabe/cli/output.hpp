#pragma once

#include "json.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace yamabe::cli {

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

/// Comment lines opening every CSV: format version, resolved config on one
/// line, then one "# key: value" line per extra entry.
std::string csv_preamble(const std::string& kind, const nlohmann::json& config,
                         const std::vector<std::pair<std::string, std::string>>& extra = {});

std::string profile_csv(const std::string& preamble, std::span<const double> x, std::span<const double> u,
                        std::span<const double> du, std::span<const double> d2u, std::span<const double> residual);

struct MonitorRow {
    double t;
    double sup_u;
    double sup_du;
    double sup_d2u;
    double residual_norm;
    double cone_margin;
    int newton_iters;
};

std::string monitors_csv(const std::string& preamble, std::span<const MonitorRow> rows);

/// {"format": ..., "kind": ..., "config": ..., body...}, two-space indent.
std::string report_json(const std::string& kind, const nlohmann::json& config, const nlohmann::json& body);

/// Writes bytes verbatim (LF endings preserved), creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace yamabe::cli
