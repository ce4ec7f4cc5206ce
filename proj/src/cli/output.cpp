#include "yamabe/cli/output.hpp"

#include "yamabe/cli/config.hpp"
#include "yamabe/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

namespace yamabe::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

std::string csv_preamble(const std::string& kind, const nlohmann::json& config,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
    std::string out = fmt::format("# format: {} ({})\n# config: {}\n", kFormatVersion, kind, config.dump());
    for (const auto& [key, value] : extra) out += fmt::format("# {}: {}\n", key, value);
    return out;
}

std::string profile_csv(const std::string& preamble, std::span<const double> x, std::span<const double> u,
                        std::span<const double> du, std::span<const double> d2u, std::span<const double> residual) {
    const std::size_t n = x.size();
    if (u.size() != n || du.size() != n || d2u.size() != n || residual.size() != n)
        throw ArgumentError("profile_csv: column lengths differ");
    std::string out = preamble + "x,u,du,d2u,residual\n";
    for (std::size_t i = 0; i < n; ++i)
        out += fmt::format("{},{},{},{},{}\n", format_number(x[i]), format_number(u[i]), format_number(du[i]),
                           format_number(d2u[i]), format_number(residual[i]));
    return out;
}

std::string monitors_csv(const std::string& preamble, std::span<const MonitorRow> rows) {
    std::string out = preamble + "t,sup_u,sup_du,sup_d2u,residual_norm,cone_margin,newton_iters\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{},{},{},{}\n", format_number(r.t), format_number(r.sup_u),
                           format_number(r.sup_du), format_number(r.sup_d2u), format_number(r.residual_norm),
                           format_number(r.cone_margin), r.newton_iters);
    return out;
}

std::string report_json(const std::string& kind, const nlohmann::json& config, const nlohmann::json& body) {
    nlohmann::json doc = body;
    doc["format"] = kFormatVersion;
    doc["kind"] = kind;
    doc["config"] = config;
    return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

} // namespace yamabe::cli
