#ifndef HEDONET_REPORT_HPP
#define HEDONET_REPORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hedonet {

inline constexpr int kSchemaVersion = 1;

// Writes via a temp file in the same directory, then renames into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);
void write_json_report(const std::filesystem::path& path, const nlohmann::json& j);

std::string read_file(const std::filesystem::path& path);

inline nlohmann::json json_opt(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace hedonet

#endif  // HEDONET_REPORT_HPP
