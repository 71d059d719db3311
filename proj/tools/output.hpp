#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace oamw::cli {

/// Locale-independent shortest round-trip formatting.
std::string num(double v);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values);
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

void save_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace oamw::cli
