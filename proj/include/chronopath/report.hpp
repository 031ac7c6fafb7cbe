#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace chronopath {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Comma-separated table with a header row and '\n' line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  std::size_t rows() const noexcept { return rows_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::vector<std::string> columns_;
  std::string text_;
  std::size_t rows_ = 0;
};

struct SvgSeries {
  std::string label;
  std::string colour;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // dots instead of a polyline
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
};

/// Static SVG rendering. Output depends only on the plot data.
std::string render_svg(const SvgPlot& plot);

struct ManifestOutput {
  std::string path;  // relative to the output directory, '/' separated
  std::string sha256;
  std::uintmax_t bytes = 0;
};

inline constexpr const char* kManifestSchema = "chronopath/1";
inline constexpr const char* kManifestName = "manifest.json";

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<ManifestOutput> outputs;  // sorted by path
  std::string version;
  std::string timestamp;  // UTC, ISO 8601

  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

std::string artifact_version();

/// UTC time from SOURCE_DATE_EPOCH when set, otherwise the clock.
std::string utc_timestamp();

/// Writes files under one directory and records their digests.
/// write() is safe to call from several threads; writes are serialized.
class OutputSink {
 public:
  /// Creates the directory. Throws IoError.
  explicit OutputSink(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Writes `content` to dir/relative, replacing an existing file.
  void write(const std::string& relative, std::string_view content);

  /// Writes manifest.json listing every file written so far.
  RunManifest finish(const std::string& command, std::map<std::string, std::string> params);

 private:
  std::filesystem::path dir_;
  std::mutex mutex_;
  std::map<std::string, ManifestOutput> outputs_;
};

/// Re-hashes every listed output and compares against the directory
/// contents. Returns human-readable problems; empty when consistent.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace chronopath
