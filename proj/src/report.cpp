#include "chronopath/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

#include "chronopath/errors.hpp"

#ifndef CHRONOPATH_VERSION
#define CHRONOPATH_VERSION "0.0.0"
#endif

namespace chronopath {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Fixed 3-decimal coordinates keep the SVG small and stable.
std::string coord(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  std::string s(buf, res.ptr);
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) text_.push_back(',');
    text_ += columns_[i];
  }
  text_.push_back('\n');
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_.push_back(',');
    text_ += cells[i];
  }
  text_.push_back('\n');
  ++rows_;
}

std::string render_svg(const SvgPlot& plot) {
  constexpr double kW = 800, kH = 500, kL = 70, kR = 20, kT = 40, kB = 60;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) { xmin = 0; xmax = 1; }
  if (!(ymin < ymax)) { ymin = 0; ymax = 1; }
  ymin = std::min(ymin, 0.0);
  const double px = (kW - kL - kR) / (xmax - xmin);
  const double py = (kH - kT - kB) / (ymax - ymin);
  auto sx = [&](double x) { return kL + (x - xmin) * px; };
  auto sy = [&](double y) { return kH - kB - (y - ymin) * py; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
    << escape_xml(plot.title) << "</text>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\""
    << kH - kB << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    o << "<text x=\"" << coord(sx(xv)) << "\" y=\"" << kH - kB + 18
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(std::round(xv * 1000) / 1000)
      << "</text>\n";
    o << "<text x=\"" << kL - 6 << "\" y=\"" << coord(sy(yv) + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(std::round(yv * 1000) / 1000)
      << "</text>\n";
  }
  o << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
    << escape_xml(plot.x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
    << "transform=\"rotate(-90 16 " << kH / 2 << ")\">" << escape_xml(plot.y_label) << "</text>\n";

  int legend_row = 0;
  for (const auto& s : plot.series) {
    if (s.markers) {
      o << "<g fill=\"" << s.colour << "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        o << "<circle cx=\"" << coord(sx(s.x[i])) << "\" cy=\"" << coord(sy(s.y[i]))
          << "\" r=\"1.5\"/>\n";
      }
      o << "</g>\n";
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (!first) o << ' ';
        first = false;
        o << coord(sx(s.x[i])) << ',' << coord(sy(s.y[i]));
      }
      o << "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = kT + 14.0 * legend_row++;
      o << "<text x=\"" << kW - kR - 4 << "\" y=\"" << ly << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
        << s.colour << "\">" << escape_xml(s.label) << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string RunManifest::to_json() const {
  json j;
  j["schema"] = kManifestSchema;
  j["command"] = command;
  j["params"] = params;
  json outs = json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["outputs"] = outs;
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
  if (j.value("schema", "") != kManifestSchema) throw IoError("unsupported manifest schema");
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.params = j.at("params").get<std::map<std::string, std::string>>();
  for (const auto& o : j.at("outputs"))
    m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>(),
                         o.at("bytes").get<std::uintmax_t>()});
  m.version = j.at("version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  return m;
}

std::string artifact_version() { return "chronopath " CHRONOPATH_VERSION; }

std::string utc_timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch)
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputSink::OutputSink(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory " + dir_.string());
}

void OutputSink::write(const std::string& relative, std::string_view content) {
  if (relative.empty() || relative == kManifestName || fs::path(relative).is_absolute())
    throw IoError("invalid output name '" + relative + "'");
  std::lock_guard lock(mutex_);
  const fs::path target = dir_ / relative;
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + target.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing " + target.string());
  outputs_[relative] = {relative, sha256_hex(content), content.size()};
}

RunManifest OutputSink::finish(const std::string& command, std::map<std::string, std::string> params) {
  std::lock_guard lock(mutex_);
  RunManifest m;
  m.command = command;
  m.params = std::move(params);
  for (const auto& [name, entry] : outputs_) m.outputs.push_back(entry);
  m.version = artifact_version();
  m.timestamp = utc_timestamp();
  const fs::path target = dir_ / kManifestName;
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + target.string());
  out << m.to_json();
  if (!out) throw IoError("failed writing " + target.string());
  return m;
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
  std::vector<std::string> problems;
  const RunManifest m = RunManifest::from_json(read_file(dir / kManifestName));
  std::map<std::string, const ManifestOutput*> listed;
  for (const auto& o : m.outputs) {
    listed[o.path] = &o;
    const fs::path p = dir / o.path;
    if (!fs::is_regular_file(p)) {
      problems.push_back("missing: " + o.path);
      continue;
    }
    if (sha256_file(p) != o.sha256) problems.push_back("digest mismatch: " + o.path);
  }
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == kManifestName) continue;
    if (!listed.count(rel)) problems.push_back("unlisted: " + rel);
  }
  std::sort(problems.begin(), problems.end());
  return problems;
}

}  // namespace chronopath
