#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "chronopath/errors.hpp"
#include "chronopath/report.hpp"

using namespace chronopath;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chronopath_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubles format as shortest round-trip strings") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  for (double v : {1.0 / 3.0, 2.718281828459045, -1.2345e-29}) {
    const std::string s = format_double(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("SHA-256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("CSV table layout") {
  CsvTable t({"a", "b"});
  t.add_row(std::vector<double>{1.5, -2.0});
  t.add_row(std::vector<std::string>{"x", "y"});
  CHECK(t.rows() == 2);
  CHECK(t.text() == "a,b\n1.5,-2\nx,y\n");
  CHECK_THROWS_AS(t.add_row(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("SVG rendering is a pure function of the data") {
  SvgPlot plot{"t", "x", "y", {{"s", "red", {0, 1, 2}, {0, 1, 0.5}, false}, {"d", "blue", {0, 2}, {1, 1}, true}}};
  const std::string a = render_svg(plot);
  CHECK(a == render_svg(plot));
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("polyline") != std::string::npos);
  CHECK(a.find("circle") != std::string::npos);
}

TEST_CASE("manifest round trip and verification") {
  const fs::path dir = fresh_dir("manifest");
  OutputSink sink(dir);
  sink.write("a.csv", "x\n1\n");
  sink.write("sub/b.json", "{}\n");
  const RunManifest m = sink.finish("demo", {{"k", "v"}});
  REQUIRE(m.outputs.size() == 2);
  CHECK(m.outputs[0].path == "a.csv");
  CHECK(m.outputs[0].sha256 == sha256_hex("x\n1\n"));
  CHECK(m.outputs[1].bytes == 3);

  std::ifstream in(dir / kManifestName);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.find("\"schema\": \"chronopath/1\"") != std::string::npos);
  const RunManifest back = RunManifest::from_json(text);
  CHECK(back.command == "demo");
  CHECK(back.params.at("k") == "v");
  CHECK(back.outputs.size() == 2);
  CHECK(back.to_json() == m.to_json());
  CHECK(verify_manifest(dir).empty());

  std::ofstream(dir / "extra.txt") << "stray";
  std::ofstream(dir / "a.csv") << "changed";
  const auto problems = verify_manifest(dir);
  REQUIRE(problems.size() == 2);
  CHECK(problems[0] == "digest mismatch: a.csv");
  CHECK(problems[1] == "unlisted: extra.txt");

  CHECK_THROWS_AS(sink.write(kManifestName, "x"), IoError);
  CHECK_THROWS_AS(RunManifest::from_json("{\"schema\": \"other\"}"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("timestamp honours SOURCE_DATE_EPOCH") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(utc_timestamp() == "1970-01-01T00:00:00Z");
  unsetenv("SOURCE_DATE_EPOCH");
  CHECK(utc_timestamp().size() == 20);
}
