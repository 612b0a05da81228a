#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "twosided/errors.hpp"
#include "twosided/io.hpp"

using namespace twosided;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("twosided_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines(const std::string &text, const std::string &needle) {
  std::istringstream in(text);
  std::size_t count = 0;
  for (std::string line; std::getline(in, line);)
    count += line.find(needle) != std::string::npos;
  return count;
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(TWOSIDED_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("cache images round trip bit for bit") {
  for (const char *spec : {"A1", "A3", "B4xA1", "H3", "I2(7)", "E6"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const auto bytes = serialize_group(t);
    const GroupTable back = deserialize_group(bytes);
    CHECK(back == t);
    CHECK(serialize_group(back) == bytes);
  }
}

TEST_CASE("long elements use two-byte lengths") {
  const GroupTable t = build_group("I2(300)");
  CHECK(t.max_length() == 300);
  const auto bytes = serialize_group(t);
  CHECK(deserialize_group(bytes) == t);
}

TEST_CASE("corrupt images are rejected") {
  const auto bytes = serialize_group(build_group("A3"));
  auto flipped = bytes;
  flipped[flipped.size() / 2] ^= 0x10;
  CHECK_THROWS_AS(deserialize_group(flipped), CorruptCache);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 9);
  CHECK_THROWS_AS(deserialize_group(truncated), CorruptCache);
  CHECK_THROWS_AS(deserialize_group({}), CorruptCache);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(deserialize_group(bad_magic), CorruptCache);
}

TEST_CASE("cache directory") {
  const fs::path dir = scratch("cache");
  const CachedGroup first = load_or_build("A3", dir);
  CHECK_FALSE(first.hit);
  CHECK(first.table.order() == 24);
  CHECK(fs::exists(first.path));
  const CachedGroup second = load_or_build("A3", dir);
  CHECK(second.hit);
  CHECK(second.table == first.table);
  CHECK_THROWS_AS(load_or_build("A1~", dir), NotFinite);
  CHECK_THROWS_AS(load_or_build("B4", dir, 100), CapacityExceeded);

  // a damaged file is reported, not silently rebuilt
  {
    std::fstream f(first.path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  CHECK_THROWS_AS(load_or_build("A3", dir), CorruptCache);
  fs::remove_all(dir);
}

TEST_CASE("matrix output") {
  const Rows rows = {{1, 0}, {0, 12}};
  std::ostringstream csv, text;
  write_matrix_csv(csv, rows);
  CHECK(csv.str() == "c0,c1\n1,0\n0,12\n");
  write_matrix_text(text, rows);
  CHECK(text.str() == " 1  0\n 0 12\n");
  CHECK(parse_format("dot") == Format::Dot);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("Hasse diagrams") {
  const GroupTable a2 = build_group("A2");
  const XiComplex xi(a2);
  std::ostringstream dot, again;
  write_hasse_dot(dot, xi, 0, 64);
  write_hasse_dot(again, xi, 0, 64);
  CHECK(dot.str() == again.str());
  CHECK(count_lines(dot.str(), "[label=") == 33);
  CHECK(count_lines(dot.str(), " -> ") == 84);
  CHECK(dot.str().find("\"(12|e|12)\"") != std::string::npos);
  CHECK(dot.str().find("\"(|s1s2s1|)\"") != std::string::npos);

  const GroupTable a1 = build_group("A1");
  std::ostringstream small;
  write_hasse_dot(small, XiComplex(a1), 0, 64);
  CHECK(count_lines(small.str(), "[label=") == 5);
  CHECK(count_lines(small.str(), " -> ") == 6);

  std::ostringstream ranks;
  write_hasse_dot(ranks, xi, 3, 4);
  CHECK(count_lines(ranks.str(), "[label=") == 18);

  std::ostringstream sigma;
  write_sigma_dot(sigma, xi);
  CHECK(count_lines(sigma.str(), "[label=") == 13);

  const GroupTable b4 = build_group("B4");
  std::ostringstream big;
  CHECK_THROWS_AS(write_hasse_dot(big, XiComplex(b4), 0, 64, 1000), CapacityExceeded);
}

TEST_CASE("contingency export") {
  const GroupTable a2 = build_group("A2");
  std::ostringstream out;
  write_contingency_json(out, XiComplex(a2));
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j.size() == 33);
  CHECK(j[0]["table"] == nlohmann::json::array({nlohmann::json::array({0, 0, 1}),
                                                nlohmann::json::array({0, 1, 0}),
                                                nlohmann::json::array({1, 0, 0})}));
  std::ostringstream b2;
  CHECK_THROWS_AS(write_contingency_json(b2, XiComplex(build_group("B2"))), WrongType);
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch("cli");
  const std::string cache = " --cache-dir " + dir.string();
  CHECK(run_cli("build -t A3" + cache) == 0);
  CHECK(run_cli("build -t A3" + cache) == 0);
  CHECK(run_cli("verify -t A2" + cache) == 0);
  CHECK(run_cli("tables -t B3 --format csv" + cache) == 0);
  CHECK(run_cli("export hasse -t A2 --out " + (dir / "a2.dot").string() + cache) == 0);
  CHECK(fs::exists(dir / "a2.dot"));
  CHECK(run_cli("build -t A1~" + cache) == 2);
  CHECK(run_cli("build -t Z9" + cache) == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("build -t E8" + cache) == 3);
  CHECK(run_cli("build -t B4 --budget 10" + cache) == 3);
  CHECK(run_cli("export contingency -t B2" + cache) == 2);
  fs::remove_all(dir);
}
