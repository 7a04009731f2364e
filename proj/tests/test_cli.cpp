#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(HMS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "hms_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_doc(const std::string& name, const json& j) {
  fs::path p = temp_dir() / name;
  std::ofstream(p) << j.dump(2);
  return p.string();
}

json coin_doc() {
  return {
      {"version", 1},
      {"states", {"p"}},
      {"measurements",
       {{{"name", "coin"},
         {"outcomes",
          {{{"name", "h"}, {"value", "0"}}, {{"name", "t"}, {"value", "1"}}}}}}},
      {"table",
       {{{"state", "p"},
         {"measurement", "coin"},
         {"measure", {{"atoms", {{"h", "1/2"}, {"t", "1/2"}}}}}}}}};
}

}  // namespace

TEST_CASE("build then verify round-trips") {
  std::string sys = write_doc("coin.json", coin_doc());
  std::string rep = (temp_dir() / "coin_rep.json").string();

  auto b = run_cli("build " + sys + " " + rep);
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("1 states x 1 measurements") != std::string::npos);

  auto v = run_cli("verify " + sys + " " + rep);
  CHECK(v.exit_code == 0);
  CHECK(json::parse(v.out).at("all_ok") == true);
}

TEST_CASE("build rejects a malformed mass with exit 2") {
  json bad = coin_doc();
  bad["table"][0]["measure"]["atoms"]["t"] = "1/3";
  std::string sys = write_doc("bad_mass.json", bad);
  auto r = run_cli("build " + sys + " " + (temp_dir() / "never.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("MassNotOne") != std::string::npos);
}

TEST_CASE("check exit codes follow the verdict") {
  std::string sys = write_doc("coin.json", coin_doc());
  CHECK(run_cli("check " + sys + " --lambda continuum").exit_code == 0);
  CHECK(run_cli("check " + sys + " --lambda finite:1").exit_code == 1);
  CHECK(run_cli("check " + sys + " --lambda finite:2").exit_code == 0);

  std::string mu = write_doc(
      "uniform4.json",
      {{"atoms", {{"a", "1/4"}, {"b", "1/4"}, {"c", "1/4"}, {"d", "1/4"}}}});
  auto r = run_cli("check " + sys + " --mu " + mu);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("verdict") == "yes");

  std::string single = write_doc("single.json", {{"atoms", {{"only", "1"}}}});
  CHECK(run_cli("check " + sys + " --mu " + single).exit_code == 1);
}

TEST_CASE("verify flags a corrupted representation with exit 1") {
  std::string sys = write_doc("coin.json", coin_doc());
  std::string rep = (temp_dir() / "coin_rep.json").string();
  REQUIRE(run_cli("build " + sys + " " + rep).exit_code == 0);

  json doc = json::parse(std::ifstream(rep));
  doc["maps"][0]["cells"][0]["interval"][1] = "7/10";
  doc["maps"][0]["cells"][1]["interval"][0] = "7/10";
  std::string corrupted = write_doc("corrupted_rep.json", doc);

  auto r = run_cli("verify " + sys + " " + corrupted);
  CHECK(r.exit_code == 1);
  CHECK(json::parse(r.out).at("all_ok") == false);
}

TEST_CASE("classify prints the class set") {
  std::string sys = write_doc("coin.json", coin_doc());
  auto r = run_cli("classify " + sys);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "FINITE(2,[1/2,1/2])\n");
}

TEST_CASE("equiv prints a witness or reports none") {
  std::string a = write_doc("coin.json", coin_doc());
  json renamed = coin_doc();
  renamed["measurements"][0]["outcomes"][0]["name"] = "x";
  renamed["measurements"][0]["outcomes"][1]["name"] = "y";
  renamed["table"][0]["measure"]["atoms"] = {{"x", "1/2"}, {"y", "1/2"}};
  std::string b = write_doc("renamed.json", renamed);

  auto r = run_cli("equiv " + a + " " + b);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out).at("outcomes").at("coin").at("h") == "x");

  json biased = coin_doc();
  biased["table"][0]["measure"]["atoms"] = {{"h", "2/3"}, {"t", "1/3"}};
  std::string c = write_doc("biased.json", biased);
  auto n = run_cli("equiv " + a + " " + c);
  CHECK(n.exit_code == 1);
  CHECK(n.out == "not equivalent\n");
}

TEST_CASE("sample writes the CSV contract") {
  std::string sys = write_doc("coin.json", coin_doc());
  std::string rep = (temp_dir() / "coin_rep.json").string();
  REQUIRE(run_cli("build " + sys + " " + rep).exit_code == 0);

  std::string csv = (temp_dir() / "coin.csv").string();
  auto r = run_cli("sample " + rep +
                   " --state p --measurement coin -n 10000 --seed 42 --out " + csv);
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "state,measurement,outcome,expected,count,frequency,z");
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);

  auto again = run_cli("sample " + rep +
                       " --state p --measurement coin -n 10000 --seed 42");
  CHECK(again.exit_code == 0);
  std::ifstream full(csv);
  std::string whole((std::istreambuf_iterator<char>(full)),
                    std::istreambuf_iterator<char>());
  CHECK(again.out == whole);
}

TEST_CASE("quantum gen emits a buildable system document") {
  std::string sys = (temp_dir() / "spin.json").string();
  auto g = run_cli("quantum gen --thetas 0,1/3,1/2 --out " + sys);
  CHECK(g.exit_code == 0);

  std::string rep = (temp_dir() / "spin_rep.json").string();
  CHECK(run_cli("build " + sys + " " + rep).exit_code == 0);
  CHECK(run_cli("verify " + sys + " " + rep).exit_code == 0);

  json doc = json::parse(std::ifstream(sys));
  CHECK(doc.at("version") == 1);
  CHECK(doc.contains("table"));
}

TEST_CASE("quantum block documents build with Born probabilities") {
  const double c = 0.8660254037844387;  // cos(pi/6)
  json sys = {{"version", 1},
              {"quantum",
               {{"states", {{{"name", "s"}, {"vector", {{c, 0.0}, {0.5, 0.0}}}}}},
                {"bases",
                 {{{"name", "z"},
                   {"vectors", {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}}},
                   {"eigenvalues", {"1", "-1"}},
                   {"outcomes", {"up", "down"}}}}}}}};
  std::string path = write_doc("quantum_block.json", sys);
  std::string rep = (temp_dir() / "qb_rep.json").string();
  auto b = run_cli("build " + path + " " + rep);
  CHECK(b.exit_code == 0);
  json doc = json::parse(std::ifstream(rep));
  CHECK(doc["maps"][0]["cells"][0]["interval"][1] == "3/4");
}

TEST_CASE("schema errors exit 2 with an error payload") {
  std::string garbage = (temp_dir() / "garbage.json").string();
  std::ofstream(garbage) << "{\"version\": 1}";
  auto r = run_cli("build " + garbage + " " + (temp_dir() / "x.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("error") != std::string::npos);
  CHECK(run_cli("classify " + (temp_dir() / "missing_file.json").string()).exit_code == 2);
}
