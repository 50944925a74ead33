#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(CLASSICALITY_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("compute prints indicator JSON") {
  auto r = run("compute --n 2 --stratum 1,1");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"]["decimal"].get<std::string>().rfind("0.19245008972987", 0) == 0);

  r = run("compute --n 3 --stratum 2,1 --moduli 0");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["value"]["decimal"] == "0.03125");

  r = run("compute --n 3 --stratum 3 --moduli 0");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["value"]["decimal"] == "1");

  r = run("compute --n 3 --spectrum 1,1,-1 --method lasserre");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["value"]["exact"] == "1/256");
}

TEST_CASE("exit codes") {
  CHECK(run("compute --n 3 --spectrum 1,1,1").status == 2);
  CHECK(run("compute --n 3 --spectrum 1,1,-1 --stratum 2,2").status == 2);
  CHECK(run("compute --n 3 --moduli 5").status == 2);
  CHECK(run("compute --n 6 --method la").status == 3);
  CHECK(run("compute --n 3 --method simpson").status == 2);
  CHECK(run("frobnicate").status == 2);
}

TEST_CASE("scan row counts, header and flags") {
  auto r = run("scan --n 3 --grid 50");
  REQUIRE(r.status == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 100);
  CHECK(rows[0] == std::vector<std::string>{"angle_1", "stratum", "q_value", "method", "flag"});
  for (std::size_t i = 1; i < rows.size(); i += 2) {
    CHECK(rows[i][1] == "1,1,1");
    CHECK(rows[i + 1][1] == "2,1");
    CHECK(std::stod(rows[i][2]) > 0);
    CHECK(std::stod(rows[i][2]) < std::stod(rows[i + 1][2]));
    CHECK(rows[i][4] == "ok");
    CHECK(rows[i + 1][4] == "ok");
  }

  r = run("scan --n 4 --grid 4 --stratum all");
  REQUIRE(r.status == 0);
  rows = parse_csv(r.out);
  CHECK(rows.size() == 1 + 16 * 5);
  CHECK(rows[0] == std::vector<std::string>{"angle_1", "angle_2", "stratum", "q_value", "method", "flag"});
  CHECK(run("scan --n 3 --grid 1").status == 2);
}

TEST_CASE("scan output is deterministic and CSV matches JSON") {
  const auto csv1 = run("scan --n 4 --grid 3 --stratum 1,1,1,1 --stratum 2,2");
  const auto csv2 = run("scan --n 4 --grid 3 --stratum 1,1,1,1 --stratum 2,2");
  REQUIRE(csv1.status == 0);
  CHECK(csv1.out == csv2.out);
  const auto json = run("scan --n 4 --grid 3 --stratum 1,1,1,1 --stratum 2,2 --format json");
  REQUIRE(json.status == 0);
  const auto j = nlohmann::json::parse(json.out);
  const auto rows = parse_csv(csv1.out);
  REQUIRE(j["rows"].size() + 1 == rows.size());
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const auto& row = j["rows"][i];
    CHECK(row["angles"][0] == rows[i + 1][0]);
    CHECK(row["angles"][1] == rows[i + 1][1]);
    CHECK(row["stratum"] == rows[i + 1][2]);
    CHECK(row["q_value"] == rows[i + 1][3]);
    CHECK(row["method"] == rows[i + 1][4]);
    CHECK(row["flag"] == rows[i + 1][5]);
  }
  const auto mc1 = run("scan --n 3 --grid 3 --method mc --mc-samples 20000 --seed 5");
  const auto mc2 = run("scan --n 3 --grid 3 --method mc --mc-samples 20000 --seed 5");
  CHECK(mc1.out == mc2.out);
}

TEST_CASE("hierarchy and polytope commands") {
  auto r = run("hierarchy --n 3 --spectrum 1,1,-1");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["conjecture_holds"] == true);
  r = run("polytope --n 3 --spectrum 1,1,-1");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["vertices"].size() == 3);
}
