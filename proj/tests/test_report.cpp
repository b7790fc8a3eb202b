#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tfim/commands.hpp"
#include "tfim/report.hpp"

using namespace tfim;

namespace {

Table sample_table() {
  Table t;
  t.columns = {"n_sites", "lambda", "chi", "flag"};
  t.rows.push_back({std::int64_t{64}, 0.1, 1.0 / 3.0, std::string("")});
  t.rows.push_back({std::int64_t{128}, 0.95, 2.5e-17, std::string("singular_block")});
  t.metadata.emplace_back("slope", 0.38);
  t.metadata.emplace_back("flagged", false);
  return t;
}

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    CHECK(parse(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_cell(std::int64_t{42}) == "42");
  CHECK(format_cell(true) == "true");
}

TEST_CASE("csv layout") {
  std::ostringstream out;
  write_csv(out, sample_table());
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text ==
        "n_sites,lambda,chi,flag\n"
        "64,0.1,0.3333333333333333,\n"
        "128,0.95,2.5e-17,singular_block\n"
        "# slope,0.38\n"
        "# flagged,false\n");
}

TEST_CASE("json layout") {
  const nlohmann::ordered_json cfg{{"command", "sweep"}};
  const auto doc = tfim::to_json(sample_table(), cfg);
  CHECK(doc["config"]["command"] == "sweep");
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["n_sites"] == 64);
  CHECK(doc["rows"][1]["flag"] == "singular_block");
  CHECK(doc["metadata"]["flagged"] == false);
  auto it = doc["rows"][0].begin();
  CHECK(it.key() == "n_sites");
}

TEST_CASE("csv and json carry identical numbers") {
  auto cfg = default_config(Command::sweep);
  cfg.sizes = {12, 64};
  cfg.lambda_range = {0.8, 1.1, 7};
  const Table table = run(cfg);

  std::ostringstream csv, json;
  write_csv(csv, table);
  write_json(json, table, to_json(cfg));
  const auto doc = nlohmann::ordered_json::parse(json.str());

  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  const auto header = split(line);
  std::size_t r = 0;
  while (std::getline(lines, line) && line.rfind("# ", 0) != 0) {
    const auto fields = split(line);
    REQUIRE(fields.size() == header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& j = doc["rows"][r][header[c]];
      if (j.is_number()) CHECK(parse(fields[c]) == j.get<double>());
    }
    ++r;
  }
  CHECK(r == doc["rows"].size());
  CHECK(r == 14);
}

TEST_CASE("output is deterministic") {
  auto cfg = default_config(Command::sweep);
  cfg.sizes = {12, 52, 252};
  cfg.lambda_range = {0.8, 1.1, 31};
  std::ostringstream a, b, ja, jb;
  write_csv(a, run(cfg));
  write_csv(b, run(cfg));
  CHECK(a.str() == b.str());
  write_json(ja, run(cfg), to_json(cfg));
  write_json(jb, run(cfg), to_json(cfg));
  CHECK(ja.str() == jb.str());
}
