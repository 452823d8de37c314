#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "phidescent/batch.hpp"
#include "phidescent/records.hpp"

using namespace phidescent;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string sieve_text(SieveOptions options) {
  std::ostringstream out;
  run_sieve(options, out);
  return out.str();
}

}  // namespace

TEST_CASE("odd primes and D enumeration") {
  CHECK(odd_primes_below(20) == std::vector<std::uint64_t>{3, 5, 7, 11, 13, 17, 19});
  CHECK(odd_primes_below(3).empty());

  std::vector<std::int64_t> values;
  for (const auto& d : enumerate_d(20, 1)) values.push_back(*d.value());
  CHECK(values == std::vector<std::int64_t>{3, 5, 7, 11, 13, 17, 19});

  values.clear();
  for (const auto& d : enumerate_d(8, 3)) values.push_back(*d.value());
  CHECK(values == std::vector<std::int64_t>{3, 5, 7, 15, 21, 35, 105});
}

TEST_CASE("sieve rows") {
  SieveOptions options;
  options.prime_bound = 20;
  options.n_max = 1;
  auto lines = lines_of(sieve_text(options));
  REQUIRE(lines.size() == 8);
  CHECK(lines[0].rfind("D,n,primes,", 0) == 0);
  CHECK(lines[1] == "3,1,3,1,1,2,4,2,2,1,0,1,0,true,true,conditional-BSD");
  CHECK(lines[6].rfind("17,1,17,0,0,4,8,4,4,", 0) == 0);

  options.flagged_only = true;
  auto flagged = lines_of(sieve_text(options));
  bool has3 = false, has17 = false;
  for (const auto& l : flagged) {
    has3 = has3 || l.rfind("3,", 0) == 0;
    has17 = has17 || l.rfind("17,", 0) == 0;
  }
  CHECK(has3);
  CHECK_FALSE(has17);
  for (std::size_t i = 1; i < flagged.size(); ++i) {
    CHECK(std::find(lines.begin(), lines.end(), flagged[i]) != lines.end());
  }
}

TEST_CASE("sieve output does not depend on the worker count") {
  SieveOptions options;
  options.prime_bound = 60;
  options.n_max = 3;
  options.with_members = true;
  const auto serial = sieve_text(options);
  for (std::size_t workers : {2U, 3U, 8U}) {
    options.parallel = workers;
    CHECK(sieve_text(options) == serial);
  }
  options.format = Format::json;
  options.parallel = 1;
  const auto json_serial = sieve_text(options);
  options.parallel = 4;
  CHECK(sieve_text(options) == json_serial);
}

TEST_CASE("sieve stats") {
  SieveOptions options;
  options.prime_bound = 30;
  options.n_max = 2;
  options.flagged_only = true;
  std::ostringstream out;
  auto stats = run_sieve(options, out);
  CHECK(stats.analyzed == 45);  // 9 primes, 36 pairs
  CHECK(stats.emitted <= stats.analyzed);
  CHECK(stats.emitted + 1 == lines_of(out.str()).size());
  CHECK(stats.emitted >= stats.rank0);
}

TEST_CASE("crosscheck agrees on small ranges") {
  auto summary = crosscheck(40, 3);
  CHECK_FALSE(summary.first_mismatch.has_value());
  CHECK(summary.tested > 100);
  CHECK_FALSE(crosscheck_one(FactoredD({3}, {3})).has_value());
  CHECK_THROWS(crosscheck(10, 17));
}

TEST_CASE("records") {
  auto rec = make_record(FactoredD({3}), true);
  std::ostringstream csv;
  write_csv_header(csv, true);
  write_csv_row(csv, rec);
  auto lines = lines_of(csv.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find("conditional-BSD") != std::string::npos);

  auto json = to_json(rec);
  CHECK(json["D"] == 3);
  CHECK(json["primes"] == nlohmann::json::array({3}));
  CHECK(json["size_S_minus"] == 2);
  CHECK(json["size_Sprime_minus"] == 4);
  CHECK(json["t_minus"] == 1);
  CHECK(json["t_plus"] == 0);
  CHECK(json["rank1_conditional"] == true);
  CHECK(json["notes"] == "conditional-BSD");
  CHECK(json["members"]["Sprime_minus"].size() == 4);

  auto cubed = to_json(make_record(FactoredD({3}, {3}), false));
  CHECK(cubed["D"] == 27);
  CHECK(cubed["exponents"] == nlohmann::json::array({3}));
  CHECK(cubed["size_S_minus"] == 2);

  CHECK(parse_format("csv") == Format::csv);
  CHECK_THROWS(parse_format("xml"));
}
