#include <nearcurve/io.hpp>

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace nearcurve;

TEST_CASE("format_double is shortest-round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-3.5) == "-3.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1e100) == "1e+100");
  // round trip through stod preserves the bits
  double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv_quote only quotes when needed") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("") == "");
  CHECK(csv_quote("a,b") == "\"a,b\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_quote("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

namespace {
ScanTable sample_table() {
  ScanTable t;
  t.curve_spec = "poly:0,0,1";
  t.interval_text = "0,1";
  t.config_digest = "00112233aabbccdd";
  ScanRow r;
  r.curve_id = "poly:0,0,1";
  r.Q = 100;
  r.delta_text = "1/10";
  r.delta = 0.1;
  r.N = 1317;
  r.main_term = 1000.0;
  r.residual = 317.0;
  r.ambiguous = 0;
  r.method = "exact";
  r.elapsed_ms = 0.0;
  r.regime_ok = true;
  t.rows.push_back(r);
  r.Q = 200;
  r.N = 4812;
  r.main_term = 4000.0;
  r.residual = 812.0;
  t.rows.push_back(r);
  return t;
}
}  // namespace

TEST_CASE("write_scan_csv golden output") {
  std::ostringstream os;
  write_scan_csv(os, sample_table());
  CHECK(os.str() ==
        "# curve: poly:0,0,1\n"
        "# interval: 0,1\n"
        "# config: 00112233aabbccdd\n"
        "# version: 0.1.0\n"
        "curve_id,Q,delta,N,main_term,residual,ambiguous,method,elapsed_ms\n"
        "\"poly:0,0,1\",100,1/10,1317,1000,317,0,exact,0\n"
        "\"poly:0,0,1\",200,1/10,4812,4000,812,0,exact,0\n");
}

TEST_CASE("csv round-trips through read_scan_csv") {
  ScanTable t = sample_table();
  std::ostringstream os;
  write_scan_csv(os, t);
  std::istringstream is(os.str());
  ScanTable back = read_scan_csv(is);
  CHECK(back.curve_spec == t.curve_spec);
  CHECK(back.interval_text == t.interval_text);
  CHECK(back.config_digest == t.config_digest);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(back.rows[i].curve_id == t.rows[i].curve_id);
    CHECK(back.rows[i].Q == t.rows[i].Q);
    CHECK(back.rows[i].delta_text == t.rows[i].delta_text);
    CHECK(back.rows[i].delta == doctest::Approx(t.rows[i].delta));
    CHECK(back.rows[i].N == t.rows[i].N);
    CHECK(back.rows[i].main_term == t.rows[i].main_term);
    CHECK(back.rows[i].regime_ok == t.rows[i].regime_ok);
  }
}

TEST_CASE("read_scan_csv rejects malformed input") {
  std::istringstream bad_header("curve,Q\n\"x\",1\n");
  CHECK_THROWS_AS(read_scan_csv(bad_header), std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_scan_csv(empty), std::invalid_argument);
  std::istringstream short_row(
      "curve_id,Q,delta,N,main_term,residual,ambiguous,method,elapsed_ms\n"
      "only,three,fields\n");
  CHECK_THROWS_AS(read_scan_csv(short_row), std::invalid_argument);
  std::istringstream bad_delta(
      "curve_id,Q,delta,N,main_term,residual,ambiguous,method,elapsed_ms\n"
      "c,10,zap,1,1,0,0,fast,0\n");
  CHECK_THROWS_AS(read_scan_csv(bad_delta), std::invalid_argument);
}

TEST_CASE("jsonl lines all parse as json with the expected fields") {
  std::ostringstream os;
  write_scan_jsonl(os, sample_table());
  std::istringstream is(os.str());
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    auto j = nlohmann::json::parse(line);
    if (n == 0) {
      CHECK(j.at("curve") == "poly:0,0,1");
      CHECK(j.at("version") == "0.1.0");
      CHECK(j.at("config") == "00112233aabbccdd");
    } else {
      CHECK(j.at("Q").get<long long>() > 0);
      CHECK(j.at("delta") == "1/10");
      CHECK(j.at("regime_ok").get<bool>());
      CHECK(j.at("method") == "exact");
    }
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("quoted curve ids with commas survive the csv cycle") {
  ScanTable t = sample_table();
  t.rows[0].curve_id = "poly:1/2,-3,7";
  std::ostringstream os;
  write_scan_csv(os, t);
  std::istringstream is(os.str());
  ScanTable back = read_scan_csv(is);
  CHECK(back.rows[0].curve_id == "poly:1/2,-3,7");
}
