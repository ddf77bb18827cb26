#include "doctest.h"

#include "d4lab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace d4lab;

TEST_CASE("config validation") {
  ExperimentConfig ok;
  CHECK_NOTHROW(validate_config(ok));
  ExperimentConfig c9 = ok;
  c9.q = 9;
  CHECK_NOTHROW(validate_config(c9));
  ExperimentConfig bad = ok;
  bad.q = 4;
  CHECK_THROWS_AS(validate_config(bad), Error);
  bad = ok;
  bad.q = 15;
  CHECK_THROWS_AS(validate_config(bad), Error);
  bad = ok;
  bad.alpha = 0.7;
  bad.beta = 0.3;
  CHECK_THROWS_AS(validate_config(bad), Error);
  bad = ok;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(validate_config(bad), Error);
  bad = ok;
  bad.format = "xml";
  CHECK_THROWS_AS(validate_config(bad), Error);
}

TEST_CASE("lpoly record round trip is exact") {
  const FieldCtx* F = FieldCtx::get(3);
  QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, "0,2,0,1"));
  LPolynomial P = zeta_numerator(K);
  std::string key = field_key(K) + "|zeta";
  std::string line = lpoly_record(key, P);
  auto [k2, Q] = parse_lpoly_record(line);
  CHECK(k2 == key);
  CHECK(Q.q == P.q);
  CHECK(Q.N == P.N);
  REQUIRE(Q.b.size() == P.b.size());
  for (size_t i = 0; i < P.b.size(); ++i) CHECK(Q.b[i] == P.b[i]);
  REQUIRE(Q.s.size() == P.s.size());
  for (size_t i = 0; i < P.s.size(); ++i) CHECK(Q.s[i] == P.s[i]);
  REQUIRE(Q.angles.size() == P.angles.size());
  for (size_t i = 0; i < P.angles.size(); ++i) CHECK(Q.angles[i] == P.angles[i]);
  // serialization idempotent
  CHECK(lpoly_record(k2, Q) == line);
  // unknown schema version rejected
  CHECK_THROWS_AS(parse_lpoly_record("{\"v\":99}"), Error);
}

TEST_CASE("cache round trip on disk") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "d4lab-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const FieldCtx* F = FieldCtx::get(3);
  QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, "1,0,1"));
  QuadElement b = make_quad_element(poly_T(F), poly_const(F, 1), poly_const(F, 1));
  LPolynomial P = relative_lpoly(K, b);
  {
    LPolyCache cache(dir.string());
    CHECK(!cache.lookup("k1").has_value());
    cache.store("k1", P);
    CHECK(cache.lookup("k1").has_value());
  }
  LPolyCache reread(dir.string());
  auto hit = reread.lookup("k1");
  REQUIRE(hit.has_value());
  CHECK(hit->N == P.N);
  for (size_t i = 0; i < P.b.size(); ++i) CHECK(hit->b[i] == P.b[i]);
  fs::remove_all(dir);
}

TEST_CASE("family snapshot json lines") {
  const FieldCtx* F = FieldCtx::get(3);
  auto fam = enumerate_family(F, 2);
  REQUIRE(!fam.empty());
  std::ostringstream os;
  write_family_snapshot(os, fam, 3);
  std::istringstream is(os.str());
  std::string line;
  size_t cnt = 0;
  while (std::getline(is, line)) {
    ++cnt;
    CHECK(line.find("\"q\":3") != std::string::npos);
    CHECK(line.find("\"type\":\"D4\"") != std::string::npos);
    CHECK(line.find("\"Kflip\"") != std::string::npos);
  }
  CHECK(cnt == fam.size());
}

TEST_CASE("csv reports") {
  DensityRow r;
  r.q = 3;
  r.n = 4;
  r.family_size = 10;
  r.mean_D = 0.5;
  r.prediction = 0.5;
  std::string csv = density_report_csv({r});
  CHECK(csv.find("q,n,alpha,beta,family_size,mean_D,prediction,discrepancy,"
                 "nonvanishing_proportion\n") == 0);
  CHECK(csv.find("3,4,0,1,10,0.5,0.5,0,0") != std::string::npos);
  std::map<int, unsigned long long> h = {{0, 7}, {2, 3}};
  CHECK(histogram_csv(h) == "multiplicity,count\n0,7\n2,3\n");
  std::string js = density_report_json({r});
  CHECK(js.find("\"family_size\": 10") != std::string::npos);
}
