#include "catch_amalgamated.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/report.hpp"

#include <sstream>

using namespace hydrod;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

std::string render(const Report &r, Format f) {
  std::ostringstream os;
  write(os, r, f);
  return os.str();
}

Report sampleReport() {
  Report r;
  r.kind = "sample";
  r.columns = {{"n", ColumnKind::Integer},
               {"x", ColumnKind::Real},
               {"label", ColumnKind::Text},
               {"y", ColumnKind::Measured}};
  r.rows.push_back({std::int64_t{1}, 0.1 + 0.2, std::string("a,b"), Measured{1.0 / 3.0, 1e-9}});
  r.rows.push_back({std::int64_t{2}, -1e-300, std::string("plain"), Failed{"SolveFailed: no"}});
  r.notes = {"first note"};
  return r;
}

} // namespace

TEST_CASE("json round trip is exact") {
  const Report r = sampleReport();
  const auto text = toJson(r).dump();
  const Report back = reportFromJson(nlohmann::json::parse(text));
  CHECK(back == r);
  CHECK(toJson(r)["schema_version"] == kReportSchemaVersion);
  CHECK(toJson(r)["rows"][0]["y"]["uncertainty"] == 1e-9);
  CHECK(toJson(r)["rows"][1]["y"]["error"] == "SolveFailed: no");

  auto bad = toJson(r);
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(reportFromJson(bad), InvalidArgument);
}

TEST_CASE("json round trip of a computed report") {
  RunConfig c;
  c.command = Command::Solve;
  c.n = 3;
  c.ell = 2;
  const Report r = run(c);
  CHECK(reportFromJson(nlohmann::json::parse(render(r, Format::Json))) == r);
}

TEST_CASE("csv layout") {
  const Report r = sampleReport();
  const auto csv = render(r, Format::Csv);
  CHECK_THAT(csv, StartsWith("n,x,label,y,y_uncertainty\n"));
  CHECK_THAT(csv, ContainsSubstring("1,0.3,\"a,b\",0.333333333333,1e-09\n"));
  CHECK_THAT(csv, ContainsSubstring("ERROR(SolveFailed: no)"));
  CHECK(r.hasFailures());
  CHECK_THAT(render(r, Format::Text), ContainsSubstring("label"));
}

TEST_CASE("output is deterministic") {
  RunConfig c;
  c.command = Command::Table1;
  const Report a = run(c), b = run(c);
  CHECK(render(a, Format::Csv) == render(b, Format::Csv));
  CHECK(render(a, Format::Json) == render(b, Format::Json));
  REQUIRE(a.rows.size() == 10);
  CHECK(a.rows[0][0] == Cell{std::int64_t{1}});
  CHECK(a.rows[9][1] == Cell{std::int64_t{3}});
}

TEST_CASE("validate rejects out-of-range configurations") {
  RunConfig ok;
  CHECK_NOTHROW(validate(ok));
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.ell = 1; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.epsilon = 0.5; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.tol = 1e-13; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.mu = -1.0; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.maxOrder = 500; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) { c.epsGrid = {0.001, 0.002}; })), InvalidArgument);
  CHECK_THROWS_AS(validate(bad([](RunConfig &c) {
                    c.command = Command::Vp2;
                    c.epsilon = 0.3;
                  })),
                  InvalidArgument);
}

TEST_CASE("command and format names") {
  for (auto c : {Command::Solve, Command::Table1, Command::Table2, Command::Kappa, Command::Vp2,
                 Command::Extrapolate})
    CHECK(parseCommand(commandName(c)) == c);
  CHECK(parseFormat("csv") == Format::Csv);
  CHECK_THROWS_AS(parseCommand("plot"), InvalidArgument);
  CHECK_THROWS_AS(parseFormat("xml"), InvalidArgument);
}

TEST_CASE("shootingOptions carries the solver fields") {
  RunConfig c;
  c.tol = 1e-10;
  c.rhoMax = 90;
  c.maxOrder = 60;
  const auto o = shootingOptions(c);
  CHECK(o.nbarTolerance == 1e-10);
  CHECK(o.rhoMax == 90);
  CHECK(o.maxSeriesOrder == 60);
}

TEST_CASE("failed computations become failed cells") {
  RunConfig c;
  c.command = Command::Solve;
  c.n = 1;
  c.maxOrder = 2; // series cannot converge at the matching radius
  CHECK_THROWS_AS(run(c), TruncationNotConverged);
  c.command = Command::Table1;
  const Report r = run(c);
  CHECK(r.hasFailures());
  CHECK(std::holds_alternative<Failed>(r.rows[0][3]));
}
