#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "parrondo/output.hpp"
#include "parrondo/rate.hpp"

using namespace parrondo;

namespace {

OutputRecord sample_record() {
  OutputRecord rec;
  rec.command = "rate";
  rec.params = {{"r", "3"}, {"rho", "1/3"}, {"pattern", "ABB"}, {"start", "0"}};
  rec.exact = "2416/35601";
  rec.float_value = to_double(Rational(2416, 35601));
  rec.method = Method::Engine;
  rec.classification = "Case1";
  return rec;
}

}  // namespace

TEST_CASE("json output is schema-stable") {
  const std::string text = to_json(sample_record());
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.contains("command"));
  REQUIRE(j.contains("params"));
  REQUIRE(j.contains("exact"));
  REQUIRE(j.contains("float"));
  REQUIRE(j.contains("method"));
  REQUIRE(j.contains("classification"));
  CHECK(j["command"] == "rate");
  CHECK(j["params"]["pattern"] == "ABB");
  CHECK(j["exact"] == "2416/35601");
  CHECK(j["method"] == "engine");
  CHECK(j["classification"] == "Case1");
}

TEST_CASE("exact and float fields agree to 15 significant digits") {
  const OutputRecord rec = sample_record();
  const double from_exact = to_double(Rational(2416, 35601));
  REQUIRE(rec.float_value.has_value());
  CHECK(std::abs(*rec.float_value - from_exact) <= 1e-15 * std::abs(from_exact));
}

TEST_CASE("csv and text renderings carry the exact fraction") {
  const OutputRecord rec = sample_record();
  CHECK(to_csv(rec).find("2416/35601") != std::string::npos);
  CHECK(to_csv(rec).find("command,params,exact,float,method,classification") !=
        std::string::npos);
  CHECK(to_text(rec).find("2416/35601") != std::string::npos);
}

TEST_CASE("missing exact field renders as null in json") {
  OutputRecord rec = sample_record();
  rec.exact.reset();
  const auto j = nlohmann::json::parse(to_json(rec));
  CHECK(j["exact"].is_null());
}

TEST_CASE("six-significant-digit table formatting") {
  CHECK(format_six_sig(0.36) == "0.360000");
  CHECK(format_six_sig(9.0 / 25.0) == "0.360000");
  CHECK(format_six_sig(35.0 / 81.0) == "0.432099");
  CHECK(format_six_sig(0.9926708) == "0.992671");
  CHECK(format_six_sig(0.0345306) == "0.0345306");
  CHECK(format_six_sig(0.133369) == "0.133369");
}

TEST_CASE("format parsing and the environment default") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("text") == Format::Text);
  CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);

  setenv("PARRONDO_FORMAT", "json", 1);
  CHECK(default_format() == Format::Json);
  unsetenv("PARRONDO_FORMAT");
  CHECK(default_format() == Format::Text);
}
