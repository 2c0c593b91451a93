#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "hmfa/io.hpp"
#include "hmfa/scan.hpp"

using namespace hmfa;
using namespace hmfa::io;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3/4") == synth::Rational{3, 4});
  CHECK(parse_rational("-1/3") == synth::Rational{-1, 3});
  CHECK(parse_rational("6/8") == synth::Rational{3, 4});
  CHECK(parse_rational("0.25") == synth::Rational{1, 4});
  CHECK(parse_rational("-0.5") == synth::Rational{-1, 2});
  CHECK(parse_rational("42") == synth::Rational{42, 1});
  CHECK(parse_rational("1.125") == synth::Rational{9, 8});
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(format_rational({3, 4}) == "3/4");
  CHECK(format_rational({-7, 1}) == "-7");
}

TEST_CASE("field file round trip") {
  FieldFile f;
  f.params = {2.0, 2.0, 2.0, 4};
  f.has_params = true;
  f.rule = "besov-saturating";
  f.j_min = 1;
  f.j_max = 18;
  f.overlays.push_back({3, 4, {1, 2, 5}, {-7, 8}});

  std::stringstream ss;
  write_field_file(ss, f);
  const std::string text = ss.str();
  CHECK(text.find("field-version 1") == 0);
  CHECK(text.find("rule besov-saturating") != std::string::npos);
  CHECK(text.find("overlay 3 4 1 2 5 -7/8") != std::string::npos);

  std::stringstream in(text);
  const FieldFile g = read_field_file(in);
  CHECK(g.rule == f.rule);
  CHECK(g.j_max == 18);
  REQUIRE(g.overlays.size() == 1);
  CHECK(g.overlays[0].value == synth::Rational{-7, 8});

  // the built fields agree coefficient-by-coefficient at random probes
  const auto a = build_field(f);
  const auto b = build_field(g);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    const int j = 1 + int(scan::mix(1, i) % 8);
    const int eps = 1 + int(scan::mix(2, i) % 15);
    const lattice::Idx3 k{std::int64_t(scan::mix(3, i) % (1u << j)),
                          std::int64_t(scan::mix(4, i) % (1u << j)),
                          std::int64_t(scan::mix(5, i) % (1u << (2 * j)))};
    CHECK(a.value(eps, j, k) == b.value(eps, j, k));  // bit-exact
  }
  CHECK(a.value(3, 4, {1, 2, 5}) == -0.875);
}

TEST_CASE("field rules from files") {
  {
    std::stringstream in("field-version 1\nsupport L0\njrange 1 10\nrule zero\n");
    const auto f = build_field(read_field_file(in));
    CHECK(f.kind() == synth::CoefficientField::Kind::Zero);
  }
  {
    std::stringstream in(
        "field-version 1\nparams 2 2 2\nsupport L0\njrange 1 12\n"
        "rule monofractal-round(zero,3)\n");
    const auto f = build_field(read_field_file(in));
    CHECK(f.kind() == synth::CoefficientField::Kind::MonofractalRound);
    CHECK(f.round_N() == 3);
    CHECK(f.value(1, 2, {0, 0, 0}) == doctest::Approx(std::exp2(-2.0 * 2 - 3)).epsilon(1e-15));
  }
  {
    std::stringstream in(
        "field-version 1\nparams 2 2 2\nsupport L0\njrange 1 12\n"
        "rule monofractal-round(besov-saturating,2)\n");
    const auto f = build_field(read_field_file(in));
    CHECK(f.kind() == synth::CoefficientField::Kind::MonofractalRound);
    CHECK(f.base() != nullptr);
  }
  {  // invalid params must be rejected on build (s <= Q/p)
    std::stringstream in(
        "field-version 1\nparams 0.5 2 2\nsupport L0\njrange 1 12\nrule besov-saturating\n");
    CHECK_THROWS(build_field(read_field_file(in)));
  }
  {  // missing version header
    std::stringstream in("rule zero\n");
    CHECK_THROWS_AS(read_field_file(in), std::invalid_argument);
  }
}

TEST_CASE("points files") {
  std::stringstream in("# probes\n0.1 0.2 0.3\n0.5 0.5 0.5\n");
  const auto pts = read_points(in);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == GPoint{0.1, 0.2, 0.3});
}

TEST_CASE("csv formatting") {
  CHECK(fmt(0.1) == "0.10000000000000001");  // 17 significant digits
  CHECK(fmt(1.0) == "1");
  CHECK(fmt(std::numeric_limits<double>::infinity()) == "inf");
  std::stringstream ss;
  CsvWriter csv(ss);
  csv.comment("meta");
  csv.header({"a", "b"});
  csv.row({1.5, 2.0});
  CHECK(ss.str() == "# meta\na,b\n1.5,2\n");
}
