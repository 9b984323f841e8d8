#include "davies/funcio.hpp"

#include "davies/reportjson.hpp"
#include "doctest.h"
#include "testutil.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using davies::builtin;
using davies::load_points;
using davies::load_table;
using davies::OrderedJson;
using davies::PairFunction;
using davies::Point;
using davies::PointList;
using davies::points_from_json_text;
using davies::Rational;
using davies::Representation;
using davies::representation_from_json;
using davies::representation_to_json;
using davies::validation_error;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  davies::write_text_file(path, content);
  return path;
}

PointList rational_points(const std::vector<std::pair<std::string, long>>& spec) {
  PointList points;
  for (const auto& [label, value] : spec) points.push_back(Point{label, Rational(value)});
  return points;
}

std::string table5_json() {
  Representation rep(PairFunction::from_table({{Rational(5)}}));
  rep.add_point("x0");
  return representation_to_json(rep);
}

template <typename Mutate>
std::optional<std::string> load_error(const std::string& json_text, Mutate&& mutate) {
  OrderedJson j = OrderedJson::parse(json_text);
  mutate(j);
  return testutil::thrown_message<validation_error>(
      [&] { representation_from_json(davies::to_json_string(j)); });
}

}  // namespace

TEST_CASE("builtin descriptors") {
  CHECK(builtin("product").descriptor() == "product");
  CHECK(builtin("zero").descriptor() == "zero");
  CHECK(builtin("e0").descriptor() == "e0");
  CHECK(builtin("randtable:7:3").descriptor() == "randtable:7:3");
  CHECK(builtin("expseries:4").descriptor() == "expseries:4");

  CHECK_THROWS_AS(builtin("frobnicate"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("product:extra"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("expseries"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("randtable:x:3"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("randtable:1:200"), std::invalid_argument);
  CHECK(testutil::message_mentions(
      testutil::thrown_message<std::invalid_argument>([] { builtin("frobnicate"); }),
      "unknown function descriptor 'frobnicate'"));
}

TEST_CASE("random tables regenerate exactly from their descriptor") {
  const PairFunction f = PairFunction::rand_table(42, 5);
  const PairFunction g = builtin(f.descriptor());
  PointList points;
  for (int i = 0; i < 5; ++i) points.push_back(Point{"p" + std::to_string(i), {}});
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(f.eval(points, i, j) == g.eval(points, i, j));
  }
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const Rational v = f.eval(points, i, j);
      CHECK(abs(numerator(v)) <= 9);
      CHECK(denominator(v) >= 1);
      CHECK(denominator(v) <= 9);
    }
  }
}

TEST_CASE("truncated exponential series values") {
  const PointList points{{"a", Rational(1, 2)}, {"b", Rational(2, 3)},
                         {"one", Rational(1)}};
  CHECK(PairFunction::exp_series(3).eval(points, 0, 1) == Rational(113, 81));
  CHECK(PairFunction::exp_series(2).eval(points, 2, 2) == Rational(5, 2));
  CHECK(PairFunction::exp_series(0).eval(points, 0, 1) == 1);

  testutil::SplitMix rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational x = testutil::rand_rational(rng, 2, 3);
    const Rational y = testutil::rand_rational(rng, 2, 3);
    const PointList pts{{"x", x}, {"y", y}};
    const std::size_t order = rng.below(12);
    CHECK(PairFunction::exp_series(order).eval(pts, 0, 1) == testutil::exp_taylor(x * y, order));
  }
}

TEST_CASE("the truncated series converges into the exponential enclosure") {
  testutil::SplitMix rng(62);
  // truncation bound for |z| <= 1 and 15 terms: 3 / 16!
  const Rational slack = Rational(3) / Rational(davies::Integer(20922789888000));
  for (int trial = 0; trial < 10; ++trial) {
    const Rational x = testutil::rand_rational(rng, 1, 2);
    const Rational y = testutil::rand_rational(rng, 1, 2);
    const Rational z = x * y;
    REQUIRE(abs(numerator(z)) <= denominator(z));  // |z| <= 1
    const PointList pts{{"x", x}, {"y", y}};
    const Rational truncated = PairFunction::exp_series(15).eval(pts, 0, 1);
    const auto enclosure = davies::exp_enclosure(z, Rational(1, 1000000));
    CHECK(truncated >= enclosure.lo - slack);
    CHECK(truncated <= enclosure.hi + slack);
  }
}

TEST_CASE("the equivalence indicator is an equivalence relation") {
  const std::vector<davies::E0Point> reps{
      davies::make_e0_point("", 0),   davies::make_e0_point("01", 0),
      davies::make_e0_point("1", 0),  davies::make_e0_point("", 1),
      davies::make_e0_point("10", 1), davies::make_e0_point("0", 1)};
  PointList points;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    points.push_back(Point{"p" + std::to_string(i), reps[i]});
  }
  const PairFunction f = PairFunction::e0_indicator();

  // differ only in the prefix: equivalent
  CHECK(f.eval(points, 1, 2) == 1);
  // different tails: inequivalent
  CHECK(f.eval(points, 0, 3) == 0);

  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(f.eval(points, i, i) == 1);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational vij = f.eval(points, i, j);
      CHECK((vij == 0 || vij == 1));
      CHECK(vij == f.eval(points, j, i));
      for (std::size_t k = 0; k < n; ++k) {
        if (vij == 1 && f.eval(points, j, k) == 1) CHECK(f.eval(points, i, k) == 1);
      }
    }
  }
}

TEST_CASE("binary-sequence points validate their pieces") {
  CHECK_THROWS_AS(davies::make_e0_point("01x", 0), std::invalid_argument);
  CHECK_THROWS_AS(davies::make_e0_point("", 2), std::invalid_argument);
  CHECK(davies::make_e0_point("0101", 1).prefix == "0101");
}

TEST_CASE("table files load as square rational matrices") {
  const auto path = temp_file("davies_t1.csv", "1,2\n-3/4, 5/6 \n");
  const PairFunction f = load_table(path);
  const PointList points = rational_points({{"a", 0}, {"b", 0}});
  CHECK(f.eval(points, 0, 0) == 1);
  CHECK(f.eval(points, 0, 1) == 2);
  CHECK(f.eval(points, 1, 0) == Rational(-3, 4));
  CHECK(f.eval(points, 1, 1) == Rational(5, 6));
  CHECK(f.table_backed());

  SUBCASE("carriage returns and blank lines are tolerated") {
    const auto crlf = temp_file("davies_t2.csv", "1,2\r\n\r\n3,4\r\n");
    const PairFunction g = load_table(crlf);
    CHECK(g.eval(points, 1, 1) == 4);
  }

  SUBCASE("ragged and non-square tables are rejected") {
    CHECK(testutil::message_mentions(
        testutil::thrown_message<validation_error>(
            [] { load_table(temp_file("davies_t3.csv", "1,2\n3\n")); }),
        "table row 1 has 1 entries, expected 2"));
    CHECK_THROWS_AS(load_table(temp_file("davies_t4.csv", "1,2,3\n4,5,6\n")),
                    validation_error);
  }

  SUBCASE("bad cells are rejected") {
    CHECK_THROWS_AS(load_table(temp_file("davies_t5.csv", "1,junk\n3,4\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_table(temp_file("davies_t6.csv", "1,1/0\n3,4\n")),
                    std::invalid_argument);
  }

  SUBCASE("missing files are named") {
    CHECK(testutil::message_mentions(
        testutil::thrown_message<validation_error>(
            [] { load_table("/nonexistent/davies.csv"); }),
        "cannot open"));
  }
}

TEST_CASE("point files carry every payload kind") {
  const std::string text = R"([
    {"label": "a", "payload": "3/4"},
    {"label": "b", "payload": {"prefix": "01", "tail": 1}},
    {"label": "c", "payload": null},
    {"label": "d"}
  ])";
  const PointList points = points_from_json_text(text);
  REQUIRE(points.size() == 4);
  CHECK(std::get<Rational>(points[0].payload) == Rational(3, 4));
  CHECK(std::get<davies::E0Point>(points[1].payload) ==
        davies::make_e0_point("01", 1));
  CHECK(std::holds_alternative<std::monostate>(points[2].payload));
  CHECK(std::holds_alternative<std::monostate>(points[3].payload));

  const auto path = temp_file("davies_p1.json", text);
  CHECK(load_points(path).size() == 4);
}

TEST_CASE("point files reject malformed entries by name") {
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>([] { points_from_json_text("{}"); }),
      "must contain a JSON array"));
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>(
          [] { points_from_json_text(R"([{"payload": "1"}])"); }),
      "each point needs a string label"));
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>(
          [] { points_from_json_text(R"([{"label": ""}])"); }),
      "empty point label"));
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>(
          [] { points_from_json_text(R"([{"label": "a", "payload": 3}])"); }),
      "point 'a'"));
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>(
          [] { points_from_json_text(R"([{"label": "b", "payload": {"prefix": 1, "tail": 0}}])"); }),
      "point 'b'"));
  CHECK_THROWS_AS(
      points_from_json_text(R"([{"label": "c", "payload": {"prefix": "0", "tail": 2}}])"),
      std::invalid_argument);
  CHECK_THROWS_AS(points_from_json_text(R"([{"label": "d", "payload": "1/0"}])"),
                  std::invalid_argument);
  CHECK(testutil::message_mentions(
      testutil::thrown_message<validation_error>([] { points_from_json_text("[{"); }),
      "not valid JSON"));
}

TEST_CASE("representations round-trip byte-identically") {
  SUBCASE("inline table") {
    const std::string text = table5_json();
    Representation loaded = representation_from_json(text);
    CHECK(representation_to_json(loaded) == text);
    CHECK(loaded.point_count() == 1);
    CHECK(loaded.pair_cutoff(0, 0) == 4);
  }

  SUBCASE("rational payloads over the product function") {
    Representation rep(PairFunction::product());
    rep.add_point("a", Rational(2));
    rep.add_point("b", Rational(-7, 3));
    const std::string text = representation_to_json(rep);
    Representation loaded = representation_from_json(text);
    CHECK(representation_to_json(loaded) == text);
  }

  SUBCASE("binary-sequence payloads") {
    Representation rep(PairFunction::e0_indicator());
    rep.add_point("u", davies::make_e0_point("01", 0));
    rep.add_point("v", davies::make_e0_point("", 1));
    const std::string text = representation_to_json(rep);
    Representation loaded = representation_from_json(text);
    CHECK(representation_to_json(loaded) == text);
  }

  SUBCASE("descriptor-backed functions carry no inline table") {
    Representation rep(PairFunction::rand_table(9, 2));
    rep.add_point("x0");
    rep.add_point("x1");
    const std::string text = representation_to_json(rep);
    const OrderedJson j = OrderedJson::parse(text);
    CHECK(j["function"]["descriptor"] == "randtable:9:2");
    CHECK(!j["function"].contains("table"));
    Representation loaded = representation_from_json(text);
    CHECK(representation_to_json(loaded) == text);
  }

  SUBCASE("empty representation") {
    Representation rep(PairFunction::product());
    const std::string text = representation_to_json(rep);
    Representation loaded = representation_from_json(text);
    CHECK(loaded.point_count() == 0);
    CHECK(representation_to_json(loaded) == text);
  }

  SUBCASE("dump and load through a file") {
    Representation rep(PairFunction::from_table({{Rational(5)}}));
    rep.add_point("x0");
    const auto path = fs::temp_directory_path() / "davies_rep_roundtrip.json";
    davies::dump_representation(rep, path);
    Representation loaded = davies::load_representation(path);
    CHECK(representation_to_json(loaded) == davies::read_text_file(path));
  }
}

TEST_CASE("serialized bytes are independent of the evaluation history") {
  Representation cold(PairFunction::from_table({{Rational(5)}}));
  cold.add_point("x0");

  Representation hot(PairFunction::from_table({{Rational(5)}}));
  hot.add_point("x0");
  hot.verify_all(hot.default_stress_horizon());
  hot.check_S(4);
  hot.eval_g(0, 300);

  CHECK(representation_to_json(cold) == representation_to_json(hot));
}

TEST_CASE("tampered representations are rejected by name") {
  const std::string text = table5_json();

  SUBCASE("edited value") {
    const auto message = load_error(text, [](OrderedJson& j) {
      j["h_rows"][0]["values"][0] = "3";
    });
    CHECK(testutil::message_mentions(message, "h_rows[0] value at index 0"));
    CHECK(testutil::message_mentions(message, "construction determinism violated"));
  }

  SUBCASE("edited milestone") {
    const auto message = load_error(text, [](OrderedJson& j) {
      j["g_rows"][0]["milestones"][0] = 2;
    });
    CHECK(testutil::message_mentions(message, "g_rows[0] milestone 0"));
  }

  SUBCASE("edited cutoff") {
    const auto message = load_error(text, [](OrderedJson& j) {
      j["cutoffs"][0][0] = 3;
    });
    CHECK(testutil::message_mentions(message, "cutoffs differ from the reconstruction"));
  }

  SUBCASE("edited row label") {
    const auto message = load_error(text, [](OrderedJson& j) {
      j["g_rows"][0]["label"] = "gX";
    });
    CHECK(testutil::message_mentions(message, "g_rows[0] label differs"));
  }

  SUBCASE("unrecognized top-level content") {
    const auto message = load_error(text, [](OrderedJson& j) { j["extra"] = 1; });
    CHECK(testutil::message_mentions(message, "unrecognized or reordered content"));
  }

  SUBCASE("wrong format tag") {
    const auto message = load_error(text, [](OrderedJson& j) { j["format"] = "davies.rep/9"; });
    CHECK(testutil::message_mentions(message, "format tag"));
  }

  SUBCASE("builtin function with a smuggled table") {
    Representation rep(PairFunction::product());
    rep.add_point("a", Rational(1));
    const auto message = load_error(representation_to_json(rep), [](OrderedJson& j) {
      j["function"]["table"] = OrderedJson::array();
    });
    CHECK(testutil::message_mentions(message, "must not carry an inline table"));
  }

  SUBCASE("table-backed function without its table") {
    const auto message = load_error(text, [](OrderedJson& j) {
      j["function"].erase("table");
    });
    CHECK(testutil::message_mentions(message, "missing its table"));
  }

  SUBCASE("missing sections") {
    CHECK(testutil::message_mentions(
        load_error(text, [](OrderedJson& j) { j.erase("points"); }), "missing points"));
    CHECK(testutil::message_mentions(
        load_error(text, [](OrderedJson& j) { j.erase("g_rows"); }),
        "missing g_rows, h_rows, or cutoffs"));
  }

  SUBCASE("invalid JSON") {
    CHECK(testutil::message_mentions(
        testutil::thrown_message<validation_error>(
            [] { representation_from_json("{not json"); }),
        "not valid JSON"));
  }

  SUBCASE("duplicate point labels") {
    Representation rep(PairFunction::product());
    rep.add_point("a", Rational(1));
    OrderedJson j = OrderedJson::parse(representation_to_json(rep));
    j["points"].push_back(j["points"][0]);
    const auto message = testutil::thrown_message<std::invalid_argument>(
        [&] { representation_from_json(davies::to_json_string(j)); });
    CHECK(testutil::message_mentions(message, "duplicate point label 'a'"));
  }
}
