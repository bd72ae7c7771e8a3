#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gurarii/errors.hpp"
#include "gurarii/io.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;

namespace {

const char* kIdentity = R"({
  "spaces": {"X": {"dim": 2, "ball": {"dim": 2, "hrep": [["1", "0"], ["0", "1"]]}}},
  "maps": {"id": {"matrix": [["1", "0"], ["0", "1"]], "domain": "X", "codomain": "X"}}
})";

}  // namespace

TEST_CASE("rationals") {
  CHECK(io::rat_from_json(io::Json("-6/4"), "/x") == q("-3/2"));
  CHECK(io::to_json(q("-3/2")) == "-3/2");
  CHECK(io::to_json(Rat(4)) == "4");
  CHECK_THROWS_AS(io::rat_from_json(io::Json("3/0"), "/x"), ParseError);
  CHECK_THROWS_AS(io::rat_from_json(io::Json("1.5"), "/x"), ParseError);
  CHECK_THROWS_AS(io::rat_from_json(io::Json(true), "/x"), ParseError);
  try {
    io::instance_from_json(io::parse(R"({"maps": {"f": {"matrix": [["3/0"]], "domain": {"dim": 1,
      "ball": {"dim": 1, "vrep": [["1"]]}}, "codomain": {"dim": 1, "ball": {"dim": 1, "vrep": [["1"]]}}}}})", "t"));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/maps/f/matrix/0/0") != std::string::npos);
  }
}

TEST_CASE("parse errors carry a position") {
  try {
    io::parse("{\"spaces\": [1, }", "broken.json");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.json: byte") == 0);
  }
}

TEST_CASE("balls and spaces") {
  CHECK_THROWS_AS(io::ball_from_json(io::parse(R"({"dim": 2, "vrep": [["1", "0"], ["1"]]})", "t"), "/b"),
                  DimensionError);
  CHECK_THROWS_AS(io::space_from_json(io::parse(R"({"dim": 3, "ball": {"dim": 2, "vrep": [["1", "0"]]}})", "t"),
                                      "/s"),
                  DimensionError);
  const Space s = io::space_from_json(io::parse(R"({"dim": 2, "ball": {"dim": 2, "vrep": [["1", "0"], ["0", "1"]]}})",
                                                "t"),
                                      "/s");
  CHECK(s == l_one(2));
  const io::Json j = io::to_json(s);
  CHECK(io::space_from_json(j, "/s") == s);
  CHECK(io::dump(io::to_json(io::space_from_json(j, "/s"))) == io::dump(j));
}

TEST_CASE("instances") {
  const io::Instance inst = io::instance_from_json(io::parse(kIdentity, "t"));
  CHECK(inst.map("id") == LinMap::identity(l_inf(2)));
  const std::string once = io::dump(io::to_json(inst));
  CHECK(once.find("\"domain\": \"X\"") != std::string::npos);
  const std::string twice = io::dump(io::to_json(io::instance_from_json(io::parse(once, "t"))));
  CHECK(once == twice);
  CHECK_THROWS_AS(io::instance_from_json(io::parse(R"({"maps": {"f": {"matrix": [], "domain": "Z",
    "codomain": "Z"}}})", "t")), ParseError);
  CHECK_THROWS_AS(io::instance_from_json(io::parse(R"({"extra": 1})", "t")), ParseError);
  CHECK_THROWS_AS(inst.map("g"), PreconditionError);
  // References resolved by the caller.
  const io::Instance r = io::instance_from_json(
      io::parse(R"({"maps": {"x": {"matrix": [["1"], ["0"]], "domain": {"dim": 1, "ball": {"dim": 1,
        "vrep": [["1"]]}}, "codomain": "@U"}}})", "t"),
      {{"@U", l_inf(2)}});
  CHECK(r.map("x").codomain() == l_inf(2));
  CHECK(io::to_json(r, {{"@U", l_inf(2)}})["maps"]["x"]["codomain"] == "@U");
}

TEST_CASE("chain files") {
  const Chain c = build_chain({12, 4, 3});
  const std::string text = io::dump(io::to_json(c));
  const Chain back = io::chain_from_json(io::parse(text, "chain"));
  CHECK(back.size() == c.size());
  CHECK(io::dump(io::to_json(back)) == text);
  CHECK(verify_chain(back).pass());
  CHECK(io::dump(io::to_json(build_chain({12, 4, 3}))) == text);
}

TEST_CASE("reports") {
  Report r;
  r.le("norm", "||T|| <= 1", q("1/2"), Rat(1));
  r.holds("flag", "it holds", false);
  const io::Json j = io::to_json(r);
  CHECK(j["pass"] == false);
  CHECK(j["checks"][0]["computed"] == "1/2");
  CHECK(j["checks"][0]["verdict"] == "pass");
  CHECK(j["checks"][1]["verdict"] == "fail");
}

TEST_CASE("shipped data files round-trip byte for byte") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GURARII_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    INFO(entry.path().string());
    const io::Instance inst = io::instance_from_json(io::parse(text.str(), entry.path().string()));
    CHECK(io::dump(io::to_json(inst)) == text.str());
    ++seen;
  }
  CHECK(seen >= 5);
}
