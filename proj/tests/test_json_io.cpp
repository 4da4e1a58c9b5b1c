#include <doctest.h>

#include "pleat/json_io.hpp"

using namespace pleat;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidInput;
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("syntax errors carry a line and column") {
    std::string text = "{\n  \"genus\": 2,\n  \"cuffs\": [,]\n}";
    std::string msg = message_of([&] { parse_json_text(text, "pd.json"); });
    CHECK(msg.find("pd.json:3:") != std::string::npos);
    CHECK(kind_of([&] { parse_json_text(text); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_json_file("/nonexistent/file.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("complex numbers and matrices") {
    CHECK(complex_from_json(json(1.5), "x") == cplx(1.5, 0.0));
    CHECK(complex_from_json(json::array({1.0, -2.0}), "x") == cplx(1.0, -2.0));
    CHECK(kind_of([] { complex_from_json(json("a"), "x"); }) == ErrorKind::ParseError);
    Moebius m = moebius_from_json(json::parse("[2, 0, 0, 2]"), "m");
    CHECK(std::abs(m.det() - 1.0) < 1e-15);
    CHECK(message_of([] { moebius_from_json(json::parse("[1, 2, 2, 4]"), "matrices.x"); }).find("matrices.x") !=
          std::string::npos);
}

TEST_CASE("decomposition round trip") {
    PantsDecomposition pd = theta_decomposition();
    PantsDecomposition back = decomposition_from_json(to_json(pd));
    CHECK(back.cuff_count() == 3);
    for (int c = 0; c < 3; ++c) CHECK(back.cuffs[c].word == pd.cuffs[c].word);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) {
            CHECK(back.pants[j].ends[k].conjugator == pd.pants[j].ends[k].conjugator);
            CHECK(back.pants[j].ends[k].inverted == pd.pants[j].ends[k].inverted);
        }
    PantsDecomposition glued = decomposition_from_json(json::parse(R"({"genus": 2, "gluing": [[0,1,2],[0,1,2]]})"));
    CHECK(glued.surface.relators == pd.surface.relators);
}

TEST_CASE("second end of a cuff is inverted when none is marked") {
    json j = to_json(theta_decomposition());
    for (auto& p : j["pants"])
        for (auto& e : p["cuff_ends"]) e.erase("inverse");
    PantsDecomposition pd = decomposition_from_json(j);
    for (int k = 0; k < 3; ++k) {
        CHECK(!pd.pants[0].ends[k].inverted);
        CHECK(pd.pants[1].ends[k].inverted);
    }
}

TEST_CASE("schema errors name the field") {
    json j = to_json(theta_decomposition());
    j["pants"][1]["cuff_ends"][2]["cuff"] = "g9";
    std::string msg = message_of([&] { decomposition_from_json(j); });
    CHECK(msg.find("pants[1].cuff_ends[2]") != std::string::npos);
    CHECK(msg.find("g9") != std::string::npos);
    CHECK(kind_of([] { decomposition_from_json(json::parse(R"({"cuffs": []})")); }) == ErrorKind::ParseError);
}

TEST_CASE("representation round trip") {
    Representation rho = fenchel_nielsen_rep(theta_decomposition(), {2.0, 2.0, 2.0}, {cplx(0, 0.3), 0.0, 0.0});
    Representation back = representation_from_json(json::parse(to_json(rho).dump()));
    for (const auto& [k, m] : rho.gens) CHECK(projectively_equal(m, back.gens.at(k), 1e-14));
    CHECK(kind_of([] { representation_from_json(json::parse(R"({"matrices": {"X": [1,0,0,1]}})")); }) ==
          ErrorKind::ParseError);
}

TEST_CASE("inclusions") {
    BoundaryInclusion inc = inclusion_from_json(json::parse(R"({
        "manifold": {"generators": ["x", "y"], "relators": []},
        "boundary": [{"generator_words": ["x", "", "y", ""], "peripheral_words": ["a", "ac"]}]})"));
    CHECK(inc.components[0].genus == 2);
    CHECK(inc.peripheral_words() == std::vector<std::string>{"x", "xy"});
}

TEST_CASE("paths") {
    PathSpec bend = path_from_json(json::parse(R"({
        "recipe": "fenchel-nielsen", "lengths": [2, 2, 2], "twists": [0, 0, 0],
        "deform": [{"kind": "bend", "cuff": 0, "amount": 0.5}]})"));
    REQUIRE(bend.pd);
    Representation end = bend.path.at(1.0);
    Representation expect = fenchel_nielsen_rep(*bend.pd, {2.0, 2.0, 2.0}, {cplx(0, 0.5), 0.0, 0.0});
    for (const auto& [k, m] : end.gens) CHECK(projectively_equal(m, expect.gens.at(k), 1e-12));
    CHECK(!bend.path.is_loop());

    for (const char* kind : {"twist-circle", "conjugate-circle"}) {
        json j = json::parse(R"({"recipe": "fenchel-nielsen", "lengths": [2, 1.8, 2.2], "twists": [[0.3, 0.2], 0, 0]})");
        j["deform"] = json::array({{{"kind", kind}, {"cuff", 2}, {"amount", 0.3}}});
        CHECK(path_from_json(j).path.is_loop());
    }
    json retrace = json::parse(R"({"recipe": "fenchel-nielsen", "lengths": [2, 2, 2],
        "deform": [{"kind": "bend", "cuff": 1, "amount": 0.6, "profile": "retrace"}]})");
    CHECK(path_from_json(retrace).path.is_loop());

    PathSpec sampled = path_from_json(json{{"samples", json::array({
        json{{"t", 0.0}, {"matrices", to_json(expect)["matrices"]}},
        json{{"t", 1.0}, {"matrices", to_json(expect)["matrices"]}}})}});
    CHECK(sampled.path.is_loop());

    CHECK(kind_of([] { path_from_json(json::parse(R"({"recipe": "fenchel-nielsen", "lengths": [2, 2]})")); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] {
              path_from_json(json::parse(R"({"recipe": "fenchel-nielsen", "lengths": [2, 2, 2],
                  "deform": [{"kind": "stretch", "cuff": 0, "amount": 1}]})"));
          }) == ErrorKind::ParseError);
}
