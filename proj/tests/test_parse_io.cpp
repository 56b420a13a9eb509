#include "paclab/io/csv.hpp"
#include "paclab/io/json_report.hpp"
#include "paclab/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

using namespace paclab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("number specs cover fractions, decimals and streams") {
    REQUIRE(parse_real("3/4").as_rational() == Rational(3, 4));
    REQUIRE(parse_real("0.25").as_rational() == Rational(1, 4));
    REQUIRE(parse_real("0.11").as_rational() == Rational(11, 100));
    REQUIRE(parse_real("-1/2").as_rational() == Rational(-1, 2));

    SECTION("the short name is the base-4 champernowne constant") {
        ParsedReal c = parse_real_spec("c");
        REQUIRE(c.stream.has_value());
        REQUIRE(c.stream->base() == 4);
        REQUIRE(c.stream->prefix(3) == std::vector<int>{1, 2, 3});
    }

    SECTION("explicit bases and offsets") {
        ParsedReal c10 = parse_real_spec("champernowne(10)");
        REQUIRE(c10.stream->base() == 10);
        REQUIRE(decimal_string(parse_real("champernowne(4)+1/2"), 6) == "0.926111");
        REQUIRE(decimal_string(parse_real("champernowne(4)-1/4"), 6) == "0.176111");
    }

    SECTION("malformed specs are rejected") {
        REQUIRE_THROWS_AS(parse_real("abc"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_real(""), std::invalid_argument);
        REQUIRE_THROWS(parse_real("5/0"));
    }
}

TEST_CASE("triples, states and lists parse exactly") {
    auto t = parse_real_triple("1,1,1");
    REQUIRE(t[0].as_rational() == Rational(1));
    REQUIRE(t[2].as_rational() == Rational(1));
    REQUIRE_THROWS_AS(parse_real_triple("1,2"), std::invalid_argument);

    SimplexState v = parse_state("0,1/3,2/3");
    REQUIRE(v == SimplexState(Rational(0), Rational(1, 3), Rational(2, 3)));
    REQUIRE_THROWS_AS(parse_state("1/2,1/2,1/2"), std::invalid_argument);

    REQUIRE(parse_rational_list("0.11,0.8") ==
            std::vector<Rational>{Rational(11, 100), Rational(4, 5)});
}

TEST_CASE("map specs build maps with alphas or raw intercepts") {
    PiecewiseAffineContraction f = parse_map_spec("beta=2,sign=+,bp=0:1/2:1,alpha=1:2");
    REQUIRE(f.beta() == BigInt(2));
    REQUIRE(f.slope_sign() == 1);
    REQUIRE(f.branch_count() == 2);
    REQUIRE(f.evaluate(Rational(1, 4)) == Rational(1, 8));
    REQUIRE(f.evaluate(Rational(3, 4)) == Rational(7, 8));

    PiecewiseAffineContraction g =
        parse_map_spec("beta=2,sign=-,bp=0:1/2:1,intercepts=3/4:3/4");
    REQUIRE(g.evaluate(Rational(0)) == Rational(3, 4));
    REQUIRE(g.evaluate(Rational(1, 2)) == Rational(1, 2));

    SECTION("bad specs are rejected") {
        REQUIRE_THROWS_AS(parse_map_spec("beta=2,sign=+,bp=0:1/2:1"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_map_spec("beta=2,sign=*,bp=0:1/2:1,alpha=1:2"),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(parse_map_spec("sign=+,bp=0:1/2:1,alpha=1:2"), std::invalid_argument);
    }
}

TEST_CASE("json rendering keeps parameters exact") {
    REQUIRE(json_of(Rational(1, 6)).get<std::string>() == "1/6");
    REQUIRE(json_of(Rational(2)).get<std::string>() == "2");
    REQUIRE(json_of(Rational(-5, 3)).get<std::string>() == "-5/3");

    Json stream = json_of(champernowne_stream(4), 6);
    REQUIRE(stream["base"].get<int>() == 4);
    REQUIRE(stream["generator"].get<std::string>() == "champernowne(4)");
    REQUIRE(stream["prefix"].get<std::string>() == "123101");

    Json state = json_of(SimplexState(Rational(0), Rational(1, 3), Rational(2, 3)));
    REQUIRE(state.is_array());
    REQUIRE(state[1].get<std::string>() == "1/3");

    Json list = json_of(std::vector<Rational>{Rational(1, 9), Rational(4, 9)});
    REQUIRE(list.dump() == R"(["1/9","4/9"])");
}

TEST_CASE("reports and trajectories are written atomically") {
    std::string json_path = "paclab_io_report.json";
    std::string csv_path = "paclab_io_rows.csv";

    SECTION("write_json emits two-space indented UTF-8 with a trailing newline") {
        Json j;
        j["p"] = json_of(Rational(1, 3));
        write_json(json_path, j);
        std::string text = slurp(json_path);
        REQUIRE(text == "{\n  \"p\": \"1/3\"\n}\n");
        Json back = Json::parse(text);
        REQUIRE(back["p"].get<std::string>() == "1/3");
        std::remove(json_path.c_str());
    }

    SECTION("atomic_write_text replaces content wholesale") {
        atomic_write_text(json_path, "first\n");
        atomic_write_text(json_path, "second\n");
        REQUIRE(slurp(json_path) == "second\n");
        std::remove(json_path.c_str());
    }

    SECTION("trajectory csv has the fixed header and truncated decimals") {
        std::vector<SampleRow> rows{
            {Rational(0), Rational(0), Rational(1, 3), Rational(2, 3), 3},
            {Rational(3, 2), Rational(1, 4), Rational(5, 12), Rational(1, 3), 3}};
        write_trajectory_csv(csv_path, rows, 6);
        std::string text = slurp(csv_path);
        REQUIRE(text ==
                "t,v1,v2,v3,served_tank\n"
                "0.000000,0.000000,0.333333,0.666666,3\n"
                "1.500000,0.250000,0.416666,0.333333,3\n");
        std::remove(csv_path.c_str());
    }

    REQUIRE(csv_decimal(Rational(1, 3), 12) == "0.333333333333");
    REQUIRE(csv_decimal(Rational(2, 3), 3) == "0.666");
    REQUIRE(csv_decimal(Rational(1, 4), 3) == "0.250");
}
