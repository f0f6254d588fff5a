#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altknot/codes.hpp"

#include <random>

using namespace altknot;

TEST_CASE("labels parse and render") {
    auto l = parse_label("-2_3^1");
    CHECK(l.size == 2);
    CHECK(l.index == 3);
    CHECK(l.sign == Sign::minus);
    CHECK(l.position == 1);
    CHECK(render_label(l) == "-2_3^1");
    CHECK(render_label(parse_label("1_4")) == "1_4");
    CHECK_THROWS_AS(parse_label("2-3"), CodeError);
    CHECK_THROWS_AS(parse_label("0_1"), CodeError);
    CHECK_THROWS_AS(parse_label("2_1^x"), CodeError);
}

TEST_CASE("label order puts signed size first") {
    CHECK(parse_label("-2_1^0") < parse_label("1_1^0"));
    CHECK(parse_label("2_1^0") < parse_label("2_2^0"));
    CHECK(parse_label("2_1^0") < parse_label("2_1^1"));
    CHECK(parse_label("-3_1^0") < parse_label("-2_1^0"));
}

TEST_CASE("group code validation") {
    CHECK_NOTHROW(parse_group_code("-2_1,-2_2,2_3,-2_2,2_4,-2_1,3_1,2_3,2_4,3_1"));
    CHECK_THROWS_AS(parse_group_code("3_1"), CodeError);
    CHECK_THROWS_AS(parse_group_code("3_1,-3_1"), CodeError);
    CHECK_THROWS_AS(parse_group_code("3_1^0,3_1^0"), CodeError);
    CHECK_THROWS_AS(parse_group_code(""), CodeError);
    CHECK_THROWS_AS(parse_master_code("3_1,3_1"), CodeError);
    CHECK_THROWS_AS(parse_master_code("2_1^0,2_1^0,2_1^2,2_1^2"), CodeError);
}

TEST_CASE("parse_code picks the kind from the labels") {
    CHECK(std::holds_alternative<GroupCode>(parse_code("3_1,3_1")));
    CHECK(std::holds_alternative<MasterGroupCode>(parse_code("3_1^0,3_1^0")));
}

TEST_CASE("crossing and group counts") {
    auto gc = parse_group_code("-2_1,-2_2,2_3,-2_2,2_4,-2_1,3_1,2_3,2_4,3_1");
    CHECK(crossing_count(gc.entries) == 11);
    CHECK(group_count(gc.entries) == 5);
}

TEST_CASE("expansion follows the sign convention") {
    CHECK(render(expand_to_gauss(parse_group_code("3_1,3_1"))) == "1,2,3,1,2,3");
    CHECK(render(expand_to_gauss(parse_group_code("-2_1,-2_2,-2_1,-2_2"))) == "1,2,3,4,2,1,4,3");
    auto g = expand_to_gauss(parse_group_code("-2_1,-2_2,2_3,-2_2,2_4,-2_1,3_1,2_3,2_4,3_1"));
    CHECK(g.crossings() == 11);
    CHECK(is_realizable(g));
}

TEST_CASE("traced expansion remembers groups") {
    auto t = expand_traced(parse_group_code("-2_1,1_1,-2_1,1_1"));
    REQUIRE(t.gauss.crossings() == 3);
    int twos = 0;
    for (int c = 1; c <= 3; ++c) twos += t.group_of[c] == GroupId{2, 1};
    CHECK(twos == 2);
}

TEST_CASE("twist regions from crossing sequences") {
    CHECK(render(groups_from_gauss(GaussCode{{1, 2, 3, 1, 2, 3}})) == "3_1,3_1");
    auto gc = parse_group_code("-2_1,-2_2,2_3,-2_2,2_4,-2_1,3_1,2_3,2_4,3_1");
    auto back = groups_from_gauss(expand_to_gauss(gc));
    CHECK(crossing_count(back.entries) == 11);
    CHECK(group_count(back.entries) == 5);
}

TEST_CASE("DT codes") {
    CHECK(render(dt_code(GaussCode{{1, 2, 3, 1, 2, 3}})) == "4,6,2");
    CHECK(render(dt_code(GaussCode{{1, 2, 3, 4, 2, 1, 4, 3}})) == "4,6,8,2");
    auto g = gauss_from_dt(parse_dt("4,6,2"));
    CHECK(render(dt_code(g)) == "4,6,2");
    CHECK_THROWS_AS(parse_dt("4,4,2"), CodeError);
    CHECK_THROWS_AS(parse_dt("3,6,2"), CodeError);
}

TEST_CASE("canonical DT ignores start and direction") {
    GaussCode g{{1, 2, 3, 4, 2, 1, 4, 3}};
    const auto canon = dt_code(g);
    std::mt19937 rng(7);
    for (int k = 0; k < 20; ++k) {
        auto s = g.seq;
        std::rotate(s.begin(), s.begin() + (rng() % s.size()), s.end());
        if (rng() % 2) std::reverse(s.begin(), s.end());
        CHECK(dt_code(normalize_gauss(GaussCode{s})) == canon);
    }
}

TEST_CASE("realizability") {
    CHECK(is_realizable(GaussCode{{1, 2, 3, 1, 2, 3}}));
    CHECK_FALSE(is_realizable(GaussCode{{1, 2, 1, 2}}));
    CHECK_FALSE(is_realizable(GaussCode{{1, 2, 3, 4, 1, 3, 2, 4}}));
}

TEST_CASE("Gauss validation") {
    CHECK_THROWS_AS(parse_gauss("1,2,1"), CodeError);
    CHECK_THROWS_AS(parse_gauss("1,1,1,1"), CodeError);
    CHECK_THROWS_AS(parse_gauss("0,0"), CodeError);
    CHECK(render(normalize_gauss(GaussCode{{7, 3, 7, 3}})) == "1,2,1,2");
}
