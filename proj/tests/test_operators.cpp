#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altknot/operators.hpp"
#include "altknot/oracle.hpp"

#include <random>
#include <set>

using namespace altknot;

namespace {

const char* kMA0 =
    "2_1^0,-2_2^0,2_3^0,-2_4^0,3_1^0,-2_4^1,2_3^1,-2_2^1,2_1^0,-2_2^1,2_3^0,-2_4^1,3_1^0,-2_4^0,2_3^1,-2_2^0";

MasterArray ma0() { return MasterArray{parse_master_code(kMA0).entries}; }

struct Applied {
    Op op;
    GroupId g;
    int pos;
    MasterGroupCode out;
};

std::vector<Applied> every_group_application(const MasterArray& ma) {
    std::vector<Applied> out;
    for (const auto& o : group_orbits(ma.entries)) {
        const GroupId g = o.group.group();
        for (int p = 0; p < o.positions; ++p) {
            if (d_negative_eligible(ma.entries, g)) out.push_back({Op::d_negative, g, p, apply_d_negative(ma, g, p)});
            if (d_positive2_eligible(ma.entries, g)) out.push_back({Op::d_positive2, g, p, apply_d_positive2(ma, g, p)});
            if (rots_eligible(ma.entries, g)) {
                if (g.size == 2) out.push_back({Op::rots2, g, p, apply_rots2(ma, g, p)});
                if (g.size == 3) out.push_back({Op::rots3, g, p, apply_rots3(ma, g, p)});
            }
            if (turn_eligible(ma.entries, g)) out.push_back({Op::turn, g, p, apply_t(ma, g, p)});
        }
    }
    return out;
}

bool same_cycle(std::vector<int> a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a == b) return true;
        std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    return false;
}

}  // namespace

TEST_CASE("operator names") {
    CHECK(op_name(Op::d_negative) == "d_negative");
    CHECK(op_name(Op::turn) == "t");
    CHECK(op_name(Op::ots) == "ots");
}

TEST_CASE("D on the example grows a negative 2-group and flips its core") {
    auto ma = ma0();
    auto out = apply_d_negative(ma, {2, 2}, 0);
    CHECK(crossing_count(out.entries) == 12);
    bool grown = false;
    for (const auto& l : out.entries) grown = grown || (l.size == 3 && l.sign == Sign::minus);
    CHECK(grown);
    auto canon = canonicalize(out);
    REQUIRE(canon);
    CHECK(canon == crossing_level_apply(ma, Op::d_negative, {2, 2}, 0));
}

TEST_CASE("drots pattern of the example") {
    auto ma = ma0();
    int found = 0;
    for (const auto& o : group_orbits(ma.entries)) {
        auto p = drots_pattern(ma.entries, o.group.group());
        if (!p) continue;
        ++found;
        CHECK(p->two_group.group() == GroupId{2, 1});
        CHECK(p->orbiter.group() == GroupId{2, 2});
    }
    CHECK(found == 1);
}

TEST_CASE("group rewrites agree with single-crossing operations") {
    long checked = 0;
    for (int n = 4; n <= 8; ++n) {
        for (const auto& ma : brute_force_knots(n)) {
            for (const auto& a : every_group_application(ma)) {
                CAPTURE(render(ma));
                CAPTURE(op_name(a.op));
                CAPTURE(a.pos);
                CHECK(crossing_count(a.out.entries) == (a.op == Op::turn ? n : n + 1));
                const auto canon = canonicalize(a.out);
                CHECK(canon == crossing_level_apply(ma, a.op, a.g, a.pos));
                if (canon && (a.op == Op::d_negative || a.op == Op::d_positive2 || a.op == Op::rots3))
                    CHECK(master_array(a.out) == *canon);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("group number deltas") {
    const std::map<Op, int> delta{{Op::d_negative, 0}, {Op::d_positive2, 1}, {Op::rots2, 1}, {Op::rots3, 2}};
    for (int n = 4; n <= 7; ++n)
        for (const auto& ma : brute_force_knots(n))
            for (const auto& a : every_group_application(ma)) {
                if (!delta.count(a.op)) continue;
                CAPTURE(render(ma));
                CAPTURE(op_name(a.op));
                CHECK(group_count(a.out.entries) == group_count(ma.entries) + delta.at(a.op));
            }
}

TEST_CASE("OTS keeps the crossing number and uses three groups") {
    for (int n = 5; n <= 8; ++n)
        for (const auto& ma : brute_force_knots(n))
            for (const auto& s : find_ots_tangles(ma)) {
                std::set<GroupId> gs(s.groups.begin(), s.groups.end());
                CHECK(gs.size() == 3);
                auto out = apply_ots(ma, s);
                CHECK(crossing_count(out.entries) == n);
                auto canon = canonicalize(out);
                REQUIRE(canon);
                CHECK(master_array(out) == *canon);
            }
}

TEST_CASE("OTS refuses to scan too many configurations") {
    CHECK_THROWS_AS(find_ots_tangles(ma0(), 4), BoundExceeded);
    CHECK_NOTHROW(find_ots_tangles(ma0(), 8));
}

TEST_CASE("OTS table rows") {
    // a=1, b=2, c=3; segments 4 / 5,4 / 5.
    struct Row { char kind; std::vector<int> before, after; };
    const std::vector<Row> rows{
        {'a', {1, 2, 4, 2, 3, 5, 4, 3, 1, 5}, {1, 2, 4, 3, 1, 5, 4, 2, 3, 5}},
        {'d', {1, 2, 4, 1, 3, 5, 4, 2, 3, 5}, {1, 2, 4, 3, 2, 5, 4, 3, 1, 5}},
    };
    for (const auto& r : rows) {
        GaussCode g{r.before};
        auto t = match_ots(g, 1, 2, 3);
        REQUIRE(t);
        CHECK(t->kind == r.kind);
        CHECK(same_cycle(gauss_ots(g, *t).seq, r.after));
    }
}

TEST_CASE("OTS applied twice is the identity") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 3 + static_cast<int>(rng() % 4);
        std::vector<int> pool;
        for (int c = 4; c < 4 + k; ++c) pool.insert(pool.end(), {c, c});
        std::shuffle(pool.begin(), pool.end(), rng);
        const int cut1 = 1 + static_cast<int>(rng() % (pool.size() - 2));
        const int cut2 = cut1 + 1 + static_cast<int>(rng() % (pool.size() - cut1 - 1));
        std::vector<int> s1(pool.begin(), pool.begin() + cut1), s2(pool.begin() + cut1, pool.begin() + cut2),
            s3(pool.begin() + cut2, pool.end());
        std::vector<int> w{1, 2};
        w.insert(w.end(), s1.begin(), s1.end());
        w.insert(w.end(), {2, 3});
        w.insert(w.end(), s2.begin(), s2.end());
        w.insert(w.end(), {3, 1});
        w.insert(w.end(), s3.begin(), s3.end());
        GaussCode g{w};
        auto t = match_ots(g, 1, 2, 3);
        REQUIRE(t);
        auto once = gauss_ots(g, *t);
        CHECK_FALSE(same_cycle(once.seq, w));
        CHECK(same_cycle(gauss_ots(once, *t).seq, w));
    }
}
