#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altknot/canonical.hpp"
#include "altknot/oracle.hpp"
#include "altknot/orbit.hpp"

using namespace altknot;

namespace {

const char* kMGC0 =
    "3_1^0,-2_1^1,2_4^1,-2_2^1,2_3^0,-2_2^1,2_4^0,-2_1^1,3_1^0,-2_1^0,2_4^1,-2_2^0,2_3^0,-2_2^0,2_4^0,-2_1^0";
const char* kMA0 =
    "2_1^0,-2_2^0,2_3^0,-2_4^0,3_1^0,-2_4^1,2_3^1,-2_2^1,2_1^0,-2_2^1,2_3^0,-2_4^1,3_1^0,-2_4^0,2_3^1,-2_2^0";

bool same_cycle(LabelSeq a, const LabelSeq& b) {
    for (size_t k = 0; k < a.size(); ++k) {
        if (a == b) return true;
        std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    return false;
}

}  // namespace

TEST_CASE("ladders of the example") {
    auto scan = ladders_and_lmax(parse_master_code(kMGC0).entries);
    CHECK(scan.lmax == 11);
    CHECK(scan.maximal.size() == 4);
    for (const auto& l : scan.maximal) CHECK(l.weight == 11);

    auto one = ladders_and_lmax(parse_master_code("3_1^0,3_1^0").entries);
    CHECK(one.lmax == 3);
    CHECK(one.maximal.size() == 2);
}

TEST_CASE("lmax is rotation invariant") {
    auto m = parse_master_code(kMGC0).entries;
    for (size_t k = 0; k < m.size(); ++k) {
        CHECK(ladders_and_lmax(m).lmax == 11);
        std::rotate(m.begin(), m.begin() + 1, m.end());
    }
}

TEST_CASE("master array of the example") {
    auto mgc = parse_master_code(kMGC0);
    CHECK(render(master_array(mgc)) == kMA0);
    auto rev = mgc;
    std::reverse(rev.entries.begin(), rev.entries.end());
    CHECK(render(master_array(rev)) == kMA0);
    auto rot = mgc;
    std::rotate(rot.entries.begin(), rot.entries.begin() + 5, rot.entries.end());
    CHECK(render(master_array(rot)) == kMA0);
    CHECK(render(canonical_form(parse_group_code("-2_1,-2_2,2_3,-2_2,2_4,-2_1,3_1,2_3,2_4,3_1"))) == kMA0);
}

TEST_CASE("relabel numbers by first encounter") {
    auto s = relabel(parse_labels("-2_4^1,3_2^0,-2_4^0,2_7^1"));
    CHECK(render(s) == "-2_1^0,3_1^0,-2_1^1,2_2^0");
}

TEST_CASE("tracked names agree with the array") {
    auto t = master_array_tracked(parse_master_code(kMGC0));
    CHECK(render(t.array) == kMA0);
    CHECK(t.renamed.size() == 5);
    CHECK(t.renamed.at({2, 3}) == GroupId{2, 1});
    CHECK(t.renamed.at({3, 1}) == GroupId{3, 1});
}

TEST_CASE("extracting the alternate configuration") {
    auto mgc = parse_master_code(kMGC0);
    PositionAssignment pa{{{3, 1}, 0}, {{2, 2}, 0}, {{2, 3}, 0}, {{2, 1}, 1}, {{2, 4}, 1}};
    auto gc = extract_configuration(mgc.entries, pa);
    CHECK(same_cycle(gc.entries, parse_group_code("3_1,-2_1,2_4,2_3,-2_1,3_1,2_4,-2_2,2_3,-2_2").entries));
}

TEST_CASE("every configuration of the example rebuilds the same array") {
    auto ma = master_array(parse_master_code(kMGC0));
    const auto all = all_assignments(ma.entries);
    CHECK(all.size() == 8);
    for (const auto& pa : all) {
        auto gc = extract_configuration(ma.entries, pa);
        CHECK(crossing_count(gc.entries) == 11);
        CHECK(master_array(build_master_group_code(gc)) == ma);
        CHECK(canonical_via_gauss(gc) == ma);
    }
}

TEST_CASE("orbits and assignment limits") {
    auto ma = master_array(parse_master_code(kMGC0));
    auto orbits = group_orbits(ma.entries);
    CHECK(orbits.size() == 5);
    int nontrivial = 0;
    for (const auto& o : orbits) nontrivial += o.positions > 1;
    CHECK(nontrivial == 3);
    CHECK(all_assignments(ma.entries, 7).empty());
}

TEST_CASE("canonical arrays are fixed points") {
    for (int n = 3; n <= 7; ++n)
        for (const auto& ma : brute_force_knots(n)) {
            CHECK(master_array(MasterGroupCode{ma.entries}) == ma);
            CHECK(ladders_and_lmax(ma.entries).lmax > 0);
        }
}
