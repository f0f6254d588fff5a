#pragma once
// Flype orbits of groups and construction of master group codes.

#include "altknot/codes.hpp"

#include <utility>
#include <vector>

namespace altknot {

// Half-open entry range [first, last) of a code.
struct Range {
    int first = 0;
    int last = 0;
    int length() const { return last - first; }
    friend bool operator==(const Range&, const Range&) = default;
};

struct Orbit {
    Label group;                 // label after processing, position 0
    Sign alignment = Sign::plus; // minus: nested orbit with a core
    int absorbed = 0;            // crossings folded in from split subgroups
    // Gap indices (gap g lies just before entry g of the cycled input code;
    // gap == length means after the last entry), one pair per non-resident
    // position, in discovery order.
    std::vector<std::pair<int, int>> position_gaps;
    std::vector<Label> core_starters;  // groups with one arc in each section
    int positions() const { return 1 + static_cast<int>(position_gaps.size()); }
    bool trivial() const { return position_gaps.empty(); }
};

struct OrbitStep {
    Orbit orbit;
    LabelSeq code;  // updated code, cycled to start at the group's first arc
};

// code[0] must be an arc of `group`. Returns the closure of `seed` inside the
// section that contains it.
Range close_subsequence(std::span<const Label> code, const Label& group, Range seed);

// Single orbit analyses on a partially processed code. Labels that already
// carry positions are treated as resident groups.
OrbitStep orbit_of_negative(std::span<const Label> code, GroupId group);
OrbitStep orbit_of_positive(std::span<const Label> code, GroupId group);

// Processes every group without positions, in order of first appearance.
MasterGroupCode build_master_group_code(const GroupCode& gc);
MasterGroupCode complete_master_code(std::span<const Label> partial);

// Alignment of a loner's orbit read off a master group code: minus when its
// non-resident positions are nested inside one section.
Sign loner_alignment(std::span<const Label> mgc, GroupId loner);

}  // namespace altknot
