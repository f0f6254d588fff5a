#pragma once
// Ladders, relabelling and the canonical linearization of a master group code.

#include "altknot/codes.hpp"

#include <map>
#include <vector>

namespace altknot {

struct Ladder {
    int start = 0;   // entry index in the cyclic code
    int length = 0;  // entries
    int weight = 0;  // sum of group sizes
    friend bool operator==(const Ladder&, const Ladder&) = default;
};

struct LadderScan {
    int lmax = 0;
    std::vector<Ladder> maximal;
};

// The canonical array. Its entries are a linear reading of a master group
// code; equal arrays mean flype-equivalent diagrams.
struct MasterArray {
    LabelSeq entries;
    friend bool operator==(const MasterArray&, const MasterArray&) = default;
    friend auto operator<=>(const MasterArray& a, const MasterArray& b) {
        return std::lexicographical_compare_three_way(a.entries.begin(), a.entries.end(),
                                                      b.entries.begin(), b.entries.end());
    }
};

inline std::string render(const MasterArray& m) { return render(m.entries); }

using PositionAssignment = std::map<GroupId, int>;

LadderScan ladders_and_lmax(std::span<const Label> mgc);

// Indices renumbered per size and positions per group, both in order of
// first encounter.
LabelSeq relabel(std::span<const Label> seq);

MasterArray master_array(const MasterGroupCode& mgc);

// The array together with the new name of every group of the input code.
// When several readings are minimal the names come from one of them.
struct TrackedArray {
    MasterArray array;
    std::map<GroupId, GroupId> renamed;
};
TrackedArray master_array_tracked(const MasterGroupCode& mgc);

// Convenience: group code to canonical array.
MasterArray canonical_form(const GroupCode& gc);

GroupCode extract_configuration(std::span<const Label> ma, const PositionAssignment& pa);

struct GroupOrbit {
    Label group;  // position 0
    int positions = 1;
};

// Distinct groups in order of first appearance with their orbit sizes.
std::vector<GroupOrbit> group_orbits(std::span<const Label> ma);

// Every position assignment; empty when the product exceeds `limit`.
std::vector<PositionAssignment> all_assignments(std::span<const Label> ma, long limit = 1 << 16);

}  // namespace altknot
