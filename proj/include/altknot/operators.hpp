#pragma once
// The four generation operators. Group operators rewrite a master array into
// a master group code of a knot with one more crossing; OTS keeps the
// crossing count.

#include "altknot/canonical.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace altknot {

enum class Op { d_negative, d_positive2, rots2, rots3, turn, ots };
inline constexpr int kOpCount = 6;
std::string_view op_name(Op op);

struct OperatorOutcome {
    MasterGroupCode result;
    Op op = Op::d_negative;
    Label group;       // group acted on (first crossing's group for OTS)
    int position = 0;  // orbit position acted on
};

// Eligibility as read off a master array.
bool d_negative_eligible(std::span<const Label> ma, GroupId g);
bool d_positive2_eligible(std::span<const Label> ma, GroupId g);
bool rots_eligible(std::span<const Label> ma, GroupId g);
bool turn_eligible(std::span<const Label> ma, GroupId g);

MasterGroupCode apply_d_negative(const MasterArray& ma, GroupId g, int pos);
MasterGroupCode apply_d_positive2(const MasterArray& ma, GroupId g, int pos);
MasterGroupCode apply_rots2(const MasterArray& ma, GroupId g, int pos);
MasterGroupCode apply_rots3(const MasterArray& ma, GroupId g, int pos);
MasterGroupCode apply_t(const MasterArray& ma, GroupId g, int pos);

// Orbiter of a positive 2-group that fills a whole min-tangle of another
// group's orbit: both arcs of the 2-group are flanked on each side by the
// same arc label of the orbiter.
struct DrotsPattern {
    Label two_group;
    Label orbiter;  // position 0
    int first_pos = 0;
    int second_pos = 0;
};
std::optional<DrotsPattern> drots_pattern(std::span<const Label> ma, GroupId g);

// OTS on crossing sequences. `a` is immediately followed by `b`; `c` sits
// next to the second occurrences of both. Kind is the table row 'a'..'h'.
struct OtsTriple {
    int a = 0;
    int b = 0;
    int c = 0;
    char kind = '?';
    friend bool operator==(const OtsTriple&, const OtsTriple&) = default;
};

// Every triple of the code, one per crossing set.
std::vector<OtsTriple> find_gauss_ots(const GaussCode& g);
// Classifies the pattern around a, b, c; nullopt when it does not match.
std::optional<OtsTriple> match_ots(const GaussCode& g, int a, int b, int c);
GaussCode gauss_ots(const GaussCode& g, const OtsTriple& t);

struct OtsSite {
    PositionAssignment config;
    OtsTriple triple;
    std::array<GroupId, 3> groups{};
    std::array<int, 3> positions{};
};

// Triples over every configuration (bounded), crossings from three distinct
// groups, deduplicated by the groups, positions and crossings involved.
// Throws BoundExceeded when the orbit product is larger than `bound`.
std::vector<OtsSite> find_ots_tangles(const MasterArray& ma, long bound = 1 << 12);
MasterGroupCode apply_ots(const MasterArray& ma, const OtsSite& site);

// Single-crossing forms used as references for the group rewrites.
GaussCode double_crossing(const GaussCode& g, int x);
GaussCode rots_gauss(const GaussCode& g, std::span<const int> group);
GaussCode turn_gauss(const GaussCode& g, std::span<const int> group);

// Output -> canonical array through the zero-position configuration. Empty
// when the configuration is not a prime reduced planar diagram.
std::optional<MasterArray> canonicalize(const MasterGroupCode& out);

}  // namespace altknot
