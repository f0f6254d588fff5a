#pragma once
// Redundancy rules. Each verdict only decides whether an operator
// application may be skipped because the knot it would build is built
// elsewhere; every rule can be switched off.

#include "altknot/canonical.hpp"
#include "altknot/operators.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace altknot {

enum class Rule {
    d_negative,   // largest negative group, orbit size and LNR competitions
    d_symmetry,   // skip orbit positions behind flype-symmetric min-tangles
    d_positive2,  // D on positive 2-groups
    rots,         // ROTS input screening
    t_queue,      // which arrays and 2-groups T looks at
    t_config,     // sections of the turned group
    t_post,       // output screening for T
    ots_input,    // first-round OTS input screening
    ots_select,   // first-round OTS tangle selection
    ots_post,     // OTS outputs with a negative group are left to DROTS
};
inline constexpr int kRuleCount = 10;
std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

struct Rules {
    std::array<bool, kRuleCount> on{};
    // First-round OTS skips arrays whose count of negative 2-groups,
    // positive 3-groups and loner-orbiter drots 2-groups exceeds this.
    int ots_threshold = 3;

    bool enabled(Rule r) const { return on[static_cast<int>(r)]; }
    Rules without(Rule r) const {
        Rules c = *this;
        c.on[static_cast<int>(r)] = false;
        return c;
    }
    static Rules all() {
        Rules r;
        r.on.fill(true);
        return r;
    }
    static Rules none() { return {}; }
};

struct Verdict {
    bool accept = true;
    std::string_view reason = "accept";
};

// A 2-group that is a whole min-tangle in another group's orbit.
struct DrotsInfo {
    Label two_group;
    Sign sign = Sign::plus;
    Label orbiter;
    bool orbiter_is_loner = false;
    bool tight = false;
};
std::vector<DrotsInfo> classify_drots(const MasterArray& ma);

// One min-tangle of a group's orbit: the two strand pieces that pass through
// it, as open entry intervals (begin, end) of the cyclic array.
struct OrbitTangle {
    int from = 0;  // orbit positions on either side
    int to = 0;
    std::array<std::pair<int, int>, 2> pieces{};
    bool core = false;
};
// Min-tangles in walking order starting at position 0; empty when the group
// has a trivial orbit or the layout is not recognised.
std::vector<OrbitTangle> orbit_tangles(std::span<const Label> ma, GroupId g);

enum class LnrMode { group, core };
// True when no rival owns a strand whose sequence of encountered groups is
// strictly smaller than the champion's best one.
bool lnr_compete(const MasterArray& ma, GroupId champion, std::span<const GroupId> rivals,
                 LnrMode mode);

// Positions worth acting on for D: position 0 and the position past every
// min-tangle that is not recognised as flype-symmetric.
std::vector<int> flype_symmetry_positions(const MasterArray& ma, GroupId g);

// Output-side verdicts. `result` is the canonical array of the knot built by
// D and `grown` the enlarged (for D on negatives) or new negative 2-group.
Verdict verdict_d_negative(const MasterArray& result, GroupId grown);
Verdict verdict_d_positive2(const MasterArray& result, GroupId created);

Verdict verdict_rots(const MasterArray& ma);

// 2-groups T should turn; empty when the array can be skipped.
std::vector<GroupId> t_candidates(const MasterArray& ma, bool screen);
// A negative group inside one section or a positive group across both
// means the turned knot has a negative group.
Verdict verdict_t(const MasterArray& ma, GroupId g);
// Output of T: no negative group and no positive group larger than the one
// holding the turned crossings.
Verdict verdict_t_output(const MasterGroupCode& out, const MasterArray& input, GroupId g);

struct OtsPlan {
    Verdict verdict;
    // Every selected tangle must contain a crossing of each of these groups.
    std::vector<GroupId> must_touch;
};
OtsPlan verdict_ots_input(const MasterArray& ma, int threshold);
std::vector<OtsSite> select_ots_tangles(const OtsPlan& plan, std::vector<OtsSite> sites);

}  // namespace altknot
