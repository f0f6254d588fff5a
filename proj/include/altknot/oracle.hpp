#pragma once
// Independent cross-checks: exhaustive diagram enumeration and flype closures.

#include "altknot/canonical.hpp"
#include "altknot/operators.hpp"

#include <optional>

#include <set>
#include <string>
#include <vector>

namespace altknot {

class BoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No cyclic interval of length 2..2n-2 is a union of crossing pairs: the
// diagram has no nugatory crossing and is not a diagrammatic sum.
bool is_prime_reduced(const GaussCode& g);

// Every prime reduced planar diagram with n crossings, collapsed to master
// arrays. Exhaustive over double occurrence words, so practical for n <= 9.
std::set<MasterArray> brute_force_knots(int n);

// All configurations encoded by a master array.
std::vector<GroupCode> flype_closure_configs(const MasterArray& ma, long bound = 4096);

struct CharacterizationReport {
    int arrays = 0;
    long configurations = 0;
    long mismatches = 0;  // configuration whose rebuilt array differs
    long overlaps = 0;    // configuration shared by two arrays
    std::vector<std::string> failures;
    bool ok() const { return mismatches == 0 && overlaps == 0; }
};

CharacterizationReport check_flype_characterization(const std::vector<MasterArray>& arrays,
                                                    long bound = 4096);

// Group code -> canonical array through the crossing level: expand, re-derive
// twist regions, rebuild. Throws CodeError when the code is not planar.
MasterArray canonical_via_gauss(const GroupCode& gc);
MasterArray canonical_from_gauss(const GaussCode& g);

// The group operators performed on single crossings of one configuration
// (the group at `pos`, every other group at 0). Independent of the label
// rewrites; empty when the result is not prime, reduced and planar.
std::optional<MasterArray> crossing_level_apply(const MasterArray& ma, Op op, GroupId g, int pos);

}  // namespace altknot
