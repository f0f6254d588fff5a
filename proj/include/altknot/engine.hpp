#pragma once
// Builds the table at n+1 crossings from the table at n: DROTS, one pass of
// T, OTS to a fixpoint, then T and OTS alternating on each other's output.

#include "altknot/reduce.hpp"
#include "altknot/store.hpp"

#include <array>
#include <functional>
#include <vector>

namespace altknot {

enum class Mode { reduced, unreduced };

struct EngineOptions {
    Mode mode = Mode::reduced;
    Rules rules = Rules::all();
    bool purge = true;
    bool single_round = false;
    int jobs = 1;
    long config_bound = 1 << 20;  // configurations scanned per array by OTS
};

struct OpStats {
    long invoked = 0;  // operator applications
    long built = 0;    // canonical arrays submitted to the store
    long kept = 0;     // submissions that were new
};

struct LevelReport {
    int n = 0;
    std::array<long, 3> by_class{};
    long knots = 0;
    std::array<OpStats, kOpCount> ops{};
    long built = 0;
    long guard = 0;      // outputs that were not prime reduced planar diagrams
    long untracked = 0;  // verdicts skipped because the group could not be followed
    long resubmitted = 0;  // purged knots built again; dropped from the table
    std::size_t high_water = 0;
    int rounds = 0;      // T/OTS passes after DROTS
    bool late_rounds_productive = false;
    double built_per_kept() const { return knots ? static_cast<double>(built) / knots : 0.0; }
};

struct Level {
    LevelReport report;
    std::vector<KnotRecord> records;
};

// Inputs are the full table at n crossings.
Level extend(const std::vector<MasterArray>& inputs, const EngineOptions& opt);

MasterArray trefoil();
MasterArray figure_eight();

struct Enumeration {
    std::vector<Level> levels;  // one per crossing number from n_from
};

// Seeds are the table at n_from; empty seeds use the trefoil (n_from = 3,
// with the figure-eight entered at 4) or the figure-eight (n_from = 4).
// Without `retain` only the last level keeps its records.
Enumeration enumerate(int n_from, int n_to, std::vector<MasterArray> seeds, const EngineOptions& opt,
                      const std::function<void(const Level&)>& on_level = {}, bool retain = true);

}  // namespace altknot
