#pragma once
// Mutable cyclic array used while orbits are being identified.

#include "altknot/orbit.hpp"

#include <map>
#include <vector>

namespace altknot::detail {

enum class Mode { negative, positive };
enum class IndexPolicy { counter, keep };

struct Entry {
    int gid = 0;
    int pos = kNoPosition;
    friend bool operator==(const Entry&, const Entry&) = default;
};

struct GroupState {
    int size = 1;
    int index = 1;
    Sign sign = Sign::plus;
    int npos = 0;
    bool processed = false;
    bool alive = true;
};

struct Probe {
    std::vector<std::pair<int, int>> gaps;
    std::vector<char> deleted;
    std::vector<int> absorbed_gids;
    std::vector<int> starters;  // entry indices in the first section
    int absorbed = 0;
    bool flypes() const { return !gaps.empty() || absorbed > 0; }
};

class Workspace {
public:
    explicit Workspace(std::span<const Label> code);

    int find_unprocessed(GroupId g) const;
    // Index counters continue after the largest index already in use by a
    // processed group of each size; reset_counters starts them from zero.
    void reset_counters() { counters_.clear(); }

    Orbit process(int gid, Mode mode, IndexPolicy policy);
    // Processes every unprocessed group in order of first appearance.
    void complete();

    LabelSeq labels() const;
    Label label_of(const Entry& e) const;

private:
    std::vector<int> partners() const;
    void cycle_to(int gid);
    Probe probe_negative(int gid, int q, Sign probe_sign) const;
    Probe probe_positive(int gid, int q) const;
    bool absorbable(const Entry& e, int gid, Sign probe_sign) const;
    Orbit commit(int gid, const Probe& pr, Mode mode, IndexPolicy policy);
    int next_index(int size, int gid, IndexPolicy policy);

    std::vector<Entry> arr_;
    std::vector<GroupState> groups_;
    std::map<int, int> counters_;
};

}  // namespace altknot::detail
