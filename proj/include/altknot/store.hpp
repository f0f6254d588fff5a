#pragma once
// Knot database: dedup index keyed by the DT code of the zero-position
// configuration, partitioned by crossing number, class and group number.

#include "altknot/canonical.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace altknot {

enum class KnotClass { a, b, c };
std::string_view class_dir(KnotClass k);  // "KA", "KB", "KC"

struct KnotRecord {
    MasterArray array;
    DTCode key;
    int n = 0;
    int gn = 0;
    KnotClass cls = KnotClass::a;
};

// Key and group number are derived from the array.
KnotRecord make_record(MasterArray array, KnotClass cls);
DTCode zero_position_key(const MasterArray& ma);

enum class Insert { inserted, duplicate };

class Store {
public:
    Insert insert_if_new(const KnotRecord& rec);
    bool contains(const DTCode& key) const { return live_.count(key.evens) > 0; }

    // Evicts K_A records of one group number from the index. Records stay
    // in the archive.
    void purge_group_number(int gn);
    void purge_class(KnotClass k);

    const std::vector<KnotRecord>& archive() const { return archive_; }
    std::size_t live() const { return live_.size(); }
    std::size_t high_water() const { return high_water_; }

private:
    struct Slot {
        KnotClass cls;
        int gn;
    };
    std::map<std::vector<int>, Slot> live_;
    std::vector<KnotRecord> archive_;
    std::size_t high_water_ = 0;
};

// db/n<NN>/<KA|KB|KC>/gn<GG>.knots, one "<dt>\t<array>" line per knot,
// sorted by array.
std::filesystem::path partition_path(const std::filesystem::path& root, int n, KnotClass k, int gn);
void persist(const std::filesystem::path& root, std::vector<KnotRecord> records);
std::vector<KnotRecord> load_partition(const std::filesystem::path& file, KnotClass k);
// Every record below `root`, ordered by crossing number, class, group
// number and array.
std::vector<KnotRecord> load_all(const std::filesystem::path& root);

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace altknot
