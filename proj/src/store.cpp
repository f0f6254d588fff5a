#include "altknot/store.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace altknot {

namespace fs = std::filesystem;

std::string_view class_dir(KnotClass k) {
    switch (k) {
        case KnotClass::a: return "KA";
        case KnotClass::b: return "KB";
        case KnotClass::c: return "KC";
    }
    return "K?";
}

DTCode zero_position_key(const MasterArray& ma) {
    return dt_code(expand_to_gauss(extract_configuration(ma.entries, {})));
}

KnotRecord make_record(MasterArray array, KnotClass cls) {
    KnotRecord r;
    r.key = zero_position_key(array);
    r.n = crossing_count(array.entries);
    r.gn = static_cast<int>(group_orbits(array.entries).size());
    r.cls = cls;
    r.array = std::move(array);
    return r;
}

Insert Store::insert_if_new(const KnotRecord& rec) {
    auto [it, fresh] = live_.try_emplace(rec.key.evens, Slot{rec.cls, rec.gn});
    if (!fresh) return Insert::duplicate;
    archive_.push_back(rec);
    high_water_ = std::max(high_water_, live_.size());
    return Insert::inserted;
}

void Store::purge_group_number(int gn) {
    std::erase_if(live_, [&](const auto& kv) {
        return kv.second.cls == KnotClass::a && kv.second.gn == gn;
    });
}

void Store::purge_class(KnotClass k) {
    std::erase_if(live_, [&](const auto& kv) { return kv.second.cls == k; });
}

fs::path partition_path(const fs::path& root, int n, KnotClass k, int gn) {
    std::ostringstream nn, gg;
    nn << 'n' << std::setw(2) << std::setfill('0') << n;
    gg << "gn" << std::setw(2) << std::setfill('0') << gn << ".knots";
    return root / nn.str() / std::string(class_dir(k)) / gg.str();
}

void persist(const fs::path& root, std::vector<KnotRecord> records) {
    std::map<fs::path, std::vector<const KnotRecord*>> files;
    for (const auto& r : records) files[partition_path(root, r.n, r.cls, r.gn)].push_back(&r);
    for (auto& [path, list] : files) {
        std::sort(list.begin(), list.end(),
                  [](const KnotRecord* a, const KnotRecord* b) { return a->array < b->array; });
        fs::create_directories(path.parent_path());
        std::ofstream out(path);
        if (!out) throw DataError("cannot write " + path.string());
        for (const auto* r : list) out << render(r->key) << '\t' << render(r->array) << '\n';
    }
}

std::vector<KnotRecord> load_partition(const fs::path& file, KnotClass k) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot read " + file.string());
    std::vector<KnotRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(file.string() + ":" + std::to_string(lineno) + ": missing tab");
        try {
            auto mgc = parse_master_code(line.substr(tab + 1));
            auto rec = make_record(MasterArray{mgc.entries}, k);
            if (render(rec.key) != line.substr(0, tab))
                throw DataError(file.string() + ":" + std::to_string(lineno) + ": key mismatch");
            out.push_back(std::move(rec));
        } catch (const CodeError& e) {
            throw DataError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<KnotRecord> load_all(const fs::path& root) {
    std::vector<KnotRecord> out;
    if (!fs::exists(root)) throw DataError("no database at " + root.string());
    std::set<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file() && entry.path().extension() == ".knots") files.insert(entry.path());
    for (const auto& f : files) {
        const auto dir = f.parent_path().filename().string();
        KnotClass k = dir == "KB" ? KnotClass::b : dir == "KC" ? KnotClass::c : KnotClass::a;
        auto part = load_partition(f, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace altknot
