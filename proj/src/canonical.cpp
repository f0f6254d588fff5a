#include "altknot/canonical.hpp"

#include "altknot/orbit.hpp"

#include <algorithm>
#include <optional>

namespace altknot {

LadderScan ladders_and_lmax(std::span<const Label> mgc) {
    const int len = static_cast<int>(mgc.size());
    LadderScan scan;
    std::vector<Ladder> all;
    for (int s = 0; s < len; ++s) {
        std::vector<GroupId> seen;
        Ladder l{s, 0, 0};
        for (int k = 0; k < len; ++k) {
            const auto& e = mgc[(s + k) % len];
            if (std::find(seen.begin(), seen.end(), e.group()) != seen.end()) break;
            seen.push_back(e.group());
            ++l.length;
            l.weight += e.size;
        }
        scan.lmax = std::max(scan.lmax, l.weight);
        all.push_back(l);
    }
    for (const auto& l : all)
        if (l.weight == scan.lmax) scan.maximal.push_back(l);
    return scan;
}

LabelSeq relabel(std::span<const Label> seq) {
    std::map<GroupId, int> index_of;
    std::map<int, int> per_size;
    std::map<std::pair<GroupId, int>, int> pos_of;
    std::map<GroupId, int> per_group;
    LabelSeq out;
    out.reserve(seq.size());
    for (const auto& l : seq) {
        auto [it, fresh] = index_of.try_emplace(l.group(), 0);
        if (fresh) it->second = ++per_size[l.size];
        Label r = l;
        r.index = it->second;
        if (l.has_position()) {
            auto [pit, pfresh] = pos_of.try_emplace({l.group(), l.position}, 0);
            if (pfresh) pit->second = per_group[l.group()]++;
            r.position = pit->second;
        }
        out.push_back(r);
    }
    return out;
}

MasterArray master_array(const MasterGroupCode& mgc) { return master_array_tracked(mgc).array; }

TrackedArray master_array_tracked(const MasterGroupCode& mgc) {
    const auto& e = mgc.entries;
    const int len = static_cast<int>(e.size());
    if (len == 0) return {};
    const auto scan = ladders_and_lmax(e);
    std::optional<TrackedArray> best;
    LabelSeq cand(len);
    auto offer = [&] {
        MasterArray m{relabel(cand)};
        if (best && !(m < best->array)) return;
        TrackedArray t{std::move(m), {}};
        for (int k = 0; k < len; ++k) t.renamed[cand[k].group()] = t.array.entries[k].group();
        best = std::move(t);
    };
    for (const auto& l : scan.maximal) {
        for (int k = 0; k < len; ++k) cand[k] = e[(l.start + k) % len];
        offer();
        const int end = l.start + l.length - 1;
        for (int k = 0; k < len; ++k) cand[k] = e[((end - k) % len + len) % len];
        offer();
    }
    return *best;
}

MasterArray canonical_form(const GroupCode& gc) {
    return master_array(build_master_group_code(gc));
}

GroupCode extract_configuration(std::span<const Label> ma, const PositionAssignment& pa) {
    const auto orbits = group_orbits(ma);
    for (const auto& o : orbits) {
        auto it = pa.find(o.group.group());
        const int p = it == pa.end() ? 0 : it->second;
        if (p < 0 || p >= o.positions)
            throw CodeError("position out of range for " + render_label(o.group.without_position()));
    }
    GroupCode gc;
    for (const auto& l : ma) {
        auto it = pa.find(l.group());
        const int p = it == pa.end() ? 0 : it->second;
        if (l.position == p) gc.entries.push_back(l.without_position());
    }
    return gc;
}

std::vector<GroupOrbit> group_orbits(std::span<const Label> ma) {
    std::vector<GroupOrbit> out;
    for (const auto& l : ma) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const GroupOrbit& o) { return o.group.group() == l.group(); });
        if (it == out.end()) {
            Label g = l;
            g.position = 0;
            out.push_back({g, l.position + 1});
        } else {
            it->positions = std::max(it->positions, l.position + 1);
        }
    }
    return out;
}

std::vector<PositionAssignment> all_assignments(std::span<const Label> ma, long limit) {
    const auto orbits = group_orbits(ma);
    long total = 1;
    for (const auto& o : orbits) {
        total *= o.positions;
        if (total > limit) return {};
    }
    std::vector<PositionAssignment> out;
    std::vector<int> digits(orbits.size(), 0);
    for (long n = 0; n < total; ++n) {
        PositionAssignment pa;
        for (size_t i = 0; i < orbits.size(); ++i) pa[orbits[i].group.group()] = digits[i];
        out.push_back(std::move(pa));
        for (size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < orbits[i].positions) break;
            digits[i] = 0;
        }
    }
    return out;
}

}  // namespace altknot
