#include "altknot/oracle.hpp"

#include "altknot/orbit.hpp"

#include <map>

namespace altknot {

bool is_prime_reduced(const GaussCode& g) {
    const auto& s = g.seq;
    const int len = static_cast<int>(s.size());
    const int n = len / 2;
    if (n < 3) return false;
    int maxc = 0;
    for (int v : s) maxc = std::max(maxc, v);
    std::vector<int> count(maxc + 1);
    for (int start = 0; start < len; ++start) {
        std::fill(count.begin(), count.end(), 0);
        int open = 0;
        for (int k = 0; k < len - 2; ++k) {
            const int v = s[(start + k) % len];
            open += ++count[v] == 1 ? 1 : -1;
            if (k >= 1 && open == 0) return false;
        }
    }
    return true;
}

MasterArray canonical_from_gauss(const GaussCode& g) {
    return master_array(build_master_group_code(groups_from_gauss(g)));
}

MasterArray canonical_via_gauss(const GroupCode& gc) {
    auto g = expand_to_gauss(gc);
    if (!is_realizable(g)) throw CodeError("code is not planar: " + render(gc));
    return canonical_from_gauss(g);
}

std::optional<MasterArray> crossing_level_apply(const MasterArray& ma, Op op, GroupId g, int pos) {
    PositionAssignment pa{{g, pos}};
    if (op == Op::turn)
        if (auto d = drots_pattern(ma.entries, g)) pa[d->orbiter.group()] = d->first_pos;
    const auto tg = expand_traced(extract_configuration(ma.entries, pa));
    std::vector<int> xs;
    for (int c = 1; c < static_cast<int>(tg.group_of.size()); ++c)
        if (tg.group_of[c] == g) xs.push_back(c);
    // The group's crossings in traversal order of its first run.
    GaussCode out;
    switch (op) {
        case Op::d_negative:
        case Op::d_positive2: out = double_crossing(tg.gauss, xs.front()); break;
        case Op::rots2:
        case Op::rots3: out = rots_gauss(tg.gauss, xs); break;
        case Op::turn: out = turn_gauss(tg.gauss, xs); break;
        case Op::ots: throw CodeError("OTS is not a group operator");
    }
    if (!is_realizable(out) || !is_prime_reduced(out)) return std::nullopt;
    return canonical_from_gauss(out);
}

namespace {

void extend_words(int n, std::vector<int>& word, std::vector<int>& used, int next,
                  std::set<MasterArray>& out) {
    const int len = 2 * n;
    const int at = static_cast<int>(word.size());
    if (at == len) {
        GaussCode g{word};
        if (word.front() == word.back()) return;
        if (!is_prime_reduced(g) || !is_realizable(g)) return;
        out.insert(canonical_from_gauss(g));
        return;
    }
    const int remaining = len - at;
    int open = 0;
    for (int c = 1; c < next; ++c) open += used[c] == 1;
    // New crossing.
    if (next <= n && open + 1 <= remaining - 1) {
        word.push_back(next);
        used[next] = 1;
        extend_words(n, word, used, next + 1, out);
        used[next] = 0;
        word.pop_back();
    }
    // Close an open crossing.
    for (int c = 1; c < next; ++c) {
        if (used[c] != 1 || word.back() == c) continue;
        word.push_back(c);
        used[c] = 2;
        extend_words(n, word, used, next, out);
        used[c] = 1;
        word.pop_back();
    }
}

}  // namespace

std::set<MasterArray> brute_force_knots(int n) {
    std::set<MasterArray> out;
    if (n < 3) return out;
    std::vector<int> word;
    std::vector<int> used(n + 2, 0);
    extend_words(n, word, used, 1, out);
    return out;
}

std::vector<GroupCode> flype_closure_configs(const MasterArray& ma, long bound) {
    const auto orbits = group_orbits(ma.entries);
    long total = 1;
    for (const auto& o : orbits) {
        total *= o.positions;
        if (total > bound) throw BoundExceeded("orbit product exceeds bound");
    }
    std::vector<GroupCode> out;
    for (const auto& pa : all_assignments(ma.entries, bound))
        out.push_back(extract_configuration(ma.entries, pa));
    return out;
}

CharacterizationReport check_flype_characterization(const std::vector<MasterArray>& arrays,
                                                    long bound) {
    CharacterizationReport rep;
    std::map<std::vector<int>, int> owner;
    for (int i = 0; i < static_cast<int>(arrays.size()); ++i) {
        ++rep.arrays;
        for (const auto& gc : flype_closure_configs(arrays[i], bound)) {
            ++rep.configurations;
            auto g = expand_to_gauss(gc);
            if (canonical_from_gauss(g) != arrays[i]) {
                ++rep.mismatches;
                rep.failures.push_back("config " + render(gc) + " does not map back to " +
                                       render(arrays[i]));
            }
            // Configurations are compared as diagrams: canonical DT code.
            auto key = dt_code(g).evens;
            auto [it, fresh] = owner.try_emplace(key, i);
            if (!fresh && it->second != i) {
                ++rep.overlaps;
                rep.failures.push_back("config " + render(gc) + " shared by " +
                                       render(arrays[it->second]) + " and " + render(arrays[i]));
            }
        }
    }
    return rep;
}

}  // namespace altknot
