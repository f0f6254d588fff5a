#include "altknot/reduce.hpp"

#include "altknot/oracle.hpp"
#include "altknot/orbit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace altknot {

namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames{
    "d_negative", "d_symmetry", "d_positive2", "rots", "t_queue",
    "t_config",   "t_post",     "ots_input",   "ots_select", "ots_post"};

int wrap(int i, int n) { return ((i % n) + n) % n; }

bool is_negative(const Label& l) { return l.sign == Sign::minus && l.size >= 2; }
bool is_positive(const Label& l) { return l.sign == Sign::plus && l.size >= 2; }

std::map<GroupId, GroupOrbit> orbit_map(std::span<const Label> ma) {
    std::map<GroupId, GroupOrbit> out;
    for (const auto& o : group_orbits(ma)) out.emplace(o.group.group(), o);
    return out;
}

std::vector<int> occurrences(std::span<const Label> ma, GroupId g) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(ma.size()); ++i)
        if (ma[i].group() == g) out.push_back(i);
    return out;
}

LabelSeq piece(std::span<const Label> ma, std::pair<int, int> p) {
    const int n = static_cast<int>(ma.size());
    LabelSeq out;
    for (int i = p.first + 1; wrap(i, n) != wrap(p.second, n); ++i) out.push_back(ma[wrap(i, n)]);
    return out;
}

// Labels that sit inside a tangle in its own configuration: both
// occurrences of the (group, position) fall inside the two pieces.
std::set<GroupId> residents(std::span<const Label> ma, const OrbitTangle& t) {
    std::map<std::pair<GroupId, int>, int> count;
    for (const auto& p : t.pieces)
        for (const auto& l : piece(ma, p)) ++count[{l.group(), l.position}];
    std::set<GroupId> out;
    for (const auto& [k, c] : count)
        if (c == 2) out.insert(k.first);
    return out;
}

bool orbit_is_negative(std::span<const Label> ma, const GroupOrbit& o) {
    if (o.group.size == 1) return loner_alignment(ma, o.group.group()) == Sign::minus;
    return o.group.sign == Sign::minus;
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
    for (int i = 0; i < kRuleCount; ++i)
        if (kRuleNames[i] == name) return static_cast<Rule>(i);
    return std::nullopt;
}

std::vector<OrbitTangle> orbit_tangles(std::span<const Label> ma, GroupId g) {
    const int n = static_cast<int>(ma.size());
    const auto idx = occurrences(ma, g);
    const int m = static_cast<int>(idx.size());
    int k = 0;
    for (int i : idx) k = std::max(k, ma[i].position + 1);
    if (k < 2) return {};

    struct Piece { int from, to; std::pair<int, int> span; };
    std::vector<Piece> pieces;
    for (int t = 0; t < m; ++t) {
        const int a = idx[t], b = idx[(t + 1) % m];
        pieces.push_back({ma[a].position, ma[b].position, {a, t + 1 < m ? b : b + n}});
    }
    std::vector<OrbitTangle> tangles;
    std::vector<int> owner(pieces.size(), -1);
    std::vector<int> self;
    std::map<std::pair<int, int>, std::vector<int>> cross;
    for (int t = 0; t < m; ++t) {
        const auto& p = pieces[t];
        if (p.from == p.to)
            self.push_back(t);
        else
            cross[{std::min(p.from, p.to), std::max(p.from, p.to)}].push_back(t);
    }
    auto add = [&](int x, int y, bool core) {
        owner[x] = owner[y] = static_cast<int>(tangles.size());
        tangles.push_back({pieces[x].from, core ? pieces[y].from : pieces[x].to,
                           {pieces[x].span, pieces[y].span}, core});
    };
    if (self.size() == 2 && pieces[self[0]].from != pieces[self[1]].from)
        add(self[0], self[1], true);
    else if (!self.empty())
        return {};
    for (auto& [key, list] : cross) {
        if (list.size() == 2) {
            add(list[0], list[1], false);
        } else if (list.size() == 4) {
            std::vector<int> fwd, back;
            for (int t : list) (pieces[t].from == key.first ? fwd : back).push_back(t);
            if (fwd.size() != 2) return {};
            add(fwd[0], fwd[1], false);
            add(back[0], back[1], false);
        } else {
            return {};
        }
    }
    std::vector<int> degree(k, 0);
    for (const auto& t : tangles) ++degree[t.from], ++degree[t.to];
    if (static_cast<int>(tangles.size()) != k ||
        std::any_of(degree.begin(), degree.end(), [](int d) { return d != 2; }))
        return {};

    // Walk the ring from position 0 in the direction of the array.
    int first = -1;
    for (int t = 0; t < m && first < 0; ++t)
        if (ma[idx[t]].position == 0) first = owner[t];
    std::vector<OrbitTangle> walk;
    std::vector<char> used(tangles.size(), 0);
    int at = 0, cur = first;
    while (cur >= 0 && !used[cur]) {
        used[cur] = 1;
        auto t = tangles[cur];
        if (t.from != at) std::swap(t.from, t.to);
        walk.push_back(t);
        at = t.to;
        if (at == 0) break;
        cur = -1;
        for (int u = 0; u < static_cast<int>(tangles.size()); ++u)
            if (!used[u] && (tangles[u].from == at || tangles[u].to == at)) cur = u;
    }
    return walk;
}

std::vector<DrotsInfo> classify_drots(const MasterArray& ma) {
    const auto& e = ma.entries;
    const int n = static_cast<int>(e.size());
    const auto orbits = orbit_map(e);
    std::vector<DrotsInfo> out;
    for (const auto& [gid, o] : orbits) {
        if (gid.size != 2 || o.positions != 1) continue;
        const auto at = occurrences(e, gid);
        const Label li = e[wrap(at[0] - 1, n)], ri = e[wrap(at[0] + 1, n)];
        const Label lj = e[wrap(at[1] - 1, n)], rj = e[wrap(at[1] + 1, n)];
        const GroupId h = li.group();
        if (h == gid || ri.group() != h || lj.group() != h || rj.group() != h) continue;
        const bool core = li.position == ri.position && lj.position == rj.position &&
                          li.position != lj.position;
        const bool side = li.position != ri.position &&
                          std::minmax(li.position, ri.position) == std::minmax(lj.position, rj.position);
        if (!core && !side) continue;
        DrotsInfo d;
        d.two_group = o.group;
        d.sign = o.group.sign;
        d.orbiter = orbits.at(h).group;
        d.orbiter_is_loner = h.size == 1;
        if (d.sign == Sign::plus && d.orbiter_is_loner) {
            for (const auto& [other, oo] : orbits) {
                if (other == gid || other == h || oo.positions < 2) continue;
                for (const auto& t : orbit_tangles(e, other)) {
                    const auto r = residents(e, t);
                    if (r == std::set<GroupId>{gid, h}) d.tight = true;
                }
            }
        }
        out.push_back(d);
    }
    return out;
}

namespace {

// Groups met walking from entry `from` in direction `dir`, stopping before
// the first group met twice. Compared after relabelling, so only the shape
// of the strand counts.
LabelSeq strand(std::span<const Label> ma, int from, int dir) {
    const int n = static_cast<int>(ma.size());
    LabelSeq out;
    std::set<GroupId> seen;
    for (int k = 1; k < n; ++k) {
        const auto& l = ma[wrap(from + dir * k, n)];
        if (!seen.insert(l.group()).second) break;
        out.push_back(l);
    }
    return out;
}

// Lexicographic with a finished strand ranking above every label.
bool strand_less(const LabelSeq& a, const LabelSeq& b) {
    const size_t k = std::min(a.size(), b.size());
    for (size_t i = 0; i < k; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() > b.size();
}

std::vector<std::pair<int, int>> starts(std::span<const Label> ma, GroupId g, LnrMode mode) {
    const int n = static_cast<int>(ma.size());
    const auto at = occurrences(ma, g);
    std::vector<std::pair<int, int>> out;
    if (mode == LnrMode::core) {
        // Arcs of the group copies that enclose a core strand; leave
        // through them away from the core.
        std::map<int, std::vector<int>> by_pos;
        for (int i : at) by_pos[ma[i].position].push_back(i);
        for (auto& [p, xs] : by_pos) {
            const int a = xs[0], b = xs[1];
            auto clear = [&](int lo, int hi) {
                for (int i = lo + 1; i < hi; ++i)
                    if (ma[wrap(i, n)].group() == g) return false;
                return true;
            };
            if (clear(a, b)) {
                out.push_back({a, -1});
                out.push_back({b, +1});
            } else if (clear(b, a + n)) {
                out.push_back({b, -1});
                out.push_back({a, +1});
            }
        }
        if (!out.empty()) return out;
    }
    for (int i : at) {
        if (ma[i].position != 0) continue;
        out.push_back({i, -1});
        out.push_back({i, +1});
    }
    return out;
}

LabelSeq best_strand(std::span<const Label> ma, GroupId g, LnrMode mode) {
    std::optional<LabelSeq> best;
    for (auto [i, d] : starts(ma, g, mode)) {
        auto s = relabel(strand(ma, i, d));
        if (!best || strand_less(s, *best)) best = std::move(s);
    }
    return best.value_or(LabelSeq{});
}

}  // namespace

bool lnr_compete(const MasterArray& ma, GroupId champion, std::span<const GroupId> rivals,
                 LnrMode mode) {
    const auto mine = best_strand(ma.entries, champion, mode);
    for (const auto& r : rivals) {
        if (r == champion) continue;
        if (strand_less(best_strand(ma.entries, r, mode), mine)) return false;
    }
    return true;
}

std::vector<int> flype_symmetry_positions(const MasterArray& ma, GroupId g) {
    const auto& e = ma.entries;
    const auto orbits = orbit_map(e);
    auto it = orbits.find(g);
    if (it == orbits.end()) throw CodeError("no such group");
    const int k = it->second.positions;
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    if (k == 1) return all;
    const auto walk = orbit_tangles(e, g);
    if (static_cast<int>(walk.size()) != k) return all;
    const bool negative = orbit_is_negative(e, it->second);
    auto cls = [](LabelSeq s) { return relabel(s); };
    auto rev = [](LabelSeq s) {
        std::reverse(s.begin(), s.end());
        return relabel(s);
    };
    std::vector<int> keep{0};
    for (const auto& t : walk) {
        if (t.to == 0) break;
        const auto s = piece(e, t.pieces[0]);
        const auto u = piece(e, t.pieces[1]);
        bool symmetric;
        if (negative && t.core)
            symmetric = cls(s) == rev(s) && cls(u) == rev(u);
        else if (negative)
            symmetric = cls(s) == rev(u);
        else
            symmetric = cls(s) == cls(u);
        if (!symmetric) keep.push_back(t.to);
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
}

Verdict verdict_d_negative(const MasterArray& result, GroupId grown) {
    const auto orbits = orbit_map(result.entries);
    auto it = orbits.find(grown);
    if (it == orbits.end() || !is_negative(it->second.group)) return {true, "untracked"};
    int m = 0;
    for (const auto& [gid, o] : orbits)
        if (is_negative(o.group)) m = std::max(m, gid.size);
    if (grown.size < m) return {false, "larger negative group"};
    std::set<GroupId> drots;
    for (const auto& d : classify_drots(result))
        if (d.sign == Sign::minus) drots.insert(d.two_group.group());
    std::vector<GroupId> h, j;
    int same = 0;
    for (const auto& [gid, o] : orbits) {
        if (!is_negative(o.group) || gid.size != m) continue;
        ++same;
        if (o.positions > 1)
            h.push_back(gid);
        else if (!(m == 2 && drots.count(gid)))
            j.push_back(gid);
    }
    if (same == 1) return {true, "unique largest"};
    const int own = it->second.positions;
    if (own == 1) {
        if (!h.empty()) return {false, "deferred to flyping group"};
        std::erase(j, grown);
        if (!j.empty() && !lnr_compete(result, grown, j, LnrMode::group))
            return {false, "lost group competition"};
        return {true, "group competition"};
    }
    std::erase(h, grown);
    if (h.empty()) return {true, "only flyping group"};
    int kmax = own;
    for (const auto& gid : h) kmax = std::max(kmax, orbits.at(gid).positions);
    if (own < kmax) return {false, "smaller orbit"};
    std::erase_if(h, [&](const GroupId& gid) { return orbits.at(gid).positions != kmax; });
    if (!h.empty() && !lnr_compete(result, grown, h, LnrMode::core))
        return {false, "lost core competition"};
    return {true, "core competition"};
}

Verdict verdict_d_positive2(const MasterArray& result, GroupId created) {
    const auto orbits = orbit_map(result.entries);
    std::set<GroupId> drots;
    for (const auto& d : classify_drots(result))
        if (d.sign == Sign::minus) drots.insert(d.two_group.group());
    std::vector<GroupId> rivals;
    for (const auto& [gid, o] : orbits) {
        if (!is_negative(o.group)) continue;
        if (gid.size >= 3) return {false, "negative group of 3 or more"};
        if (!drots.count(gid)) return {false, "free negative 2-group"};
        rivals.push_back(gid);
    }
    if (!orbits.count(created)) return {true, "untracked"};
    if (!lnr_compete(result, created, rivals, LnrMode::group))
        return {false, "lost group competition"};
    return {true, "accept"};
}

Verdict verdict_rots(const MasterArray& ma) {
    std::vector<Label> neg;
    for (const auto& o : group_orbits(ma.entries))
        if (is_negative(o.group)) neg.push_back(o.group);
    if (neg.size() >= 2) return {false, "two negative groups"};
    if (neg.empty()) return {true, "accept"};
    if (neg[0].size > 3) return {false, "negative group too large"};
    for (const auto& d : classify_drots(ma))
        if (d.sign == Sign::minus && d.two_group.group() == neg[0].group())
            return {false, "negative drots 2-group"};
    return {true, "accept"};
}

std::vector<GroupId> t_candidates(const MasterArray& ma, bool screen) {
    std::vector<GroupId> pos2;
    for (const auto& o : group_orbits(ma.entries))
        if (o.group.size == 2 && o.group.sign == Sign::plus) pos2.push_back(o.group.group());
    if (!screen || pos2.empty()) return pos2;
    std::vector<GroupId> positive_drots;
    for (const auto& d : classify_drots(ma)) {
        if (d.sign == Sign::minus) return {};
        positive_drots.push_back(d.two_group.group());
    }
    if (positive_drots.size() >= 2) return {};
    if (positive_drots.size() == 1) return positive_drots;
    return pos2;
}

Verdict verdict_t(const MasterArray& ma, GroupId g) {
    PositionAssignment pa;
    std::optional<GroupId> orbiter;
    if (auto d = drots_pattern(ma.entries, g)) {
        orbiter = d->orbiter.group();
        pa[*orbiter] = d->first_pos;
    }
    const auto gc = extract_configuration(ma.entries, pa);
    const auto tg = expand_traced(gc);
    const auto& w = tg.gauss.seq;
    const int n = static_cast<int>(w.size());
    // Sections: the two stretches between the runs of g.
    std::vector<int> side(n, -1);
    int run = -1;
    for (int k = 0; k < n; ++k)
        if (tg.group_of[w[k]] == g && tg.group_of[w[wrap(k - 1, n)]] != g) run = k;
    if (run < 0) return {true, "accept"};
    int section = 0;
    for (int k = 1; k <= n; ++k) {
        const int at = wrap(run + k, n);
        if (tg.group_of[w[at]] == g) {
            if (tg.group_of[w[wrap(at - 1, n)]] != g) ++section;
            continue;
        }
        side[at] = section % 2;
    }
    std::map<GroupId, std::array<int, 2>> seen;
    for (int k = 0; k < n; ++k) {
        const auto gid = tg.group_of[w[k]];
        if (gid == g || (orbiter && gid == *orbiter) || side[k] < 0) continue;
        ++seen[gid][side[k]];
    }
    for (const auto& l : gc.entries) {
        const auto gid = l.group();
        if (gid == g || l.size < 2 || (orbiter && gid == *orbiter)) continue;
        const auto c = seen[gid];
        const bool split = c[0] > 0 && c[1] > 0;
        if (l.sign == Sign::minus && !split) return {false, "negative group inside a section"};
        if (l.sign == Sign::plus && split) return {false, "positive group across sections"};
    }
    return {true, "accept"};
}

Verdict verdict_t_output(const MasterGroupCode& out, const MasterArray& input, GroupId g) {
    std::set<GroupId> before;
    for (const auto& l : input.entries) before.insert(l.group());
    std::optional<GroupId> turned;
    for (const auto& l : out.entries) {
        if (l.group() == g) turned = g;
        if (!turned && !before.count(l.group())) turned = l.group();
    }
    if (!turned) return {true, "untracked"};
    const auto tg = expand_traced(extract_configuration(out.entries, {}));
    const auto& w = tg.gauss.seq;
    const int n = static_cast<int>(w.size());
    const int crossings = n / 2;
    std::vector<int> parent(crossings + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::pair<int, int>, int> adj;
    for (int k = 0; k < n; ++k) {
        const int a = w[k], b = w[wrap(k + 1, n)];
        if (a != b) ++adj[std::minmax(a, b)];
    }
    for (const auto& [p, c] : adj)
        if (c >= 2) parent[find(p.first)] = find(p.second);
    int mark = 0;
    for (int c = 1; c <= crossings; ++c)
        if (tg.group_of[c] == *turned) mark = c;
    if (mark == 0) return {true, "untracked"};
    int own = 0;
    for (int c = 1; c <= crossings; ++c) own += find(c) == find(mark);
    for (const auto& l : groups_from_gauss(tg.gauss).entries) {
        if (is_negative(l)) return {false, "negative group"};
        if (l.sign == Sign::plus && l.size > own) return {false, "larger positive group"};
    }
    return {true, "accept"};
}

OtsPlan verdict_ots_input(const MasterArray& ma, int threshold) {
    OtsPlan plan;
    std::set<GroupId> touch;
    int neg2 = 0, pos3 = 0, drots_loner = 0, positive_drots = 0;
    std::set<GroupId> drots_groups;
    auto reject = [&](std::string_view why) {
        if (plan.verdict.accept) plan.verdict = {false, why};
    };
    for (const auto& d : classify_drots(ma)) {
        drots_groups.insert(d.two_group.group());
        if (d.sign == Sign::minus) {
            reject("negative drots 2-group");
            touch.insert(d.two_group.group());
            continue;
        }
        ++positive_drots;
        touch.insert(d.orbiter.group());
        if (!d.orbiter_is_loner) reject("drots orbiter not a loner");
        if (d.tight) reject("tight drots 2-group");
        if (d.orbiter_is_loner) ++drots_loner;
    }
    for (const auto& o : group_orbits(ma.entries)) {
        const auto& l = o.group;
        if (is_negative(l)) {
            touch.insert(l.group());
            if (l.size >= 3) reject("negative group of 3 or more");
            else if (!drots_groups.count(l.group())) ++neg2;
        } else if (is_positive(l) && l.size >= 3) {
            touch.insert(l.group());
            if (l.size >= 4) reject("positive group of 4 or more");
            else ++pos3;
        }
    }
    if (positive_drots > 2) reject("more than two drots 2-groups");
    if (neg2 + pos3 + drots_loner > threshold) reject("too many obstacles");
    plan.must_touch.assign(touch.begin(), touch.end());
    return plan;
}

std::vector<OtsSite> select_ots_tangles(const OtsPlan& plan, std::vector<OtsSite> sites) {
    std::erase_if(sites, [&](const OtsSite& s) {
        for (const auto& g : plan.must_touch)
            if (std::find(s.groups.begin(), s.groups.end(), g) == s.groups.end()) return true;
        return false;
    });
    return sites;
}

}  // namespace altknot
