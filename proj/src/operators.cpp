#include "altknot/operators.hpp"

#include "altknot/oracle.hpp"
#include "altknot/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace altknot {

std::string_view op_name(Op op) {
    switch (op) {
        case Op::d_negative: return "d_negative";
        case Op::d_positive2: return "d_positive2";
        case Op::rots2: return "rots2";
        case Op::rots3: return "rots3";
        case Op::turn: return "t";
        case Op::ots: return "ots";
    }
    return "?";
}

namespace {

using Seq = std::vector<int>;

struct GroupView {
    Label label;  // position 0
    int positions = 0;
};

std::optional<GroupView> view(std::span<const Label> ma, GroupId g) {
    std::optional<GroupView> v;
    for (const auto& l : ma) {
        if (l.group() != g) continue;
        if (!v) v = GroupView{l.without_position(), 0};
        v->positions = std::max(v->positions, l.position + 1);
    }
    return v;
}

GroupView require(std::span<const Label> ma, GroupId g, int pos) {
    auto v = view(ma, g);
    if (!v) throw CodeError("no group " + std::to_string(g.size) + "_" + std::to_string(g.index));
    if (pos < 0 || pos >= v->positions) throw CodeError("position out of range");
    return *v;
}

std::pair<int, int> arcs_at(std::span<const Label> e, GroupId g, int pos) {
    int first = -1, second = -1;
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
        if (e[i].group() != g || e[i].position != pos) continue;
        (first < 0 ? first : second) = i;
    }
    if (second < 0) throw CodeError("group arcs not found");
    return {first, second};
}

int next_index(std::span<const Label> e, int size) {
    std::set<int> used;
    for (const auto& l : e)
        if (l.size == size) used.insert(l.index);
    int k = 1;
    while (used.count(k)) ++k;
    return k;
}

// Groups with exactly one position-0 arc strictly inside (lo, hi).
std::set<GroupId> straddlers(std::span<const Label> e, int lo, int hi) {
    std::map<GroupId, int> inside;
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
        if (e[i].position != 0) continue;
        inside[e[i].group()] += i > lo && i < hi;
    }
    std::set<GroupId> out;
    for (auto [g, k] : inside)
        if (k == 1) out.insert(g);
    return out;
}

void flip_signs(LabelSeq& e, const std::set<GroupId>& groups) {
    for (auto& l : e)
        if (l.size > 1 && groups.count(l.group())) l.sign = flip(l.sign);
}

// Positions of g renumbered 0.. in order of first encounter, keeping `zero`
// as position 0 when given.
void renumber_positions(LabelSeq& e, GroupId g, int zero = kNoPosition) {
    std::map<int, int> ren;
    if (zero != kNoPosition) ren[zero] = 0;
    for (auto& l : e) {
        if (l.group() != g) continue;
        auto [it, fresh] = ren.try_emplace(l.position, static_cast<int>(ren.size()));
        l.position = it->second;
    }
}

Label with_pos(Label l, int pos) {
    l.position = pos;
    return l;
}

Seq rotated(const Seq& w, int k) {
    Seq o(w.size());
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) o[i] = w[(k + i) % n];
    return o;
}

int max_crossing(const Seq& w) { return *std::max_element(w.begin(), w.end()); }

// Rotates w so that the group's first run starts at 0; returns the index of
// the second run.
int align_runs(Seq& w, std::span<const int> group) {
    const int n = static_cast<int>(w.size());
    auto in = [&](int v) { return std::find(group.begin(), group.end(), v) != group.end(); };
    int s = 0;
    while (s < n && !(in(w[s]) && !in(w[(s + n - 1) % n]))) ++s;
    if (s == n) throw CodeError("group runs not found");
    w = rotated(w, s);
    const int len = static_cast<int>(group.size());
    int k = len;
    while (k < n && !in(w[k])) ++k;
    if (k == n) throw CodeError("group runs not found");
    return k;
}

}  // namespace

bool d_negative_eligible(std::span<const Label> ma, GroupId g) {
    auto v = view(ma, g);
    if (!v) return false;
    return v->label.size == 1 || v->label.sign == Sign::minus;
}

bool d_positive2_eligible(std::span<const Label> ma, GroupId g) {
    auto v = view(ma, g);
    return v && v->label.size == 2 && v->label.sign == Sign::plus;
}

bool rots_eligible(std::span<const Label> ma, GroupId g) {
    auto v = view(ma, g);
    return v && v->label.sign == Sign::minus && (v->label.size == 2 || v->label.size == 3);
}

bool turn_eligible(std::span<const Label> ma, GroupId g) { return d_positive2_eligible(ma, g); }

MasterGroupCode apply_d_negative(const MasterArray& ma, GroupId g, int pos) {
    const auto v = require(ma.entries, g, pos);
    if (!d_negative_eligible(ma.entries, g)) throw CodeError("D: group is neither negative nor a loner");
    LabelSeq e = ma.entries;
    bool single = false;
    if (v.label.size == 1 && v.positions > 1 && loner_alignment(e, g) == Sign::plus) {
        std::erase_if(e, [&](const Label& l) { return l.group() == g && l.position != pos; });
        single = true;
    }
    auto [i, j] = arcs_at(e, g, pos);
    const auto flips = straddlers(e, i, j);
    std::reverse(e.begin() + i + 1, e.begin() + j);
    const int idx = next_index(e, v.label.size + 1);
    for (auto& l : e) {
        if (l.group() != g) continue;
        l.size = v.label.size + 1;
        l.index = idx;
        l.sign = Sign::minus;
        if (single) l.position = 0;
    }
    auto keep = flips;
    keep.erase(g);
    flip_signs(e, keep);
    return {e};
}

MasterGroupCode apply_d_positive2(const MasterArray& ma, GroupId g, int pos) {
    const auto v = require(ma.entries, g, pos);
    if (!d_positive2_eligible(ma.entries, g)) throw CodeError("D: group is not a positive 2-group");
    LabelSeq e = ma.entries;
    auto [i, j] = arcs_at(e, g, pos);
    auto flips = straddlers(e, i, j);
    flips.erase(g);
    std::reverse(e.begin() + i + 1, e.begin() + j);
    const Label loner{1, next_index(e, 1), Sign::plus, 0};
    const Label pair{2, g.index, Sign::minus, 0};
    const int k = v.positions;
    LabelSeq out;
    for (int t = 0; t < static_cast<int>(e.size()); ++t) {
        const auto& l = e[t];
        if (t == i || t == j) {
            const int p = t == i ? pos : k;
            out.push_back(with_pos(loner, p));
            out.push_back(pair);
            out.push_back(with_pos(loner, p));
        } else if (l.group() == g) {
            out.push_back(with_pos(loner, l.position));
        } else {
            out.push_back(l);
        }
    }
    flip_signs(out, flips);
    return {out};
}

MasterGroupCode apply_rots2(const MasterArray& ma, GroupId g, int pos) {
    require(ma.entries, g, pos);
    if (!rots_eligible(ma.entries, g) || g.size != 2) throw CodeError("ROTS: not a negative 2-group");
    LabelSeq e = ma.entries;
    std::erase_if(e, [&](const Label& l) { return l.group() == g && l.position != pos; });
    auto [i, j] = arcs_at(e, g, pos);
    const Label loner{1, next_index(e, 1), Sign::plus, kNoPosition};
    const Label pair{2, g.index, Sign::plus, 0};
    LabelSeq out;
    for (int t = 0; t < static_cast<int>(e.size()); ++t) {
        if (t == i) {
            out.insert(out.end(), {loner, pair, loner});
        } else if (t == j) {
            out.push_back(pair);
        } else {
            out.push_back(e[t]);
        }
    }
    // The new loner's orbit reaches past the rotated tangle whenever the
    // 2-group sat in a longer chain; identify it from scratch.
    return complete_master_code(out);
}

MasterGroupCode apply_rots3(const MasterArray& ma, GroupId g, int pos) {
    const auto v = require(ma.entries, g, pos);
    if (!rots_eligible(ma.entries, g) || g.size != 3) throw CodeError("ROTS: not a negative 3-group");
    const auto& e = ma.entries;
    auto [i, j] = arcs_at(e, g, pos);
    const int inner_idx = next_index(e, 1);
    LabelSeq probe = e;
    probe.push_back({1, inner_idx, Sign::plus, 0});
    const Label outer{1, next_index(probe, 1), Sign::plus, 0};
    const Label inner{1, inner_idx, Sign::plus, 0};
    const Label pair{2, next_index(e, 2), Sign::plus, 0};
    const int fresh = v.positions;  // the extra position of the outer loner
    LabelSeq out;
    for (int t = 0; t < static_cast<int>(e.size()); ++t) {
        const auto& l = e[t];
        if (t == i) {
            out.insert(out.end(), {with_pos(outer, pos), with_pos(inner, 0), pair,
                                   with_pos(inner, 0), with_pos(outer, fresh)});
        } else if (t == j) {
            out.insert(out.end(), {with_pos(outer, fresh), with_pos(inner, 1), pair,
                                   with_pos(inner, 1), with_pos(outer, pos)});
        } else if (l.group() == g) {
            out.push_back(with_pos(outer, l.position));
        } else {
            out.push_back(l);
        }
    }
    return {out};
}

std::optional<DrotsPattern> drots_pattern(std::span<const Label> ma, GroupId g) {
    auto v = view(ma, g);
    if (!v || v->label.size != 2 || v->positions != 1) return std::nullopt;
    const int n = static_cast<int>(ma.size());
    auto [i, j] = arcs_at(ma, g, 0);
    auto flank = [&](int t) -> std::optional<Label> {
        const auto& l = ma[(t + n - 1) % n];
        const auto& r = ma[(t + 1) % n];
        if (l.group() == g || !(l == r)) return std::nullopt;
        return l;
    };
    auto a = flank(i);
    auto b = flank(j);
    if (!a || !b || a->group() != b->group() || a->position == b->position) return std::nullopt;
    DrotsPattern p;
    p.two_group = v->label;
    p.orbiter = view(ma, a->group())->label;
    p.orbiter.position = 0;
    p.first_pos = a->position;
    p.second_pos = b->position;
    return p;
}

MasterGroupCode apply_t(const MasterArray& ma, GroupId g, int pos) {
    require(ma.entries, g, pos);
    if (!turn_eligible(ma.entries, g)) throw CodeError("T: not a positive 2-group");
    if (auto d = drots_pattern(ma.entries, g)) {
        // The orbiter absorbs the turned 2-group.
        const GroupId h = d->orbiter.group();
        LabelSeq e = ma.entries;
        const int n = static_cast<int>(e.size());
        auto [i, j] = arcs_at(e, g, 0);
        // Cycle so that the first pattern occupies entries 0..2.
        std::rotate(e.begin(), e.begin() + (i + n - 1) % n, e.end());
        std::tie(i, j) = arcs_at(e, g, 0);
        if (i != 1) std::swap(i, j);
        const int lo = 2, hi = j - 1;  // section 1 is (lo, hi)
        auto flips = straddlers(e, lo, hi);
        flips.erase(g);
        flips.erase(h);
        std::reverse(e.begin() + lo + 1, e.begin() + hi);
        const Label merged{d->orbiter.size + 2, next_index(e, d->orbiter.size + 2), Sign::plus, 0};
        const int kept = std::min(d->first_pos, d->second_pos);
        const int gone = std::max(d->first_pos, d->second_pos);
        LabelSeq out;
        for (int t = 0; t < n; ++t) {
            if (t == 0 || t == hi) {
                out.push_back(with_pos(merged, kept));
                t += 2;
                continue;
            }
            const auto& l = e[t];
            if (l.group() == h)
                out.push_back(with_pos(merged, l.position == gone ? kept : l.position));
            else
                out.push_back(l);
        }
        renumber_positions(out, merged.group(), 0);
        flip_signs(out, flips);
        return {out};
    }
    LabelSeq e = ma.entries;
    std::erase_if(e, [&](const Label& l) { return l.group() == g && l.position != pos; });
    auto [i, j] = arcs_at(e, g, pos);
    auto flips = straddlers(e, i, j);
    flips.erase(g);
    std::reverse(e.begin() + i + 1, e.begin() + j);
    flip_signs(e, flips);
    for (auto& l : e)
        if (l.group() == g) l.position = kNoPosition;
    return complete_master_code(e);
}

GaussCode double_crossing(const GaussCode& g, int x) {
    auto w = g.seq;
    auto f = std::find(w.begin(), w.end(), x);
    if (f == w.end()) throw CodeError("no such crossing");
    w = rotated(w, static_cast<int>(f - w.begin()));
    const int s = static_cast<int>(std::find(w.begin() + 1, w.end(), x) - w.begin());
    const int y = max_crossing(w) + 1;
    Seq o{x, y};
    for (int i = s - 1; i >= 1; --i) o.push_back(w[i]);
    o.push_back(y);
    o.push_back(x);
    o.insert(o.end(), w.begin() + s + 1, w.end());
    return {o};
}

GaussCode rots_gauss(const GaussCode& g, std::span<const int> group) {
    auto w = g.seq;
    const int k = align_runs(w, group);
    const int len = static_cast<int>(group.size());
    const int top = max_crossing(w);
    Seq o;
    if (len == 2) {
        const int a = w[0], b = w[1], l = top + 1;
        o = {l, a, b, l};
        o.insert(o.end(), w.begin() + 2, w.begin() + k);
        o.insert(o.end(), {a, b});
    } else if (len == 3) {
        const int p = top + 1, q = top + 2, x = top + 3, y = top + 4;
        o = {p, q, x, y, q};
        o.insert(o.end(), w.begin() + 3, w.begin() + k);
        o.insert(o.end(), {x, y, p});
    } else {
        throw CodeError("ROTS needs a 2- or 3-group");
    }
    o.insert(o.end(), w.begin() + k + len, w.end());
    return {o};
}

GaussCode turn_gauss(const GaussCode& g, std::span<const int> group) {
    if (group.size() != 2) throw CodeError("T needs a 2-group");
    auto w = g.seq;
    const int k = align_runs(w, group);
    Seq o{w[0], w[1]};
    for (int i = k - 1; i >= 2; --i) o.push_back(w[i]);
    o.insert(o.end(), w.begin() + k, w.end());
    return {o};
}

namespace {

// Pair slots after rotating `a b` to the front: start index and content.
struct OtsLayout {
    Seq w;  // rotated so that w[0] = a, w[1] = b
    int p1 = 0, p2 = 0;  // starts of the two pairs, p1 < p2
};

std::optional<OtsLayout> layout(const Seq& code, int a, int b, int c) {
    const int n = static_cast<int>(code.size());
    for (int k = 0; k < n; ++k) {
        if (code[k] != a || code[(k + 1) % n] != b) continue;
        OtsLayout L;
        L.w = rotated(code, k);
        const auto& w = L.w;
        auto second = [&](int x) {
            return static_cast<int>(std::find(w.begin() + 2, w.end(), x) - w.begin());
        };
        const int ia = second(a), ib = second(b);
        if (ia >= n || ib >= n) return std::nullopt;
        for (int da : {-1, 1})
            for (int db : {-1, 1}) {
                const int ja = ia + da, jb = ib + db;
                if (ja < 2 || jb < 2 || ja >= n || jb >= n || ja == jb) continue;
                if (w[ja] != c || w[jb] != c) continue;
                const int pa = std::min(ia, ja), pb = std::min(ib, jb);
                L.p1 = std::min(pa, pb);
                L.p2 = std::max(pa, pb);
                if (L.p2 - L.p1 < 2) continue;
                return L;
            }
        return std::nullopt;
    }
    return std::nullopt;
}

char kind_of(int x1, int y1, int x2, int y2, int a, int b, int c) {
    auto is = [](int x, int y, int u, int v) { return x == u && y == v; };
    struct Row { char k; int s[4]; };
    const Row rows[] = {{'a', {b, c, c, a}}, {'b', {b, c, a, c}}, {'c', {a, c, c, b}},
                        {'d', {a, c, b, c}}, {'e', {c, b, c, a}}, {'f', {c, b, a, c}},
                        {'g', {c, a, c, b}}, {'h', {c, a, b, c}}};
    for (const auto& r : rows)
        if (is(x1, y1, r.s[0], r.s[1]) && is(x2, y2, r.s[2], r.s[3])) return r.k;
    return '?';
}

}  // namespace

std::optional<OtsTriple> match_ots(const GaussCode& g, int a, int b, int c) {
    if (a == b || b == c || a == c) return std::nullopt;
    auto L = layout(g.seq, a, b, c);
    if (!L) return std::nullopt;
    const auto& w = L->w;
    const char k = kind_of(w[L->p1], w[L->p1 + 1], w[L->p2], w[L->p2 + 1], a, b, c);
    if (k == '?') return std::nullopt;
    return OtsTriple{a, b, c, k};
}

GaussCode gauss_ots(const GaussCode& g, const OtsTriple& t) {
    auto L = layout(g.seq, t.a, t.b, t.c);
    if (!L) throw CodeError("OTS pattern not found");
    auto w = L->w;
    const int p1 = L->p1, p2 = L->p2;
    const int c = t.c;
    const bool c_first1 = w[p1] == c;
    const bool c_first2 = w[p2] == c;
    const int o1 = c_first1 ? w[p1 + 1] : w[p1];
    const int o2 = c_first2 ? w[p2 + 1] : w[p2];
    // The pairs trade their other crossing; c never keeps its slot.
    if (c_first1) { w[p1] = o2; w[p1 + 1] = c; } else { w[p1] = c; w[p1 + 1] = o2; }
    if (c_first2) { w[p2] = o1; w[p2 + 1] = c; } else { w[p2] = c; w[p2 + 1] = o1; }
    return {w};
}

std::vector<OtsTriple> find_gauss_ots(const GaussCode& g) {
    const auto& s = g.seq;
    const int n = static_cast<int>(s.size());
    std::vector<OtsTriple> out;
    std::set<std::array<int, 3>> seen;
    for (int k = 0; k < n; ++k) {
        const int a = s[k], b = s[(k + 1) % n];
        if (a == b) continue;
        std::set<int> cands;
        for (int i = 0; i < n; ++i) {
            if (i == k || i == (k + 1) % n) continue;
            if (s[i] == a || s[i] == b) {
                cands.insert(s[(i + 1) % n]);
                cands.insert(s[(i + n - 1) % n]);
            }
        }
        for (int c : cands) {
            auto t = match_ots(g, a, b, c);
            if (!t) continue;
            std::array<int, 3> key{a, b, c};
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) out.push_back(*t);
        }
    }
    return out;
}

std::vector<OtsSite> find_ots_tangles(const MasterArray& ma, long bound) {
    std::vector<OtsSite> out;
    std::set<std::array<std::tuple<GroupId, int, int>, 3>> seen;
    long total = 1;
    for (const auto& o : group_orbits(ma.entries))
        if ((total *= o.positions) > bound) throw BoundExceeded("orbit product exceeds bound");
    for (const auto& pa : all_assignments(ma.entries, bound)) {
        const auto tg = expand_traced(extract_configuration(ma.entries, pa));
        for (const auto& t : find_gauss_ots(tg.gauss)) {
            const std::array<int, 3> xs{t.a, t.b, t.c};
            std::array<std::tuple<GroupId, int, int>, 3> key;
            std::set<GroupId> distinct;
            OtsSite site{pa, t, {}, {}};
            for (int q = 0; q < 3; ++q) {
                const auto gid = tg.group_of[xs[q]];
                distinct.insert(gid);
                const int p = pa.count(gid) ? pa.at(gid) : 0;
                key[q] = {gid, p, tg.offset_of[xs[q]]};
                site.groups[q] = gid;
                site.positions[q] = p;
            }
            if (distinct.size() != 3) continue;
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) out.push_back(std::move(site));
        }
    }
    return out;
}

MasterGroupCode apply_ots(const MasterArray& ma, const OtsSite& site) {
    const auto g = expand_to_gauss(extract_configuration(ma.entries, site.config));
    const auto r = gauss_ots(g, site.triple);
    if (!is_realizable(r)) throw CodeError("OTS output is not planar");
    return build_master_group_code(groups_from_gauss(r));
}

std::optional<MasterArray> canonicalize(const MasterGroupCode& out) {
    const auto rel = relabel(out.entries);
    const auto g = expand_to_gauss(extract_configuration(rel, {}));
    if (!is_realizable(g) || !is_prime_reduced(g)) return std::nullopt;
    return canonical_from_gauss(g);
}

}  // namespace altknot
