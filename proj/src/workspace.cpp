#include "workspace.hpp"

#include <algorithm>

namespace altknot::detail {

Workspace::Workspace(std::span<const Label> code) {
    std::map<GroupId, int> ids;
    for (const auto& l : code) {
        auto [it, fresh] = ids.try_emplace(l.group(), static_cast<int>(groups_.size()));
        if (fresh) {
            GroupState g;
            g.size = l.size;
            g.index = l.index;
            g.sign = l.sign;
            g.processed = l.has_position();
            groups_.push_back(g);
        }
        auto& g = groups_[it->second];
        if (l.has_position() != g.processed)
            throw CodeError("group " + render_label(l.without_position()) +
                            " mixes positioned and plain labels");
        if (l.has_position()) g.npos = std::max(g.npos, l.position + 1);
        arr_.push_back({it->second, l.position});
    }
    for (const auto& g : groups_)
        if (g.processed) counters_[g.size] = std::max(counters_[g.size], g.index);
}

int Workspace::find_unprocessed(GroupId id) const {
    for (int i = 0; i < static_cast<int>(groups_.size()); ++i) {
        const auto& g = groups_[i];
        if (g.alive && !g.processed && g.size == id.size && g.index == id.index) return i;
    }
    throw CodeError("no unprocessed group " + std::to_string(id.size) + "_" +
                    std::to_string(id.index));
}

Label Workspace::label_of(const Entry& e) const {
    const auto& g = groups_[e.gid];
    return {g.size, g.index, g.sign, e.pos};
}

LabelSeq Workspace::labels() const {
    LabelSeq out;
    out.reserve(arr_.size());
    for (const auto& e : arr_) out.push_back(label_of(e));
    return out;
}

std::vector<int> Workspace::partners() const {
    int stride = 2;
    for (const auto& e : arr_) stride = std::max(stride, e.pos + 2);
    std::vector<int> first(groups_.size() * stride, -1);
    std::vector<int> p(arr_.size(), -1);
    for (int i = 0; i < static_cast<int>(arr_.size()); ++i) {
        const int k = arr_[i].gid * stride + arr_[i].pos + 1;
        if (first[k] < 0) {
            first[k] = i;
        } else {
            p[i] = first[k];
            p[first[k]] = i;
        }
    }
    for (int v : p)
        if (v < 0) throw CodeError("label without partner in code");
    return p;
}

void Workspace::cycle_to(int gid) {
    auto it = std::find_if(arr_.begin(), arr_.end(), [&](const Entry& e) {
        return e.gid == gid && e.pos == kNoPosition;
    });
    std::rotate(arr_.begin(), it, arr_.end());
}

bool Workspace::absorbable(const Entry& e, int gid, Sign probe_sign) const {
    if (e.gid == gid || e.pos != kNoPosition) return false;
    const auto& h = groups_[e.gid];
    return h.alive && !h.processed && (h.size == 1 || h.sign == probe_sign);
}

namespace {

// Merges boundaries joined by subgroup rings. ring_sub[t] tells whether the
// ring between boundary t-1 and t is a subgroup. Boundaries listed in
// `fixed` belong to the group itself and are never recorded. Returns the
// representative boundary of every recorded class.
std::vector<int> recorded_boundaries(const std::vector<char>& ring_sub,
                                     std::initializer_list<int> fixed) {
    std::vector<int> out;
    const int count = static_cast<int>(ring_sub.size());
    int t = 0;
    while (t < count) {
        int u = t;
        while (u + 1 < count && ring_sub[u + 1]) ++u;
        bool skip = false;
        for (int f : fixed)
            if (f >= t && f <= u) skip = true;
        if (!skip) out.push_back(t);
        t = u + 1;
    }
    return out;
}

}  // namespace

Probe Workspace::probe_negative(int gid, int q, Sign probe_sign) const {
    const int len = static_cast<int>(arr_.size());
    const auto p = partners();
    Probe pr;
    pr.deleted.assign(len, 0);
    auto in_first = [&](int i) { return i > 0 && i < q; };
    auto in_second = [&](int i) { return i > q; };
    auto starter = [&](int i) {
        return (in_first(i) && in_second(p[i])) || (in_second(i) && in_first(p[i]));
    };
    for (int i = 1; i < q; ++i)
        if (starter(i)) pr.starters.push_back(i);

    auto run = [&](const std::vector<int>& seq, int before, int after) {
        const int m = static_cast<int>(seq.size());
        if (m == 0) return;
        std::vector<int> loc(len, -1);
        for (int j = 0; j < m; ++j) loc[seq[j]] = j;
        int lo = m;
        int hi = -1;
        for (int j = 0; j < m; ++j)
            if (starter(seq[j])) {
                lo = std::min(lo, j);
                hi = std::max(hi, j);
            }
        if (hi < 0) {
            lo = 0;
            hi = m - 1;
        }
        auto close = [&](int a, int b, int& ca, int& cb) {
            ca = a;
            cb = b;
            std::vector<int> work;
            for (int j = a; j <= b; ++j) work.push_back(j);
            while (!work.empty()) {
                const int j = work.back();
                work.pop_back();
                if (starter(seq[j])) continue;
                const int lp = loc[p[seq[j]]];
                if (lp < 0) throw CodeError("inconsistent sections in code");
                while (lp < ca) work.push_back(--ca);
                while (lp > cb) work.push_back(++cb);
            }
        };
        std::vector<std::pair<int, int>> ranges;
        int ca = 0;
        int cb = 0;
        close(lo, hi, ca, cb);
        ranges.push_back({ca, cb});
        while (ca > 0 || cb < m - 1) {
            int na = ca;
            int nb = cb;
            if (ca > 0)
                --na;
            else
                ++nb;
            close(na, nb, ca, cb);
            ranges.push_back({ca, cb});
        }
        const int count = static_cast<int>(ranges.size());
        std::vector<char> sub(count, 0);
        for (int t = 1; t < count; ++t) {
            std::vector<int> ring;
            for (int j = ranges[t].first; j < ranges[t - 1].first; ++j) ring.push_back(seq[j]);
            for (int j = ranges[t - 1].second + 1; j <= ranges[t].second; ++j)
                ring.push_back(seq[j]);
            sub[t] = ring.size() == 2 && p[ring[0]] == ring[1] &&
                     absorbable(arr_[ring[0]], gid, probe_sign);
            if (sub[t]) {
                pr.deleted[ring[0]] = pr.deleted[ring[1]] = 1;
                pr.absorbed += groups_[arr_[ring[0]].gid].size;
                pr.absorbed_gids.push_back(arr_[ring[0]].gid);
            }
        }
        auto gap = [](int x, int y) { return std::max(x, y); };
        for (int t : recorded_boundaries(sub, {count - 1})) {
            const auto [a, b] = ranges[t];
            const int left = gap(a == 0 ? before : seq[a - 1], seq[a]);
            const int right = gap(seq[b], b == m - 1 ? after : seq[b + 1]);
            pr.gaps.push_back({left, right});
        }
    };

    std::vector<int> second;
    for (int i = q + 1; i < len; ++i) second.push_back(i);
    run(second, q, len);
    std::vector<int> first;
    for (int i = q - 1; i >= 1; --i) first.push_back(i);
    run(first, q, 0);
    return pr;
}

Probe Workspace::probe_positive(int gid, int q) const {
    const int len = static_cast<int>(arr_.size());
    const auto p = partners();
    Probe pr;
    pr.deleted.assign(len, 0);
    const int n1 = q - 1;
    const int n2 = len - q - 1;
    for (int i = 1; i < q; ++i)
        if (p[i] > q) pr.starters.push_back(i);

    std::vector<std::pair<int, int>> bounds{{0, 0}};
    std::vector<char> sub{0};
    int a = 0;
    int b = 0;
    while (a < n1 && b < n2) {
        int na = a + 1;
        int nb = b + 1;
        // Grow until every arc in either prefix has its partner inside too.
        int ca = 0;
        int cb = 0;
        while (ca < na || cb < nb) {
            if (ca < na) {
                const int i = 1 + ca++;
                const int j = p[i];
                if (j > 0 && j < q) na = std::max(na, j);
                else if (j > q) nb = std::max(nb, j - q);
            } else {
                const int i = q + 1 + cb++;
                const int j = p[i];
                if (j > 0 && j < q) na = std::max(na, j);
                else if (j > q) nb = std::max(nb, j - q);
            }
        }
        std::vector<int> ring;
        for (int j = a; j < na; ++j) ring.push_back(1 + j);
        for (int j = b; j < nb; ++j) ring.push_back(q + 1 + j);
        const bool s = ring.size() == 2 && p[ring[0]] == ring[1] &&
                       absorbable(arr_[ring[0]], gid, Sign::plus);
        if (s) {
            pr.deleted[ring[0]] = pr.deleted[ring[1]] = 1;
            pr.absorbed += groups_[arr_[ring[0]].gid].size;
            pr.absorbed_gids.push_back(arr_[ring[0]].gid);
        }
        bounds.push_back({na, nb});
        sub.push_back(s);
        a = na;
        b = nb;
    }
    const int last = static_cast<int>(bounds.size()) - 1;
    for (int t : recorded_boundaries(sub, {0, last}))
        pr.gaps.push_back({1 + bounds[t].first, q + 1 + bounds[t].second});
    return pr;
}

int Workspace::next_index(int size, int gid, IndexPolicy policy) {
    if (policy == IndexPolicy::keep) {
        const auto& g = groups_[gid];
        auto used = [&](int idx) {
            for (int h = 0; h < static_cast<int>(groups_.size()); ++h)
                if (h != gid && groups_[h].alive && groups_[h].size == size &&
                    groups_[h].index == idx)
                    return true;
            return false;
        };
        if (g.size == size && !used(g.index)) return g.index;
        int idx = 1;
        while (used(idx)) ++idx;
        return idx;
    }
    return ++counters_[size];
}

Orbit Workspace::commit(int gid, const Probe& pr, Mode mode, IndexPolicy policy) {
    const int len = static_cast<int>(arr_.size());
    auto& g = groups_[gid];
    for (int h : pr.absorbed_gids) groups_[h].alive = false;
    const int size = g.size + pr.absorbed;
    if (size > 1)
        g.sign = mode == Mode::negative ? Sign::minus : Sign::plus;
    else
        g.sign = Sign::plus;
    g.index = next_index(size, gid, policy);
    g.size = size;
    g.processed = true;
    g.npos = 1 + static_cast<int>(pr.gaps.size());

    Orbit orbit;
    orbit.alignment = mode == Mode::negative ? Sign::minus : Sign::plus;
    orbit.absorbed = pr.absorbed;
    orbit.position_gaps = pr.gaps;
    for (int i : pr.starters) orbit.core_starters.push_back(label_of(arr_[i]));

    std::vector<std::vector<int>> at(len + 1);
    for (int k = 0; k < static_cast<int>(pr.gaps.size()); ++k) {
        at[pr.gaps[k].first].push_back(k + 1);
        at[pr.gaps[k].second].push_back(k + 1);
    }
    std::vector<Entry> next;
    next.reserve(len + 2 * pr.gaps.size());
    for (int i = 0; i <= len; ++i) {
        for (int pos : at[i]) next.push_back({gid, pos});
        if (i == len || pr.deleted[i]) continue;
        Entry e = arr_[i];
        if (e.gid == gid) e.pos = 0;
        next.push_back(e);
    }
    arr_ = std::move(next);
    orbit.group = label_of({gid, 0});
    return orbit;
}

Orbit Workspace::process(int gid, Mode mode, IndexPolicy policy) {
    const auto& g = groups_[gid];
    if (!g.alive || g.processed) throw CodeError("group already processed");
    cycle_to(gid);
    const int len = static_cast<int>(arr_.size());
    int q = 1;
    while (q < len && !(arr_[q].gid == gid && arr_[q].pos == kNoPosition)) ++q;
    if (q == len) throw CodeError("group appears once");
    if (mode == Mode::negative)
        return commit(gid, probe_negative(gid, q, Sign::minus), mode, policy);
    return commit(gid, probe_positive(gid, q), mode, policy);
}

void Workspace::complete() {
    std::vector<int> order;
    std::vector<char> seen(groups_.size(), 0);
    for (const auto& e : arr_)
        if (!seen[e.gid]) {
            seen[e.gid] = 1;
            order.push_back(e.gid);
        }
    for (int gid : order) {
        const auto& g = groups_[gid];
        if (!g.alive || g.processed) continue;
        if (g.size > 1) {
            process(gid, g.sign == Sign::minus ? Mode::negative : Mode::positive,
                    IndexPolicy::counter);
            continue;
        }
        cycle_to(gid);
        const int len = static_cast<int>(arr_.size());
        int q = 1;
        while (!(arr_[q].gid == gid && arr_[q].pos == kNoPosition)) ++q;
        (void)len;
        auto neg = probe_negative(gid, q, Sign::minus);
        auto pos = probe_positive(gid, q);
        if (neg.flypes() && pos.flypes())
            throw CodeError("loner has flypes along both alignments");
        if (neg.flypes())
            commit(gid, neg, Mode::negative, IndexPolicy::counter);
        else
            commit(gid, pos, Mode::positive, IndexPolicy::counter);
    }
}

}  // namespace altknot::detail
