#include "altknot/engine.hpp"

#include "altknot/oracle.hpp"
#include "altknot/orbit.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace altknot {

namespace {

struct Candidate {
    MasterArray array;
    Op op;
};

struct Work {
    std::vector<Candidate> out;
    std::array<long, kOpCount> invoked{};
    long guard = 0;
    long untracked = 0;
};

template <class F>
std::vector<Work> parallel_map(const std::vector<MasterArray>& in, int jobs, F f) {
    std::vector<Work> out(in.size());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(in.size())));
    if (jobs == 1) {
        for (size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
        return out;
    }
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&, j] {
            for (size_t i = j; i < in.size(); i += jobs) out[i] = f(in[i]);
        });
    for (auto& t : pool) t.join();
    return out;
}

bool has_negative_group(const MasterGroupCode& c) {
    return std::any_of(c.entries.begin(), c.entries.end(),
                       [](const Label& l) { return l.sign == Sign::minus && l.size >= 2; });
}

std::optional<GroupId> new_group(const MasterArray& before, const MasterGroupCode& after, int size) {
    std::set<GroupId> had;
    for (const auto& l : before.entries) had.insert(l.group());
    for (const auto& l : after.entries)
        if (l.size == size && !had.count(l.group())) return l.group();
    return std::nullopt;
}

class Builder {
public:
    explicit Builder(const EngineOptions& opt) : opt_(opt) {}

    bool on(Rule r) const { return opt_.mode == Mode::reduced && opt_.rules.enabled(r); }

    Work drots(const MasterArray& k) const {
        Work w;
        for (const auto& o : group_orbits(k.entries)) {
            const GroupId g = o.group.group();
            if (d_negative_eligible(k.entries, g)) d_negative(w, k, o);
            if (d_positive2_eligible(k.entries, g)) d_positive2(w, k, o);
        }
        if (!on(Rule::rots) || verdict_rots(k).accept) {
            for (const auto& o : group_orbits(k.entries)) {
                const GroupId g = o.group.group();
                if (!rots_eligible(k.entries, g)) continue;
                const Op op = g.size == 2 ? Op::rots2 : Op::rots3;
                for (int p = 0; p < o.positions; ++p) {
                    ++w.invoked[static_cast<int>(op)];
                    auto out = g.size == 2 ? apply_rots2(k, g, p) : apply_rots3(k, g, p);
                    emit(w, out, op);
                }
            }
        }
        return w;
    }

    Work turn(const MasterArray& k) const {
        Work w;
        for (const auto& g : t_candidates(k, on(Rule::t_queue))) {
            if (on(Rule::t_config) && !verdict_t(k, g).accept) continue;
            const int positions = group_positions(k, g);
            for (int p = 0; p < positions; ++p) {
                ++w.invoked[static_cast<int>(Op::turn)];
                auto out = apply_t(k, g, p);
                if (on(Rule::t_post) && !verdict_t_output(out, k, g).accept) continue;
                emit(w, out, Op::turn);
            }
        }
        return w;
    }

    Work ots(const MasterArray& k, bool first) const {
        Work w;
        std::optional<OtsPlan> plan;
        if (first && (on(Rule::ots_input) || on(Rule::ots_select))) {
            plan = verdict_ots_input(k, opt_.rules.ots_threshold);
            if (on(Rule::ots_input) && !plan->verdict.accept) return w;
        }
        auto sites = find_ots_tangles(k, opt_.config_bound);
        if (plan && on(Rule::ots_select)) sites = select_ots_tangles(*plan, std::move(sites));
        for (const auto& s : sites) {
            ++w.invoked[static_cast<int>(Op::ots)];
            MasterGroupCode out;
            try {
                out = apply_ots(k, s);
            } catch (const CodeError&) {
                ++w.guard;
                continue;
            }
            if (on(Rule::ots_post) && has_negative_group(out)) continue;
            emit(w, out, Op::ots);
        }
        return w;
    }

    // Arrays that go to T and to the first OTS round after DROTS.
    bool feeds_t_and_ots(const MasterArray& k) const {
        if (!on(Rule::t_queue) && !on(Rule::ots_input)) return true;
        for (const auto& d : classify_drots(k))
            if (d.sign == Sign::minus) return false;
        return true;
    }

private:
    static int group_positions(const MasterArray& k, GroupId g) {
        int p = 0;
        for (const auto& l : k.entries)
            if (l.group() == g) p = std::max(p, l.position + 1);
        return p;
    }

    void emit(Work& w, const MasterGroupCode& out, Op op) const {
        auto canon = canonicalize(out);
        if (!canon) {
            ++w.guard;
            return;
        }
        w.out.push_back({std::move(*canon), op});
    }

    // Verdict on the output, evaluated only when the direct reading of the
    // rewritten code is already canonical so that the group can be followed.
    template <class V>
    void judged(Work& w, const MasterGroupCode& out, std::optional<GroupId> g, Op op, V verdict) const {
        auto canon = canonicalize(out);
        if (!canon) {
            ++w.guard;
            return;
        }
        auto tracked = master_array_tracked(out);
        if (g && tracked.array == *canon && tracked.renamed.count(*g)) {
            if (!verdict(*canon, tracked.renamed.at(*g)).accept) return;
        } else {
            ++w.untracked;
        }
        w.out.push_back({std::move(*canon), op});
    }

    void d_negative(Work& w, const MasterArray& k, const GroupOrbit& o) const {
        const GroupId g = o.group.group();
        std::vector<int> positions(o.positions);
        for (int p = 0; p < o.positions; ++p) positions[p] = p;
        const bool loose_loner = g.size == 1 && o.positions > 1 && loner_alignment(k.entries, g) == Sign::plus;
        if (on(Rule::d_symmetry) && !loose_loner) positions = flype_symmetry_positions(k, g);
        for (int p : positions) {
            ++w.invoked[static_cast<int>(Op::d_negative)];
            auto out = apply_d_negative(k, g, p);
            if (!on(Rule::d_negative)) {
                emit(w, out, Op::d_negative);
                continue;
            }
            judged(w, out, new_group(k, out, g.size + 1), Op::d_negative, verdict_d_negative);
        }
    }

    void d_positive2(Work& w, const MasterArray& k, const GroupOrbit& o) const {
        const GroupId g = o.group.group();
        for (int p = 0; p < o.positions; ++p) {
            ++w.invoked[static_cast<int>(Op::d_positive2)];
            auto out = apply_d_positive2(k, g, p);
            if (!on(Rule::d_positive2)) {
                emit(w, out, Op::d_positive2);
                continue;
            }
            judged(w, out, g, Op::d_positive2, verdict_d_positive2);
        }
    }

    const EngineOptions& opt_;
};

class LevelBuilder {
public:
    explicit LevelBuilder(const EngineOptions& opt) : opt_(opt), b_(opt) {}

    // Submits the outputs in input order; returns the new arrays.
    template <class F>
    std::vector<MasterArray> run(const std::vector<MasterArray>& in, KnotClass cls, F f) {
        auto works = parallel_map(in, opt_.jobs, f);
        std::vector<MasterArray> fresh;
        for (auto& w : works) {
            for (int i = 0; i < kOpCount; ++i) rep_.ops[i].invoked += w.invoked[i];
            rep_.guard += w.guard;
            rep_.untracked += w.untracked;
            for (auto& c : w.out) {
                auto& st = rep_.ops[static_cast<int>(c.op)];
                ++st.built;
                ++rep_.built;
                auto rec = make_record(std::move(c.array), cls);
                if (store_.insert_if_new(rec) == Insert::inserted) {
                    ++st.kept;
                    fresh.push_back(rec.array);
                }
            }
        }
        return fresh;
    }

    Level build(std::vector<MasterArray> inputs) {
        std::stable_sort(inputs.begin(), inputs.end(), [](const MasterArray& a, const MasterArray& b) {
            return group_orbits(a.entries).size() < group_orbits(b.entries).size();
        });
        std::vector<MasterArray> ka;
        for (size_t i = 0; i < inputs.size();) {
            const auto gn = group_orbits(inputs[i].entries).size();
            size_t j = i;
            while (j < inputs.size() && group_orbits(inputs[j].entries).size() == gn) ++j;
            std::vector<MasterArray> part(inputs.begin() + i, inputs.begin() + j);
            auto fresh = run(part, KnotClass::a, [&](const MasterArray& k) { return b_.drots(k); });
            ka.insert(ka.end(), fresh.begin(), fresh.end());
            if (purging()) store_.purge_group_number(static_cast<int>(gn));
            i = j;
        }
        if (purging()) store_.purge_class(KnotClass::a);

        if (opt_.mode == Mode::unreduced)
            closure(ka);
        else
            schedule(ka);

        Level lv;
        std::set<std::vector<int>> seen;
        for (const auto& r : store_.archive()) {
            if (seen.insert(r.key.evens).second)
                lv.records.push_back(r);
            else
                ++rep_.resubmitted;
        }
        for (const auto& r : lv.records) ++rep_.by_class[static_cast<int>(r.cls)];
        rep_.knots = static_cast<long>(lv.records.size());
        rep_.high_water = store_.high_water();
        if (!lv.records.empty()) rep_.n = lv.records.front().n;
        lv.report = rep_;
        return lv;
    }

private:
    bool purging() const { return opt_.purge && opt_.mode == Mode::reduced; }

    std::vector<MasterArray> ots_rounds(std::vector<MasterArray> queue, bool first, KnotClass cls) {
        std::vector<MasterArray> all;
        while (!queue.empty()) {
            ++rep_.rounds;
            auto fresh = run(queue, cls, [&](const MasterArray& k) { return b_.ots(k, first); });
            all.insert(all.end(), fresh.begin(), fresh.end());
            first = false;
            cls = KnotClass::c;
            queue = std::move(fresh);
        }
        return all;
    }

    void schedule(const std::vector<MasterArray>& ka) {
        std::vector<MasterArray> queue;
        for (const auto& k : ka)
            if (b_.feeds_t_and_ots(k)) queue.push_back(k);
        ++rep_.rounds;
        auto t_out = run(queue, KnotClass::b, [&](const MasterArray& k) { return b_.turn(k); });
        queue.insert(queue.end(), t_out.begin(), t_out.end());
        auto produced = ots_rounds(queue, true, KnotClass::b);
        if (opt_.single_round) return;
        const long before = static_cast<long>(store_.archive().size());
        while (!produced.empty()) {
            ++rep_.rounds;
            auto t_new = run(produced, KnotClass::c, [&](const MasterArray& k) { return b_.turn(k); });
            if (t_new.empty()) break;
            produced = ots_rounds(t_new, false, KnotClass::c);
        }
        rep_.late_rounds_productive = static_cast<long>(store_.archive().size()) > before;
    }

    void closure(const std::vector<MasterArray>& ka) {
        auto frontier = ka;
        KnotClass cls = KnotClass::b;
        while (!frontier.empty()) {
            ++rep_.rounds;
            auto a = run(frontier, cls, [&](const MasterArray& k) {
                auto w = b_.turn(k);
                auto o = b_.ots(k, false);
                for (int i = 0; i < kOpCount; ++i) w.invoked[i] += o.invoked[i];
                w.guard += o.guard;
                w.out.insert(w.out.end(), o.out.begin(), o.out.end());
                return w;
            });
            if (rep_.rounds > 1 && !a.empty()) rep_.late_rounds_productive = true;
            frontier = std::move(a);
            cls = KnotClass::c;
        }
    }

    const EngineOptions& opt_;
    Builder b_;
    Store store_;
    LevelReport rep_;
};

}  // namespace

Level extend(const std::vector<MasterArray>& inputs, const EngineOptions& opt) {
    LevelBuilder lb(opt);
    auto lv = lb.build(inputs);
    if (lv.records.empty() && !inputs.empty()) lv.report.n = crossing_count(inputs.front().entries) + 1;
    return lv;
}

MasterArray trefoil() { return canonical_from_gauss(GaussCode{{1, 2, 3, 1, 2, 3}}); }

MasterArray figure_eight() { return canonical_from_gauss(GaussCode{{1, 2, 3, 1, 4, 3, 2, 4}}); }

Enumeration enumerate(int n_from, int n_to, std::vector<MasterArray> seeds, const EngineOptions& opt,
                      const std::function<void(const Level&)>& on_level, bool retain) {
    Enumeration e;
    auto seed_level = [&](int n, std::vector<MasterArray> arrays) {
        Level lv;
        lv.report.n = n;
        std::sort(arrays.begin(), arrays.end());
        arrays.erase(std::unique(arrays.begin(), arrays.end()), arrays.end());
        for (auto& a : arrays) lv.records.push_back(make_record(std::move(a), KnotClass::a));
        lv.report.knots = static_cast<long>(lv.records.size());
        lv.report.by_class[0] = lv.report.knots;
        e.levels.push_back(std::move(lv));
        if (on_level) on_level(e.levels.back());
    };
    int n = n_from;
    if (seeds.empty()) {
        if (n_from == 3) {
            seed_level(3, {trefoil()});
            if (n_to < 4) return e;
            n = 4;
        } else if (n_from != 4) {
            throw CodeError("default seeds exist for 3 and 4 crossings only");
        }
        seeds = {figure_eight()};
    }
    for (const auto& s : seeds)
        if (crossing_count(s.entries) != n) throw CodeError("seed crossing number differs from --from");
    seed_level(n, std::move(seeds));
    while (n < n_to) {
        std::vector<MasterArray> in;
        for (const auto& r : e.levels.back().records) in.push_back(r.array);
        if (!retain) e.levels.back().records.clear();
        e.levels.push_back(extend(in, opt));
        ++n;
        if (on_level) on_level(e.levels.back());
    }
    return e;
}

}  // namespace altknot
