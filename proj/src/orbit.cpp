#include "altknot/orbit.hpp"

#include "workspace.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace altknot {

using detail::Workspace;

namespace {

std::tuple<int, int, int> token_key(const Label& l) {
    return {l.size, l.index, l.position};
}

}  // namespace

Range close_subsequence(std::span<const Label> code, const Label& group, Range seed) {
    const int len = static_cast<int>(code.size());
    if (len == 0 || token_key(code[0]) != token_key(group))
        throw CodeError("close_subsequence: code must start with an arc of the group");
    std::map<std::tuple<int, int, int>, std::vector<int>> where;
    for (int i = 0; i < len; ++i) where[token_key(code[i])].push_back(i);
    for (auto& [k, v] : where)
        if (v.size() != 2) throw CodeError("close_subsequence: unpaired label");
    const int q = where[token_key(group)][1];
    auto partner = [&](int i) {
        const auto& v = where[token_key(code[i])];
        return v[0] == i ? v[1] : v[0];
    };
    auto section_of = [&](int i) { return i == 0 || i == q ? 0 : (i < q ? 1 : 2); };

    if (seed.length() <= 0) throw CodeError("close_subsequence: empty seed");
    const int sec = section_of(seed.first);
    if (sec == 0 || section_of(seed.last - 1) != sec)
        throw CodeError("close_subsequence: seed is not inside one section");

    int lo = seed.first;
    int hi = seed.last - 1;
    std::vector<int> work;
    for (int i = lo; i <= hi; ++i) work.push_back(i);
    while (!work.empty()) {
        const int i = work.back();
        work.pop_back();
        const int p = partner(i);
        if (section_of(p) != sec) {
            if (section_of(p) != 0 && section_of(p) != sec) continue;  // starter
            throw CodeError("close_subsequence: closure escapes the section");
        }
        for (; p < lo;) work.push_back(--lo);
        for (; p > hi;) work.push_back(++hi);
    }
    return {lo, hi + 1};
}

OrbitStep orbit_of_negative(std::span<const Label> code, GroupId group) {
    Workspace ws(code);
    const int gid = ws.find_unprocessed(group);
    OrbitStep out;
    out.orbit = ws.process(gid, detail::Mode::negative, detail::IndexPolicy::keep);
    out.code = ws.labels();
    return out;
}

OrbitStep orbit_of_positive(std::span<const Label> code, GroupId group) {
    Workspace ws(code);
    const int gid = ws.find_unprocessed(group);
    OrbitStep out;
    out.orbit = ws.process(gid, detail::Mode::positive, detail::IndexPolicy::keep);
    out.code = ws.labels();
    return out;
}

MasterGroupCode complete_master_code(std::span<const Label> partial) {
    Workspace ws(partial);
    ws.complete();
    return {ws.labels()};
}

MasterGroupCode build_master_group_code(const GroupCode& gc) {
    validate_group_code(gc.entries);
    Workspace ws(gc.entries);
    ws.reset_counters();
    ws.complete();
    return {ws.labels()};
}

Sign loner_alignment(std::span<const Label> mgc, GroupId loner) {
    const int len = static_cast<int>(mgc.size());
    std::vector<int> zero, one;
    for (int i = 0; i < len; ++i) {
        if (mgc[i].group() != loner) continue;
        if (mgc[i].position == 0) zero.push_back(i);
        if (mgc[i].position == 1) one.push_back(i);
    }
    if (zero.size() != 2) throw CodeError("loner_alignment: loner not found");
    if (one.empty()) return Sign::plus;
    auto inside = [&](int i) { return i > zero[0] && i < zero[1]; };
    return inside(one[0]) == inside(one[1]) ? Sign::minus : Sign::plus;
}

}  // namespace altknot
