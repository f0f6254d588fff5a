#include "altknot/codes.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace altknot {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw CodeError("malformed label: '" + std::string(whole) + "'");
    return v;
}

std::vector<std::string_view> split_items(std::string_view text) {
    std::vector<std::string_view> out;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            auto item = trim(text.substr(start, i - start));
            out.push_back(item);
            start = i + 1;
        }
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

}  // namespace

Label parse_label(std::string_view text) {
    auto t = trim(text);
    Label l;
    std::string_view s = t;
    if (!s.empty() && s.front() == '-') {
        l.sign = Sign::minus;
        s.remove_prefix(1);
    } else if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    auto us = s.find('_');
    if (us == std::string_view::npos) throw CodeError("malformed label: '" + std::string(t) + "'");
    l.size = parse_int(s.substr(0, us), t);
    auto rest = s.substr(us + 1);
    auto caret = rest.find('^');
    if (caret == std::string_view::npos) {
        l.index = parse_int(rest, t);
    } else {
        l.index = parse_int(rest.substr(0, caret), t);
        l.position = parse_int(rest.substr(caret + 1), t);
        if (l.position < 0) throw CodeError("malformed label: '" + std::string(t) + "'");
    }
    if (l.size < 1 || l.index < 1) throw CodeError("malformed label: '" + std::string(t) + "'");
    return l;
}

std::string render_label(const Label& l) {
    std::string s;
    if (l.sign == Sign::minus) s += '-';
    s += std::to_string(l.size);
    s += '_';
    s += std::to_string(l.index);
    if (l.has_position()) {
        s += '^';
        s += std::to_string(l.position);
    }
    return s;
}

std::string render(std::span<const Label> seq) {
    std::string s;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ',';
        s += render_label(seq[i]);
    }
    return s;
}

LabelSeq parse_labels(std::string_view text) {
    LabelSeq out;
    for (auto item : split_items(text)) out.push_back(parse_label(item));
    return out;
}

void validate_group_code(std::span<const Label> seq) {
    if (seq.empty()) throw CodeError("empty code");
    std::map<GroupId, std::pair<int, Sign>> seen;
    for (const auto& l : seq) {
        if (l.has_position()) throw CodeError("unexpected position in group code: " + render_label(l));
        auto [it, fresh] = seen.try_emplace(l.group(), 0, l.sign);
        if (it->second.second != l.sign)
            throw CodeError("inconsistent sign for group " + render_label(l.without_position()));
        ++it->second.first;
    }
    for (const auto& [g, v] : seen)
        if (v.first != 2)
            throw CodeError("group " + std::to_string(g.size) + "_" + std::to_string(g.index) + " appears " +
                            std::to_string(v.first) + " times");
}

void validate_master_code(std::span<const Label> seq) {
    if (seq.empty()) throw CodeError("empty code");
    std::map<GroupId, Sign> sign;
    std::map<std::pair<GroupId, int>, int> count;
    for (const auto& l : seq) {
        if (!l.has_position()) throw CodeError("missing position: " + render_label(l));
        auto [it, fresh] = sign.try_emplace(l.group(), l.sign);
        if (it->second != l.sign && l.size > 1)
            throw CodeError("inconsistent sign for group " + render_label(l.without_position()));
        ++count[{l.group(), l.position}];
    }
    std::map<GroupId, int> npos;
    for (const auto& [k, c] : count) {
        if (c != 2)
            throw CodeError("label " + render_label({k.first.size, k.first.index, sign[k.first], k.second}) +
                            " appears " + std::to_string(c) + " times");
        npos[k.first] = std::max(npos[k.first], k.second + 1);
    }
    for (const auto& [g, k] : npos) {
        for (int p = 0; p < k; ++p)
            if (!count.contains({g, p}))
                throw CodeError("group " + std::to_string(g.size) + "_" + std::to_string(g.index) +
                                " is missing position " + std::to_string(p));
    }
}

GroupCode parse_group_code(std::string_view text) {
    GroupCode c{parse_labels(text)};
    validate_group_code(c.entries);
    return c;
}

MasterGroupCode parse_master_code(std::string_view text) {
    MasterGroupCode c{parse_labels(text)};
    validate_master_code(c.entries);
    return c;
}

std::variant<GroupCode, MasterGroupCode> parse_code(std::string_view text) {
    auto seq = parse_labels(text);
    if (seq.empty()) throw CodeError("empty code");
    bool any = std::any_of(seq.begin(), seq.end(), [](const Label& l) { return l.has_position(); });
    if (any) {
        validate_master_code(seq);
        return MasterGroupCode{std::move(seq)};
    }
    validate_group_code(seq);
    return GroupCode{std::move(seq)};
}

int crossing_count(std::span<const Label> seq) {
    std::map<GroupId, int> sizes;
    for (const auto& l : seq) sizes[l.group()] = l.size;
    int n = 0;
    for (const auto& [g, s] : sizes) n += s;
    return n;
}

int group_count(std::span<const Label> seq) {
    std::map<GroupId, int> sizes;
    for (const auto& l : seq) sizes[l.group()] = 1;
    return static_cast<int>(sizes.size());
}

// ---------------------------------------------------------------- Gauss / DT

namespace {

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    size_t i = 0;
    auto sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (i < text.size()) {
        while (i < text.size() && sep(text[i])) ++i;
        if (i >= text.size()) break;
        size_t j = i;
        while (j < text.size() && !sep(text[j])) ++j;
        auto item = text.substr(i, j - i);
        int v = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || p != item.data() + item.size())
            throw CodeError("malformed integer: '" + std::string(item) + "'");
        out.push_back(v);
        i = j;
    }
    return out;
}

template <class V>
std::string join_ints(const V& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

void validate_gauss(const GaussCode& g) {
    if (g.seq.empty() || g.seq.size() % 2) throw CodeError("Gauss code must have nonzero even length");
    std::map<int, int> count;
    for (int c : g.seq) {
        if (c < 1) throw CodeError("crossing ids must be positive");
        ++count[c];
    }
    for (auto [c, k] : count)
        if (k != 2) throw CodeError("crossing " + std::to_string(c) + " appears " + std::to_string(k) + " times");
}

GaussCode parse_gauss(std::string_view text) {
    GaussCode g{parse_int_list(text)};
    validate_gauss(g);
    return g;
}

std::string render(const GaussCode& g) { return join_ints(g.seq); }
std::string render(const DTCode& d) { return join_ints(d.evens); }

DTCode parse_dt(std::string_view text) {
    DTCode d{parse_int_list(text), false};
    const int n = static_cast<int>(d.evens.size());
    std::vector<bool> used(2 * n + 1, false);
    for (int e : d.evens) {
        int a = e < 0 ? -e : e;
        if (a % 2 || a < 2 || a > 2 * n || used[a]) throw CodeError("not a DT code: " + std::string(text));
        used[a] = true;
    }
    return d;
}

GaussCode normalize_gauss(const GaussCode& g) {
    std::map<int, int> ren;
    GaussCode out;
    out.seq.reserve(g.seq.size());
    for (int c : g.seq) {
        auto [it, fresh] = ren.try_emplace(c, static_cast<int>(ren.size()) + 1);
        out.seq.push_back(it->second);
    }
    return out;
}

TracedGauss expand_traced(const GroupCode& code) {
    std::map<GroupId, int> base;
    std::map<GroupId, int> seen;
    int next = 1;
    TracedGauss t;
    t.group_of.push_back({0, 0});
    t.offset_of.push_back(-1);
    for (const auto& l : code.entries) {
        auto gid = l.group();
        auto [it, fresh] = base.try_emplace(gid, next);
        if (fresh) {
            next += l.size;
            for (int k = 0; k < l.size; ++k) {
                t.group_of.push_back(gid);
                t.offset_of.push_back(k);
            }
        }
        int b = it->second;
        int pass = seen[gid]++;
        bool forward = pass == 0 || l.sign == Sign::plus || l.size == 1;
        for (int k = 0; k < l.size; ++k) t.gauss.seq.push_back(forward ? b + k : b + l.size - 1 - k);
    }
    return t;
}

GaussCode expand_to_gauss(const GroupCode& code) { return expand_traced(code).gauss; }

GroupCode groups_from_gauss(const GaussCode& g) {
    validate_gauss(g);
    auto gn = normalize_gauss(g);
    const auto& s = gn.seq;
    const int len = static_cast<int>(s.size());
    const int n = len / 2;
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::pair<int, int>, int> adj;
    for (int k = 0; k < len; ++k) {
        int a = s[k], b = s[(k + 1) % len];
        if (a == b) continue;
        ++adj[{std::min(a, b), std::max(a, b)}];
    }
    for (auto [p, c] : adj)
        if (c >= 2) parent[find(p.first)] = find(p.second);

    // Cyclic run boundaries: position k starts a run unless s[k-1] and s[k]
    // belong to the same class.
    std::vector<int> cls(len);
    for (int k = 0; k < len; ++k) cls[k] = find(s[k]);
    std::vector<int> class_size(n + 1, 0);
    for (int c = 1; c <= n; ++c) ++class_size[find(c)];

    bool all_one = std::all_of(cls.begin(), cls.end(), [&](int c) { return c == cls[0]; });
    if (all_one) {
        // whole knot is one twist region
        for (int k = 0; k < n; ++k)
            if (s[k] != s[k + n]) throw CodeError("unrealizable Gauss code: " + render(g));
        Label l{n, 1, Sign::plus, kNoPosition};
        return GroupCode{{l, l}};
    }
    int start = 0;
    while (cls[(start - 1 + len) % len] == cls[start]) ++start;

    struct Run { int cls; std::vector<int> xs; };
    std::vector<Run> runs;
    for (int k = 0; k < len; ++k) {
        int p = (start + k) % len;
        if (k == 0 || cls[p] != runs.back().cls) runs.push_back({cls[p], {}});
        runs.back().xs.push_back(s[p]);
    }
    std::map<int, std::vector<int>> first_run;
    std::map<int, Label> labels;
    std::map<int, int> per_size;
    GroupCode out;
    for (auto& r : runs) {
        int m = class_size[r.cls];
        if (static_cast<int>(r.xs.size()) != m) throw CodeError("unrealizable Gauss code: " + render(g));
        auto it = labels.find(r.cls);
        if (it == labels.end()) {
            Label l{m, ++per_size[m], Sign::plus, kNoPosition};
            labels.emplace(r.cls, l);
            first_run.emplace(r.cls, r.xs);
            out.entries.push_back(l);
        } else {
            const auto& f = first_run[r.cls];
            Label& l = it->second;
            if (r.xs == f) {
                l.sign = Sign::plus;
            } else if (std::equal(r.xs.begin(), r.xs.end(), f.rbegin())) {
                l.sign = Sign::minus;
            } else {
                throw CodeError("unrealizable Gauss code: " + render(g));
            }
            if (m == 1) l.sign = Sign::plus;
            out.entries.push_back(l);
        }
    }
    // propagate signs to the first occurrences
    for (auto& e : out.entries) {
        for (auto& [c, l] : labels)
            if (l.group() == e.group()) e.sign = l.sign;
    }
    validate_group_code(out.entries);
    return out;
}

DTCode dt_code_at(const GaussCode& g, int start, bool reversed) {
    const int len = static_cast<int>(g.seq.size());
    const int n = len / 2;
    std::map<int, int> odd, even;
    for (int k = 0; k < len; ++k) {
        int p = reversed ? ((start - k) % len + len) % len : (start + k) % len;
        int label = k + 1;
        int c = g.seq[p];
        auto& slot = (label % 2) ? odd : even;
        if (!slot.emplace(c, label).second)
            throw CodeError("not a knot shadow: crossing " + std::to_string(c) + " gets two labels of equal parity");
    }
    DTCode d;
    d.evens.assign(n, 0);
    for (auto [c, o] : odd) d.evens[(o - 1) / 2] = even.at(c);
    return d;
}

DTCode dt_code(const GaussCode& g, bool canonical) {
    validate_gauss(g);
    if (!canonical) return dt_code_at(g, 0, false);
    const int len = static_cast<int>(g.seq.size());
    DTCode best = dt_code_at(g, 0, false);
    for (int s = 0; s < len; ++s)
        for (bool rev : {false, true}) {
            auto d = dt_code_at(g, s, rev);
            if (d.evens < best.evens) best = std::move(d);
        }
    best.canonical = true;
    return best;
}

GaussCode gauss_from_dt(const DTCode& d) {
    const int n = static_cast<int>(d.evens.size());
    GaussCode g;
    g.seq.assign(2 * n, 0);
    for (int i = 0; i < n; ++i) {
        int e = d.evens[i] < 0 ? -d.evens[i] : d.evens[i];
        g.seq[2 * i] = i + 1;
        g.seq[e - 1] = i + 1;
    }
    validate_gauss(g);
    return g;
}

// Rosenstiehl's criterion on the interlacement graph.
bool is_realizable(const GaussCode& g) {
    validate_gauss(g);
    auto gn = normalize_gauss(g);
    const int len = static_cast<int>(gn.seq.size());
    const int n = len / 2;
    std::vector<int> p1(n, -1), p2(n, -1);
    for (int k = 0; k < len; ++k) {
        int c = gn.seq[k] - 1;
        (p1[c] < 0 ? p1[c] : p2[c]) = k;
    }
    std::vector<std::vector<char>> inter(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool x = (p1[a] < p1[b] && p1[b] < p2[a]) != (p1[a] < p2[b] && p2[b] < p2[a]);
            inter[a][b] = inter[b][a] = x;
        }
    for (int a = 0; a < n; ++a) {
        int deg = 0;
        for (int b = 0; b < n; ++b) deg += inter[a][b];
        if (deg % 2) return false;
    }
    auto common_even = [&](int a, int b) {
        int c = 0;
        for (int x = 0; x < n; ++x) c += inter[a][x] && inter[b][x];
        return c % 2 == 0;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!inter[a][b] && !common_even(a, b)) return false;
    // edges with an even number of common neighbours must form a cocycle
    std::vector<int> color(n, -1);
    for (int r = 0; r < n; ++r) {
        if (color[r] >= 0) continue;
        color[r] = 0;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < n; ++b) {
                if (!inter[a][b]) continue;
                int want = color[a] ^ (common_even(a, b) ? 1 : 0);
                if (color[b] < 0) {
                    color[b] = want;
                    stack.push_back(b);
                } else if (color[b] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace altknot
