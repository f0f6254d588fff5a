#include "altknot/engine.hpp"
#include "altknot/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

using namespace altknot;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 1, data = 2, internal = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Group-label text, a master array line from the database, a Gauss code or
// a DT code.
MasterArray read_knot(std::string text, const std::string& format) {
    if (auto tab = text.find('\t'); tab != std::string::npos) text = text.substr(tab + 1);
    std::string f = format;
    if (f == "auto") f = text.find('_') != std::string::npos ? "group" : "gauss";
    if (f == "group") {
        auto code = parse_code(text);
        if (auto* gc = std::get_if<GroupCode>(&code)) return canonical_via_gauss(*gc);
        return master_array(std::get<MasterGroupCode>(code));
    }
    if (f == "gauss") {
        auto g = parse_gauss(text);
        if (!is_realizable(g)) throw CodeError("Gauss code is not planar");
        return canonical_from_gauss(g);
    }
    if (f == "dt") return canonical_from_gauss(gauss_from_dt(parse_dt(text)));
    throw UsageError("unknown format " + format);
}

// Inputs from --code or from a file, one per line; errors name the line.
std::vector<MasterArray> read_inputs(const std::string& code, const std::string& file,
                                     const std::string& format) {
    if (!code.empty()) {
        try {
            return {read_knot(code, format)};
        } catch (const CodeError& e) {
            throw DataError(std::string("--code: ") + e.what());
        }
    }
    std::ifstream in(file);
    if (!in) throw DataError("cannot read " + file);
    std::vector<MasterArray> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(read_knot(line, format));
        } catch (const CodeError& e) {
            throw DataError(file + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

json level_json(const Level& lv) {
    const auto& r = lv.report;
    json j;
    j["n"] = r.n;
    j["knots"] = r.knots;
    j["by_class"] = {{"KA", r.by_class[0]}, {"KB", r.by_class[1]}, {"KC", r.by_class[2]}};
    std::map<int, long> gn;
    for (const auto& rec : lv.records) ++gn[rec.gn];
    json jg = json::object();
    for (auto [k, v] : gn) jg[std::to_string(k)] = v;
    j["by_gn"] = jg;
    json ops = json::object();
    for (int i = 0; i < kOpCount; ++i) {
        const auto& s = r.ops[i];
        ops[std::string(op_name(static_cast<Op>(i)))] = {
            {"invoked", s.invoked}, {"built", s.built}, {"kept", s.kept}};
    }
    j["ops"] = ops;
    j["built"] = r.built;
    j["built_per_kept"] = r.built_per_kept();
    j["guard"] = r.guard;
    j["untracked"] = r.untracked;
    j["resubmitted"] = r.resubmitted;
    j["high_water"] = r.high_water;
    j["rounds"] = r.rounds;
    j["late_rounds_productive"] = r.late_rounds_productive;
    return j;
}

void print_level(std::ostream& os, const LevelReport& r) {
    os << "n=" << r.n << "  knots " << r.knots << "  (KA " << r.by_class[0] << ", KB " << r.by_class[1]
       << ", KC " << r.by_class[2] << ")  built " << r.built << "  built/kept " << r.built_per_kept()
       << "  high water " << r.high_water << '\n';
}

int cmd_enumerate(int from, int to, const std::string& seeds_file, const std::string& mode, bool purge,
                  const std::string& out, bool single_round, int jobs, const std::vector<std::string>& off,
                  int threshold) {
    if (from < 3 || to < from) throw UsageError("need 3 <= --from <= --to");
    EngineOptions opt;
    if (mode == "unreduced")
        opt.mode = Mode::unreduced;
    else if (mode != "reduced")
        throw UsageError("--mode must be reduced or unreduced");
    opt.purge = purge;
    opt.single_round = single_round;
    opt.jobs = jobs;
    opt.rules.ots_threshold = threshold;
    for (const auto& name : off) {
        auto r = rule_from_name(name);
        if (!r) throw UsageError("unknown rule " + name);
        opt.rules = opt.rules.without(*r);
    }
    std::vector<MasterArray> seeds;
    if (!seeds_file.empty()) seeds = read_inputs("", seeds_file, "auto");
    if (seeds.empty() && from != 3 && from != 4) throw UsageError("--seeds is required unless --from is 3 or 4");

    json stats;
    stats["mode"] = mode;
    stats["purge"] = purge;
    stats["single_round"] = single_round;
    stats["levels"] = json::array();
    auto t0 = std::chrono::steady_clock::now();
    enumerate(from, to, seeds, opt, [&](const Level& lv) {
        print_level(std::cout, lv.report);
        std::cerr << "  n=" << lv.report.n << " done after "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        stats["levels"].push_back(level_json(lv));
        if (!out.empty()) persist(out, lv.records);
    }, false);
    if (!out.empty()) {
        fs::create_directories(out);
        std::ofstream(fs::path(out) / "stats.json") << stats.dump(2) << '\n';
    }
    return Exit::ok;
}

int cmd_canon(const std::string& code, const std::string& file, const std::string& format) {
    for (const auto& ma : read_inputs(code, file, format)) std::cout << render(ma) << '\n';
    return Exit::ok;
}

int cmd_convert(const std::string& to, const std::string& code, const std::string& file,
                const std::string& format) {
    for (const auto& ma : read_inputs(code, file, format)) {
        const auto g = normalize_gauss(expand_to_gauss(extract_configuration(ma.entries, {})));
        if (to == "gauss")
            std::cout << render(g) << '\n';
        else if (to == "dt")
            std::cout << render(dt_code(g)) << '\n';
        else if (to == "group")
            std::cout << render(groups_from_gauss(g)) << '\n';
        else
            throw UsageError("--to must be gauss, dt or group");
    }
    return Exit::ok;
}

int cmd_verify(int max_n) {
    if (max_n < 4 || max_n > 9) throw UsageError("--max-n must be between 4 and 9");
    bool good = true;
    auto line = [&](bool pass, const std::string& what) {
        std::cout << (pass ? "PASS " : "FAIL ") << what << '\n';
        good = good && pass;
    };
    EngineOptions reduced, unreduced;
    unreduced.mode = Mode::unreduced;
    auto a = enumerate(4, max_n, {}, reduced);
    auto b = enumerate(4, max_n, {}, unreduced);
    for (size_t i = 0; i < a.levels.size(); ++i) {
        const int n = a.levels[i].report.n;
        std::set<MasterArray> ra, rb;
        for (const auto& r : a.levels[i].records) ra.insert(r.array);
        for (const auto& r : b.levels[i].records) rb.insert(r.array);
        const auto brute = brute_force_knots(n);
        line(ra == brute && rb == brute, "n=" + std::to_string(n) + " reduced, unreduced and exhaustive tables agree (" +
                                             std::to_string(brute.size()) + " knots)");
        if (n <= 7) {
            auto rep = check_flype_characterization(std::vector<MasterArray>(ra.begin(), ra.end()));
            line(rep.ok(), "n=" + std::to_string(n) + " configurations of distinct knots are disjoint (" +
                               std::to_string(rep.configurations) + " configurations)");
        }
    }
    return good ? Exit::ok : Exit::internal;
}

int cmd_stats(const std::string& db) {
    const auto records = load_all(db);
    std::map<int, std::map<std::pair<int, int>, long>> table;
    for (const auto& r : records) ++table[r.n][{static_cast<int>(r.cls), r.gn}];
    for (const auto& [n, cells] : table) {
        long total = 0;
        for (const auto& [k, v] : cells) total += v;
        std::cout << "n=" << n << "  knots " << total << '\n';
        for (const auto& [k, v] : cells)
            std::cout << "  " << class_dir(static_cast<KnotClass>(k.first)) << " gn" << k.second << "  " << v << '\n';
    }
    const auto summary = fs::path(db) / "stats.json";
    if (fs::exists(summary)) {
        std::ifstream in(summary);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw DataError(summary.string() + ": " + e.what());
        }
        for (const auto& lv : j.value("levels", json::array()))
            std::cout << "n=" << lv.value("n", 0) << "  built " << lv.value("built", 0L) << "  built/kept "
                      << lv.value("built_per_kept", 0.0) << '\n';
    }
    return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime alternating knot tables by flype-canonical master arrays"};
    app.require_subcommand(1);

    auto* en = app.add_subcommand("enumerate", "build tables from n = from to n = to");
    int from = 4, to = 8, jobs = 1, threshold = 3;
    std::string seeds, mode = "reduced", out;
    bool purge = true, single_round = false;
    std::vector<std::string> off;
    en->add_option("--from", from, "crossing number of the seeds")->required();
    en->add_option("--to", to, "last crossing number")->required();
    en->add_option("--seeds", seeds, "file with the table at --from, one knot per line");
    en->add_option("--mode", mode, "reduced or unreduced");
    en->add_flag("--purge,!--no-purge", purge, "evict K_A knots from the index after DROTS");
    en->add_option("--out", out, "database directory");
    en->add_flag("--single-round", single_round, "stop after the first T and OTS passes");
    en->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    en->add_option("--disable", off, "switch off a reduction rule (repeatable)");
    en->add_option("--ots-threshold", threshold, "first-round OTS input limit");

    auto* ca = app.add_subcommand("canon", "print master arrays");
    auto* cv = app.add_subcommand("convert", "convert between code formats");
    std::string code, in, format = "auto", target;
    for (auto* sub : {ca, cv}) {
        auto* c = sub->add_option("--code", code, "one knot");
        auto* f = sub->add_option("--in", in, "file with one knot per line");
        c->excludes(f);
        sub->add_option("--format", format, "auto, group, gauss or dt");
    }
    cv->add_option("--to", target, "gauss, dt or group")->required();

    auto* ve = app.add_subcommand("verify", "cross-check the engine against exhaustive enumeration");
    int max_n = 8;
    ve->add_option("--max-n", max_n, "largest crossing number");

    auto* st = app.add_subcommand("stats", "summarize a database");
    std::string db;
    st->add_option("--db", db, "database directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*en) return cmd_enumerate(from, to, seeds, mode, purge, out, single_round, jobs, off, threshold);
        if ((*ca || *cv) && code.empty() && in.empty()) throw UsageError("one of --code or --in is required");
        if (*ca) return cmd_canon(code, in, format);
        if (*cv) return cmd_convert(target, code, in, format);
        if (*ve) return cmd_verify(max_n);
        if (*st) return cmd_stats(db);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return Exit::usage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return Exit::data;
    } catch (const CodeError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return Exit::data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Exit::internal;
    }
    return Exit::usage;
}
