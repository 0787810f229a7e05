// Acceptance criteria 1-10; one line per criterion, nonzero exit if any fails.
#include "treeprod/morse_thue.hpp"
#include "treeprod/pipeline.hpp"
#include "treeprod/suites.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace treeprod;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (pass) detail += (detail.empty() ? "" : "; ") + what;
    }
};

const Json* find_check(const Json& checks, const std::string& id) {
    for (const auto& c : checks)
        if (c["id"] == id) return &c;
    return nullptr;
}

std::string summary(const Json& c) {
    std::ostringstream os;
    os << c["id"].get<std::string>() << " " << c["status"].get<std::string>() << " checked=" << c["checked"]
       << " violations=" << c["violations"];
    if (c["inconclusive"].get<std::uint64_t>()) os << " inconclusive=" << c["inconclusive"];
    if (c.contains("firstViolation")) os << " (" << c["firstViolation"].get<std::string>() << ")";
    return os.str();
}

// The check exists, ran at least once and has no violations.
void require_clean(Outcome& o, const Json& checks, const std::string& id, const std::string& where) {
    const Json* c = find_check(checks, id);
    if (!c) {
        o.require(false, where + ": " + id + " missing");
        return;
    }
    o.require((*c)["violations"] == 0 && (*c)["checked"].get<std::uint64_t>() > 0, where + ": " + summary(*c));
}

std::uint64_t total_checked(const Json& checks) {
    std::uint64_t n = 0;
    for (const auto& c : checks) n += c["checked"].get<std::uint64_t>();
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* presets[] = {"cantor", "circle"};

Outcome diary_equivalence() {
    Outcome o;
    std::uint64_t total = 0;
    for (const auto& c : diary_exhaustive_checks(DiaryBounds{}, 1)) {
        o.require(c.ok() && c.checked > 0, c.id + " violations=" + std::to_string(c.violations) + " " + c.first_violation);
        total += c.checked;
    }
    o.note(std::to_string(enumerate_sentences(2, 4, 4).size()) + " sentences per kappa, " + std::to_string(total) + " checks");
    return o;
}

Outcome worked_example() {
    Outcome o;
    Lexicon lex;
    const Sentence alpha = parse_sentence("a a b c s a s b c b s c s b s", lex);
    const Diary d = encode(alpha, 3);
    o.require(format(d, lex) == "(c b a)(a s a)(b c b)(c s s)(b s *)", "encoded as " + format(d, lex));
    const SlottedSentence hat = reconstruct(d, 3);
    o.require(hat.honest(), "reconstruction has slots: " + format(hat, lex));
    o.require(fill_slots(hat, {}) == alpha, "reconstruction is " + format(hat, lex));
    o.note(format(d, lex));
    return o;
}

Outcome morse_thue() {
    Outcome o;
    o.require(format_bits(mt_prefix(8)) == "01101001", "prefix(8) = " + format_bits(mt_prefix(8)));
    const auto cube = find_cube(mt_prefix(2048));
    o.require(!cube, "cube found in prefix(2048)");
    o.note("prefix(8) = 01101001, prefix(2048) cube-free");
    return o;
}

Outcome week_shift() {
    Outcome o;
    const auto e = week_shift_pair(30, 2, 3);
    o.require(e.undecorated_equal, "undecorated diaries differ");
    o.require(e.decorated_differ, "decorated diaries coincide");
    o.note("undecorated equal, decorated differ");
    return o;
}

Outcome approximation() {
    Outcome o;
    for (const char* p : presets) {
        const Json rep = run_suite(preset_config(p), Suite::approx);
        for (const char* id : {"approx.balls_intersect_bound", "approx.central_ancestor", "approx.connected", "approx.geodesic_shape"})
            require_clean(o, rep["checks"], id, p);
        o.require(rep["passed"].get<bool>(), std::string(p) + ": suite failed");
        o.note(std::string(p) + " " + std::to_string(total_checked(rep["checks"])) + " checks");
    }
    return o;
}

Outcome coverings() {
    Outcome o;
    for (const char* p : presets) {
        const Json rep = run_suite(preset_config(p), Suite::covering);
        o.require(rep["passed"].get<bool>() && rep["errors"].empty(), std::string(p) + ": covering rejected");
    }
    auto c = preset_config("circle");
    c.colors = 1;
    c.lattice.clear();
    const Json one = run_suite(c, Suite::covering);
    o.require(!one["passed"].get<bool>(), "one-color circle covering accepted");
    std::string why;
    for (const auto& ch : one["checks"])
        if (ch["status"] == "fail") why += (why.empty() ? "" : ",") + ch["id"].get<std::string>();
    for (const auto& e : one["errors"]) why += (why.empty() ? "" : ",") + e["stage"].get<std::string>() + " error";
    o.note("presets accepted, one-color circle rejected by " + why);
    return o;
}

Outcome stage_one() {
    Outcome o;
    for (const char* p : presets) {
        const Json rep = run_suite(preset_config(p), Suite::stage1);
        for (const char* id : {"stage1.lipschitz", "stage1.close_pairs", "stage1.distinct_pairs", "stage1.global"})
            require_clean(o, rep["checks"], id, p);
        o.require(rep["passed"].get<bool>(), std::string(p) + ": suite failed");
        o.note(std::string(p) + " " + std::to_string(total_checked(rep["checks"])) + " checks");
    }
    return o;
}

Json stage_two_reports[2];

Outcome stage_two() {
    Outcome o;
    for (int i = 0; i < 2; ++i) {
        const auto c = preset_config(presets[i]);
        o.require(c.effective_kappa() == min_kappa(c.colors) && c.effective_kappa() == (i == 0 ? 16 : 31), "kappa is not 15|C|+1");
        stage_two_reports[i] = run_suite(c, Suite::stage2);
        const Json& checks = stage_two_reports[i]["checks"];
        for (const char* id : {"stage2.upper", "stage2.lower"}) require_clean(o, checks, id, presets[i]);
        const Json* crit = find_check(checks, "labelling.critical_letters");
        o.require(crit && (*crit)["violations"] == 0, std::string(presets[i]) + ": critical letters " + (crit ? summary(*crit) : "missing"));
        if (crit)
            o.note(std::string(presets[i]) + " critical letters checked=" + std::to_string((*crit)["checked"].get<std::uint64_t>()) +
                   " outside hypotheses=" + std::to_string((*crit)["inconclusive"].get<std::uint64_t>()));
        o.require(stage_two_reports[i]["passed"].get<bool>(), std::string(presets[i]) + ": suite failed");
    }
    // The circle preset has no pair meeting the critical-letter hypotheses, so run it one level deeper too.
    auto deep = preset_config("circle");
    deep.max_level = 3;
    const auto p = build_pipeline(deep, Stage::labelling);
    const CheckResult crit = critical_letters_check(*p->labelling);
    o.require(crit.ok() && crit.checked > 0, "circle J=3 critical letters: " + crit.first_violation);
    o.note("circle J=3 critical letters checked=" + std::to_string(crit.checked));
    return o;
}

Outcome binary_sandwich() {
    Outcome o;
    for (int i = 0; i < 2; ++i) {
        if (stage_two_reports[i].is_null()) stage_two_reports[i] = run_suite(preset_config(presets[i]), Suite::stage2);
        require_clean(o, stage_two_reports[i]["checks"], "binary.sandwich", presets[i]);
        if (const Json* c = find_check(stage_two_reports[i]["checks"], "binary.sandwich"))
            o.note(std::string(presets[i]) + " " + std::to_string((*c)["checked"].get<std::uint64_t>()) + " pairs");
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path base = fs::temp_directory_path() / "treeprod_acceptance";
    for (const char* p : presets) {
        fs::remove_all(base);
        run_pipeline(preset_config(p), (base / "a").string());
        run_pipeline(preset_config(p), (base / "b").string());
        const std::string a = slurp(base / "a" / "report.json"), b = slurp(base / "b" / "report.json");
        o.require(!a.empty() && a == b, std::string(p) + ": report.json differs between runs");
    }
    fs::remove_all(base);
    o.note("byte-identical on both presets");
    return o;
}

struct Criterion {
    int number;
    const char* name;
    double limit_seconds;  // 0 when unbounded
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "diary codec oracle equivalence", 60, diary_equivalence},
        {2, "worked example fidelity", 0, worked_example},
        {3, "morse-thue prefix and cube-freeness", 10, morse_thue},
        {4, "week-shift control", 0, week_shift},
        {5, "hyperbolic approximation invariants", 60, approximation},
        {6, "covering validator", 0, coverings},
        {7, "stage-1 bounds", 120, stage_one},
        {8, "stage-2 quasi-isometry", 300, stage_two},
        {9, "binary sandwich", 0, binary_sandwich},
        {10, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            std::ostringstream os;
            os << "took " << secs << " s, limit " << c.limit_seconds << " s";
            o.require(false, os.str());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << std::setw(2) << c.number << ' ' << c.name << " [" << std::fixed
                  << std::setprecision(2) << secs << " s] " << o.detail << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
    return failed ? 1 : 0;
}
