#include "treeprod/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace treeprod;

namespace {

struct Flags {
    std::string preset, space, r, semantics, space_file, covering_file, out = "out";
    std::optional<int> depth, n, max_level, kappa, colors, research_kappa;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--preset", f.preset, "cantor or circle");
    cmd->add_option("--space", f.space, "cantor, circle, grid or file");
    cmd->add_option("--depth", f.depth, "cantor depth");
    cmd->add_option("--n", f.n, "circle points or grid side");
    cmd->add_option("--space-file", f.space_file, "distance matrix CSV for --space file");
    cmd->add_option("--covering-file", f.covering_file, "covering sequence JSON");
    cmd->add_option("--r", f.r, "scale parameter p/q, at most 1/6");
    cmd->add_option("--max-level", f.max_level, "deepest level J");
    cmd->add_option("--kappa", f.kappa, "diary constant, at least 15|C|+1");
    cmd->add_option("--research-kappa", f.research_kappa, "diary constant allowed below 15|C|+1");
    cmd->add_option("--colors", f.colors, "number of covering colors");
    cmd->add_option("--semantics", f.semantics, "certified or pointwise balls");
    cmd->add_option("--seed", f.seed, "seed for sampled suites");
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "output directory");
}

PipelineConfig to_config(const Flags& f) {
    PipelineConfig c = f.preset.empty() ? PipelineConfig{} : preset_config(f.preset);
    if (!f.space.empty() && f.space != c.space) {
        c.space = f.space;
        c.lattice.clear();
        if (f.preset.empty()) c.max_level.reset();
    }
    if (f.depth) c.depth = *f.depth;
    if (f.n) c.n = *f.n;
    if (!f.space_file.empty()) c.space_file = f.space_file;
    if (!f.covering_file.empty()) c.covering_file = f.covering_file;
    if (!f.r.empty()) c.r = parse_rational(f.r);
    if (f.max_level) c.max_level = *f.max_level;
    if (f.colors && *f.colors != c.colors) {
        c.colors = *f.colors;
        c.lattice.clear();
    }
    if (!f.semantics.empty()) c.semantics = parse_semantics(f.semantics);
    if (f.kappa) c.kappa = *f.kappa;
    if (f.research_kappa) {
        c.kappa = *f.research_kappa;
        c.research_kappa = true;
    }
    c.seed = f.seed;
    c.jobs = f.jobs;
    if (c.r > Rational(1, 6)) throw std::invalid_argument("r must be at most 1/6");
    if (!c.research_kappa && c.effective_kappa() < min_kappa(c.colors))
        throw std::invalid_argument("kappa below 15|C|+1 = " + std::to_string(min_kappa(c.colors)) + "; use --research-kappa");
    return c;
}

void print_checks(const Json& checks) {
    for (const auto& c : checks) {
        std::cout << c["status"].get<std::string>() << ' ' << c["id"].get<std::string>() << " checked=" << c["checked"]
                  << " violations=" << c["violations"];
        if (c["inconclusive"].get<std::uint64_t>()) std::cout << " inconclusive=" << c["inconclusive"];
        if (c.contains("firstViolation")) std::cout << " first: " << c["firstViolation"].get<std::string>();
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-isometric embedding of sampled doubling spaces into products of trees"};
    app.require_subcommand(1);
    Flags f;
    std::string suite = "all";
    auto* run = app.add_subcommand("run", "build every stage, verify and write the artifacts");
    auto* verify = app.add_subcommand("verify", "run one invariant suite");
    auto* exp = app.add_subcommand("export", "write graph, trees and embedding without reports");
    for (auto* cmd : {run, verify, exp}) add_flags(cmd, f);
    verify->add_option("suite", suite, "approx, covering, stage1, diary, morse_thue, stage2 or all");

    CLI11_PARSE(app, argc, argv);
    try {
        const PipelineConfig c = to_config(f);
        if (*run) {
            const RunResult res = run_pipeline(c, f.out);
            print_checks(res.report["checks"]);
            if (res.report.contains("error")) std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << '\n';
            if (!is_validated(c)) std::cout << "note: parameters differ from the shipped presets (unvalidated)\n";
            std::cout << (res.report["passed"].get<bool>() ? "passed" : "FAILED") << " -> " << f.out << "/report.json\n";
            return res.exit_code;
        }
        if (*verify) {
            const Json rep = run_suite(c, parse_suite(suite));
            print_checks(rep["checks"]);
            for (const auto& e : rep["errors"]) std::cerr << "error: " << e["message"].get<std::string>() << '\n';
            std::filesystem::create_directories(f.out);
            std::ofstream out(std::filesystem::path(f.out) / ("verify_" + suite + ".json"));
            write_json(out, rep);
            std::cout << (rep["passed"].get<bool>() ? "passed" : "FAILED") << '\n';
            return rep["passed"].get<bool>() ? 0 : 1;
        }
        export_artifacts(c, f.out);
        std::cout << "wrote " << f.out << '\n';
        return 0;
    } catch (const StageError& e) {
        std::cerr << "error in stage " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
