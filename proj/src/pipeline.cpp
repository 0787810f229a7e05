#include "treeprod/pipeline.hpp"

#include "treeprod/morse_thue.hpp"
#include "treeprod/suites.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

namespace treeprod {

namespace fs = std::filesystem;

PipelineConfig preset_config(const std::string& name) {
    PipelineConfig c;
    c.preset = name;
    if (name == "cantor") {
        c.space = "cantor";
        c.depth = 4;
        c.r = Rational(1, 9);
        c.max_level = 4;
        c.colors = 1;
        c.semantics = BallSemantics::certified;
    } else if (name == "circle") {
        c.space = "circle";
        c.n = 81;
        c.r = Rational(1, 9);
        c.max_level = 2;
        c.colors = 2;
        c.semantics = BallSemantics::pointwise;
        c.lattice = {LatticeParams{6, Rational(1, 9), Rational(0), {Rational(0), Rational(1, 12)}}};
    } else {
        throw std::invalid_argument("unknown preset '" + name + "' (cantor, circle)");
    }
    return c;
}

namespace {

bool same_lattice(const std::vector<std::optional<LatticeParams>>& a, const std::vector<std::optional<LatticeParams>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].has_value() != b[i].has_value()) return false;
        if (a[i] && (a[i]->count != b[i]->count || a[i]->side != b[i]->side || a[i]->base != b[i]->base ||
                     a[i]->shifts != b[i]->shifts))
            return false;
    }
    return true;
}

Json lattice_json(const LatticeParams& p) {
    Json shifts = Json::array();
    for (const auto& s : p.shifts) shifts.push_back(to_string(s));
    return Json{{"count", p.count}, {"side", to_string(p.side)}, {"base", to_string(p.base)}, {"shifts", shifts}};
}

}  // namespace

bool is_validated(const PipelineConfig& c) {
    if (c.preset.empty()) return false;
    const PipelineConfig p = preset_config(c.preset);
    return c.space == p.space && c.depth == p.depth && c.n == p.n && c.r == p.r && c.max_level == p.max_level &&
           c.colors == p.colors && c.semantics == p.semantics && same_lattice(c.lattice, p.lattice) &&
           c.space_file.empty() && c.covering_file.empty() && c.effective_kappa() == min_kappa(c.colors) &&
           !c.research_kappa;
}

Json config_json(const PipelineConfig& c) {
    Json j;
    j["preset"] = c.preset.empty() ? Json(nullptr) : Json(c.preset);
    j["validated"] = is_validated(c);
    j["space"] = c.space;
    if (c.space == "cantor") j["depth"] = c.depth;
    if (c.space == "circle" || c.space == "grid") j["n"] = c.n;
    if (c.space == "file") j["spaceFile"] = c.space_file;
    if (!c.covering_file.empty()) j["coveringFile"] = c.covering_file;
    j["r"] = to_string(c.r);
    j["maxLevel"] = c.max_level ? Json(*c.max_level) : Json(nullptr);
    j["colors"] = c.colors;
    j["semantics"] = to_string(c.semantics);
    Json lat = Json::array();
    for (const auto& p : c.lattice) lat.push_back(p ? lattice_json(*p) : Json(nullptr));
    j["lattice"] = lat;
    j["kappa"] = c.effective_kappa();
    j["researchKappa"] = c.research_kappa;
    j["seed"] = c.seed;
    return j;
}

namespace {

FiniteMetricSpace make_space(const PipelineConfig& c) {
    if (c.space == "cantor") return generate_cantor(c.depth);
    if (c.space == "circle") return generate_circle(c.n);
    if (c.space == "grid") return generate_grid(c.n);
    if (c.space == "file") {
        std::ifstream in(c.space_file);
        if (!in) throw std::runtime_error("cannot open " + c.space_file);
        return load_space_csv(in, c.space_file);
    }
    throw std::invalid_argument("unknown space '" + c.space + "' (cantor, circle, grid, file)");
}

CoveringKind covering_kind(const FiniteMetricSpace& s) {
    switch (s.ambient().kind) {
        case AmbientKind::circle: return CoveringKind::shifted_arcs;
        case AmbientKind::plane: return CoveringKind::shifted_cubes;
        default: return CoveringKind::ultrametric;
    }
}

template <class F>
auto in_stage(const char* stage, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

// Builds up to the covering; validation failures are left in covering_report.
std::unique_ptr<Pipeline> build_unchecked(const PipelineConfig& c, Stage upto) {
    auto p = std::make_unique<Pipeline>();
    p->config = c;
    p->space = in_stage("space", [&] { return std::make_unique<FiniteMetricSpace>(make_space(c)); });
    p->graph = in_stage("approximation", [&] {
        const ScaleParams scale = make_scale(*p->space, c.r, c.max_level);
        return std::make_unique<ApproxGraph>(build_approximation(*p->space, scale, c.semantics));
    });
    p->dist = all_pairs_distances(*p->graph, c.jobs);
    if (upto == Stage::graph) return p;
    in_stage("covering", [&] {
        p->geo = std::make_unique<CoveringGeometry>(p->graph->balls());
        if (!c.covering_file.empty()) {
            std::ifstream in(c.covering_file);
            if (!in) throw std::runtime_error("cannot open " + c.covering_file);
            p->covering = std::make_unique<CoveringSequence>(covering_from_json(Json::parse(in), *p->geo));
        } else {
            GeneratorOptions o;
            o.colors = c.colors;
            o.lattice = c.lattice;
            o.validate = false;
            p->covering = std::make_unique<CoveringSequence>(generate_covering_sequence(covering_kind(*p->space), *p->graph, *p->geo, o));
        }
        p->covering_report = validate_covering_sequence(*p->covering, *p->graph, *p->geo);
        return 0;
    });
    return p;
}

// Continues a pipeline built up to its covering.
void finish(Pipeline& p, Stage upto) {
    const PipelineConfig& c = p.config;
    if (!p.covering_report.passed()) throw StageError("covering", "validation failed: " + p.covering_report.first_violation());
    if (upto == Stage::covering) return;
    p.stage1 = in_stage("trees", [&] { return std::make_unique<Stage1>(build_stage1(*p.graph, *p.covering, *p.geo)); });
    if (upto == Stage::stage1) return;
    p.labelling = in_stage("labelling", [&] { return std::make_unique<Labelling>(build_labelling(*p.stage1)); });
    if (upto == Stage::labelling) return;
    p.stage2 = in_stage("stage2", [&] {
        return std::make_unique<Stage2>(build_stage2(*p.labelling, c.effective_kappa(), c.research_kappa));
    });
    p.binary = in_stage("binary", [&] { return std::make_unique<BinaryStage>(build_binary_stage(*p.stage2)); });
}

}  // namespace

std::unique_ptr<Pipeline> build_pipeline(const PipelineConfig& c, Stage upto) {
    auto p = build_unchecked(c, upto);
    if (upto != Stage::graph) finish(*p, upto);
    return p;
}

Suite parse_suite(const std::string& s) {
    if (s == "approx") return Suite::approx;
    if (s == "covering") return Suite::covering;
    if (s == "stage1") return Suite::stage1;
    if (s == "diary") return Suite::diary;
    if (s == "morse_thue") return Suite::morse_thue;
    if (s == "stage2") return Suite::stage2;
    if (s == "all") return Suite::all;
    throw std::invalid_argument("unknown suite '" + s + "' (approx, covering, stage1, diary, morse_thue, stage2, all)");
}

std::string to_string(Suite s) {
    switch (s) {
        case Suite::approx: return "approx";
        case Suite::covering: return "covering";
        case Suite::stage1: return "stage1";
        case Suite::diary: return "diary";
        case Suite::morse_thue: return "morse_thue";
        case Suite::stage2: return "stage2";
        case Suite::all: return "all";
    }
    return "?";
}

bool checks_pass(const Json& checks) {
    for (const auto& c : checks)
        if (c.at("status") == "fail") return false;
    return true;
}

namespace {

void append(Json& out, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) out.push_back(check_json(c));
}

std::vector<CheckResult> approx_checks(const Pipeline& p) {
    const ApproxGraph& g = *p.graph;
    const auto vc = visual_metric_constants(g, p.dist);
    return {check_connected(g, p.dist),         check_central_ancestors(g),
            check_balls_intersect_bound(g, p.dist), check_horizontal_descent(g, p.dist),
            check_geodesic_shape(g, p.dist, p.config.jobs), check_visual_band(g, p.dist, vc)};
}

std::vector<CheckResult> stage1_checks(const Pipeline& p, Stage1Report* rep_out = nullptr) {
    const Stage1Report rep = stage1_report(*p.stage1, p.dist, p.config.jobs);
    std::vector<CheckResult> out = rep.checks;
    const auto lemmas = stage1_lemma_checks(*p.stage1, p.dist, p.config.jobs);
    out.insert(out.end(), lemmas.begin(), lemmas.end());
    if (rep_out) *rep_out = rep;
    return out;
}

std::vector<CheckResult> stage2_checks(const Pipeline& p, QiReport* qi_out = nullptr) {
    std::vector<CheckResult> out = labelling_checks(*p.labelling);
    out.push_back(critical_letters_check(*p.labelling, p.config.jobs));
    QiReport qi = qi_report(*p.stage2, p.dist, p.config.jobs);
    out.insert(out.end(), qi.checks.begin(), qi.checks.end());
    out.push_back(composition_check(*p.stage2));
    out.push_back(binary_sandwich_check(*p.stage2, *p.binary));
    if (p.config.research_kappa && p.stage2->kappa < min_kappa(p.stage2->colors()))
        out.push_back(small_kappa_control(p.stage2->kappa));
    if (qi_out) *qi_out = std::move(qi);
    return out;
}

Json stage_error_json(const StageError& e) { return Json{{"stage", e.stage}, {"message", e.what()}}; }

std::vector<CheckResult> morse_thue_suite(const PipelineConfig& c) {
    auto out = morse_thue_checks(2048, c.seed, c.jobs);
    const auto sync = synchronization_checks(20000, c.seed);
    out.insert(out.end(), sync.begin(), sync.end());
    CheckResult shift("mt.week_shift_decorated");
    shift.record(week_shift_pair(30, 2, 3).decorated_differ, "decorated diaries of w^30 s s and w^31 s s coincide");
    out.push_back(shift);
    const auto controls = negative_controls();
    out.insert(out.end(), controls.begin(), controls.end());
    return out;
}

std::vector<CheckResult> diary_suite(const PipelineConfig& c) {
    auto out = diary_example_checks();
    const DiaryBounds b;
    const auto ex = diary_exhaustive_checks(b, c.seed, c.jobs);
    const auto rec = diary_recovery_checks(b, c.seed);
    out.insert(out.end(), ex.begin(), ex.end());
    out.insert(out.end(), rec.begin(), rec.end());
    return out;
}

}  // namespace

Json run_suite(const PipelineConfig& c, Suite s) {
    Json checks = Json::array();
    Json errors = Json::array();
    const bool all = s == Suite::all;
    const bool needs_graph = all || s == Suite::approx || s == Suite::covering || s == Suite::stage1 || s == Suite::stage2;
    if (needs_graph) {
        try {
            const Stage upto = all || s == Suite::stage2 ? Stage::stage2
                               : s == Suite::stage1     ? Stage::stage1
                               : s == Suite::covering   ? Stage::covering
                                                        : Stage::graph;
            auto p = build_unchecked(c, upto);
            if (all || s == Suite::approx) append(checks, approx_checks(*p));
            if (upto != Stage::graph) {
                if (all || s == Suite::covering) append(checks, p->covering_report.checks);
                finish(*p, upto);
            }
            if (all || s == Suite::stage1) append(checks, stage1_checks(*p));
            if (all || s == Suite::stage2) append(checks, stage2_checks(*p));
        } catch (const StageError& e) {
            errors.push_back(stage_error_json(e));
        }
    }
    if (all || s == Suite::diary) append(checks, diary_suite(c));
    if (all || s == Suite::morse_thue) append(checks, morse_thue_suite(c));
    Json j;
    j["suite"] = to_string(s);
    j["config"] = config_json(c);
    j["checks"] = checks;
    j["errors"] = errors;
    j["passed"] = errors.empty() && checks_pass(checks);
    return j;
}

namespace {

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
}

void write_graph_and_trees(const Pipeline& p, const fs::path& dir) {
    write_file(dir / "graph.edges", [&](std::ostream& os) { write_edges(os, *p.graph); });
    if (p.covering) write_file(dir / "covering.json", [&](std::ostream& os) { write_json(os, covering_to_json(*p.covering)); });
    if (!p.stage1) return;
    fs::create_directories(dir / "trees");
    for (const auto& ct : p.stage1->trees)
        write_file(dir / "trees" / ("color" + std::to_string(ct.color) + ".txt"), [&](std::ostream& os) { write_tree(os, ct.tree); });
    if (p.stage2)
        write_file(dir / "embedding.json", [&](std::ostream& os) { write_json(os, embedding_json(*p.stage2, *p.binary)); });
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& c, const std::string& out_dir) {
    RunResult res;
    Json& rep = res.report;
    rep["config"] = config_json(c);
    Json checks = Json::array();
    std::unique_ptr<Pipeline> p;
    try {
        p = build_unchecked(c, Stage::covering);
        const auto delta = estimate_delta(*p->graph, p->dist, std::nullopt, 300, 2'000'000, static_cast<unsigned>(c.seed), c.jobs);
        const auto vc = visual_metric_constants(*p->graph, p->dist);
        rep["graph"] = graph_summary(*p->graph, delta, vc);
        append(checks, approx_checks(*p));

        Json cov;
        Json mesh = Json::array(), leb = Json::array();
        for (const auto& m : p->covering_report.mesh) mesh.push_back(to_string(m));
        for (const auto& l : p->covering_report.lebesgue) leb.push_back(to_string(l));
        cov["mesh"] = mesh;
        cov["lebesgue"] = leb;
        rep["covering"] = cov;
        append(checks, p->covering_report.checks);
        finish(*p, Stage::stage2);
        Stage1Report s1;
        append(checks, stage1_checks(*p, &s1));
        rep["stage1"] = Json{{"pairs", s1.pairs},
                             {"closePairs", s1.close_pairs},
                             {"distinctPairs", s1.distinct_pairs},
                             {"worstLipschitz", s1.worst_lipschitz},
                             {"worstGlobal", s1.worst_global}};
        Json trees = Json::array();
        for (const auto& ct : p->stage1->trees)
            trees.push_back(Json{{"color", ct.color}, {"vertices", ct.tree.size()}, {"maxValence", ct.tree.max_valence()}});
        rep["stage1"]["trees"] = trees;

        QiReport qi;
        append(checks, stage2_checks(*p, &qi));
        rep["labelling"] = Json{{"palette", p->labelling->coloring.palette}, {"letters", p->labelling->alphabet.size()}};
        rep["stage2"] = Json{{"kappa", p->stage2->kappa},
                             {"pairs", qi.pairs},
                             {"upperWorst", qi.upper_worst},
                             {"upperBound", 2 * p->stage2->colors()},
                             {"lowerWorst", qi.lower_worst},
                             {"sigma", qi.sigma},
                             {"lambdaFit", qi.lambda_fit},
                             {"sigmaFit", qi.sigma_fit},
                             {"violations", qi.violations}};
        rep["binary"] = Json{{"pages", p->binary->pages.size()}, {"width", p->binary->width}};
    } catch (const StageError& e) {
        rep["error"] = stage_error_json(e);
        res.exit_code = 1;
    }
    rep["checks"] = checks;
    rep["passed"] = res.exit_code == 0 && checks_pass(checks);
    if (!rep["passed"].get<bool>()) res.exit_code = 1;

    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        fs::create_directories(dir);
        write_file(dir / "report.json", [&](std::ostream& os) { write_json(os, rep); });
        if (rep.contains("graph")) write_file(dir / "graph.json", [&](std::ostream& os) { write_json(os, rep["graph"]); });
        if (p) {
            write_graph_and_trees(*p, dir);
            if (p->stage1) write_file(dir / "pairs.csv", [&](std::ostream& os) { write_pairs_csv(os, *p->stage1, p->dist); });
        }
    }
    return res;
}

void export_artifacts(const PipelineConfig& c, const std::string& out_dir) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    auto p = build_pipeline(c, Stage::stage2);
    write_file(dir / "graph.json", [&](std::ostream& os) {
        const auto delta = estimate_delta(*p->graph, p->dist, std::nullopt, 300, 2'000'000, static_cast<unsigned>(c.seed), c.jobs);
        write_json(os, graph_summary(*p->graph, delta, visual_metric_constants(*p->graph, p->dist)));
    });
    write_graph_and_trees(*p, dir);
}

}  // namespace treeprod
