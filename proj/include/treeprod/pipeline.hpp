#pragma once

#include "treeprod/io.hpp"
#include "treeprod/labelling.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace treeprod {

struct PipelineConfig {
    std::string preset;  // empty for hand-set parameters
    std::string space = "cantor";  // cantor, circle, grid or file
    int depth = 4;                 // cantor
    int n = 81;                    // circle points, grid side
    std::string space_file;
    std::string covering_file;
    Rational r{1, 9};
    std::optional<int> max_level;
    int colors = 1;
    BallSemantics semantics = BallSemantics::certified;
    std::vector<std::optional<LatticeParams>> lattice;  // levels 1..
    std::optional<int> kappa;                           // defaults to 15|C|+1
    bool research_kappa = false;                        // allow kappa below 15|C|+1
    std::uint64_t seed = 1;
    unsigned jobs = 1;

    int effective_kappa() const { return kappa.value_or(min_kappa(colors)); }
};

// "cantor" or "circle"; throws std::invalid_argument otherwise.
PipelineConfig preset_config(const std::string& name);
// Preset name with unchanged parameters, so the output can be marked validated.
bool is_validated(const PipelineConfig& c);
// Everything that determines the results; worker count excluded.
Json config_json(const PipelineConfig& c);

class StageError : public std::runtime_error {
   public:
    StageError(std::string stage, const std::string& what) : std::runtime_error(stage + ": " + what), stage(std::move(stage)) {}
    std::string stage;
};

enum class Stage { graph, covering, stage1, labelling, stage2 };

// Owns every intermediate object; later stages point into earlier ones.
struct Pipeline {
    PipelineConfig config;
    std::unique_ptr<FiniteMetricSpace> space;
    std::unique_ptr<ApproxGraph> graph;
    DistanceTable dist;
    std::unique_ptr<CoveringGeometry> geo;
    std::unique_ptr<CoveringSequence> covering;
    CoveringReport covering_report;
    std::unique_ptr<Stage1> stage1;
    std::unique_ptr<Labelling> labelling;
    std::unique_ptr<Stage2> stage2;
    std::unique_ptr<BinaryStage> binary;
};

// Builds stages up to `upto`. A covering that fails validation stops the build with StageError.
std::unique_ptr<Pipeline> build_pipeline(const PipelineConfig& c, Stage upto);

enum class Suite { approx, covering, stage1, diary, morse_thue, stage2, all };
Suite parse_suite(const std::string& s);
std::string to_string(Suite s);

// {suite, checks: [...], passed}; checks in a fixed order.
Json run_suite(const PipelineConfig& c, Suite s);

struct RunResult {
    Json report;
    int exit_code = 0;
};

// Full run. With a nonempty out_dir writes report.json, pairs.csv, graph.edges, graph.json,
// covering.json, trees/color<c>.txt and embedding.json.
RunResult run_pipeline(const PipelineConfig& c, const std::string& out_dir);

// Graph, trees and embedding only, no reports.
void export_artifacts(const PipelineConfig& c, const std::string& out_dir);

bool checks_pass(const Json& checks);

}  // namespace treeprod
