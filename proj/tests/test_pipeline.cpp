#include "treeprod/pipeline.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace treeprod;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("treeprod_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("presets") {
    CHECK(preset_config("cantor").colors == 1);
    CHECK(preset_config("circle").colors == 2);
    CHECK(preset_config("circle").effective_kappa() == 31);
    CHECK_THROWS_AS(preset_config("torus"), std::invalid_argument);
    CHECK(is_validated(preset_config("circle")));
    auto c = preset_config("circle");
    c.n = 60;
    CHECK_FALSE(is_validated(c));
    c = preset_config("cantor");
    c.jobs = 4;
    CHECK(is_validated(c));
    CHECK(config_json(c) == config_json(preset_config("cantor")));
}

TEST_CASE("suite names") {
    for (auto s : {Suite::approx, Suite::covering, Suite::stage1, Suite::diary, Suite::morse_thue, Suite::stage2, Suite::all})
        CHECK(parse_suite(to_string(s)) == s);
    CHECK_THROWS_AS(parse_suite("everything"), std::invalid_argument);
}

TEST_CASE("cantor run writes every artifact") {
    const fs::path dir = scratch("cantor");
    const RunResult res = run_pipeline(preset_config("cantor"), dir.string());
    CHECK(res.exit_code == 0);
    CHECK(res.report["passed"].get<bool>());
    for (const char* f : {"report.json", "graph.json", "graph.edges", "covering.json", "trees/color0.txt", "embedding.json", "pairs.csv"})
        CHECK(fs::exists(dir / f));

    const Json rep = Json::parse(slurp(dir / "report.json"));
    CHECK(rep["graph"]["vertexCount"] == 53);
    CHECK(rep["stage2"]["kappa"] == 16);
    CHECK(rep["stage2"]["sigma"] == 20);
    CHECK(rep["labelling"]["palette"] == 16);
    CHECK(rep["stage1"]["trees"][0]["vertices"] == 41);
    CHECK_FALSE(rep["config"].contains("jobs"));
    for (const auto& c : rep["checks"]) {
        INFO(c.dump());
        CHECK(c["status"] != "fail");
    }

    const Json emb = Json::parse(slurp(dir / "embedding.json"));
    CHECK(emb["kappa"] == 16);
    CHECK(emb["vertices"].size() == 53);

    // Tree file: one line per vertex.
    std::istringstream tree(slurp(dir / "trees/color0.txt"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(tree, line)) ++lines;
    CHECK(lines == 41);
    fs::remove_all(dir);
}

TEST_CASE("reports are reproducible") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    auto c = preset_config("circle");
    run_pipeline(c, a.string());
    c.jobs = 2;
    run_pipeline(c, b.string());
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "embedding.json") == slurp(b / "embedding.json"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("one-color circle stops at the covering stage") {
    auto c = preset_config("circle");
    c.colors = 1;
    c.lattice.clear();
    try {
        build_pipeline(c, Stage::stage2);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage == "covering");
    }
    const RunResult res = run_pipeline(c, "");
    CHECK(res.exit_code == 1);
    CHECK(res.report["error"]["stage"] == "covering");
    CHECK_FALSE(res.report["passed"].get<bool>());
}

TEST_CASE("covering files load back") {
    const fs::path dir = scratch("covfile");
    run_pipeline(preset_config("circle"), dir.string());
    auto c = preset_config("circle");
    c.covering_file = (dir / "covering.json").string();
    const RunResult res = run_pipeline(c, "");
    CHECK(res.exit_code == 0);
    fs::remove_all(dir);
}

TEST_CASE("approximation suite") {
    const Json rep = run_suite(preset_config("circle"), Suite::approx);
    CHECK(rep["passed"].get<bool>());
    CHECK(rep["checks"].size() == 6);
    CHECK(checks_pass(rep["checks"]));
}

TEST_CASE("low research kappa") {
    auto c = preset_config("cantor");
    c.kappa = 4;
    c.research_kappa = true;
    const RunResult res = run_pipeline(c, "");
    CHECK(res.report["stage2"]["kappa"] == 4);
    for (const auto& ch : res.report["checks"])
        if (ch["id"] == "control.small_kappa") CHECK(ch["status"] == "expected-fail");
}
