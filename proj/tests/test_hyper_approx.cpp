#include "treeprod/hyper_approx.hpp"

#include <doctest.h>

#include <algorithm>
#include <climits>

using namespace treeprod;

namespace {

ApproxGraph cantor_graph() {
    static const auto space = generate_cantor(4);
    return build_approximation(space, make_scale(space, Rational(1, 9), 4), BallSemantics::certified);
}

ApproxGraph circle_graph() {
    static const auto space = generate_circle(81);
    return build_approximation(space, make_scale(space, Rational(1, 9), 2), BallSemantics::pointwise);
}

// Floyd-Warshall over the adjacency lists.
std::vector<std::vector<int>> floyd(const ApproxGraph& g) {
    const std::size_t n = g.size();
    const int inf = INT_MAX / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (auto [w, kind] : g.neighbors(v)) d[v][w] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Four-point delta at the root, doubled, by direct triple scan.
long naive_delta(const std::vector<std::vector<int>>& d) {
    const std::size_t n = d.size();
    auto gp = [&](std::size_t x, std::size_t y) { return static_cast<long>(d[0][x]) + d[0][y] - d[x][y]; };
    long best = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) best = std::max(best, std::min(gp(x, y), gp(y, z)) - gp(x, z));
    return best;
}

void check_graph(const ApproxGraph& g) {
    const auto d = all_pairs_distances(g);
    const auto oracle = floyd(g);
    for (VertexId a = 0; a < g.size(); ++a)
        for (VertexId b = 0; b < g.size(); ++b) REQUIRE(d(a, b) == oracle[a][b]);

    CHECK(estimate_delta(g, d).delta.twice == naive_delta(oracle));

    for (const auto& e : g.edges()) {
        if (e.kind == EdgeKind::horizontal) {
            CHECK(g.level(e.a) == g.level(e.b));
        } else {
            CHECK(std::abs(g.level(e.a) - g.level(e.b)) == 1);
        }
    }
    CHECK(g.level(g.root()) == g.k0());
    CHECK(g.level_vertices(g.k0()).size() == 1);

    const VisualConstants vc = visual_metric_constants(g, d);
    for (const CheckResult& c : {check_connected(g, d), check_central_ancestors(g), check_balls_intersect_bound(g, d),
                                 check_horizontal_descent(g, d), check_geodesic_shape(g, d), check_visual_band(g, d, vc)}) {
        INFO(c.id << ": " << c.first_violation);
        CHECK(c.checked > 0);
        CHECK(c.ok());
    }
}

}  // namespace

TEST_CASE("cantor preset graph") {
    const auto g = cantor_graph();
    CHECK(g.size() == 53);
    check_graph(g);
}

TEST_CASE("circle preset graph") {
    const auto g = circle_graph();
    CHECK(g.size() == 91);
    CHECK(g.edge_count(EdgeKind::horizontal) == 360);
    CHECK(g.edge_count(EdgeKind::radial) == 306);
    check_graph(g);
}

TEST_CASE("level vertices are nets of the right separation") {
    const auto g = circle_graph();
    for (int k = g.k0(); k <= g.max_level(); ++k) {
        const auto& vs = g.level_vertices(k);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                CHECK(g.space().distance(g.center(vs[i]), g.center(vs[j])) >= g.scale().scale(k));
        for (VertexId v : vs) CHECK(g.find(k, g.center(v)) == v);
    }
    CHECK_FALSE(g.find(1, 1));
}

TEST_CASE("central ancestors stay within r^k") {
    const auto g = cantor_graph();
    for (VertexId v = 0; v < g.size(); ++v) {
        if (g.level(v) == g.k0()) continue;
        const VertexId a = central_ancestor(g, v);
        CHECK(g.level(a) == g.level(v) - 1);
        CHECK(g.space().distance(g.center(a), g.center(v)) <= g.scale().scale(g.level(v) - 1));
    }
}

TEST_CASE("gromov products on a hand path") {
    DistanceTable d(3);
    const int m[3][3] = {{0, 2, 3}, {2, 0, 1}, {3, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d.at(i, j) = m[i][j];
    CHECK(gromov_product(d, 0, 1, 2).twice == 4);
    CHECK(gromov_product(d, 1, 0, 2).twice == 0);
    CHECK(to_string(HalfInt{3}) == "3/2");
    CHECK(to_string(HalfInt{4}) == "2");
}

TEST_CASE("two-point space") {
    const FiniteMetricSpace s("two", {{0, 1}, {1, 0}});
    const auto g = build_approximation(s, make_scale(s, Rational(1, 6), 0));
    REQUIRE(g.size() == 3);
    CHECK(g.level(g.root()) == -1);
    CHECK(g.level_vertices(0).size() == 2);
    CHECK(g.edge_count(EdgeKind::horizontal) == 1);
    CHECK(g.edge_count(EdgeKind::radial) == 2);
    for (VertexId v : g.level_vertices(0)) CHECK(central_ancestor(g, v) == g.root());
    CHECK(graph_distance(g, 1, 1) == 0);
    CHECK_THROWS(make_scale(s, Rational(1, 6), -2));
}

TEST_CASE("truncating at k0 leaves the root alone") {
    const auto s = generate_cantor(3);
    const auto g = build_approximation(s, make_scale(s, Rational(1, 9), 0));
    CHECK(g.size() == 1);
    CHECK(g.edges().empty());
    const auto d = all_pairs_distances(g);
    CHECK(estimate_delta(g, d).delta.twice == 0);
    CHECK_THROWS_AS(visual_metric_constants(g, d), std::invalid_argument);
}

TEST_CASE("a graph without horizontal edges is 0-hyperbolic") {
    const FiniteMetricSpace s("two", {{0, 5}, {5, 0}});
    const auto g = build_approximation(s, make_scale(s, Rational(1, 6), 0));
    REQUIRE(g.size() == 3);
    CHECK(g.edge_count(EdgeKind::horizontal) == 0);
    CHECK(estimate_delta(g, all_pairs_distances(g)).delta.twice == 0);
}

TEST_CASE("gromov product degenerate cases") {
    const auto g = cantor_graph();
    const auto d = all_pairs_distances(g);
    for (VertexId x = 0; x < g.size(); x += 7) {
        CHECK(gromov_product(d, 0, x, x).twice == 2 * d(0, x));
        CHECK(gromov_product(d, 0, 0, x).twice == 0);
    }
}

TEST_CASE("cantor(3) fixtures") {
    const auto s = generate_cantor(3);
    const auto g = build_approximation(s, make_scale(s, Rational(1, 9), 3));
    check_graph(g);
    const auto d = all_pairs_distances(g);
    CHECK(to_string(estimate_delta(g, d).delta) == "1/2");
}

TEST_CASE("visual constants of the cantor preset") {
    const auto g = cantor_graph();
    const auto vc = visual_metric_constants(g, all_pairs_distances(g));
    CHECK(vc.pairs == 120);
    CHECK(vc.c2 / vc.c1 == doctest::Approx(108.0 / 23.0));
    CHECK(vc.c2 / vc.c1 <= 4.7);
}
