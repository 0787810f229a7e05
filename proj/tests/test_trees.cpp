#include "treeprod/trees.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace treeprod;

namespace {

std::vector<int> root_path(const LevelledTree& t, int v) {
    std::vector<int> p;
    for (; v != -1; v = t.parent(v)) p.push_back(v);
    return p;
}

LevelledTree random_tree(std::mt19937& rng, int n) {
    std::vector<int> parent{-1}, level{0};
    for (int v = 1; v < n; ++v) {
        const int p = std::uniform_int_distribution<int>(0, v - 1)(rng);
        parent.push_back(p);
        level.push_back(level[static_cast<std::size_t>(p)] + std::uniform_int_distribution<int>(1, 3)(rng));
    }
    return LevelledTree(parent, level);
}

}  // namespace

TEST_CASE("hand tree") {
    //      0
    //    1   2
    //   3 4    5
    LevelledTree t({-1, 0, 0, 1, 1, 2}, {0, 1, 2, 2, 4, 3});
    CHECK(t.depth(4) == 2);
    CHECK(t.common_ancestor(3, 4) == 1);
    CHECK(t.common_ancestor(3, 5) == 0);
    CHECK(t.distance(3, 5) == 4);
    CHECK(t.distance(4, 4) == 0);
    CHECK(t.path(3, 5) == std::vector<int>{3, 1, 0, 2, 5});
    CHECK(t.is_ancestor(0, 5));
    CHECK_FALSE(t.is_ancestor(1, 5));
    CHECK(t.max_valence() == 3);
    CHECK(lowest_segment_vertex(t, 4, 3) == 1);

    std::ostringstream os;
    write_tree(os, t);
    CHECK(os.str().rfind("0 -1 0 0\n1 0 1 1\n", 0) == 0);
}

TEST_CASE("levels must increase away from the root") {
    CHECK_THROWS_AS(LevelledTree({-1, 0}, {1, 1}), TreeError);
    CHECK_THROWS_AS(LevelledTree({0, 0}, {0, 1}), TreeError);
    CHECK_THROWS_AS(LevelledTree({-1, 2, 1}, {0, 1, 2}), TreeError);
}

TEST_CASE("random trees against root paths") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = random_tree(rng, 2 + trial * 3);
        const int n = static_cast<int>(t.size());
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                auto pu = root_path(t, u), pv = root_path(t, v);
                int common = 0;
                while (common < static_cast<int>(std::min(pu.size(), pv.size())) &&
                       pu[pu.size() - 1 - static_cast<std::size_t>(common)] == pv[pv.size() - 1 - static_cast<std::size_t>(common)])
                    ++common;
                const int lca = pu[pu.size() - static_cast<std::size_t>(common)];
                REQUIRE(t.common_ancestor(u, v) == lca);
                const int dist = static_cast<int>(pu.size() + pv.size()) - 2 * common;
                REQUIRE(t.distance(u, v) == dist);
                const auto path = t.path(u, v);
                REQUIRE(static_cast<int>(path.size()) == dist + 1);
                // The common ancestor is the lowest-level vertex on the path.
                const int low = *std::min_element(path.begin(), path.end(), [&](int a, int b) { return t.level(a) < t.level(b); });
                REQUIRE(low == lca);
            }
    }
}

TEST_CASE("word distance") {
    CHECK(word_distance(std::string("abc"), std::string("abd")) == 2);
    CHECK(word_distance(std::string("ab"), std::string("abcd")) == 2);
    CHECK(word_distance(std::string(""), std::string("xy")) == 2);
    CHECK(word_distance(std::string("xa"), std::string("ya")) == 4);
}

TEST_CASE("binary letters") {
    CHECK(binary_width(1) == 1);
    CHECK(binary_width(2) == 1);
    CHECK(binary_width(3) == 2);
    CHECK(binary_width(4) == 3);
    CHECK(binary_width(7) == 3);
    CHECK(binary_width(8) == 4);
    CHECK(binary_embed({1, 2}, 2) == std::vector<std::uint8_t>{0, 1});
    CHECK(binary_embed({3, 1}, 3) == std::vector<std::uint8_t>{1, 1, 0, 1});
    CHECK_THROWS(binary_embed({0}, 3));
    CHECK_THROWS(binary_width(0));
}

TEST_CASE("binary images sandwich the word distance") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 9; ++n) {
        const int lambda = binary_width(n);
        std::uniform_int_distribution<int> letter(1, n), len(0, 6);
        for (int trial = 0; trial < 400; ++trial) {
            std::vector<int> a(static_cast<std::size_t>(len(rng))), b;
            for (auto& x : a) x = letter(rng);
            b = a;
            b.resize(std::min(b.size(), static_cast<std::size_t>(len(rng))));
            const int extra = len(rng);
            for (int i = 0; i < extra; ++i) b.push_back(letter(rng));
            const int L = word_distance(a, b);
            const int Lb = word_distance(binary_embed(a, n), binary_embed(b, n));
            CHECK(Lb <= lambda * L);
            CHECK(lambda * (L - 2) + 2 <= Lb);
        }
    }
}

TEST_CASE("distances and common ancestors on small shapes") {
    LevelledTree chain({-1, 0, 1, 2}, {0, 1, 2, 3});
    CHECK(chain.distance(0, 3) == 3);
    CHECK(chain.distance(2, 2) == 0);
    CHECK(chain.common_ancestor(1, 3) == 1);
    CHECK(chain.common_ancestor(3, 1) == 1);
    CHECK(chain.common_ancestor(2, 2) == 2);
    LevelledTree cherry({-1, 0, 0}, {0, 1, 1});
    CHECK(cherry.distance(1, 2) == 2);
    CHECK(cherry.common_ancestor(1, 2) == 0);
    LevelledTree single({-1}, {0});
    CHECK(single.size() == 1);
    CHECK(single.max_valence() == 0);
    CHECK(binary_embed({}, 5).empty());
}
