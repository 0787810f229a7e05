#include "treeprod/trees.hpp"

#include <algorithm>
#include <ostream>

namespace treeprod {

LevelledTree::LevelledTree(std::vector<int> parent, std::vector<int> level, std::vector<std::string> labels)
    : parent_(std::move(parent)), level_(std::move(level)), labels_(std::move(labels)) {
    const std::size_t n = parent_.size();
    if (n == 0) throw TreeError("empty tree");
    if (level_.size() != n) throw TreeError("level list does not match vertex count");
    if (labels_.empty()) {
        for (std::size_t v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
    }
    if (labels_.size() != n) throw TreeError("label list does not match vertex count");
    if (parent_[0] != -1) throw TreeError("vertex 0 must be the root");
    depth_.assign(n, 0);
    children_.assign(n, {});
    for (std::size_t v = 1; v < n; ++v) {
        const int p = parent_[v];
        // Parents come first so depths are ready when needed.
        if (p < 0 || static_cast<std::size_t>(p) >= v) throw TreeError("vertex " + std::to_string(v) + " has a bad parent");
        if (level_[v] <= level_[static_cast<std::size_t>(p)])
            throw TreeError("levels not strictly increasing at vertex " + std::to_string(v));
        depth_[v] = depth_[static_cast<std::size_t>(p)] + 1;
        children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
    }
}

bool LevelledTree::is_ancestor(int ancestor, int v) const {
    while (depth(v) > depth(ancestor)) v = parent(v);
    return v == ancestor;
}

int LevelledTree::common_ancestor(int u, int v) const {
    while (depth(u) > depth(v)) u = parent(u);
    while (depth(v) > depth(u)) v = parent(v);
    while (u != v) {
        u = parent(u);
        v = parent(v);
    }
    return u;
}

int LevelledTree::distance(int u, int v) const {
    const int w = common_ancestor(u, v);
    return depth(u) + depth(v) - 2 * depth(w);
}

std::vector<int> LevelledTree::path(int u, int v) const {
    const int w = common_ancestor(u, v);
    std::vector<int> up, down;
    for (int x = u; x != w; x = parent(x)) up.push_back(x);
    for (int x = v; x != w; x = parent(x)) down.push_back(x);
    up.push_back(w);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

std::size_t LevelledTree::max_valence() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < size(); ++v) best = std::max(best, children_[v].size() + (v == 0 ? 0 : 1));
    return best;
}

ColorTree build_color_tree(const CoveringSequence& seq, int color, const CoveringGeometry& geo) {
    if (seq.families.empty()) throw TreeError("covering sequence has no levels");
    const auto& root_family = seq.family(0, color);
    if (root_family.size() != 1) throw TreeError("level 0 of color " + std::to_string(color) + " is not a single set");

    ColorTree ct{color, LevelledTree({-1}, {0}), {}, {}};
    std::vector<int> parent{-1}, level{0};
    std::vector<std::string> labels{root_family[0].id};
    ct.elements.push_back(&root_family[0]);
    ct.by_level.push_back({0});

    for (int j = 1; j <= seq.top_level(); ++j) {
        ct.by_level.emplace_back();
        for (const auto& u : seq.family(j, color)) {
            // Every lower-level element containing u, deepest first.
            std::vector<int> above;
            for (int jj = j - 1; jj >= 0; --jj)
                for (int w : ct.by_level[static_cast<std::size_t>(jj)])
                    if (geo.inside(u, *ct.elements[static_cast<std::size_t>(w)])) above.push_back(w);
            if (above.empty()) throw TreeError("element " + u.id + " has no ancestor");
            const int p = above.front();
            // Condition (+): the containing elements must form one chain.
            std::vector<int> chain;
            for (int x = p; x != -1; x = parent[static_cast<std::size_t>(x)]) chain.push_back(x);
            for (int w : above)
                if (std::find(chain.begin(), chain.end(), w) == chain.end())
                    throw TreeError("ancestors of " + u.id + " are not nested (" +
                                    ct.elements[static_cast<std::size_t>(w)]->id + ")");
            const int id = static_cast<int>(parent.size());
            parent.push_back(p);
            level.push_back(j);
            labels.push_back(u.id);
            ct.elements.push_back(&u);
            ct.by_level.back().push_back(id);
        }
    }
    ct.tree = LevelledTree(std::move(parent), std::move(level), std::move(labels));
    return ct;
}

int binary_width(int n) {
    if (n < 1) throw std::invalid_argument("alphabet must be nonempty");
    if (n < 3) return 1;
    int w = 0;
    while ((1 << w) <= n) ++w;
    return w;
}

std::vector<std::uint8_t> binary_embed(const std::vector<int>& word, int n) {
    const int w = binary_width(n);
    std::vector<std::uint8_t> out;
    out.reserve(word.size() * static_cast<std::size_t>(w));
    for (int k : word) {
        if (k < 1 || k > n) throw std::invalid_argument("letter " + std::to_string(k) + " outside 1.." + std::to_string(n));
        const int code = n < 3 ? k - 1 : k;
        for (int b = w - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((code >> b) & 1));
    }
    return out;
}

void write_tree(std::ostream& os, const LevelledTree& t) {
    for (std::size_t v = 0; v < t.size(); ++v)
        os << v << ' ' << t.parent(static_cast<int>(v)) << ' ' << t.level(static_cast<int>(v)) << ' '
           << t.label(static_cast<int>(v)) << '\n';
}

}  // namespace treeprod
