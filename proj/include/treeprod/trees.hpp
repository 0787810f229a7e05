#pragma once

#include "treeprod/coverings.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeprod {

class TreeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Rooted tree with a level per vertex; vertex 0 is the root.
class LevelledTree {
   public:
    // parent[0] must be -1; levels must strictly increase from parent to child.
    LevelledTree(std::vector<int> parent, std::vector<int> level, std::vector<std::string> labels = {});

    std::size_t size() const { return parent_.size(); }
    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
    int level(int v) const { return level_[static_cast<std::size_t>(v)]; }
    // Generations between v and the root.
    int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
    const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }

    bool is_ancestor(int ancestor, int v) const;
    // Youngest common ancestor; also the lowest-level vertex of the path u..v.
    int common_ancestor(int u, int v) const;
    int distance(int u, int v) const;
    // Path u..v as vertex list, u first.
    std::vector<int> path(int u, int v) const;
    std::size_t max_valence() const;

   private:
    std::vector<int> parent_, level_, depth_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> children_;
};

inline int lowest_segment_vertex(const LevelledTree& t, int u, int v) { return t.common_ancestor(u, v); }

// Tree of one color: vertices are that color's covering elements, ordered by inclusion.
struct ColorTree {
    int color = 0;
    LevelledTree tree;
    std::vector<const CoveringElement*> elements;  // indexed like tree vertices
    std::vector<std::vector<int>> by_level;         // vertex ids per covering level
};

ColorTree build_color_tree(const CoveringSequence& seq, int color, const CoveringGeometry& geo);

// Distance in a word tree: both lengths minus twice the common prefix.
template <class Word>
int word_distance(const Word& a, const Word& b) {
    std::size_t p = 0;
    while (p < a.size() && p < b.size() && a[p] == b[p]) ++p;
    return static_cast<int>(a.size() + b.size() - 2 * p);
}

// Bits per letter when an alphabet of n letters is written in binary.
int binary_width(int n);
// Letters are 1..n; each becomes its zero-padded binary string (k-1 when n < 3).
std::vector<std::uint8_t> binary_embed(const std::vector<int>& word, int n);

// One line per vertex: id parentId level label.
void write_tree(std::ostream& os, const LevelledTree& t);

}  // namespace treeprod
