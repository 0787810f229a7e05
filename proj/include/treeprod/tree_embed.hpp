#pragma once

#include "treeprod/trees.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace treeprod {

// The maps from graph vertices into the color trees.
struct Stage1 {
    const ApproxGraph* graph = nullptr;
    const CoveringSequence* seq = nullptr;
    const CoveringGeometry* geo = nullptr;
    std::vector<ColorTree> trees;
    std::vector<std::vector<int>> image;  // image[c][v] is a vertex of trees[c]

    int colors() const { return static_cast<int>(trees.size()); }
    int image_of(int c, VertexId v) const { return image[static_cast<std::size_t>(c)][v]; }
    int tree_distance(int c, VertexId a, VertexId b) const;
};

// Root goes to root; otherwise the deepest element of level <= l(v)-1 containing B(v).
// Vertices of negative level also go to the root, since no element lives below level 0.
Stage1 build_stage1(const ApproxGraph& g, const CoveringSequence& seq, const CoveringGeometry& geo);

int product_distance(const Stage1& e, VertexId a, VertexId b);

enum class PairKind { identical, close, distinct, unclassified };
std::string to_string(PairKind k);

struct PairClassification {
    PairKind kind = PairKind::unclassified;
    int critical_level = 0;  // distinct pairs only
};

// The l with r^l <= d < r^(l-1); d > 0.
int critical_level(const Rational& d, const Rational& r);
PairClassification classify_pair(const ApproxGraph& g, VertexId a, VertexId b);

// Everything the pair suites need about one unordered pair.
struct PairRecord {
    VertexId v = 0, w = 0;  // oriented so level(v) >= level(w)
    int dist = 0;
    PairClassification cls;
    int tree_sum = 0;
    int best_color = -1;
    int bound_rhs = 0;
    bool lipschitz_ok = true, radial_ok = true, bound_ok = true, global_ok = true;
    bool ok() const { return lipschitz_ok && radial_ok && bound_ok && global_ok; }
};

PairRecord examine_pair(const Stage1& e, const DistanceTable& d, VertexId a, VertexId b);

struct Stage1Report {
    std::vector<CheckResult> checks;
    std::size_t pairs = 0, close_pairs = 0, distinct_pairs = 0;
    double worst_lipschitz = 0;  // max tree distance / graph distance over colors and pairs
    double worst_global = 0;     // max graph distance / (2|C| product distance + 2|C|+1)
    bool passed() const;
};

Stage1Report stage1_report(const Stage1& e, const DistanceTable& d, unsigned jobs = 1);

// Structural lemmas on images, close pairs, critical levels and radial depth.
std::vector<CheckResult> stage1_lemma_checks(const Stage1& e, const DistanceTable& d, unsigned jobs = 1);

// v v' |vv'| class l sum_tree_dist best_color bound_rhs violation
void write_pairs_csv(std::ostream& os, const Stage1& e, const DistanceTable& d);

std::string vertex_name(const ApproxGraph& g, VertexId v);

}  // namespace treeprod
