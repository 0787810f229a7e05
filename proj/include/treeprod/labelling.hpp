#pragma once

#include "treeprod/diary.hpp"
#include "treeprod/tree_embed.hpp"

#include <map>
#include <string>
#include <vector>

namespace treeprod {

// mu per vertex; same-level vertices closer than 2r^(k-2) get different colors.
struct NetColoring {
    std::vector<int> mu;              // indexed by VertexId
    int palette = 0;                  // |F|
    std::vector<int> used_per_level;  // index k - k0
    std::vector<int> max_degree;      // largest conflict degree per level

    int color(VertexId v) const { return mu[v]; }
};

// Greedy in vertex order, level by level.
NetColoring color_nets(const ApproxGraph& g);
bool conflicting(const ApproxGraph& g, VertexId a, VertexId b);
CheckResult check_coloring(const ApproxGraph& g, const NetColoring& col);

// Nonempty color subsets interned as letters; symbol 0 stays the stop sign.
class SubsetAlphabet {
   public:
    std::uint32_t intern(const std::vector<int>& subset);
    const std::vector<int>& subset(std::uint32_t symbol) const { return subsets_.at(symbol - 1); }
    std::size_t size() const { return subsets_.size(); }
    const Lexicon& lexicon() const { return lexicon_; }

   private:
    std::map<std::vector<int>, std::uint32_t> ids_;
    std::vector<std::vector<int>> subsets_;
    Lexicon lexicon_;
};

// Colors of level-(k+1) net points whose balls meet the element, for each level k of the edge.
struct Labelling {
    const Stage1* stage1 = nullptr;
    NetColoring coloring;
    SubsetAlphabet alphabet;
    std::vector<std::vector<Word>> edge_words;     // [c][tree vertex], word of the edge to the parent
    std::vector<std::vector<Sentence>> sentences;  // [c][tree vertex], decorated

    const Sentence& sentence_of(int c, int u) const { return sentences[static_cast<std::size_t>(c)][static_cast<std::size_t>(u)]; }
};

Labelling build_labelling(const Stage1& e);
// Letter a_k of the edge into u: the subset for level k and bit t(k).
Letter edge_letter(const Stage1& e, const NetColoring& col, SubsetAlphabet& alphabet, const ColorTree& ct, int u, int k);

// Sentences: no empty words, word count = tree depth <= level, letter levels match covering levels,
// decoration bits agree with the Morse-Thue module.
std::vector<CheckResult> labelling_checks(const Labelling& lab);

struct CriticalLetters {
    Letter a, b;
    std::size_t m = 0, m2 = 0;  // word indices of a and b
};
// Letters of level l in both sentences, or nullopt if either sentence is shorter than l.
std::optional<CriticalLetters> critical_letters(const Sentence& s, const Sentence& s2, int l);

// Over horizontally distinct pairs and elements U containing v, U' containing v' with levels >= l+1:
// the critical letters differ and their word indices are within 2. Pairs with l < 1 are inconclusive.
CheckResult critical_letters_check(const Labelling& lab, unsigned jobs = 1);

int min_kappa(int colors);
// max(3|C|+1, 15|C|^2 + 4|C| + 1)
int sigma_absorbed(int colors);

class KappaError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct Stage2 {
    const Labelling* labelling = nullptr;
    int kappa = 0;
    std::vector<std::vector<Diary>> diaries;  // [c][tree vertex]

    int colors() const { return static_cast<int>(diaries.size()); }
    const Diary& eta(int c, VertexId v) const;
    int eta_distance(int c, VertexId a, VertexId b) const;
    int eta_l1(VertexId a, VertexId b) const;
};

// Throws KappaError below 15|C|+1 unless `research` is set.
Stage2 build_stage2(const Labelling& lab, int kappa, bool research = false);

struct QiReport {
    std::size_t pairs = 0;
    double upper_worst = 0;  // max sum_c L(eta_c v, eta_c v') / |vv'|, to compare with 2|C|
    long lower_worst = 0;    // max |vv'| - 2|C| |eta(v) eta(v')|_1, to compare with sigma''
    double lambda_fit = 0;   // largest lambda with |eta| >= lambda |vv'| - 5 on every pair
    double sigma_fit = 0;    // max |vv'|/2|C| - |eta|_1
    int sigma = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> violations;  // first few, in pair order
    bool passed() const;
};

QiReport qi_report(const Stage2& s, const DistanceTable& d, unsigned jobs = 1);

// Every tree vertex's diary reconstructs to a slotted sentence containing its sentence.
CheckResult composition_check(const Stage2& s);

struct BinaryStage {
    std::vector<Page> pages;  // occurring pages, sorted; id = index + 1
    int width = 0;            // lambda
    std::vector<std::vector<std::vector<std::uint8_t>>> codes;  // [c][tree vertex]

    int page_id(const Page& p) const;
};

BinaryStage build_binary_stage(const Stage2& s);
// lambda(L-2)+2 <= L_bin <= lambda L over all pairs of occurring diaries.
CheckResult binary_sandwich_check(const Stage2& s, const BinaryStage& b);

std::string format_subset(const std::vector<int>& subset);

}  // namespace treeprod
