#pragma once

#include "treeprod/checks.hpp"
#include "treeprod/diary.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treeprod {

using Bits = std::vector<std::uint8_t>;

// First n bits of the sequence generated by 0 -> 01, 1 -> 10 from 0.
Bits mt_prefix(std::size_t n);
// t(n); grows a shared prefix on demand.
int mt_bit(std::size_t n);

struct Cube {
    std::size_t start, period;
};
std::optional<Cube> find_cube(const Bits& bits, unsigned jobs = 1);
inline bool is_cube_free(const Bits& bits, unsigned jobs = 1) { return !find_cube(bits, jobs); }

std::string format_bits(const Bits& bits);

// Level of each token: letters count up from 1, a stop sign repeats the previous level.
std::vector<int> letter_levels(const Sentence& s);
// Level of the last token; stop signs do not add to it.
int sentence_length(const Sentence& s);

// Every token, stop signs included, gets bit t(level).
Sentence decorate(const Sentence& s);
Sentence strip(const Sentence& s);
bool is_decorated(const Sentence& s);

// Number of letters from position `pos` to the end, stop signs excluded.
int tail_length(const Sentence& s, std::size_t pos);
// Longest common tail of two decorated sentences, counted in letters.
int common_tail(const Sentence& a, const Sentence& b);

struct Verdict {
    Status status = Status::inconclusive;
    std::string detail;
};

// Identical tails of length >= l and lengths within l/2 must give equal lengths.
Verdict synchronize_check(const Sentence& a, const Sentence& b, int l);

// Positions are token indices of the compared letters in a and b.
// Hypotheses: no empty word, equal levels, word indices within 2, p >= 3 stops behind each,
// tails at most n(p-2), equal kappa-diaries with kappa >= 5n+1. Conclusion: equal letters.
// With `allow_small_kappa` the kappa hypothesis is skipped (negative controls).
Verdict equal_diaries_check(const Sentence& a, std::size_t pos_a, const Sentence& b, std::size_t pos_b, int kappa,
                            int n, int p, bool allow_small_kappa = false);

}  // namespace treeprod
