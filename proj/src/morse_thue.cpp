#include "treeprod/morse_thue.hpp"

#include "treeprod/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace treeprod {

Bits mt_prefix(std::size_t n) {
    Bits cur{0};
    while (cur.size() < n) {
        Bits next;
        next.reserve(cur.size() * 2);
        for (auto b : cur) {
            next.push_back(b);
            next.push_back(static_cast<std::uint8_t>(1 - b));
        }
        cur = std::move(next);
    }
    cur.resize(n);
    return cur;
}

int mt_bit(std::size_t n) {
    static const Bits table = mt_prefix(std::size_t{1} << 16);
    // Past the table, one substitution step back: t(2m) = t(m), t(2m+1) = 1 - t(m).
    int flip = 0;
    while (n >= table.size()) {
        flip ^= static_cast<int>(n & 1);
        n >>= 1;
    }
    return table[n] ^ flip;
}

std::optional<Cube> find_cube(const Bits& bits, unsigned jobs) {
    const std::size_t n = bits.size();
    const std::size_t max_period = n / 3;
    if (max_period == 0) return std::nullopt;
    std::vector<std::optional<Cube>> found(max_period + 1);
    parallel_chunks(max_period, jobs, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t p = begin + 1; p <= end; ++p) {
            // www at i means bits[k] == bits[k+p] for the 2p positions k = i .. i+2p-1.
            std::size_t run = 0;
            for (std::size_t k = 0; k + p < n; ++k) {
                run = bits[k] == bits[k + p] ? run + 1 : 0;
                if (run == 2 * p) {
                    found[p] = Cube{k + 1 - 2 * p, p};
                    break;
                }
            }
        }
    });
    for (const auto& c : found)
        if (c) return c;
    return std::nullopt;
}

std::string format_bits(const Bits& bits) {
    std::string s;
    for (auto b : bits) s += static_cast<char>('0' + b);
    return s;
}

std::vector<int> letter_levels(const Sentence& s) {
    std::vector<int> lv;
    lv.reserve(s.size());
    int cur = 0;
    for (const auto& a : s) {
        if (!a.is_stop()) ++cur;
        lv.push_back(cur);
    }
    return lv;
}

int sentence_length(const Sentence& s) {
    return static_cast<int>(std::count_if(s.begin(), s.end(), [](const Letter& a) { return !a.is_stop(); }));
}

Sentence decorate(const Sentence& s) {
    Sentence out = s;
    const auto lv = letter_levels(s);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].bit = static_cast<std::int8_t>(mt_bit(static_cast<std::size_t>(lv[i])));
    return out;
}

Sentence strip(const Sentence& s) {
    Sentence out = s;
    for (auto& a : out) a.bit = -1;
    return out;
}

bool is_decorated(const Sentence& s) {
    const auto lv = letter_levels(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].bit != mt_bit(static_cast<std::size_t>(lv[i]))) return false;
    return true;
}

int tail_length(const Sentence& s, std::size_t pos) {
    int n = 0;
    for (std::size_t i = pos; i < s.size(); ++i) n += s[i].is_stop() ? 0 : 1;
    return n;
}

int common_tail(const Sentence& a, const Sentence& b) {
    std::size_t i = a.size(), j = b.size();
    int letters = 0;
    while (i > 0 && j > 0 && a[i - 1] == b[j - 1]) {
        --i;
        --j;
        letters += a[i].is_stop() ? 0 : 1;
    }
    return letters;
}

Verdict synchronize_check(const Sentence& a, const Sentence& b, int l) {
    if (!is_decorated(a) || !is_decorated(b)) return {Status::inconclusive, "sentences not decorated"};
    if (common_tail(a, b) < l) return {Status::inconclusive, "common tail shorter than l"};
    const int la = sentence_length(a), lb = sentence_length(b);
    if (2 * std::abs(la - lb) > l) return {Status::inconclusive, "lengths differ by more than l/2"};
    if (la == lb) return {Status::pass, ""};
    return {Status::fail, "lengths " + std::to_string(la) + " and " + std::to_string(lb) + " with common tail " +
                              std::to_string(common_tail(a, b))};
}

namespace {

bool has_empty_word(const Sentence& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].is_stop() && (i == 0 || s[i - 1].is_stop())) return true;
    return false;
}

std::size_t stops_before(const Sentence& s, std::size_t pos) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pos),
                                                  [](const Letter& x) { return x.is_stop(); }));
}

}  // namespace

Verdict equal_diaries_check(const Sentence& a, std::size_t pos_a, const Sentence& b, std::size_t pos_b, int kappa,
                            int n, int p, bool allow_small_kappa) {
    if (pos_a >= a.size() || pos_b >= b.size()) return {Status::inconclusive, "position outside the sentence"};
    if (!well_formed(a) || !well_formed(b) || a.empty() || b.empty()) return {Status::inconclusive, "malformed sentence"};
    if (!is_decorated(a) || !is_decorated(b)) return {Status::inconclusive, "sentences not decorated"};
    if (has_empty_word(a) || has_empty_word(b)) return {Status::inconclusive, "empty word"};
    if (a[pos_a].is_stop() || b[pos_b].is_stop()) return {Status::inconclusive, "compared tokens must be letters"};
    if (letter_levels(a)[pos_a] != letter_levels(b)[pos_b]) return {Status::inconclusive, "levels differ"};
    const auto ma = stops_before(a, pos_a), mb = stops_before(b, pos_b);
    if ((ma > mb ? ma - mb : mb - ma) > 2) return {Status::inconclusive, "word indices differ by more than 2"};
    if (p < 3 || n < 1) return {Status::inconclusive, "need p >= 3 and n >= 1"};
    const auto behind_a = word_count(a) - ma, behind_b = word_count(b) - mb;
    if (behind_a < static_cast<std::size_t>(p) || behind_b < static_cast<std::size_t>(p))
        return {Status::inconclusive, "fewer than p stop signs behind"};
    if (std::max(tail_length(a, pos_a), tail_length(b, pos_b)) > n * (p - 2))
        return {Status::inconclusive, "tail longer than n(p-2)"};
    if (!allow_small_kappa && kappa < 5 * n + 1) return {Status::inconclusive, "kappa below 5n+1"};
    if (encode(a, kappa) != encode(b, kappa)) return {Status::inconclusive, "diaries differ"};
    if (a[pos_a] == b[pos_b]) return {Status::pass, ""};
    return {Status::fail, "equal diaries but different letters at level " + std::to_string(letter_levels(a)[pos_a])};
}

}  // namespace treeprod
