#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeprod {

// Symbol 0 is the stop sign. bit is the decoration bit, or -1 for undecorated letters.
struct Letter {
    std::uint32_t symbol = 0;
    std::int8_t bit = -1;

    bool is_stop() const { return symbol == 0; }
    auto operator<=>(const Letter&) const = default;
};

inline Letter stop_sign(int bit = -1) { return Letter{0, static_cast<std::int8_t>(bit)}; }

using Word = std::vector<Letter>;
using Sentence = std::vector<Letter>;

// Either exactly kappa letters, or fewer followed by the star.
struct Page {
    std::vector<Letter> letters;
    bool star = false;
    auto operator<=>(const Page&) const = default;
};

using Diary = std::vector<Page>;

// One word of a slotted sentence. A slot stands for an unknown prefix of the word;
// a missing stop means the stop sign was never written, so any stop sign matches.
struct SlotUnit {
    bool slot = false;
    Word word;
    std::optional<Letter> stop;
    bool operator==(const SlotUnit&) const = default;
};

struct SlottedSentence {
    std::vector<SlotUnit> units;
    bool honest() const;
    std::size_t slot_count() const;
    bool operator==(const SlottedSentence&) const = default;
};

class DiaryError : public std::runtime_error {
   public:
    DiaryError(std::size_t page, const std::string& what)
        : std::runtime_error("page " + std::to_string(page) + ": " + what), page(page) {}
    std::size_t page;
};

// Ends with a stop sign, or is empty.
bool well_formed(const Sentence& s);
std::vector<Word> split_words(const Sentence& s);
std::size_t word_count(const Sentence& s);

Diary encode(const Sentence& s, int kappa);
// Tokens never written to a page; always ends with the final stop sign.
Sentence rest_sentence(const Sentence& s, int kappa);

SlottedSentence reconstruct(const Diary& diary, int kappa);

bool membership(const SlottedSentence& b, const Sentence& s);
// Slot contents and unwritten stop signs of s, in order; nullopt when s is not a member.
std::optional<Sentence> slotted_rest(const SlottedSentence& b, const Sentence& s);
// Slots get the given prefixes; unwritten stops get `open_stop`.
Sentence fill_slots(const SlottedSentence& b, const std::vector<Word>& fills, Letter open_stop = stop_sign());

// Length of the unbroken run of written tokens ending just before stop `stop_index` (0-based),
// and whether that run reaches the start of the sentence.
struct WrittenRun {
    std::size_t length = 0;
    bool whole_prefix = false;
};
WrittenRun written_run_before(const SlottedSentence& b, std::size_t stop_index);

// Names for symbols in the textual syntax; symbol 0 is "s".
class Lexicon {
   public:
    Lexicon();
    std::uint32_t intern(const std::string& name);
    std::optional<std::uint32_t> find(const std::string& name) const;
    const std::string& name(std::uint32_t symbol) const { return names_.at(symbol); }
    std::size_t size() const { return names_.size(); }

   private:
    std::vector<std::string> names_;
    std::map<std::string, std::uint32_t> ids_;
};

// Tokens separated by spaces; "s" stop, "*" star, "_" slot, "name:1" decorated.
Sentence parse_sentence(const std::string& text, Lexicon& lex);
std::string format_letter(const Letter& a, const Lexicon& lex);
std::string format(const Sentence& s, const Lexicon& lex);
std::string format(const Page& p, const Lexicon& lex);
std::string format(const Diary& d, const Lexicon& lex);
std::string format(const SlottedSentence& b, const Lexicon& lex);
// Pages written as "(c b a)(a s *)".
Diary parse_diary(const std::string& text, Lexicon& lex);

}  // namespace treeprod
