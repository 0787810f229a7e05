#include "treeprod/diary.hpp"

#include <algorithm>
#include <sstream>

namespace treeprod {

bool SlottedSentence::honest() const { return slot_count() == 0; }

std::size_t SlottedSentence::slot_count() const {
    return static_cast<std::size_t>(std::count_if(units.begin(), units.end(), [](const SlotUnit& u) { return u.slot; }));
}

bool well_formed(const Sentence& s) { return s.empty() || s.back().is_stop(); }

std::vector<Word> split_words(const Sentence& s) {
    std::vector<Word> out;
    Word cur;
    for (const auto& a : s) {
        if (a.is_stop()) {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(a);
        }
    }
    if (!cur.empty()) throw std::invalid_argument("sentence does not end with a stop sign");
    return out;
}

std::size_t word_count(const Sentence& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](const Letter& a) { return a.is_stop(); }));
}

namespace {

void check_kappa(int kappa) {
    if (kappa < 1) throw std::invalid_argument("diary constant must be at least 1");
}

// Runs the morning rule, returning the pages and the final rest.
std::pair<Diary, Sentence> write_diary(const Sentence& s, int kappa) {
    check_kappa(kappa);
    if (!well_formed(s)) throw std::invalid_argument("sentence does not end with a stop sign");
    Diary diary;
    Sentence rest;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].is_stop()) continue;
        rest.insert(rest.end(), s.begin() + static_cast<std::ptrdiff_t>(start), s.begin() + static_cast<std::ptrdiff_t>(i));
        start = i + 1;
        const std::size_t avail = rest.size();
        const std::size_t take = std::min(avail, static_cast<std::size_t>(kappa));
        Page page;
        for (std::size_t t = 0; t < take; ++t) page.letters.push_back(rest[avail - 1 - t]);
        page.star = take < static_cast<std::size_t>(kappa);
        diary.push_back(std::move(page));
        rest.resize(avail - take);
        rest.push_back(s[i]);
    }
    return {std::move(diary), std::move(rest)};
}

}  // namespace

Diary encode(const Sentence& s, int kappa) { return write_diary(s, kappa).first; }

Sentence rest_sentence(const Sentence& s, int kappa) { return write_diary(s, kappa).second; }

SlottedSentence reconstruct(const Diary& diary, int kappa) {
    check_kappa(kappa);
    const auto k = static_cast<std::size_t>(kappa);
    struct Sym {
        bool slot;
        std::size_t unit;
    };
    SlottedSentence out;
    std::vector<Sym> rest;

    for (std::size_t i = 0; i < diary.size(); ++i) {
        const Page& page = diary[i];
        if (page.star ? page.letters.size() >= k : page.letters.size() != k)
            throw DiaryError(i, "page has the wrong length for kappa " + std::to_string(kappa));
        const Word what(page.letters.rbegin(), page.letters.rend());
        const auto last_stop = std::find_if(what.rbegin(), what.rend(), [](const Letter& a) { return a.is_stop(); });
        const std::size_t u = out.units.size();

        if (last_stop == what.rend()) {
            if (!rest.empty() && page.star) throw DiaryError(i, "star page leaves earlier tokens unwritten");
            out.units.push_back(SlotUnit{!page.star, what, std::nullopt});
            if (!page.star) rest.push_back({true, u});
            rest.push_back({false, u});
            continue;
        }
        if (rest.empty()) throw DiaryError(i, "stop sign before any word ended");

        const auto split = static_cast<std::size_t>(what.rend() - last_stop);  // head includes the stop
        std::size_t hi = split, ri = rest.size();
        while (hi > 0) {
            if (ri == 0) throw DiaryError(i, "page reaches past the start of the sentence");
            const Sym sym = rest[ri - 1];
            SlotUnit& unit = out.units[sym.unit];
            if (!sym.slot) {
                if (!what[hi - 1].is_stop()) throw DiaryError(i, "letter where a stop sign is due");
                unit.stop = what[hi - 1];
                --hi;
                --ri;
                continue;
            }
            std::size_t j = hi;
            while (j > 0 && !what[j - 1].is_stop()) --j;
            unit.word.insert(unit.word.begin(), what.begin() + static_cast<std::ptrdiff_t>(j),
                             what.begin() + static_cast<std::ptrdiff_t>(hi));
            hi = j;
            if (j > 0) {
                unit.slot = false;
                --ri;
            }
        }
        if (page.star) {
            if (ri > 0 && rest[ri - 1].slot) {
                out.units[rest[ri - 1].unit].slot = false;
                --ri;
            }
            if (ri > 0) throw DiaryError(i, "star page leaves earlier tokens unwritten");
        }
        rest.resize(ri);
        out.units.push_back(SlotUnit{false, Word(what.begin() + static_cast<std::ptrdiff_t>(split), what.end()), std::nullopt});
        rest.push_back({false, u});
    }
    return out;
}

namespace {

struct SplitWord {
    Word word;
    Letter stop;
};

std::vector<SplitWord> split_with_stops(const Sentence& s) {
    std::vector<SplitWord> out;
    Word cur;
    for (const auto& a : s) {
        if (a.is_stop()) {
            out.push_back({std::move(cur), a});
            cur.clear();
        } else {
            cur.push_back(a);
        }
    }
    if (!cur.empty()) return {};
    return out;
}

bool ends_with(const Word& w, const Word& tail) {
    return w.size() >= tail.size() && std::equal(tail.begin(), tail.end(), w.end() - static_cast<std::ptrdiff_t>(tail.size()));
}

}  // namespace

std::optional<Sentence> slotted_rest(const SlottedSentence& b, const Sentence& s) {
    if (!well_formed(s)) return std::nullopt;
    const auto words = split_with_stops(s);
    if (words.size() != b.units.size()) return std::nullopt;
    Sentence rest;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const SlotUnit& u = b.units[i];
        const SplitWord& w = words[i];
        if (u.stop && *u.stop != w.stop) return std::nullopt;
        if (u.slot) {
            if (!ends_with(w.word, u.word)) return std::nullopt;
            rest.insert(rest.end(), w.word.begin(), w.word.end() - static_cast<std::ptrdiff_t>(u.word.size()));
        } else if (w.word != u.word) {
            return std::nullopt;
        }
        if (!u.stop) rest.push_back(w.stop);
    }
    return rest;
}

bool membership(const SlottedSentence& b, const Sentence& s) { return slotted_rest(b, s).has_value(); }

Sentence fill_slots(const SlottedSentence& b, const std::vector<Word>& fills, Letter open_stop) {
    if (fills.size() != b.slot_count())
        throw std::invalid_argument("expected " + std::to_string(b.slot_count()) + " fill words, got " +
                                    std::to_string(fills.size()));
    Sentence out;
    std::size_t f = 0;
    for (const auto& u : b.units) {
        if (u.slot) {
            for (const auto& a : fills[f])
                if (a.is_stop()) throw std::invalid_argument("fill words cannot contain stop signs");
            out.insert(out.end(), fills[f].begin(), fills[f].end());
            ++f;
        }
        out.insert(out.end(), u.word.begin(), u.word.end());
        out.push_back(u.stop ? *u.stop : open_stop);
    }
    return out;
}

WrittenRun written_run_before(const SlottedSentence& b, std::size_t stop_index) {
    if (stop_index >= b.units.size()) throw std::out_of_range("stop index past the sentence");
    WrittenRun run;
    for (std::size_t i = stop_index + 1; i-- > 0;) {
        const SlotUnit& u = b.units[i];
        run.length += u.word.size();
        if (u.slot) return run;
        if (i == 0) break;
        if (!b.units[i - 1].stop) return run;
        run.length += 1;
    }
    run.whole_prefix = true;
    return run;
}

Lexicon::Lexicon() {
    names_.push_back("s");
    ids_["s"] = 0;
}

std::uint32_t Lexicon::intern(const std::string& name) {
    if (name.empty() || name == "*" || name == "_" || name.find(':') != std::string::npos ||
        name.find_first_of(" ()") != std::string::npos)
        throw std::invalid_argument("bad letter name '" + name + "'");
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(name);
    ids_[name] = id;
    return id;
}

std::optional<std::uint32_t> Lexicon::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

namespace {

Letter parse_letter(const std::string& tok, Lexicon& lex) {
    Letter a;
    const auto colon = tok.find(':');
    std::string name = tok.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string bit = tok.substr(colon + 1);
        if (bit != "0" && bit != "1") throw std::invalid_argument("bad decoration in '" + tok + "'");
        a.bit = static_cast<std::int8_t>(bit[0] - '0');
    }
    a.symbol = lex.intern(name);
    return a;
}

std::vector<std::string> tokens_of(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

Sentence parse_sentence(const std::string& text, Lexicon& lex) {
    Sentence s;
    for (const auto& t : tokens_of(text)) s.push_back(parse_letter(t, lex));
    if (!well_formed(s)) throw std::invalid_argument("sentence must end with s");
    return s;
}

std::string format_letter(const Letter& a, const Lexicon& lex) {
    std::string out = lex.name(a.symbol);
    if (a.bit >= 0) out += ":" + std::to_string(a.bit);
    return out;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

}  // namespace

std::string format(const Sentence& s, const Lexicon& lex) {
    std::vector<std::string> parts;
    for (const auto& a : s) parts.push_back(format_letter(a, lex));
    return join(parts);
}

std::string format(const Page& p, const Lexicon& lex) {
    std::vector<std::string> parts;
    for (const auto& a : p.letters) parts.push_back(format_letter(a, lex));
    if (p.star) parts.push_back("*");
    return "(" + join(parts) + ")";
}

std::string format(const Diary& d, const Lexicon& lex) {
    std::string out;
    for (const auto& p : d) out += format(p, lex);
    return out;
}

std::string format(const SlottedSentence& b, const Lexicon& lex) {
    std::vector<std::string> parts;
    for (const auto& u : b.units) {
        if (u.slot) parts.push_back("_");
        for (const auto& a : u.word) parts.push_back(format_letter(a, lex));
        parts.push_back(u.stop ? format_letter(*u.stop, lex) : "s");
    }
    return join(parts);
}

Diary parse_diary(const std::string& text, Lexicon& lex) {
    Diary d;
    std::size_t pos = 0;
    while (true) {
        pos = text.find_first_not_of(" \t\n", pos);
        if (pos == std::string::npos) break;
        if (text[pos] != '(') throw std::invalid_argument("expected '(' in diary text");
        const auto close = text.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("unterminated page in diary text");
        Page p;
        const auto toks = tokens_of(text.substr(pos + 1, close - pos - 1));
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i] == "*") {
                if (i + 1 != toks.size()) throw std::invalid_argument("star must end its page");
                p.star = true;
            } else {
                p.letters.push_back(parse_letter(toks[i], lex));
            }
        }
        d.push_back(std::move(p));
        pos = close + 1;
    }
    return d;
}

}  // namespace treeprod
