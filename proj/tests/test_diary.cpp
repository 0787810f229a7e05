#include "treeprod/diary.hpp"

#include <doctest.h>

#include <map>
#include <string>

using namespace treeprod;

namespace {

// Independent encoder on plain strings: 's' is the stop sign, pages are strings with a trailing '*'
// when short. Returns the pages concatenated as "(...)".
std::string naive_diary(const std::string& text, int kappa, std::string* rest_out = nullptr) {
    std::string rest, out;
    for (char ch : text) {
        if (ch != 's') {
            rest += ch;
            continue;
        }
        const std::size_t take = std::min(rest.size(), static_cast<std::size_t>(kappa));
        std::string page(rest.rbegin(), rest.rbegin() + static_cast<std::ptrdiff_t>(take));
        rest.resize(rest.size() - take);
        rest += 's';
        if (take < static_cast<std::size_t>(kappa)) page += '*';
        out += "(" + page + ")";
    }
    if (rest_out) *rest_out = rest;
    return out;
}

std::string spaced(const std::string& compact) {
    std::string out;
    for (char ch : compact) {
        if (!out.empty()) out += ' ';
        out += ch;
    }
    return out;
}

// Sentences over {a, b}: 1..words words of length 0..len each, as compact strings.
std::vector<std::string> universe(int words, int len) {
    std::vector<std::string> word_set{""};
    for (int l = 1; l <= len; ++l) {
        std::vector<std::string> next;
        for (const auto& w : word_set)
            if (static_cast<int>(w.size()) == l - 1) {
                next.push_back(w + 'a');
                next.push_back(w + 'b');
            }
        word_set.insert(word_set.end(), next.begin(), next.end());
    }
    std::vector<std::string> out, layer{""};
    for (int k = 1; k <= words; ++k) {
        std::vector<std::string> next;
        for (const auto& s : layer)
            for (const auto& w : word_set) next.push_back(s + w + 's');
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("worked example") {
    Lexicon lex;
    const auto alpha = parse_sentence("a a b c s a s b c b s c s b s", lex);
    const Diary d = encode(alpha, 3);
    CHECK(format(d, lex) == "(c b a)(a s a)(b c b)(c s s)(b s *)");
    CHECK(naive_diary("aabcsasbcbscsbs", 3) == "(cba)(asa)(bcb)(css)(bs*)");
    const auto hat = reconstruct(d, 3);
    CHECK(hat.honest());
    CHECK(fill_slots(hat, {}) == alpha);
    CHECK(format(rest_sentence(alpha, 3), lex) == "s");
}

TEST_CASE("single pages") {
    Lexicon lex;
    const auto full = reconstruct(parse_diary("(c b a)", lex), 3);
    CHECK(format(full, lex) == "_ a b c s");
    CHECK(full.slot_count() == 1);
    CHECK(membership(full, parse_sentence("a b c s", lex)));
    CHECK(membership(full, parse_sentence("c c a b c s", lex)));
    CHECK_FALSE(membership(full, parse_sentence("a b c a s", lex)));

    const auto short_page = reconstruct(parse_diary("(b a *)", lex), 3);
    CHECK(short_page.honest());
    CHECK(format(short_page, lex) == "a b s");
    CHECK_FALSE(membership(short_page, parse_sentence("c a b s", lex)));
}

TEST_CASE("rest sentences") {
    Lexicon lex;
    auto rest = [&](const char* s, int kappa) { return format(rest_sentence(parse_sentence(s, lex), kappa), lex); };
    CHECK(rest("a s b b b b s", 3) == "s b s");
    CHECK(rest("a b s", 1) == "a s");
    CHECK(rest("a a b c s", 3) == "a s");
    CHECK(rest("s", 2) == "s");
    CHECK(format(encode(parse_sentence("a s", lex), 3), lex) == "(a *)");
    CHECK(format(encode(parse_sentence("s s", lex), 1), lex) == "(*)(s)");
}

TEST_CASE("encoder agrees with the string oracle") {
    Lexicon lex;
    for (int kappa = 1; kappa <= 4; ++kappa)
        for (const auto& s : universe(3, 3)) {
            std::string rest;
            const std::string want = naive_diary(s, kappa, &rest);
            std::string got;
            for (const auto& page : encode(parse_sentence(spaced(s), lex), kappa)) {
                got += '(';
                for (const auto& a : page.letters) got += a.is_stop() ? 's' : lex.name(a.symbol)[0];
                if (page.star) got += '*';
                got += ')';
            }
            REQUIRE(got == want);
            CHECK(format(rest_sentence(parse_sentence(spaced(s), lex), kappa), lex) == spaced(rest));
        }
}

TEST_CASE("reconstruction describes the preimage exactly") {
    Lexicon lex;
    for (const auto& [words, len] : {std::pair{2, 3}, std::pair{3, 2}})
        for (int kappa = 1; kappa <= 3; ++kappa) {
            const auto all = universe(words, len);
            std::vector<Sentence> parsed;
            for (const auto& s : all) parsed.push_back(parse_sentence(spaced(s), lex));
            std::map<std::string, std::vector<std::size_t>> classes;
            for (std::size_t i = 0; i < all.size(); ++i) classes[naive_diary(all[i], kappa)].push_back(i);
            for (const auto& [key, members] : classes) {
                const auto hat = reconstruct(encode(parsed[members.front()], kappa), kappa);
                std::size_t inside = 0;
                for (std::size_t i = 0; i < all.size(); ++i) {
                    const bool same = naive_diary(all[i], kappa) == key;
                    REQUIRE(membership(hat, parsed[i]) == same);
                    if (same) {
                        ++inside;
                        const auto r = slotted_rest(hat, parsed[i]);
                        REQUIRE(r);
                        CHECK(*r == rest_sentence(parsed[i], kappa));
                    }
                }
                CHECK(inside == members.size());
            }
        }
}

TEST_CASE("fills encode back") {
    Lexicon lex;
    const auto alpha = parse_sentence("a a b s b b b a s a s", lex);
    const Diary d = encode(alpha, 2);
    const auto hat = reconstruct(d, 2);
    REQUIRE(hat.slot_count() == 2);
    const Letter a{*lex.find("a"), -1}, b{*lex.find("b"), -1};
    for (const auto& f1 : {Word{}, Word{a}, Word{b, a}})
        for (const auto& f2 : {Word{}, Word{b}}) {
            const auto filled = fill_slots(hat, {f1, f2});
            CHECK(membership(hat, filled));
            CHECK(encode(filled, 2) == d);
        }
}

TEST_CASE("written runs before stops") {
    Lexicon lex;
    const auto honest = reconstruct(parse_diary("(b a *)", lex), 3);
    CHECK(written_run_before(honest, 0).length == 2);
    CHECK(written_run_before(honest, 0).whole_prefix);
    const auto slotted = reconstruct(parse_diary("(c b a)", lex), 3);
    CHECK(written_run_before(slotted, 0).length == 3);
    CHECK_FALSE(written_run_before(slotted, 0).whole_prefix);
}

TEST_CASE("malformed diaries are rejected") {
    Lexicon lex;
    CHECK_THROWS_AS(reconstruct(parse_diary("(a b)", lex), 3), DiaryError);
    CHECK_THROWS_AS(reconstruct(parse_diary("(s a *)", lex), 3), DiaryError);
    CHECK_THROWS_AS(reconstruct(parse_diary("(a b c *)", lex), 3), DiaryError);
    CHECK_THROWS(encode(parse_sentence("a s b", lex), 2));
    CHECK_THROWS(encode(parse_sentence("a s", lex), 0));
    try {
        reconstruct(parse_diary("(a *)(b c)", lex), 3);
        FAIL("expected a diary error");
    } catch (const DiaryError& e) {
        CHECK(e.page == 1);
    }
}

TEST_CASE("text syntax round trips") {
    Lexicon lex;
    const char* text = "x y:1 s:0 z s:1";
    CHECK(format(parse_sentence(text, lex), lex) == text);
    const char* pages = "(c b a)(a s *)";
    CHECK(format(parse_diary(pages, lex), lex) == pages);
    CHECK(split_words(parse_sentence("a s s b c s", lex)).size() == 3);
    CHECK(word_count(parse_sentence("a s s", lex)) == 2);
    CHECK(well_formed({}));
    CHECK_FALSE(well_formed(Sentence{Letter{1, -1}}));
    CHECK_THROWS(parse_sentence("a", lex));
}

TEST_CASE("morning rule separates sentences that an evening rule would confuse") {
    Lexicon lex;
    const Diary a = encode(parse_sentence("a b s c d s e s", lex), 3);
    const Diary b = encode(parse_sentence("c a b s d s e s", lex), 3);
    CHECK(format(a.front(), lex) == "(b a *)");
    CHECK(format(b.front(), lex) == "(b a c)");
    CHECK(a != b);
}

TEST_CASE("slot fills and membership on one page") {
    Lexicon lex;
    const auto hat = reconstruct(parse_diary("(c b a)", lex), 3);
    const Letter a{*lex.find("a"), -1};
    CHECK(format(fill_slots(hat, {Word{a}}), lex) == "a a b c s");
    CHECK(format(fill_slots(hat, {Word{}}), lex) == "a b c s");
    CHECK_FALSE(membership(hat, parse_sentence("b c s", lex)));
    CHECK_THROWS(fill_slots(hat, {}));
    CHECK_THROWS(fill_slots(hat, {Word{a}, Word{a}}));

    const auto honest = reconstruct(parse_diary("(a *)", lex), 3);
    CHECK(format(fill_slots(honest, {}), lex) == "a s");
}
