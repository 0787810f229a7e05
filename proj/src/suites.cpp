#include "treeprod/suites.hpp"

#include "treeprod/morse_thue.hpp"
#include "treeprod/parallel.hpp"

#include <bit>
#include <map>
#include <random>

namespace treeprod {

namespace {

Letter letter(std::uint32_t sym) { return Letter{sym, -1}; }

std::vector<Word> words_up_to(int alphabet, int max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int a = 1; a <= alphabet; ++a) {
                Word w = out[i];
                w.push_back(letter(static_cast<std::uint32_t>(a)));
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// Byte string identifying a diary; pages end with 0xff, star pages with 0xfe.
std::string diary_key(const Diary& d) {
    std::string k;
    for (const auto& p : d) {
        for (const auto& a : p.letters) k += static_cast<char>(a.symbol);
        k += static_cast<char>(p.star ? 0xfe : 0xff);
    }
    return k;
}

std::uint64_t bounded_members(const SlottedSentence& b, int alphabet, int max_len) {
    std::uint64_t count = 1;
    for (const auto& u : b.units) {
        const int room = max_len - static_cast<int>(u.word.size());
        if (room < 0) return 0;
        if (!u.slot) continue;
        std::uint64_t options = 0, pw = 1;
        for (int len = 0; len <= room; ++len, pw *= static_cast<std::uint64_t>(alphabet)) options += pw;
        count *= options;
    }
    return count;
}

Word random_word(std::mt19937_64& rng, int alphabet, int min_len, int max_len) {
    std::uniform_int_distribution<int> len(min_len, max_len), sym(1, alphabet);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& a : w) a = letter(static_cast<std::uint32_t>(sym(rng)));
    return w;
}

Sentence random_sentence(std::mt19937_64& rng, int alphabet, int words, int min_len, int max_len) {
    Sentence s;
    for (int i = 0; i < words; ++i) {
        const Word w = random_word(rng, alphabet, min_len, max_len);
        s.insert(s.end(), w.begin(), w.end());
        s.push_back(stop_sign());
    }
    return s;
}

Sentence prefix_through_stop(const Sentence& s, std::size_t stop_index) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].is_stop() && seen++ == stop_index) return Sentence(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    return s;
}

std::vector<std::size_t> stop_positions(const Sentence& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].is_stop()) out.push_back(i);
    return out;
}

}  // namespace

std::vector<Sentence> enumerate_sentences(int alphabet, int max_words, int max_word_length) {
    const auto words = words_up_to(alphabet, max_word_length);
    std::vector<Sentence> out;
    std::vector<std::size_t> idx;
    for (int k = 1; k <= max_words; ++k) {
        idx.assign(static_cast<std::size_t>(k), 0);
        while (true) {
            Sentence s;
            for (auto i : idx) {
                s.insert(s.end(), words[i].begin(), words[i].end());
                s.push_back(stop_sign());
            }
            out.push_back(std::move(s));
            std::size_t pos = idx.size();
            while (pos > 0 && ++idx[pos - 1] == words.size()) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    return out;
}

std::vector<CheckResult> diary_example_checks() {
    Lexicon lex;
    CheckResult worked("diary.worked_example"), single("diary.reconstruct_single_page"), morning("diary.morning_rule"),
        rest("diary.rest_examples");

    const Sentence alpha = parse_sentence("a a b c s a s b c b s c s b s", lex);
    const Diary d = encode(alpha, 3);
    worked.record(format(d, lex) == "(c b a)(a s a)(b c b)(c s s)(b s *)", "encoded as " + format(d, lex));
    const SlottedSentence hat = reconstruct(d, 3);
    worked.record(hat.honest() && fill_slots(hat, {}) == alpha, "reconstructed as " + format(hat, lex));

    const SlottedSentence one = reconstruct(parse_diary("(c b a)", lex), 3);
    single.record(format(one, lex) == "_ a b c s", "reconstructed as " + format(one, lex));
    const Word fill{Letter{*lex.find("a"), -1}};
    single.record(fill_slots(one, {fill}) == parse_sentence("a a b c s", lex), "fill with a");
    single.record(!membership(one, parse_sentence("b c s", lex)), "b c s accepted");
    const SlottedSentence star = reconstruct(parse_diary("(a *)", lex), 3);
    single.record(star.honest() && fill_slots(star, {}) == parse_sentence("a s", lex), "(a *) reconstructed as " + format(star, lex));

    morning.record(format(encode(parse_sentence("a s", lex), 3), lex) == "(a *)", "a s");
    const Diary m1 = encode(parse_sentence("a b s c d s e s", lex), 3);
    const Diary m2 = encode(parse_sentence("c a b s d s e s", lex), 3);
    morning.record(format(m1[0], lex) == "(b a *)" && format(m2[0], lex) == "(b a c)",
                   "first pages " + format(m1[0], lex) + " and " + format(m2[0], lex));

    rest.record(format(rest_sentence(parse_sentence("a a b c s", lex), 3), lex) == "a s", "worked example after one page");
    rest.record(format(rest_sentence(alpha, 3), lex) == "s", "worked example fully consumed");
    rest.record(format(rest_sentence(parse_sentence("a b s", lex), 1), lex) == "a s", "kappa 1, a b s");
    return {worked, single, morning, rest};
}

std::vector<CheckResult> diary_exhaustive_checks(const DiaryBounds& b, std::uint64_t seed, unsigned jobs) {
    const auto universe = enumerate_sentences(b.alphabet, b.max_words, b.max_word_length);
    CheckResult equiv("diary.slot_equivalence"), rest("diary.rest_identity"), fills("diary.fill_encodes_back"),
        pages("diary.page_count");
    Lexicon lex;
    for (int a = 1; a <= b.alphabet; ++a) lex.intern(std::string(1, static_cast<char>('a' + a - 1)));

    for (int kappa : b.kappas) {
        std::vector<std::string> keys(universe.size());
        std::vector<CheckResult> page_acc(std::max(1u, jobs), CheckResult("diary.page_count"));
        parallel_chunks(universe.size(), jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const Sentence& s = universe[i];
                const Diary d = encode(s, kappa);
                bool ok = d.size() == word_count(s);
                for (std::size_t m = 0; ok && m < d.size(); ++m) {
                    const Diary dp = encode(prefix_through_stop(s, m), kappa);
                    ok = dp.size() == m + 1 && std::equal(dp.begin(), dp.end(), d.begin());
                }
                page_acc[w].record_with(ok, [&] { return format(s, lex); });
                keys[i] = diary_key(d);
            }
        });
        for (const auto& p : page_acc) pages.merge(p);

        std::map<std::string, std::vector<std::uint32_t>> classes;
        for (std::size_t i = 0; i < universe.size(); ++i) classes[keys[i]].push_back(static_cast<std::uint32_t>(i));
        std::vector<const std::vector<std::uint32_t>*> list;
        list.reserve(classes.size());
        for (const auto& [k, v] : classes) list.push_back(&v);

        struct Acc {
            CheckResult equiv{"diary.slot_equivalence"}, rest{"diary.rest_identity"}, fills{"diary.fill_encodes_back"};
        };
        std::vector<Acc> acc(std::max(1u, jobs));
        parallel_chunks(list.size(), jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
            Acc& a = acc[w];
            for (std::size_t ci = begin; ci < end; ++ci) {
                const auto& members = *list[ci];
                const Sentence& first = universe[members.front()];
                const Diary d = encode(first, kappa);
                auto where = [&] { return "kappa " + std::to_string(kappa) + " diary " + format(d, lex); };
                SlottedSentence hat;
                try {
                    hat = reconstruct(d, kappa);
                } catch (const DiaryError& e) {
                    a.equiv.record(false, where() + ": " + e.what());
                    continue;
                }
                bool all_in = true;
                for (auto idx : members) {
                    const Sentence& s = universe[idx];
                    const auto r = slotted_rest(hat, s);
                    all_in = all_in && r.has_value();
                    if (r) a.rest.record_with(*r == rest_sentence(s, kappa), [&] { return where() + " member " + format(s, lex); });
                }
                const auto count = bounded_members(hat, b.alphabet, b.max_word_length);
                a.equiv.record_with(all_in && count == members.size(), [&] {
                    return where() + " reconstruction " + format(hat, lex) + " bounded members " + std::to_string(count) +
                           " vs class " + std::to_string(members.size());
                });

                std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(kappa) << 40) ^ ci);
                for (int f = 0; f < b.fills_per_class; ++f) {
                    std::vector<Word> ws;
                    for (std::size_t k = 0; k < hat.slot_count(); ++k) ws.push_back(random_word(rng, b.alphabet, 0, b.fill_length));
                    const Sentence s = fill_slots(hat, ws);
                    const auto r = slotted_rest(hat, s);
                    a.fills.record_with(encode(s, kappa) == d && r && *r == rest_sentence(s, kappa), [&] { return where() + " fill " + format(s, lex); });
                }
            }
        });
        for (const auto& a : acc) {
            equiv.merge(a.equiv);
            rest.merge(a.rest);
            fills.merge(a.fills);
        }
    }
    return {equiv, rest, fills, pages};
}

std::vector<CheckResult> diary_recovery_checks(const DiaryBounds& b, std::uint64_t seed) {
    CheckResult complete("diary.complete_recover"), strings("diary.string_recover");
    std::mt19937_64 rng(seed);
    Lexicon lex;
    for (int a = 1; a <= 3; ++a) lex.intern(std::string(1, static_cast<char>('a' + a - 1)));
    std::uniform_int_distribution<int> alpha_d(2, 3), words_d(1, 12), kappa_d(1, 4);
    for (std::uint64_t it = 0; it < b.samples; ++it) {
        const int kappa = kappa_d(rng);
        const Sentence s = random_sentence(rng, alpha_d(rng), words_d(rng), 0, 4);
        const Diary d = encode(s, kappa);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!d[i].star) continue;
            const Diary head(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            const SlottedSentence hat = reconstruct(head, kappa);
            complete.record(hat.honest() && fill_slots(hat, {}) == prefix_through_stop(s, i),
                            "kappa " + std::to_string(kappa) + " " + format(s, lex) + " page " + std::to_string(i));
        }
        // Stops s_1..s_k are 1-based here; #(s_m, s_m+p) counts every token strictly between.
        const SlottedSentence hat = reconstruct(d, kappa);
        const auto stops = stop_positions(s);
        const auto k = stops.size();
        for (std::size_t m = 1; m < k; ++m)
            for (std::size_t p = 1; m + p <= k; ++p) {
                const auto between = static_cast<long>(stops[m + p - 1] - stops[m - 1] - 1);
                if (kappa * static_cast<long>(p) < between + 1) continue;
                const long q = kappa * static_cast<long>(p) - between;
                const long first = static_cast<long>(stops[m] - stops[m - 1] - 1);
                const long need = kappa + q + first;
                const WrittenRun run = written_run_before(hat, m);
                strings.record(run.whole_prefix || static_cast<long>(run.length) >= need,
                               "kappa " + std::to_string(kappa) + " " + format(s, lex) + " m=" + std::to_string(m) +
                                   " p=" + std::to_string(p));
            }
    }
    return {complete, strings};
}

std::vector<CheckResult> morse_thue_checks(std::size_t cube_free_length, std::uint64_t seed, unsigned jobs) {
    CheckResult prefix("mt.prefix"), fix("mt.substitution_fixpoint"), parity("mt.parity"), cube("mt.cube_free"),
        examples("mt.cube_examples"), deco("mt.decorate_strip");
    prefix.record(format_bits(mt_prefix(1)) == "0", "prefix 1");
    prefix.record(format_bits(mt_prefix(8)) == "01101001", "prefix 8 is " + format_bits(mt_prefix(8)));
    prefix.record(format_bits(mt_prefix(16)) == "0110100110010110", "prefix 16 is " + format_bits(mt_prefix(16)));
    for (std::size_t n = 1; n <= 1024; n *= 2) {
        const Bits a = mt_prefix(n), b = mt_prefix(2 * n);
        fix.record(std::equal(a.begin(), a.end(), b.begin()), "prefix " + std::to_string(n));
    }
    // Independent characterization: t(n) is the parity of the binary digit sum of n.
    for (std::size_t n = 0; n < (std::size_t{1} << 18); ++n)
        parity.record(mt_bit(n) == std::popcount(n) % 2, "t(" + std::to_string(n) + ")");
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = rng() >> 8;
        parity.record(mt_bit(n) == std::popcount(n) % 2, "t(" + std::to_string(n) + ")");
    }
    const auto found = find_cube(mt_prefix(cube_free_length), jobs);
    cube.record(!found, found ? "cube of period " + std::to_string(found->period) + " at " + std::to_string(found->start) : "");
    examples.record(!is_cube_free(Bits{0, 0, 0}), "000");
    examples.record(!is_cube_free(Bits{0, 1, 0, 1, 0, 1}), "010101");
    examples.record(is_cube_free(Bits{0, 0, 1, 0, 0}), "00100");

    Lexicon lex;
    for (int a = 1; a <= 3; ++a) lex.intern(std::string(1, static_cast<char>('a' + a - 1)));
    for (int i = 0; i < 2000; ++i) {
        const Sentence s = random_sentence(rng, 3, 1 + static_cast<int>(rng() % 10), 0, 5);
        const Sentence ds = decorate(s);
        deco.record(strip(ds) == s && is_decorated(ds), format(s, lex));
    }
    return {prefix, fix, parity, cube, examples, deco};
}

std::vector<CheckResult> synchronization_checks(std::uint64_t samples, std::uint64_t seed) {
    CheckResult sync("mt.synchronize"), equal("mt.equal_diaries");
    std::mt19937_64 rng(seed);
    Lexicon lex;
    for (int a = 1; a <= 3; ++a) lex.intern(std::string(1, static_cast<char>('a' + a - 1)));

    auto sentence_with_letters = [&](int letters) {
        Sentence s;
        for (int i = 0; i < letters; ++i) {
            s.push_back(letter(static_cast<std::uint32_t>(1 + rng() % 2)));
            if (rng() % 3 == 0) s.push_back(stop_sign());
        }
        if (!s.empty() && !s.back().is_stop()) s.push_back(stop_sign());
        return s;
    };
    for (std::uint64_t it = 0; it < samples; ++it) {
        const int l = 2 + static_cast<int>(rng() % 40);
        const int len = static_cast<int>(rng() % 600);
        const int delta = static_cast<int>(rng() % static_cast<unsigned>(l + 1)) - l / 2;
        const int len2 = std::max(0, len + delta);
        Sentence tail = sentence_with_letters(l);
        const Sentence a0 = sentence_with_letters(len), b0 = sentence_with_letters(len2);
        Sentence a = a0, b = b0;
        a.insert(a.end(), tail.begin(), tail.end());
        b.insert(b.end(), tail.begin(), tail.end());
        const Verdict v = synchronize_check(decorate(a), decorate(b), l);
        if (v.status == Status::inconclusive)
            ++sync.inconclusive;
        else
            sync.record(v.status == Status::pass, v.detail);
    }

    for (std::uint64_t it = 0; it < samples; ++it) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int kappa = 5 * n + 1 + static_cast<int>(rng() % 3);
        const int p = 3 + static_cast<int>(rng() % 4);
        const Sentence a = decorate(random_sentence(rng, 2 + static_cast<int>(rng() % 2), 6 + static_cast<int>(rng() % 20), 1, n));
        const SlottedSentence hat = reconstruct(encode(a, kappa), kappa);
        // Same-length fills keep every level, so the refilled sentence stays decorated with the same diary.
        const bool same_length = rng() % 4 != 0;
        std::vector<Word> fills;
        const auto words = split_words(a);
        for (std::size_t u = 0; u < hat.units.size(); ++u) {
            if (!hat.units[u].slot) continue;
            const auto keep = static_cast<int>(words[u].size() - hat.units[u].word.size());
            fills.push_back(same_length ? random_word(rng, 3, keep, keep) : random_word(rng, 3, 0, n + 1));
        }
        const Sentence b = decorate(strip(fill_slots(hat, fills)));
        // Compare the letters of one randomly chosen level.
        std::vector<std::size_t> pos_a;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_stop()) pos_a.push_back(i);
        const std::size_t ia = pos_a[rng() % pos_a.size()];
        const int level = letter_levels(a)[ia];
        const auto lv_b = letter_levels(b);
        std::size_t ib = b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!b[i].is_stop() && lv_b[i] == level) ib = i;
        if (ib == b.size()) {
            ++equal.inconclusive;
            continue;
        }
        const Verdict v = equal_diaries_check(a, ia, b, ib, kappa, n, p);
        if (v.status == Status::inconclusive)
            ++equal.inconclusive;
        else
            equal.record(v.status == Status::pass, format(a, lex) + " vs " + format(b, lex) + ": " + v.detail);
    }
    return {sync, equal};
}

Sentence week_sentence(int weeks, int n) {
    const Word week{letter(2), letter(1), letter(1), letter(1), letter(1), letter(1), letter(1)};
    Sentence s;
    for (int i = 0; i < weeks; ++i) s.insert(s.end(), week.begin(), week.end());
    for (int i = 0; i < n; ++i) s.push_back(stop_sign());
    return s;
}

WeekShiftOutcome week_shift_pair(int k, int n, int kappa) {
    const Sentence a = week_sentence(k, n), b = week_sentence(k + 1, n);
    return {encode(a, kappa) == encode(b, kappa), encode(decorate(a), kappa) != encode(decorate(b), kappa)};
}

CheckResult small_kappa_control(int kappa) {
    CheckResult res("control.small_kappa");
    res.negative_control = true;
    // a x^kappa s (y^kappa s)^3: every page is filled by its own word, so the first letter is never written.
    auto build = [kappa](std::uint32_t first) {
        Sentence s{letter(first)};
        for (int w = 0; w < 4; ++w) {
            for (int i = 0; i < kappa; ++i) s.push_back(letter(w == 0 ? 3 : 4));
            s.push_back(stop_sign());
        }
        return decorate(s);
    };
    const int n = 2 * kappa + 1, p = 4;
    const Verdict v = equal_diaries_check(build(1), 0, build(2), 0, kappa, n, p, true);
    res.record(v.status != Status::fail, "kappa " + std::to_string(kappa) + ": " + (v.detail.empty() ? to_string(v.status) : v.detail));
    return res;
}

std::vector<CheckResult> negative_controls() {
    CheckResult shift("control.week_shift_undecorated");
    shift.negative_control = true;
    // Undecorated diaries should tell the two sentences apart; they do not.
    shift.record(!week_shift_pair(30, 2, 3).undecorated_equal, "w^30 s s and w^31 s s share a diary at kappa 3");
    return {shift, small_kappa_control(1)};
}

}  // namespace treeprod
