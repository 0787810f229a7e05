#pragma once

#include "treeprod/checks.hpp"
#include "treeprod/diary.hpp"

#include <cstdint>
#include <vector>

namespace treeprod {

// Universe of undecorated sentences: letters 1..alphabet, 1..max_words words of length 0..max_word_length.
struct DiaryBounds {
    int alphabet = 2;
    int max_words = 4;
    int max_word_length = 4;
    std::vector<int> kappas{1, 2, 3};
    int fill_length = 3;            // slot fills for the encode-back check
    int fills_per_class = 8;        // sampled fills per diary class
    std::uint64_t samples = 20000;  // random sentences for the recovery lemmas
};

// All sentences of the universe in a fixed order.
std::vector<Sentence> enumerate_sentences(int alphabet, int max_words, int max_word_length);

// diary.worked_example, diary.reconstruct_single_page, diary.morning_rule, diary.rest_examples.
std::vector<CheckResult> diary_example_checks();

// diary.slot_equivalence: same diary iff member of the reconstruction, over the whole universe.
// diary.rest_identity: slotted rest equals the rest sentence for every member.
// diary.fill_encodes_back: sampled fills of each reconstruction give the same diary and rest.
// diary.page_count: one page per word, prefixes give prefix diaries.
std::vector<CheckResult> diary_exhaustive_checks(const DiaryBounds& b, std::uint64_t seed, unsigned jobs = 1);

// diary.complete_recover and diary.string_recover on random sentences.
std::vector<CheckResult> diary_recovery_checks(const DiaryBounds& b, std::uint64_t seed);

// mt.prefix, mt.substitution_fixpoint, mt.parity, mt.cube_free, mt.cube_examples, mt.decorate_strip.
std::vector<CheckResult> morse_thue_checks(std::size_t cube_free_length, std::uint64_t seed, unsigned jobs = 1);

// mt.synchronize and mt.equal_diaries randomized suites.
std::vector<CheckResult> synchronization_checks(std::uint64_t samples, std::uint64_t seed);

// The week-shift pair w^k s^n vs w^(k+1) s^n with w = b a a a a a a.
struct WeekShiftOutcome {
    bool undecorated_equal = false;
    bool decorated_differ = false;
};
WeekShiftOutcome week_shift_pair(int k, int n, int kappa);
Sentence week_sentence(int weeks, int n);

// Decorated pair with equal kappa-diaries whose first letters differ; n = 2 kappa + 1, p = 4.
CheckResult small_kappa_control(int kappa);

// Negative controls: undecorated week-shift diaries coincide, and an equal-diaries pair with kappa
// below 5n+1 has different letters. Both are expected to fail their lemma.
std::vector<CheckResult> negative_controls();

}  // namespace treeprod
