#pragma once

// Word-list resources: weighted sentiment lexicon, valence lexicon and rule
// lists, gendered word lists, stopwords and the coarse POS lexicon. All are
// immutable after loading.

#include "redlens/textprep.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace redlens {

/// word -> nonzero integer weight in [-5, 5].
struct WeightedLexicon {
    std::unordered_map<std::string, int> entries;
};

/// word -> mean valence (real, nonzero).
struct ValenceLexicon {
    std::unordered_map<std::string, double> entries;
};

struct GenderLexicon {
    WordSet masculine;
    WordSet feminine;
};

enum class PosTag { Noun, Verb, Other };

std::string_view pos_tag_name(PosTag tag);

struct PosLexicon {
    std::unordered_map<std::string, PosTag> entries;
};

/// Constants of the rule-based valence model. Defaults are the published
/// reference values; files may override any key.
struct ValenceConstants {
    double booster_increment = 0.293;
    double allcaps_increment = 0.733;
    double negation_scalar = -0.74;
    double exclamation_increment = 0.292;
    int exclamation_max = 4;
    double booster_damping_2 = 0.95;
    double booster_damping_3 = 0.90;
    int negation_window = 3;
    double contrast_before = 0.5;
    double contrast_after = 1.5;
    double normalization_alpha = 15.0;
    std::string version = "builtin";
};

struct ValenceRules {
    ValenceLexicon lexicon;
    WordSet negators;
    WordSet boosters_up;
    WordSet boosters_down;
    ValenceConstants constants;
};

WeightedLexicon parse_weighted_lexicon(std::string_view text, std::string_view source = "<lexicon>");
WeightedLexicon load_weighted_lexicon(const std::filesystem::path& path);

ValenceLexicon parse_valence_lexicon(std::string_view text, std::string_view source = "<lexicon>");
ValenceLexicon load_valence_lexicon(const std::filesystem::path& path);

/// One lowercase word per line; '#' starts a comment; blank lines ignored.
WordSet parse_word_list(std::string_view text, std::string_view source = "<wordlist>");
WordSet load_word_list(const std::filesystem::path& path);

/// Rejects empty sets and any word present in both lists.
GenderLexicon make_gender_lexicon(WordSet masculine, WordSet feminine);
GenderLexicon load_gender_lexicon(const std::filesystem::path& masculine, const std::filesystem::path& feminine);

PosLexicon parse_pos_lexicon(std::string_view text, std::string_view source = "<pos>");
PosLexicon load_pos_lexicon(const std::filesystem::path& path);

ValenceConstants parse_valence_constants(std::string_view text, std::string_view source = "<config>");
ValenceRules load_valence_rules(const std::filesystem::path& dir);

/// Multiset count of tokens whose normalized form, with a trailing
/// possessive "'s" removed, is in `words`.
std::size_t count_matches(const std::vector<Token>& tokens, const WordSet& words);

/// Everything the pipeline reads from a lexicon directory.
struct LexiconBundle {
    WeightedLexicon afinn;
    ValenceRules valence;
    GenderLexicon gender;
    WordSet stopwords;
    PosLexicon pos;
    std::map<std::string, std::string> versions;

    /// "afinn=afinn-111 gender=1 ..." in key order.
    std::string version_string() const;
};

/// Expected files: afinn.tsv, vader_valence.tsv, negators.txt,
/// boosters_up.txt, boosters_down.txt, valence.conf, masculine.txt,
/// feminine.txt, stopwords.txt, pos_lexicon.tsv, VERSION.
/// Throws DataError naming the first missing or invalid file.
LexiconBundle load_lexicon_bundle(const std::filesystem::path& dir);

} // namespace redlens
