#pragma once

// Two sentiment models:
//  * weighted-lexicon scoring (sum of integer word weights, optionally
//    divided by word count), and
//  * a rule-based valence model: per-token valences adjusted for negation,
//    intensity words, all-caps emphasis, exclamation marks and "but"
//    contrast, normalized to a compound score in [-1, 1] plus
//    positive/negative/neutral proportions.

#include "redlens/lexicons.hpp"
#include "redlens/textprep.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace redlens {

struct ValenceScores {
    double compound = 0.0;
    double pos = 0.0;
    double neg = 0.0;
    double neu = 1.0;
};

struct SentimentScores {
    std::int64_t afinn_score = 0;
    double afinn_adjusted = 0.0;
    ValenceScores valence;
};

std::int64_t afinn_score(const std::vector<Token>& tokens, const WeightedLexicon& lex);

/// score / word_count, or 0 when word_count is 0.
double afinn_adjusted(std::int64_t score, std::int64_t word_count);

/// S / sqrt(S^2 + alpha), clamped to [-1, 1].
double normalize_compound(double sum, double alpha);

/// Per-token modified valences before exclamation emphasis; non-sentiment
/// tokens get 0. Exposed for tests and audits.
std::vector<double> token_valences(const std::vector<Token>& tokens, const ValenceRules& rules);

ValenceScores valence_scores(std::string_view text, const ValenceRules& rules);

/// Same as above with tokens already produced by tokenize(text).
ValenceScores valence_scores(std::string_view text, const std::vector<Token>& tokens, const ValenceRules& rules);

} // namespace redlens
