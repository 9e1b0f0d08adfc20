#include "redlens/sentiment.hpp"

#include <algorithm>
#include <cmath>

namespace redlens {
namespace {

bool is_negator(const Token& t, const ValenceRules& rules)
{
    return rules.negators.contains(t.normalized) || t.normalized.find("n't") != std::string::npos;
}

bool is_booster(const std::string& w, const ValenceRules& rules)
{
    return rules.boosters_up.contains(w) || rules.boosters_down.contains(w);
}

double toward_sign(double magnitude, double valence)
{
    return valence > 0 ? magnitude : -magnitude;
}

} // namespace

std::int64_t afinn_score(const std::vector<Token>& tokens, const WeightedLexicon& lex)
{
    std::int64_t total = 0;
    for (const auto& t : tokens) {
        if (auto it = lex.entries.find(t.normalized); it != lex.entries.end()) {
            total += it->second;
        }
    }
    return total;
}

double afinn_adjusted(std::int64_t score, std::int64_t word_count)
{
    if (word_count <= 0) {
        return 0.0;
    }
    return static_cast<double>(score) / static_cast<double>(word_count);
}

double normalize_compound(double sum, double alpha)
{
    return std::clamp(sum / std::sqrt(sum * sum + alpha), -1.0, 1.0);
}

std::vector<double> token_valences(const std::vector<Token>& tokens, const ValenceRules& rules)
{
    const auto& k = rules.constants;
    const auto& lex = rules.lexicon.entries;

    std::size_t caps = 0;
    for (const auto& t : tokens) {
        caps += t.is_allcaps ? 1 : 0;
    }
    const bool cap_diff = caps > 0 && caps < tokens.size();

    std::vector<double> valences(tokens.size(), 0.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& word = tokens[i].normalized;
        if (is_booster(word, rules)) {
            continue;
        }
        auto it = lex.find(word);
        if (it == lex.end()) {
            continue;
        }
        double v = it->second;
        if (tokens[i].is_allcaps && cap_diff) {
            v += toward_sign(k.allcaps_increment, v);
        }

        for (std::size_t d = 1; d <= 3 && d <= i; ++d) {
            const auto& prev = tokens[i - d];
            if (lex.contains(prev.normalized)) {
                continue;
            }
            double s = 0.0;
            if (rules.boosters_up.contains(prev.normalized)) {
                s = k.booster_increment;
            } else if (rules.boosters_down.contains(prev.normalized)) {
                s = -k.booster_increment;
            } else {
                continue;
            }
            if (v < 0) {
                s = -s;
            }
            if (prev.is_allcaps && cap_diff) {
                s += toward_sign(k.allcaps_increment, v);
            }
            if (d == 2) {
                s *= k.booster_damping_2;
            } else if (d == 3) {
                s *= k.booster_damping_3;
            }
            v += s;
        }

        const std::size_t window = static_cast<std::size_t>(std::max(k.negation_window, 0));
        for (std::size_t d = 1; d <= window && d <= i; ++d) {
            if (is_negator(tokens[i - d], rules)) {
                v *= k.negation_scalar;
                break;
            }
        }
        valences[i] = v;
    }

    auto but = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.normalized == "but"; });
    if (but != tokens.end()) {
        const auto b = static_cast<std::size_t>(but - tokens.begin());
        for (std::size_t i = 0; i < valences.size(); ++i) {
            if (i < b) {
                valences[i] *= k.contrast_before;
            } else if (i > b) {
                valences[i] *= k.contrast_after;
            }
        }
    }
    return valences;
}

ValenceScores valence_scores(std::string_view text, const ValenceRules& rules)
{
    return valence_scores(text, tokenize(text), rules);
}

ValenceScores valence_scores(std::string_view text, const std::vector<Token>& tokens, const ValenceRules& rules)
{
    const auto& k = rules.constants;
    const auto valences = token_valences(tokens, rules);

    double sum = 0.0;
    double pos_sum = 0.0;
    double neg_sum = 0.0;
    double neu_count = 0.0;
    for (double v : valences) {
        sum += v;
        // neutral tokens carry weight 1, so sentiment tokens are shifted by 1
        if (v > 0) {
            pos_sum += v + 1.0;
        } else if (v < 0) {
            neg_sum += v - 1.0;
        } else {
            neu_count += 1.0;
        }
    }

    const auto bangs = static_cast<int>(std::count(text.begin(), text.end(), '!'));
    const double emphasis = std::min(bangs, k.exclamation_max) * k.exclamation_increment;
    if (sum > 0) {
        sum += emphasis;
    } else if (sum < 0) {
        sum -= emphasis;
    }
    if (pos_sum > -neg_sum) {
        pos_sum += emphasis;
    } else if (pos_sum < -neg_sum) {
        neg_sum -= emphasis;
    }

    ValenceScores out;
    out.compound = normalize_compound(sum, k.normalization_alpha);
    const double total = pos_sum - neg_sum + neu_count;
    if (total <= 0.0) {
        return out;
    }
    out.pos = pos_sum / total;
    out.neg = -neg_sum / total;
    out.neu = neu_count / total;
    return out;
}

} // namespace redlens
