#pragma once

// Coarse NOUN/VERB/OTHER tagging and base-form frequency tables.
//
// Tagging is a lexicon lookup on the normalized token, then on its stem,
// then suffix rules (-ing/-ed/-ize verbs; -tion/-ment/-ness/-ity nouns).
// There is no context disambiguation: an ambiguous word always carries the
// lexicon's single tag.

#include "redlens/corpus.hpp"
#include "redlens/lexicons.hpp"
#include "redlens/textprep.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace redlens {

struct TaggedToken {
    Token token;
    PosTag tag = PosTag::Other;
    std::string base;
};

std::vector<TaggedToken> tag_pos(const std::vector<Token>& tokens, const PosLexicon& lexicon);

struct FrequencyEntry {
    std::string base;
    std::int64_t count = 0;

    bool operator==(const FrequencyEntry&) const = default;
};

enum class PosText { Titles, FullText };

/// Counts of `tag` tokens grouped by base form; descending count, ties by
/// base. `texts` are the strings to tag (titles or whole documents).
std::vector<FrequencyEntry> frequency_table(const std::vector<std::string>& texts, PosTag tag,
                                            const PosLexicon& lexicon);

/// Convenience overload over posts, tagging titles or title + body.
std::vector<FrequencyEntry> frequency_table(const std::vector<Post>& posts, PosTag tag, const PosLexicon& lexicon,
                                            PosText source = PosText::Titles);

/// Tags Document::text.
std::vector<FrequencyEntry> frequency_table(const std::vector<Document>& documents, PosTag tag,
                                            const PosLexicon& lexicon);

} // namespace redlens
