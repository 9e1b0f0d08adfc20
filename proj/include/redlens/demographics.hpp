#pragma once

// Poster age/gender extraction from semi-structured disclosures such as
// "(34F)", "[34f]", "21m", "F34" or "34 nb".
//
// A mention is two digits next to a gender marker (f, m or nb), in either
// order, with at most one space between them. Digit pairs may not touch
// another digit; markers may not touch another letter (or an apostrophe on
// the left, so "I'm 25" is not read as m/25). Ages under 13 are dropped.
//
// A mention counts as the poster's own when the three characters before it
// contain a standalone "i", "me" or "my". This heuristic is deliberately
// simple: it misses "I'm (34F)" and accepts "my 30F wife".

#include "redlens/corpus.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redlens {

struct DemographicMention {
    std::size_t offset = 0; // byte offset of the match start
    std::size_t length = 0; // byte length of the matched span
    std::optional<int> age;
    std::optional<Gender> gender;
    std::string prefix3; // up to three characters preceding the match
    bool self_attributed = false;

    bool operator==(const DemographicMention&) const = default;
};

enum class DemographicSource { Extracted, None };

struct Demographics {
    std::optional<int> age;
    Gender gender = Gender::Unknown;
    DemographicSource source = DemographicSource::None;

    bool operator==(const Demographics&) const = default;
};

inline constexpr int kMinAge = 13;
inline constexpr int kMaxAge = 99;

std::vector<DemographicMention> find_demographic_mentions(std::string_view text);

/// First self-attributed mention, or source=None.
Demographics extract_self_demographics(std::string_view text);

/// "34,f", "34,", ",f" or "" (source=None).
std::string format_demographics(const Demographics& d);

/// True when `span` alone is exactly one mention pattern.
bool matches_mention_pattern(std::string_view span);

} // namespace redlens

#include <iosfwd>

namespace redlens {

struct MentionRecord {
    std::string post_id;
    DemographicMention mention;
};

/// Audit table "id,offset,age,gender,self_attributed"; `preamble` lines are
/// written first as '#' comments.
void write_mentions_csv(const std::vector<MentionRecord>& records, std::ostream& out,
                        const std::vector<std::string>& preamble = {});

} // namespace redlens
