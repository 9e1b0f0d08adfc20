#include "redlens/demographics.hpp"

namespace redlens {
namespace {

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

bool is_alpha(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Byte index of the start of the UTF-8 code point ending just before `pos`.
std::size_t prev_codepoint(std::string_view s, std::size_t pos)
{
    std::size_t i = pos - 1;
    while (i > 0 && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) {
        --i;
    }
    return i;
}

std::string prefix_chars(std::string_view text, std::size_t pos, int count)
{
    std::size_t start = pos;
    for (int i = 0; i < count && start > 0; ++i) {
        start = prev_codepoint(text, start);
    }
    return std::string(text.substr(start, pos - start));
}

bool is_self_prefix(std::string_view prefix)
{
    std::size_t i = 0;
    while (i < prefix.size()) {
        if (!is_alpha(prefix[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::string run;
        while (j < prefix.size() && is_alpha(prefix[j])) {
            run.push_back(lower(prefix[j]));
            ++j;
        }
        if (run == "i" || run == "me" || run == "my") {
            return true;
        }
        i = j;
    }
    return false;
}

bool is_apostrophe_before(std::string_view text, std::size_t pos)
{
    if (pos == 0) {
        return false;
    }
    if (text[pos - 1] == '\'') {
        return true;
    }
    constexpr std::string_view kCurly = "’";
    return pos >= kCurly.size() && text.substr(pos - kCurly.size(), kCurly.size()) == kCurly;
}

struct Marker {
    Gender gender;
    std::size_t length;
};

// Gender marker at `pos` whose right edge is not followed by a letter.
std::optional<Marker> marker_at(std::string_view text, std::size_t pos)
{
    if (pos >= text.size()) {
        return std::nullopt;
    }
    char c = lower(text[pos]);
    std::optional<Marker> m;
    if (c == 'n' && pos + 1 < text.size() && lower(text[pos + 1]) == 'b') {
        m = Marker{Gender::Nonbinary, 2};
    } else if (c == 'f') {
        m = Marker{Gender::Female, 1};
    } else if (c == 'm') {
        m = Marker{Gender::Male, 1};
    }
    if (m && pos + m->length < text.size() && is_alpha(text[pos + m->length])) {
        return std::nullopt;
    }
    return m;
}

bool left_clear_for_marker(std::string_view text, std::size_t pos)
{
    return pos == 0 || (!is_alpha(text[pos - 1]) && !is_apostrophe_before(text, pos));
}

// Two digits at `pos` with no digit on either side.
std::optional<int> digit_pair_at(std::string_view text, std::size_t pos)
{
    if (pos + 1 >= text.size() || !is_digit(text[pos]) || !is_digit(text[pos + 1])) {
        return std::nullopt;
    }
    if (pos > 0 && is_digit(text[pos - 1])) {
        return std::nullopt;
    }
    if (pos + 2 < text.size() && is_digit(text[pos + 2])) {
        return std::nullopt;
    }
    return (text[pos] - '0') * 10 + (text[pos + 1] - '0');
}

struct RawMatch {
    std::size_t length;
    int age;
    Gender gender;
};

// Age-first: "34F", "34 f", "34nb".
std::optional<RawMatch> age_first_at(std::string_view text, std::size_t pos)
{
    auto age = digit_pair_at(text, pos);
    if (!age) {
        return std::nullopt;
    }
    std::size_t m = pos + 2;
    if (m < text.size() && text[m] == ' ') {
        ++m;
    }
    auto marker = marker_at(text, m);
    if (!marker) {
        return std::nullopt;
    }
    return RawMatch{m + marker->length - pos, *age, marker->gender};
}

// Gender-first: "F34", "m 21", "NB25".
std::optional<RawMatch> gender_first_at(std::string_view text, std::size_t pos)
{
    if (!left_clear_for_marker(text, pos)) {
        return std::nullopt;
    }
    auto marker = marker_at(text, pos);
    if (!marker) {
        return std::nullopt;
    }
    std::size_t d = pos + marker->length;
    if (d < text.size() && text[d] == ' ') {
        ++d;
    }
    auto age = digit_pair_at(text, d);
    if (!age) {
        return std::nullopt;
    }
    return RawMatch{d + 2 - pos, *age, marker->gender};
}

std::optional<RawMatch> match_at(std::string_view text, std::size_t pos)
{
    if (auto m = age_first_at(text, pos)) {
        return m;
    }
    return gender_first_at(text, pos);
}

} // namespace

std::vector<DemographicMention> find_demographic_mentions(std::string_view text)
{
    std::vector<DemographicMention> mentions;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto m = match_at(text, pos);
        if (!m) {
            ++pos;
            continue;
        }
        if (m->age >= kMinAge && m->age <= kMaxAge) {
            DemographicMention mention;
            mention.offset = pos;
            mention.length = m->length;
            mention.age = m->age;
            mention.gender = m->gender;
            mention.prefix3 = prefix_chars(text, pos, 3);
            mention.self_attributed = is_self_prefix(mention.prefix3);
            mentions.push_back(std::move(mention));
        }
        pos += m->length;
    }
    return mentions;
}

Demographics extract_self_demographics(std::string_view text)
{
    for (const auto& m : find_demographic_mentions(text)) {
        if (m.self_attributed) {
            return Demographics{m.age, m.gender.value_or(Gender::Unknown), DemographicSource::Extracted};
        }
    }
    return Demographics{};
}

std::string format_demographics(const Demographics& d)
{
    if (d.source == DemographicSource::None) {
        return {};
    }
    std::string out = d.age ? std::to_string(*d.age) : std::string();
    out.push_back(',');
    if (d.gender != Gender::Unknown) {
        out += gender_code(d.gender);
    }
    return out;
}

bool matches_mention_pattern(std::string_view span)
{
    auto m = match_at(span, 0);
    return m && m->length == span.size();
}

} // namespace redlens

#include "redlens/csv.hpp"

#include <ostream>

namespace redlens {

void write_mentions_csv(const std::vector<MentionRecord>& records, std::ostream& out,
                        const std::vector<std::string>& preamble)
{
    for (const auto& line : preamble) {
        out << "# " << line << '\n';
    }
    csv::write_row(out, {"id", "offset", "age", "gender", "self_attributed"});
    for (const auto& r : records) {
        const auto& m = r.mention;
        csv::write_row(out, {
                                r.post_id,
                                std::to_string(m.offset),
                                m.age ? std::to_string(*m.age) : std::string(),
                                m.gender ? std::string(gender_code(*m.gender)) : std::string("unknown"),
                                m.self_attributed ? "true" : "false",
                            });
    }
}

} // namespace redlens
