#pragma once

// Canonical data model: forum posts, derived documents and the per-post
// feature row, plus their file formats (JSONL in, CSV out).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redlens {

struct Post {
    std::string id;
    std::int64_t created_utc = 0;
    std::string subreddit;
    std::string title;
    std::string body;
    std::int64_t gilded = 0;
    std::int64_t num_comments = 0;
    std::int64_t score = 0;
    double upvote_ratio = 0.0;
    std::optional<std::string> flair;

    bool operator==(const Post&) const = default;
};

struct Document {
    std::string post_id;
    std::string text;
};

enum class Gender { Female, Male, Nonbinary, Unknown };

/// "f", "m", "n" or "unknown".
std::string_view gender_code(Gender g);

/// Inverse of gender_code; throws DataError on anything else.
Gender parse_gender(std::string_view code);

/// One output row: engagement metadata, derived language features and the
/// poster's extracted demographics. Column order follows kFeatureColumns.
struct FeatureRow {
    std::string id;
    std::string subreddit;
    std::optional<std::string> flair; // grouping only; not serialized

    std::int64_t gilded = 0;
    std::int64_t num_comments = 0;
    std::int64_t score = 0;
    double upvote_ratio = 0.0;
    std::int64_t afinn_score = 0;
    std::int64_t word_count = 0;
    double afinn_adjusted = 0.0;
    double vader_compound = 0.0;
    double vader_neg = 0.0;
    double vader_pos = 0.0;
    std::int64_t masc_words = 0;
    std::int64_t fem_words = 0;
    double cosine_similarity = 0.0;
    std::string op_demographics;
    std::optional<int> op_age;
    Gender op_gender = Gender::Unknown;

    bool operator==(const FeatureRow&) const = default;
};

inline constexpr std::string_view kFeatureColumns[] = {
    "id",          "subreddit",        "gilded",         "num_comments", "score",     "upvote_ratio",
    "afinn_score", "word_count",       "afinn_adjusted", "vader_compound", "vader_neg", "vader_pos",
    "masc_words",  "fem_words",        "cosine_similarity", "OP_demographics", "OP_age", "OP_gender",
};

/// Parses JSONL posts. Errors carry the 1-based line number. Blank lines are
/// skipped but still counted.
std::vector<Post> parse_posts(std::string_view jsonl, std::string_view source_name = "<input>");

std::vector<Post> load_posts(const std::filesystem::path& path);

/// One JSON object per line using the export field names.
std::string post_to_json(const Post& post);

void write_posts(const std::vector<Post>& posts, const std::filesystem::path& path);

/// Title, a single space, then the body; just the title when the body is empty.
Document make_document(const Post& post);

/// Header plus one line per row. `preamble` lines are written first, each
/// prefixed with "# ".
void write_features_csv(const std::vector<FeatureRow>& rows, std::ostream& out,
                        const std::vector<std::string>& preamble = {});
void write_features_csv(const std::vector<FeatureRow>& rows, const std::filesystem::path& path,
                        const std::vector<std::string>& preamble = {});

/// Reads a features table written by write_features_csv. '#' comment lines
/// are skipped; the header must match kFeatureColumns exactly.
std::vector<FeatureRow> parse_features_csv(std::string_view text);
std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

} // namespace redlens
