#pragma once

// Feature assembly and corpus-level statistics: grouped summaries, Pearson
// correlations, sentiment-model disagreement and the subreddit comparison
// report.

#include "redlens/corpus.hpp"
#include "redlens/demographics.hpp"
#include "redlens/embedding.hpp"
#include "redlens/lexicons.hpp"
#include "redlens/posfreq.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace redlens {

/// Every derived feature for one post. `cosine_similarity` comes from the
/// embedding trained over the post's corpus.
FeatureRow assemble_features(const Post& post, const LexiconBundle& lexicons, double cosine_similarity);

/// Soft checks against the value ranges observed on the reference corpus
/// (e.g. gilded 0-4, upvote_ratio 0.55-1). Returns one message per field
/// outside its envelope; empty when all are inside.
std::vector<std::string> envelope_warnings(const FeatureRow& row);

/// Hard invariants: word_count >= 0, |vader_compound| <= 1, and
/// OP_gender in {f,m,n,unknown}.
bool satisfies_hard_invariants(const FeatureRow& row);

struct ExtractResult {
    std::vector<FeatureRow> rows;
    std::vector<MentionRecord> mentions;
    CorpusEmbedding embedding;
};

/// Assembles rows for a whole corpus. Embedding training is single
/// threaded; row assembly is split over `threads` workers and merged in
/// input order.
ExtractResult extract_features(const std::vector<Post>& posts, const LexiconBundle& lexicons,
                               const EmbeddingConfig& embedding, const AutoencoderConfig& autoencoder,
                               unsigned threads = 1);

struct GroupSummary {
    std::string group_key;
    std::string field;
    std::size_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

using KeySelector = std::function<std::string(const FeatureRow&)>;
/// Returns nullopt for rows that carry no value (e.g. unknown age).
using FieldSelector = std::function<std::optional<double>(const FeatureRow&)>;

/// One summary per distinct key, keys sorted. Groups with no values are
/// omitted. Throws ArgumentError on empty input.
std::vector<GroupSummary> group_summary(const std::vector<FeatureRow>& rows, const KeySelector& key,
                                        const FieldSelector& field, const std::string& field_name);

/// Named accessor for a numeric feature column ("afinn_adjusted", "OP_age",
/// ...). Throws ArgumentError for unknown names.
FieldSelector field_selector(const std::string& name);

/// Sample Pearson correlation. Throws ArgumentError on a length mismatch,
/// fewer than two points, or zero variance in either series.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct Disagreement {
    std::size_t rows = 0;
    std::size_t disagreements = 0;
    double rate = 0.0;
    /// share of rows with a positive compound and a negative adjusted score
    double vader_pos_afinn_neg = 0.0;
    /// share of rows with a negative compound and a positive adjusted score
    double vader_neg_afinn_pos = 0.0;
    /// rate when a zero on either side counts as agreeing with anything
    double rate_zero_agrees = 0.0;
};

/// Fraction of rows where sign(afinn_adjusted) != sign(vader_compound), with
/// zero as its own sign class. Throws ArgumentError on empty input.
Disagreement disagreement_rate(const std::vector<FeatureRow>& rows);

/// Lower median: element (n-1)/2 of the sorted values.
std::optional<double> median_lower(std::vector<double> values);

struct DisclosureCounts {
    std::string subreddit;
    std::size_t both = 0;
    std::size_t only_age = 0;
    std::size_t only_gender = 0;
    std::size_t none = 0;

    bool operator==(const DisclosureCounts&) const = default;
};

struct FlairShare {
    std::string subreddit;
    std::string gender;
    std::string flair;
    std::size_t count = 0;
    double share = 0.0; // of the (subreddit, gender) group
};

struct SubredditMeans {
    std::string subreddit;
    std::size_t posts = 0;
    std::int64_t total_gilded = 0;
    std::map<std::string, double> means; // feature name -> mean
    std::optional<double> median_age;
};

struct PearsonCell {
    std::string feature;
    std::string metric;
    std::optional<double> r; // nullopt when a series has zero variance
};

struct ReportInputs {
    /// Rows with flair populated (flair is used for grouping).
    std::vector<FeatureRow> rows;
    /// post id -> title, for the unique-post listing.
    std::unordered_map<std::string, std::string> titles;
    /// subreddit -> texts to tag for the noun/verb tables.
    std::map<std::string, std::vector<std::string>> pos_texts;
    const PosLexicon* pos_lexicon = nullptr;
    std::size_t top_k = 5;
};

struct ComparisonReport {
    std::vector<std::string> subreddits;
    // (a) feature means
    std::vector<SubredditMeans> means;
    // (b) disclosure counts and flair share by gender
    std::vector<DisclosureCounts> disclosure;
    std::vector<FlairShare> flair_share;
    // (c) sentiment ranges
    std::vector<GroupSummary> afinn_adjusted;
    std::vector<GroupSummary> vader_compound;
    std::vector<GroupSummary> afinn_adjusted_by_flair;
    Disagreement disagreement;
    std::map<std::string, Disagreement> disagreement_by_subreddit;
    // (d) most unique posts
    std::map<std::string, std::vector<RankedPost>> unique_posts;
    // (e) top nouns and verbs
    std::map<std::string, std::vector<FrequencyEntry>> top_nouns;
    std::map<std::string, std::vector<FrequencyEntry>> top_verbs;
    // (f) engagement vs language correlations
    std::vector<PearsonCell> pearson;

    std::unordered_map<std::string, std::string> titles;
    std::size_t top_k = 5;

    /// Plain-text rendering with six numbered sections in fixed order.
    std::string to_text(const std::vector<std::string>& preamble = {}) const;

    /// Writes report_*.csv tables into `dir`.
    void write_csvs(const std::filesystem::path& dir, const std::vector<std::string>& preamble = {}) const;
};

inline constexpr const char* kReportSections[] = {
    "1. Feature means by subreddit",
    "2. Demographic disclosure",
    "3. Sentiment by subreddit",
    "4. Most unique posts",
    "5. Top nouns and verbs",
    "6. Engagement vs language correlations",
};

inline constexpr const char* kEngagementMetrics[] = {"gilded", "num_comments", "score", "upvote_ratio"};
inline constexpr const char* kLanguageFeatures[] = {
    "afinn_score", "word_count", "afinn_adjusted", "vader_compound", "vader_neg",
    "vader_pos",   "masc_words", "fem_words",      "cosine_similarity", "OP_age",
};

DisclosureCounts disclosure_counts(const std::vector<FeatureRow>& rows, const std::string& subreddit);

/// Throws ArgumentError when `inputs.rows` is empty.
ComparisonReport compare_report(const ReportInputs& inputs);

} // namespace redlens
