#pragma once

// Synthetic corpora with known ground truth, shared by unit and acceptance
// tests.

#include "redlens/corpus.hpp"
#include "redlens/lexicons.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace redlens::testing {

std::filesystem::path lexicon_dir();

/// The bundled lexicons, loaded once per process.
const LexiconBundle& bundled_lexicons();

struct PlantedDisclosure {
    int age = 0;
    Gender gender = Gender::Unknown;
    std::string format; // "paren", "bracket", "bare", "gender_first"
};

struct DemographicCorpus {
    std::vector<Post> posts;
    /// post id -> planted self disclosure; ids absent here have none.
    std::map<std::string, PlantedDisclosure> planted;
};

/// `n` posts; roughly 60% carry one self disclosure in one of the four
/// formats, the rest contain only distractors (room numbers, durations,
/// "I'm 25", third-party mentions are never planted in these).
DemographicCorpus demographic_corpus(std::size_t n, std::uint64_t seed);

struct ClusterCorpus {
    std::vector<Document> documents;
    std::vector<int> cluster; // 0 or 1; -1 for the planted outlier
    std::string outlier_id;
};

/// `per_cluster` documents per cluster over disjoint topic vocabularies
/// mixed with shared common words, plus one off-topic outlier when
/// `with_outlier` is set.
ClusterCorpus two_cluster_corpus(std::size_t per_cluster, std::uint64_t seed, bool with_outlier = true);

/// Titles in which tell (tells/told/telling) occurs 5 times, want 3 times,
/// boyfriend 4 times and sister twice; every other word is a function word.
std::vector<std::string> planted_pos_titles();

/// Posts of a given subreddit built from plain strings (title, body).
Post make_post(std::string id, std::string subreddit, std::string title, std::string body = {},
               std::optional<std::string> flair = std::nullopt);

} // namespace redlens::testing
