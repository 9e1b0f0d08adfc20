#pragma once

// Batch driver: extract -> report, plus standalone embedding training and
// the bundled fixture corpus.

#include "redlens/corpus.hpp"
#include "redlens/embedding.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace redlens::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path output_dir;
    std::filesystem::path lexicon_dir;
    std::filesystem::path run_dir; // report: directory holding features.csv
    EmbeddingConfig embedding;
    AutoencoderConfig autoencoder;
    std::size_t top_k = 5;
    bool pos_full_text = false; // report: tag title + body instead of titles
    unsigned threads = 1;
};

/// Writes features.csv, demographics_audit.csv, posts_meta.csv,
/// doc_vectors.csv and autoencoder.model into output_dir.
void cmd_extract(const RunConfig& cfg, std::ostream& log);

/// Reads run_dir and writes report.txt plus report_*.csv into output_dir
/// (run_dir when empty).
void cmd_report(const RunConfig& cfg, std::ostream& log);

/// Writes doc_vectors.csv, autoencoder.model and similarity.csv.
void cmd_train_embeddings(const RunConfig& cfg, std::ostream& log);

/// The bundled 8-post fixture corpus (two subreddits).
std::vector<Post> fixture_posts();

void cmd_demo_fixture(const std::filesystem::path& out, std::ostream& log);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace redlens::cli
