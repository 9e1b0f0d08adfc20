#pragma once

// Document embeddings and uniqueness scoring.
//
// Document vectors are trained with distributed bag-of-words paragraph
// vectors: each document vector predicts its own words through logistic
// loss with negative sampling from a unigram^0.75 noise distribution.
// A one-hidden-layer autoencoder (tanh, width dim/2, linear output) is then
// fitted to the standardized vectors. A document's uniqueness score is the
// cosine between its vector and the autoencoder's reconstruction; low
// values mark atypical documents.
//
// Training is single-threaded and bit-reproducible for a fixed seed and
// SIMD backend.

#include "redlens/corpus.hpp"
#include "redlens/textprep.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace redlens {

/// Row-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct EmbeddingConfig {
    std::size_t dim = 50;
    int epochs = 40;
    double initial_rate = 0.025;
    double final_rate = 0.0001;
    int negative_samples = 5;
    int min_word_count = 2;
    std::uint64_t seed = 1;

    /// Throws ArgumentError on dim < 2, epochs < 1 or a bad rate schedule.
    void validate() const;
};

/// One row per document. Throws DataError when there are fewer than two
/// documents or no word reaches min_word_count.
Matrix train_doc_vectors(const std::vector<std::vector<std::string>>& documents, const EmbeddingConfig& cfg);

/// Tokenizes, drops stopwords, and trains on the normalized forms.
Matrix train_doc_vectors(const std::vector<Document>& documents, const WordSet& stopwords,
                         const EmbeddingConfig& cfg);

struct AutoencoderConfig {
    std::size_t hidden_dim = 0; // 0 means input_dim / 2
    // Kept short on purpose. Trained to convergence the network starts
    // memorizing individual atypical documents, which is exactly what the
    // reconstruction score is meant to expose.
    int max_epochs = 30;
    std::size_t batch_size = 16;
    double learning_rate = 0.05;
    double momentum = 0.9;
    double tolerance = 1e-6; // stop when an epoch improves the loss by less
    std::uint64_t seed = 1;
};

/// Flat parameter block [W1 (hidden x input) | b1 | W2 (input x hidden) | b2].
struct AutoencoderNet {
    std::size_t input_dim = 0;
    std::size_t hidden_dim = 0;
    std::vector<double> params;

    AutoencoderNet() = default;
    AutoencoderNet(std::size_t input, std::size_t hidden);

    std::span<const double> w1() const { return {params.data(), hidden_dim * input_dim}; }
    std::span<const double> b1() const { return {params.data() + hidden_dim * input_dim, hidden_dim}; }
    std::span<const double> w2() const { return {params.data() + hidden_dim * (input_dim + 1), input_dim * hidden_dim}; }
    std::span<const double> b2() const { return {params.data() + hidden_dim * (2 * input_dim + 1), input_dim}; }

    /// Forward pass on an already standardized vector.
    void forward(std::span<const double> z, std::span<double> hidden, std::span<double> out) const;

    bool operator==(const AutoencoderNet&) const = default;
};

/// Mean squared reconstruction error over the rows of `batch` (averaged
/// over rows and dimensions). Writes d(loss)/d(params) into `grad`.
double autoencoder_loss_and_gradient(const AutoencoderNet& net, const Matrix& batch, std::span<double> grad);

double autoencoder_loss(const AutoencoderNet& net, const Matrix& batch);

struct Autoencoder {
    std::vector<double> mean;
    std::vector<double> scale; // per-dimension standard deviation (1 when constant)
    AutoencoderNet net;

    std::size_t input_dim() const { return net.input_dim; }

    /// Standardize, run the network, and map back to input space.
    std::vector<double> reconstruct(std::span<const double> v) const;

    bool operator==(const Autoencoder&) const = default;
};

struct AutoencoderReport {
    int epochs_run = 0;
    double final_loss = 0.0;
    double mean_reconstruction_cosine = 0.0;
};

/// Throws ArgumentError for fewer than two vectors and NumericError (naming
/// the epoch) if the loss becomes non-finite.
Autoencoder train_autoencoder(const Matrix& vectors, const AutoencoderConfig& cfg, AutoencoderReport* report = nullptr);

/// cosine(v, model.reconstruct(v)); 0 for the zero vector. Throws
/// ArgumentError on a dimension mismatch.
double reconstruction_similarity(const Autoencoder& model, std::span<const double> v);

struct DocEmbedding {
    std::string post_id;
    std::vector<double> vector;
    double reconstruction_similarity = 0.0;
};

struct RankedPost {
    std::string post_id;
    double similarity = 0.0;

    bool operator==(const RankedPost&) const = default;
};

/// The k least typical documents, ascending by similarity then post id.
/// Throws ArgumentError when k exceeds the number of embeddings.
std::vector<RankedPost> rank_unique(const std::vector<DocEmbedding>& embeddings, std::size_t k);

struct CorpusEmbedding {
    std::vector<DocEmbedding> documents;
    Autoencoder model;
    AutoencoderReport report;
};

/// Full pipeline: document vectors, autoencoder, per-document similarity.
CorpusEmbedding embed_corpus(const std::vector<Document>& documents, const WordSet& stopwords,
                             const EmbeddingConfig& cfg, const AutoencoderConfig& ae_cfg);

/// Plain-text model format, see README. Values are written in shortest
/// round-trip form so save/load is exact.
void save_autoencoder(const Autoencoder& model, std::ostream& out);
Autoencoder load_autoencoder(std::istream& in);

} // namespace redlens
