#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redlens/embedding.hpp"
#include "redlens/error.hpp"
#include "redlens/simd/kernels.hpp"

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace redlens;

namespace {

double cosine(std::span<const double> a, std::span<const double> b)
{
    return simd::cosine(a, b);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (auto& x : m.data()) {
        x = dist(rng);
    }
    return m;
}

std::vector<std::vector<std::string>> words_of(const std::vector<Document>& docs)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& d : docs) {
        std::vector<std::string> words;
        std::istringstream in(d.text);
        for (std::string w; in >> w;) {
            words.push_back(w);
        }
        out.push_back(std::move(words));
    }
    return out;
}

} // namespace

TEST_CASE("config validation")
{
    EmbeddingConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dim = 1;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = {};
    cfg.epochs = 0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("doc vectors: degenerate corpora are data errors")
{
    EmbeddingConfig cfg;
    CHECK_THROWS_AS(train_doc_vectors(std::vector<std::vector<std::string>>{}, cfg), DataError);
    CHECK_THROWS_AS(train_doc_vectors({{"a", "b"}}, cfg), DataError);
    // nothing reaches min_word_count
    CHECK_THROWS_AS(train_doc_vectors({{"a"}, {"b"}}, cfg), DataError);
}

TEST_CASE("doc vectors: identical documents end up close")
{
    EmbeddingConfig cfg;
    cfg.dim = 20;
    const std::vector<std::string> doc = {"my", "sister", "borrowed", "money", "and", "never", "paid", "it", "back"};
    const auto m = train_doc_vectors({doc, doc, {"wedding", "cake", "dress", "wedding", "cake", "dress"}}, cfg);
    REQUIRE(m.rows() == 3);
    CHECK(m.cols() == 20);
    CHECK(cosine(m.row(0), m.row(1)) >= 0.9);
}

TEST_CASE("doc vectors: deterministic for a seed")
{
    const auto corpus = testing::two_cluster_corpus(10, 4, false);
    EmbeddingConfig cfg;
    cfg.dim = 16;
    cfg.epochs = 5;
    const auto words = words_of(corpus.documents);
    const auto a = train_doc_vectors(words, cfg);
    const auto b = train_doc_vectors(words, cfg);
    CHECK(a == b);
    cfg.seed = 2;
    CHECK_FALSE(a == train_doc_vectors(words, cfg));
}

TEST_CASE("doc vectors: two clusters separate")
{
    const auto corpus = testing::two_cluster_corpus(100, 1, false);
    const auto m = train_doc_vectors(words_of(corpus.documents), EmbeddingConfig{});
    double within = 0.0;
    double cross = 0.0;
    std::size_t nw = 0;
    std::size_t nc = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            const double c = cosine(m.row(i), m.row(j));
            if (corpus.cluster[i] == corpus.cluster[j]) {
                within += c;
                ++nw;
            } else {
                cross += c;
                ++nc;
            }
        }
    }
    CHECK(within / nw > cross / nc);
}

TEST_CASE("autoencoder gradient matches central differences")
{
    const Matrix batch = random_matrix(5, 4, 21);
    AutoencoderNet net(4, 2);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist(0.0, 0.5);
    for (auto& p : net.params) {
        p = dist(rng);
    }
    std::vector<double> grad(net.params.size());
    const double loss = autoencoder_loss_and_gradient(net, batch, grad);
    CHECK(loss == doctest::Approx(autoencoder_loss(net, batch)).epsilon(1e-14));

    const double h = 1e-6;
    double worst = 0.0;
    for (std::size_t i = 0; i < net.params.size(); ++i) {
        AutoencoderNet plus = net;
        AutoencoderNet minus = net;
        plus.params[i] += h;
        minus.params[i] -= h;
        const double numeric = (autoencoder_loss(plus, batch) - autoencoder_loss(minus, batch)) / (2 * h);
        const double denom = std::max(std::abs(numeric) + std::abs(grad[i]), 1e-8);
        worst = std::max(worst, std::abs(numeric - grad[i]) / denom);
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("autoencoder recovers a half-dimensional subspace")
{
    const std::size_t dim = 8;
    const Matrix basis = random_matrix(dim / 2, dim, 8);
    const Matrix coeffs = random_matrix(120, dim / 2, 9);
    Matrix data(120, dim);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t k = 0; k < dim / 2; ++k) {
            simd::axpy(coeffs(r, k), basis.row(k), data.row(r));
        }
    }
    AutoencoderConfig cfg;
    AutoencoderReport report;
    const auto model = train_autoencoder(data, cfg, &report);
    CHECK(model.net.hidden_dim == dim / 2);
    CHECK(report.mean_reconstruction_cosine >= 0.99);
    CHECK(report.epochs_run <= cfg.max_epochs);
}

TEST_CASE("reconstruction similarity oracles")
{
    SUBCASE("near-identity model on an in-subspace vector")
    {
        Autoencoder model;
        model.mean = {0.0, 0.0};
        model.scale = {1.0, 1.0};
        model.net = AutoencoderNet(2, 1);
        const double s = 1e-3; // small enough that tanh is linear
        model.net.params = {s, s, 0.0, 0.5 / s, 0.5 / s, 0.0, 0.0};
        const std::vector<double> v{0.3, 0.3};
        CHECK(std::abs(reconstruction_similarity(model, v) - 1.0) < 1e-2);
    }
    SUBCASE("orthogonal output")
    {
        Autoencoder model;
        model.mean = {0.0, 0.0, 0.0};
        model.scale = {1.0, 1.0, 1.0};
        model.net = AutoencoderNet(3, 1);
        std::fill(model.net.params.begin(), model.net.params.end(), 0.0);
        model.net.params[model.net.params.size() - 2] = 1.0; // b2 = (0, 1, 0)
        const std::vector<double> v{2.0, 0.0, 0.0};
        CHECK(std::abs(reconstruction_similarity(model, v)) < 1e-9);
    }
    SUBCASE("zero vector")
    {
        Autoencoder model;
        model.mean = {0.5, 0.5};
        model.scale = {1.0, 1.0};
        model.net = AutoencoderNet(2, 1);
        const std::vector<double> v{0.0, 0.0};
        CHECK(reconstruction_similarity(model, v) == 0.0);
        const std::vector<double> wrong{0.0};
        CHECK_THROWS_AS(reconstruction_similarity(model, wrong), ArgumentError);
    }
}

TEST_CASE("rank_unique")
{
    const std::vector<DocEmbedding> e{{"a", {}, 0.9}, {"b", {}, -0.1}, {"c", {}, 0.4}};
    const auto top2 = rank_unique(e, 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0] == RankedPost{"b", -0.1});
    CHECK(top2[1] == RankedPost{"c", 0.4});
    const auto all = rank_unique(e, 3);
    CHECK(all.back().post_id == "a");
    CHECK(rank_unique(e, 0).empty());
    CHECK_THROWS_AS(rank_unique(e, 4), ArgumentError);
    // ties broken by id
    const std::vector<DocEmbedding> tied{{"z", {}, 0.5}, {"y", {}, 0.5}};
    CHECK(rank_unique(tied, 2)[0].post_id == "y");
}

TEST_CASE("model file round trip is exact")
{
    const Matrix data = random_matrix(30, 6, 2);
    AutoencoderConfig cfg;
    cfg.max_epochs = 20;
    const auto model = train_autoencoder(data, cfg);
    std::stringstream buf;
    save_autoencoder(model, buf);
    const auto loaded = load_autoencoder(buf);
    CHECK(loaded == model);

    std::istringstream bad("not a model\n");
    CHECK_THROWS_AS(load_autoencoder(bad), DataError);
}

TEST_CASE("embed_corpus flags the planted outlier")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CAPTURE(seed);
        const auto corpus = testing::two_cluster_corpus(100, seed);
        EmbeddingConfig cfg;
        cfg.seed = seed;
        const auto emb =
            embed_corpus(corpus.documents, testing::bundled_lexicons().stopwords, cfg, AutoencoderConfig{});
        REQUIRE(emb.documents.size() == corpus.documents.size());
        CHECK(emb.report.mean_reconstruction_cosine >= 0.95);
        const auto bottom = rank_unique(emb.documents, 5);
        const bool found = std::any_of(bottom.begin(), bottom.end(),
                                       [&](const RankedPost& r) { return r.post_id == corpus.outlier_id; });
        CHECK(found);
        const auto above = std::count_if(emb.documents.begin(), emb.documents.end(),
                                         [](const DocEmbedding& d) { return d.reconstruction_similarity > 0.5; });
        CHECK(static_cast<double>(above) >= 0.7 * static_cast<double>(emb.documents.size()));
    }
}
