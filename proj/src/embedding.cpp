#include "redlens/embedding.hpp"

#include "redlens/csv.hpp"
#include "redlens/error.hpp"
#include "redlens/simd/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

namespace redlens {
namespace {

// mt19937_64 is specified bit-exactly; the helpers below avoid the
// implementation-defined std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

double sigmoid(double x)
{
    return 1.0 / (1.0 + std::exp(-x));
}

struct Vocabulary {
    std::vector<std::string> words;
    std::vector<std::int64_t> counts;
    std::unordered_map<std::string, std::size_t> index;
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& documents, int min_count)
{
    std::map<std::string, std::int64_t> counts;
    for (const auto& doc : documents) {
        for (const auto& w : doc) {
            ++counts[w];
        }
    }
    std::vector<std::pair<std::string, std::int64_t>> kept;
    for (auto& [w, c] : counts) {
        if (c >= min_count) {
            kept.emplace_back(w, c);
        }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    Vocabulary v;
    for (auto& [w, c] : kept) {
        v.index.emplace(w, v.words.size());
        v.words.push_back(w);
        v.counts.push_back(c);
    }
    return v;
}

// Cumulative unigram^0.75 distribution sampled by binary search.
class NoiseDistribution {
public:
    explicit NoiseDistribution(const std::vector<std::int64_t>& counts)
    {
        cumulative_.reserve(counts.size());
        double total = 0.0;
        for (auto c : counts) {
            total += std::pow(static_cast<double>(c), 0.75);
            cumulative_.push_back(total);
        }
        for (auto& c : cumulative_) {
            c /= total;
        }
        cumulative_.back() = 1.0;
    }

    std::size_t sample(Rng& rng) const
    {
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), rng.uniform());
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

void check_finite(std::span<const double> values, const std::string& what)
{
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NumericError(what + ": non-finite value");
        }
    }
}

Matrix standardize(const Matrix& vectors, const std::vector<double>& mean, const std::vector<double>& scale)
{
    Matrix z(vectors.rows(), vectors.cols());
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
        for (std::size_t c = 0; c < vectors.cols(); ++c) {
            z(r, c) = (vectors(r, c) - mean[c]) / scale[c];
        }
    }
    return z;
}

std::vector<double> read_values(std::istream& in, const std::string& label, std::size_t count)
{
    std::string tag;
    if (!(in >> tag) || tag != label) {
        throw DataError("autoencoder model: expected '" + label + "'");
    }
    std::vector<double> values(count);
    std::string token;
    for (auto& v : values) {
        if (!(in >> token)) {
            throw DataError("autoencoder model: truncated '" + label + "'");
        }
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc() || end != token.data() + token.size()) {
            throw DataError("autoencoder model: bad number '" + token + "' in '" + label + "'");
        }
    }
    return values;
}

void write_values(std::ostream& out, const char* label, std::span<const double> values)
{
    out << label;
    for (double v : values) {
        out << ' ' << csv::format_real(v);
    }
    out << '\n';
}

} // namespace

void EmbeddingConfig::validate() const
{
    if (dim < 2) {
        throw ArgumentError("embedding: dim must be at least 2");
    }
    if (epochs < 1) {
        throw ArgumentError("embedding: epochs must be at least 1");
    }
    if (!(final_rate > 0.0 && final_rate <= initial_rate)) {
        throw ArgumentError("embedding: need 0 < final_rate <= initial_rate");
    }
    if (negative_samples < 0) {
        throw ArgumentError("embedding: negative_samples must be non-negative");
    }
    if (min_word_count < 1) {
        throw ArgumentError("embedding: min_word_count must be at least 1");
    }
}

Matrix train_doc_vectors(const std::vector<std::vector<std::string>>& documents, const EmbeddingConfig& cfg)
{
    cfg.validate();
    if (documents.size() < 2) {
        throw DataError("embedding: corpus too small (need at least 2 documents)");
    }
    const auto vocab = build_vocabulary(documents, cfg.min_word_count);
    if (vocab.words.empty()) {
        throw DataError("embedding: empty vocabulary (no word occurs min_word_count times)");
    }

    std::vector<std::vector<std::size_t>> doc_words(documents.size());
    std::size_t words_per_epoch = 0;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        for (const auto& w : documents[d]) {
            if (auto it = vocab.index.find(w); it != vocab.index.end()) {
                doc_words[d].push_back(it->second);
            }
        }
        words_per_epoch += doc_words[d].size();
    }

    const std::size_t dim = cfg.dim;
    Rng rng(cfg.seed);
    Matrix doc_vecs(documents.size(), dim);
    for (double& x : doc_vecs.data()) {
        x = (rng.uniform() - 0.5) / static_cast<double>(dim);
    }
    Matrix out_vecs(vocab.words.size(), dim, 0.0);
    const NoiseDistribution noise(vocab.counts);

    const double total = static_cast<double>(words_per_epoch) * cfg.epochs;
    double processed = 0.0;
    std::vector<double> grad(dim);
    std::vector<std::size_t> order(documents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t d : order) {
            auto dv = doc_vecs.row(d);
            for (std::size_t target : doc_words[d]) {
                const double rate =
                    cfg.initial_rate - (cfg.initial_rate - cfg.final_rate) * (processed / std::max(total, 1.0));
                processed += 1.0;
                std::fill(grad.begin(), grad.end(), 0.0);
                for (int s = 0; s <= cfg.negative_samples; ++s) {
                    std::size_t word = target;
                    double label = 1.0;
                    if (s > 0) {
                        word = noise.sample(rng);
                        if (word == target) {
                            continue;
                        }
                        label = 0.0;
                    }
                    auto ov = out_vecs.row(word);
                    const double g = (label - sigmoid(simd::dot(dv, ov))) * rate;
                    simd::axpy(g, ov, grad);
                    simd::axpy(g, dv, ov);
                }
                simd::axpy(1.0, grad, dv);
            }
        }
    }
    check_finite(doc_vecs.data(), "document vectors");
    return doc_vecs;
}

Matrix train_doc_vectors(const std::vector<Document>& documents, const WordSet& stopwords, const EmbeddingConfig& cfg)
{
    std::vector<std::vector<std::string>> words;
    words.reserve(documents.size());
    for (const auto& doc : documents) {
        std::vector<std::string> w;
        for (auto& t : remove_stopwords(tokenize(doc.text), stopwords)) {
            w.push_back(std::move(t.normalized));
        }
        words.push_back(std::move(w));
    }
    return train_doc_vectors(words, cfg);
}

AutoencoderNet::AutoencoderNet(std::size_t input, std::size_t hidden)
    : input_dim(input), hidden_dim(hidden), params(hidden * input + hidden + input * hidden + input, 0.0)
{
}

void AutoencoderNet::forward(std::span<const double> z, std::span<double> hidden, std::span<double> out) const
{
    simd::gemv(w1(), z, hidden);
    const auto bias1 = b1();
    for (std::size_t h = 0; h < hidden_dim; ++h) {
        hidden[h] = std::tanh(hidden[h] + bias1[h]);
    }
    simd::gemv(w2(), hidden, out);
    const auto bias2 = b2();
    for (std::size_t i = 0; i < input_dim; ++i) {
        out[i] += bias2[i];
    }
}

double autoencoder_loss_and_gradient(const AutoencoderNet& net, const Matrix& batch, std::span<double> grad)
{
    const std::size_t in = net.input_dim;
    const std::size_t hid = net.hidden_dim;
    if (batch.cols() != in || grad.size() != net.params.size()) {
        throw ArgumentError("autoencoder: gradient buffer or batch shape mismatch");
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    auto g_w1 = grad.subspan(0, hid * in);
    auto g_b1 = grad.subspan(hid * in, hid);
    auto g_w2 = grad.subspan(hid * (in + 1), in * hid);
    auto g_b2 = grad.subspan(hid * (2 * in + 1), in);
    const auto w2 = net.w2();

    std::vector<double> hidden(hid), out(in), d_out(in), d_hidden(hid);
    const double norm = 1.0 / static_cast<double>(batch.rows() * in);
    double loss = 0.0;
    for (std::size_t r = 0; r < batch.rows(); ++r) {
        const auto z = batch.row(r);
        net.forward(z, hidden, out);
        for (std::size_t i = 0; i < in; ++i) {
            const double e = out[i] - z[i];
            loss += e * e;
            d_out[i] = 2.0 * e * norm;
        }
        std::fill(d_hidden.begin(), d_hidden.end(), 0.0);
        for (std::size_t i = 0; i < in; ++i) {
            simd::axpy(d_out[i], hidden, g_w2.subspan(i * hid, hid));
            g_b2[i] += d_out[i];
            simd::axpy(d_out[i], w2.subspan(i * hid, hid), d_hidden);
        }
        for (std::size_t h = 0; h < hid; ++h) {
            const double da = d_hidden[h] * (1.0 - hidden[h] * hidden[h]);
            simd::axpy(da, z, g_w1.subspan(h * in, in));
            g_b1[h] += da;
        }
    }
    return loss * norm;
}

double autoencoder_loss(const AutoencoderNet& net, const Matrix& batch)
{
    std::vector<double> hidden(net.hidden_dim), out(net.input_dim);
    double loss = 0.0;
    for (std::size_t r = 0; r < batch.rows(); ++r) {
        const auto z = batch.row(r);
        net.forward(z, hidden, out);
        for (std::size_t i = 0; i < net.input_dim; ++i) {
            const double e = out[i] - z[i];
            loss += e * e;
        }
    }
    return loss / static_cast<double>(batch.rows() * net.input_dim);
}

std::vector<double> Autoencoder::reconstruct(std::span<const double> v) const
{
    const std::size_t in = net.input_dim;
    if (v.size() != in) {
        throw ArgumentError("autoencoder: expected a vector of dimension " + std::to_string(in) + ", got " +
                            std::to_string(v.size()));
    }
    std::vector<double> z(in), hidden(net.hidden_dim), out(in);
    for (std::size_t i = 0; i < in; ++i) {
        z[i] = (v[i] - mean[i]) / scale[i];
    }
    net.forward(z, hidden, out);
    for (std::size_t i = 0; i < in; ++i) {
        out[i] = out[i] * scale[i] + mean[i];
    }
    return out;
}

Autoencoder train_autoencoder(const Matrix& vectors, const AutoencoderConfig& cfg, AutoencoderReport* report)
{
    const std::size_t n = vectors.rows();
    const std::size_t in = vectors.cols();
    if (n < 2) {
        throw ArgumentError("autoencoder: need at least 2 vectors");
    }
    if (in < 1 || cfg.batch_size < 1 || cfg.max_epochs < 1) {
        throw ArgumentError("autoencoder: invalid configuration");
    }
    check_finite(vectors.data(), "autoencoder input");
    const std::size_t hid = cfg.hidden_dim != 0 ? cfg.hidden_dim : std::max<std::size_t>(1, in / 2);

    Autoencoder model;
    model.mean.assign(in, 0.0);
    model.scale.assign(in, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < in; ++c) {
            model.mean[c] += vectors(r, c);
        }
    }
    for (auto& m : model.mean) {
        m /= static_cast<double>(n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < in; ++c) {
            const double d = vectors(r, c) - model.mean[c];
            model.scale[c] += d * d;
        }
    }
    for (auto& s : model.scale) {
        s = std::sqrt(s / static_cast<double>(n));
        if (!(s > 1e-12)) {
            s = 1.0;
        }
    }
    const Matrix z = standardize(vectors, model.mean, model.scale);

    model.net = AutoencoderNet(in, hid);
    Rng rng(cfg.seed);
    const double limit = std::sqrt(6.0 / static_cast<double>(in + hid));
    auto& params = model.net.params;
    for (std::size_t i = 0; i < hid * in; ++i) {
        params[i] = (2.0 * rng.uniform() - 1.0) * limit;
    }
    for (std::size_t i = hid * (in + 1); i < hid * (2 * in + 1); ++i) {
        params[i] = (2.0 * rng.uniform() - 1.0) * limit;
    }

    std::vector<double> grad(params.size()), velocity(params.size(), 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch = std::min(cfg.batch_size, n);

    double prev_loss = autoencoder_loss(model.net, z);
    double loss = prev_loss;
    int epoch = 0;
    while (epoch < cfg.max_epochs) {
        ++epoch;
        rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t rows = std::min(batch, n - start);
            Matrix mb(rows, in);
            for (std::size_t r = 0; r < rows; ++r) {
                std::copy_n(z.row(order[start + r]).begin(), in, mb.row(r).begin());
            }
            autoencoder_loss_and_gradient(model.net, mb, grad);
            for (std::size_t i = 0; i < params.size(); ++i) {
                velocity[i] = cfg.momentum * velocity[i] - cfg.learning_rate * grad[i];
                params[i] += velocity[i];
            }
        }
        loss = autoencoder_loss(model.net, z);
        if (!std::isfinite(loss)) {
            throw NumericError("autoencoder: non-finite loss at epoch " + std::to_string(epoch));
        }
        const double improvement = prev_loss - loss;
        if (improvement >= 0.0 && improvement < cfg.tolerance) {
            break;
        }
        prev_loss = loss;
    }

    if (report != nullptr) {
        report->epochs_run = epoch;
        report->final_loss = loss;
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            sum += reconstruction_similarity(model, vectors.row(r));
        }
        report->mean_reconstruction_cosine = sum / static_cast<double>(n);
    }
    return model;
}

double reconstruction_similarity(const Autoencoder& model, std::span<const double> v)
{
    if (v.size() != model.input_dim()) {
        throw ArgumentError("reconstruction_similarity: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                            std::to_string(model.input_dim()) + ")");
    }
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
        return 0.0;
    }
    const auto out = model.reconstruct(v);
    return simd::cosine(v, out);
}

std::vector<RankedPost> rank_unique(const std::vector<DocEmbedding>& embeddings, std::size_t k)
{
    if (k > embeddings.size()) {
        throw ArgumentError("rank_unique: k=" + std::to_string(k) + " exceeds " + std::to_string(embeddings.size()) +
                            " documents");
    }
    std::vector<RankedPost> ranked;
    ranked.reserve(embeddings.size());
    for (const auto& e : embeddings) {
        ranked.push_back({e.post_id, e.reconstruction_similarity});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedPost& a, const RankedPost& b) {
        if (a.similarity != b.similarity) {
            return a.similarity < b.similarity;
        }
        return a.post_id < b.post_id;
    });
    ranked.resize(k);
    return ranked;
}

CorpusEmbedding embed_corpus(const std::vector<Document>& documents, const WordSet& stopwords,
                             const EmbeddingConfig& cfg, const AutoencoderConfig& ae_cfg)
{
    const Matrix vectors = train_doc_vectors(documents, stopwords, cfg);
    CorpusEmbedding result;
    result.model = train_autoencoder(vectors, ae_cfg, &result.report);
    result.documents.reserve(documents.size());
    for (std::size_t i = 0; i < documents.size(); ++i) {
        const auto v = vectors.row(i);
        result.documents.push_back(
            {documents[i].post_id, std::vector<double>(v.begin(), v.end()), reconstruction_similarity(result.model, v)});
    }
    return result;
}

void save_autoencoder(const Autoencoder& model, std::ostream& out)
{
    out << "redlens-autoencoder 1\n";
    out << "input_dim " << model.net.input_dim << '\n';
    out << "hidden_dim " << model.net.hidden_dim << '\n';
    write_values(out, "mean", model.mean);
    write_values(out, "scale", model.scale);
    write_values(out, "w1", model.net.w1());
    write_values(out, "b1", model.net.b1());
    write_values(out, "w2", model.net.w2());
    write_values(out, "b2", model.net.b2());
}

Autoencoder load_autoencoder(std::istream& in)
{
    std::string magic, tag;
    int version = 0;
    while (in >> std::ws && in.peek() == '#') {
        in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    }
    if (!(in >> magic >> version) || magic != "redlens-autoencoder" || version != 1) {
        throw DataError("autoencoder model: unrecognized header");
    }
    std::size_t input = 0, hidden = 0;
    if (!(in >> tag >> input) || tag != "input_dim" || !(in >> tag >> hidden) || tag != "hidden_dim" || input == 0 ||
        hidden == 0) {
        throw DataError("autoencoder model: bad dimensions");
    }
    Autoencoder model;
    model.mean = read_values(in, "mean", input);
    model.scale = read_values(in, "scale", input);
    model.net = AutoencoderNet(input, hidden);
    std::size_t offset = 0;
    for (auto [label, count] : {std::pair{"w1", hidden * input}, std::pair{"b1", hidden},
                                std::pair{"w2", input * hidden}, std::pair{"b2", input}}) {
        auto values = read_values(in, label, count);
        std::copy(values.begin(), values.end(), model.net.params.begin() + static_cast<std::ptrdiff_t>(offset));
        offset += count;
    }
    return model;
}

} // namespace redlens
