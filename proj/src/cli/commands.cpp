#include "redlens/cli.hpp"

#include "redlens/analytics.hpp"
#include "redlens/csv.hpp"
#include "redlens/error.hpp"
#include "redlens/lexicons.hpp"
#include "redlens/simd/kernels.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>

namespace redlens::cli {
namespace {

namespace fs = std::filesystem;

// Prefixes any toolkit error with the pipeline stage that raised it.
template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const DataError& e) {
        throw DataError(name + ": " + e.what());
    } catch (const NumericError& e) {
        throw NumericError(name + ": " + e.what());
    } catch (const ArgumentError& e) {
        throw ArgumentError(name + ": " + e.what());
    }
}

std::vector<std::string> artifact_header(const LexiconBundle& lex, const RunConfig& cfg)
{
    return {
        std::string("redlens ") + kToolVersion,
        "lexicons: " + lex.version_string(),
        "seed: " + std::to_string(cfg.embedding.seed),
        "embedding: dim=" + std::to_string(cfg.embedding.dim) + " epochs=" + std::to_string(cfg.embedding.epochs) +
            " negative=" + std::to_string(cfg.embedding.negative_samples) +
            " min_count=" + std::to_string(cfg.embedding.min_word_count),
        std::string("simd: ") + std::string(simd::backend_name(simd::active_backend())),
    };
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

void ensure_output_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw DataError("cannot create output directory " + dir.string());
    }
}

std::vector<Post> load_all(const std::vector<fs::path>& inputs)
{
    if (inputs.empty()) {
        throw UsageError("no input files given (--in)");
    }
    std::vector<Post> posts;
    std::set<std::string> ids;
    for (const auto& path : inputs) {
        for (auto& p : load_posts(path)) {
            if (!ids.insert(p.id).second) {
                throw DataError(path.string() + ": duplicate id '" + p.id + "' across input files");
            }
            posts.push_back(std::move(p));
        }
    }
    return posts;
}

void write_doc_vectors(const CorpusEmbedding& emb, const fs::path& path, const std::vector<std::string>& preamble)
{
    auto out = open_output(path);
    for (const auto& p : preamble) {
        out << "# " << p << '\n';
    }
    std::vector<std::string> header{"id"};
    const std::size_t dim = emb.documents.empty() ? 0 : emb.documents.front().vector.size();
    for (std::size_t i = 0; i < dim; ++i) {
        header.push_back("v" + std::to_string(i));
    }
    csv::write_row(out, header);
    for (const auto& d : emb.documents) {
        std::vector<std::string> row{d.post_id};
        for (double v : d.vector) {
            row.push_back(csv::format_real(v));
        }
        csv::write_row(out, row);
    }
}

void write_model(const CorpusEmbedding& emb, const fs::path& path, const std::vector<std::string>& preamble)
{
    auto out = open_output(path);
    for (const auto& p : preamble) {
        out << "# " << p << '\n';
    }
    save_autoencoder(emb.model, out);
}

std::string describe_training(const CorpusEmbedding& emb)
{
    return "autoencoder: epochs=" + std::to_string(emb.report.epochs_run) +
           " loss=" + csv::format_real(emb.report.final_loss) +
           " mean_reconstruction_cosine=" + csv::format_real(emb.report.mean_reconstruction_cosine);
}

// Comment lines at the top of an artifact, without the "# " marker.
std::vector<std::string> read_preamble(const fs::path& path)
{
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line) && line.starts_with("#")) {
        lines.push_back(line.size() > 2 ? line.substr(2) : std::string());
    }
    return lines;
}

struct PostMeta {
    std::string subreddit;
    std::optional<std::string> flair;
    std::string title;
};

std::map<std::string, PostMeta> read_posts_meta(const fs::path& path)
{
    auto records = csv::parse(read_file(path));
    if (records.empty() || records.front() != std::vector<std::string>{"id", "subreddit", "flair", "has_flair", "title"}) {
        throw DataError(path.string() + ": unexpected header");
    }
    std::map<std::string, PostMeta> meta;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.size() != 5) {
            throw DataError(path.string() + ": row " + std::to_string(i) + " has " + std::to_string(r.size()) +
                            " cells");
        }
        meta[r[0]] = PostMeta{r[1], r[3] == "1" ? std::optional<std::string>(r[2]) : std::nullopt, r[4]};
    }
    return meta;
}

} // namespace

void cmd_extract(const RunConfig& cfg, std::ostream& log)
{
    const auto lex = stage("load lexicons", [&] { return load_lexicon_bundle(cfg.lexicon_dir); });
    const auto posts = stage("load posts", [&] { return load_all(cfg.inputs); });
    stage("prepare output", [&] { ensure_output_dir(cfg.output_dir); });

    auto result = stage("extract features", [&] {
        return extract_features(posts, lex, cfg.embedding, cfg.autoencoder, cfg.threads);
    });

    std::size_t warnings = 0;
    for (const auto& row : result.rows) {
        warnings += envelope_warnings(row).empty() ? 0 : 1;
    }

    auto header = artifact_header(lex, cfg);
    stage("write outputs", [&] {
        write_features_csv(result.rows, cfg.output_dir / "features.csv", header);

        auto audit = open_output(cfg.output_dir / "demographics_audit.csv");
        write_mentions_csv(result.mentions, audit, header);

        auto meta = open_output(cfg.output_dir / "posts_meta.csv");
        for (const auto& p : header) {
            meta << "# " << p << '\n';
        }
        csv::write_row(meta, {"id", "subreddit", "flair", "has_flair", "title"});
        for (const auto& p : posts) {
            csv::write_row(meta, {p.id, p.subreddit, p.flair.value_or(""), p.flair ? "1" : "0", p.title});
        }

        auto model_header = header;
        model_header.push_back(describe_training(result.embedding));
        write_doc_vectors(result.embedding, cfg.output_dir / "doc_vectors.csv", header);
        write_model(result.embedding, cfg.output_dir / "autoencoder.model", model_header);
    });

    log << "extract: " << posts.size() << " posts -> " << (cfg.output_dir / "features.csv").string() << '\n';
    log << "extract: " << describe_training(result.embedding) << '\n';
    if (warnings > 0) {
        log << "extract: " << warnings << " rows have values outside the typical feature ranges\n";
    }
}

void cmd_report(const RunConfig& cfg, std::ostream& log)
{
    const fs::path features_path = cfg.run_dir / "features.csv";
    const fs::path out_dir = cfg.output_dir.empty() ? cfg.run_dir : cfg.output_dir;
    const auto lex = stage("load lexicons", [&] { return load_lexicon_bundle(cfg.lexicon_dir); });

    auto rows = stage("read features", [&] {
        if (!fs::exists(features_path)) {
            throw DataError("missing " + features_path.string());
        }
        auto r = read_features_csv(features_path);
        if (r.empty()) {
            throw DataError(features_path.string() + " has no data rows");
        }
        return r;
    });
    auto meta = stage("read post metadata", [&] { return read_posts_meta(cfg.run_dir / "posts_meta.csv"); });

    ReportInputs inputs;
    inputs.top_k = cfg.top_k;
    inputs.pos_lexicon = &lex.pos;
    for (auto& r : rows) {
        auto it = meta.find(r.id);
        if (it == meta.end()) {
            throw DataError("read post metadata: no entry for id '" + r.id + "'");
        }
        r.flair = it->second.flair;
        inputs.titles[r.id] = it->second.title;
        if (!cfg.pos_full_text) {
            inputs.pos_texts[r.subreddit].push_back(it->second.title);
        }
    }
    if (cfg.pos_full_text) {
        const auto posts = stage("load posts", [&] { return load_all(cfg.inputs); });
        for (const auto& p : posts) {
            inputs.pos_texts[p.subreddit].push_back(make_document(p).text);
        }
    }
    inputs.rows = std::move(rows);

    const auto report = stage("build report", [&] { return compare_report(inputs); });

    auto preamble = read_preamble(features_path);
    preamble.push_back("report: top_k=" + std::to_string(cfg.top_k) +
                       " pos_source=" + (cfg.pos_full_text ? "full_text" : "titles"));
    stage("write report", [&] {
        ensure_output_dir(out_dir);
        auto out = open_output(out_dir / "report.txt");
        out << report.to_text(preamble);
        report.write_csvs(out_dir, preamble);
    });
    log << "report: " << inputs.rows.size() << " rows -> " << (out_dir / "report.txt").string() << '\n';
}

void cmd_train_embeddings(const RunConfig& cfg, std::ostream& log)
{
    const auto lex = stage("load lexicons", [&] { return load_lexicon_bundle(cfg.lexicon_dir); });
    const auto posts = stage("load posts", [&] { return load_all(cfg.inputs); });
    stage("prepare output", [&] { ensure_output_dir(cfg.output_dir); });
    std::vector<Document> docs;
    for (const auto& p : posts) {
        docs.push_back(make_document(p));
    }
    const auto emb = stage("train embeddings",
                           [&] { return embed_corpus(docs, lex.stopwords, cfg.embedding, cfg.autoencoder); });
    auto header = artifact_header(lex, cfg);
    header.push_back(describe_training(emb));
    stage("write outputs", [&] {
        write_doc_vectors(emb, cfg.output_dir / "doc_vectors.csv", header);
        write_model(emb, cfg.output_dir / "autoencoder.model", header);
        auto sim = open_output(cfg.output_dir / "similarity.csv");
        for (const auto& p : header) {
            sim << "# " << p << '\n';
        }
        csv::write_row(sim, {"id", "cosine_similarity"});
        for (const auto& d : emb.documents) {
            csv::write_row(sim, {d.post_id, csv::format_real(d.reconstruction_similarity)});
        }
    });
    log << "train-embeddings: " << docs.size() << " documents; " << describe_training(emb) << '\n';
}

void cmd_demo_fixture(const fs::path& out, std::ostream& log)
{
    if (out.has_parent_path()) {
        ensure_output_dir(out.parent_path());
    }
    write_posts(fixture_posts(), out);
    log << "demo-fixture: wrote " << fixture_posts().size() << " posts to " << out.string() << '\n';
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"redlens: feature extraction and comparison reports for advice-forum post dumps"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string fixture_out;
    std::string simd_backend;
    app.add_option("--simd", simd_backend, "Force a kernel backend (scalar, avx2, neon)");

    auto add_embedding = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.embedding.seed, "Random seed for embedding and autoencoder training")
            ->capture_default_str();
        sub->add_option("--dim", cfg.embedding.dim, "Document vector dimensionality")->capture_default_str();
        sub->add_option("--epochs", cfg.embedding.epochs, "Document vector training epochs")->capture_default_str();
        sub->add_option("--negative", cfg.embedding.negative_samples, "Negative samples per word")
            ->capture_default_str();
        sub->add_option("--min-count", cfg.embedding.min_word_count, "Minimum word frequency")->capture_default_str();
        sub->add_option("--ae-epochs", cfg.autoencoder.max_epochs, "Autoencoder epoch budget")->capture_default_str();
    };

    auto* extract = app.add_subcommand("extract", "Compute the feature table for one or more JSONL dumps");
    extract->add_option("--in", cfg.inputs, "Input JSONL file(s)")->required();
    extract->add_option("--lex", cfg.lexicon_dir, "Lexicon directory")->required();
    extract->add_option("--out", cfg.output_dir, "Output directory")->required();
    extract->add_option("--threads", cfg.threads, "Workers for per-post features")->capture_default_str();
    add_embedding(extract);

    auto* report = app.add_subcommand("report", "Build comparison tables from an extract run");
    report->add_option("--run", cfg.run_dir, "Directory written by extract")->required();
    report->add_option("--lex", cfg.lexicon_dir, "Lexicon directory")->required();
    report->add_option("--out", cfg.output_dir, "Output directory (default: the run directory)");
    report->add_option("--top-k", cfg.top_k, "Rows per unique-post and noun/verb table")->capture_default_str();
    report->add_flag("--full-text", cfg.pos_full_text, "Tag full documents instead of titles (needs --in)");
    report->add_option("--in", cfg.inputs, "Input JSONL file(s), for --full-text");

    auto* train = app.add_subcommand("train-embeddings", "Train document vectors and the autoencoder only");
    train->add_option("--in", cfg.inputs, "Input JSONL file(s)")->required();
    train->add_option("--lex", cfg.lexicon_dir, "Lexicon directory (stopwords)")->required();
    train->add_option("--out", cfg.output_dir, "Output directory")->required();
    add_embedding(train);

    auto* demo = app.add_subcommand("demo-fixture", "Write the bundled fixture corpus as JSONL");
    demo->add_option("--out", fixture_out, "Output JSONL path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        cfg.autoencoder.seed = cfg.embedding.seed;
        if (!simd_backend.empty()) {
            if (simd_backend == "scalar") {
                simd::set_backend(simd::Backend::Scalar);
            } else if (simd_backend == "avx2") {
                simd::set_backend(simd::Backend::Avx2);
            } else if (simd_backend == "neon") {
                simd::set_backend(simd::Backend::Neon);
            } else {
                throw UsageError("unknown --simd backend '" + simd_backend + "'");
            }
        }
        if (cfg.top_k == 0) {
            throw UsageError("--top-k must be at least 1");
        }
        if (*extract) {
            cfg.embedding.validate();
            cmd_extract(cfg, err);
        } else if (*report) {
            if (cfg.pos_full_text && cfg.inputs.empty()) {
                throw UsageError("--full-text needs --in");
            }
            cmd_report(cfg, err);
        } else if (*train) {
            cfg.embedding.validate();
            cmd_train_embeddings(cfg, err);
        } else if (*demo) {
            cmd_demo_fixture(fixture_out, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const ArgumentError& e) {
        // a library precondition reached from user input: the configuration
        if (std::string(e.what()).find("embedding:") != std::string::npos) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        }
        err << "internal error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

} // namespace redlens::cli
