#include "redlens/analytics.hpp"

#include "redlens/csv.hpp"
#include "redlens/error.hpp"
#include "redlens/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace redlens {
namespace {

std::string lowercase(std::string s)
{
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return s;
}

std::string flair_key(const FeatureRow& r)
{
    return r.flair ? lowercase(*r.flair) : std::string("(none)");
}

int sign_of(double v)
{
    return (v > 0) - (v < 0);
}

std::string fixed(double v, int decimals = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1); // no "-0.0000"
    }
    return s;
}

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void render(std::ostringstream& out) const
    {
        std::vector<std::size_t> width(header.size(), 0);
        auto widen = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], cells[i].size());
            }
        };
        widen(header);
        for (const auto& r : rows) {
            widen(r);
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string cell = cells[i];
                if (i + 1 < cells.size()) {
                    cell.resize(width[i], ' ');
                    cell += "  ";
                }
                s += cell;
            }
            while (!s.empty() && s.back() == ' ') {
                s.pop_back();
            }
            out << "  " << s << '\n';
        };
        line(header);
        std::string rule;
        for (std::size_t i = 0; i < width.size(); ++i) {
            rule += std::string(width[i], '-');
            if (i + 1 < width.size()) {
                rule += "  ";
            }
        }
        out << "  " << rule << '\n';
        for (const auto& r : rows) {
            line(r);
        }
    }

    void write_csv(const std::filesystem::path& path, const std::vector<std::string>& preamble) const
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + path.string());
        }
        for (const auto& p : preamble) {
            out << "# " << p << '\n';
        }
        csv::write_row(out, header);
        for (const auto& r : rows) {
            csv::write_row(out, r);
        }
    }
};

const std::vector<std::string>& mean_features()
{
    static const std::vector<std::string> names = {
        "num_comments", "score",          "upvote_ratio", "word_count", "afinn_score",       "afinn_adjusted",
        "vader_compound", "vader_neg",    "vader_pos",    "cosine_similarity", "masc_words", "fem_words",
    };
    return names;
}

// The report's tables, shared by the text and CSV renderings.
struct ReportTables {
    TextTable means, disclosure, flair_share, sentiment, flair_sentiment, disagreement, unique, nouns, verbs, pearson;
};

ReportTables build_tables(const ComparisonReport& r)
{
    ReportTables t;

    t.means.header = {"feature"};
    for (const auto& s : r.subreddits) {
        t.means.header.push_back(s);
    }
    auto add_means_row = [&](const std::string& label, auto&& cell) {
        std::vector<std::string> row{label};
        for (const auto& m : r.means) {
            row.push_back(cell(m));
        }
        t.means.rows.push_back(std::move(row));
    };
    add_means_row("posts", [](const SubredditMeans& m) { return std::to_string(m.posts); });
    add_means_row("total_gilded", [](const SubredditMeans& m) { return std::to_string(m.total_gilded); });
    for (const auto& f : mean_features()) {
        add_means_row(f, [&](const SubredditMeans& m) { return fixed(m.means.at(f), 2); });
    }
    add_means_row("median_age", [](const SubredditMeans& m) {
        return m.median_age ? fixed(*m.median_age, 0) : std::string("n/a");
    });

    t.disclosure.header = {"subreddit", "both", "only_age", "only_gender", "none"};
    for (const auto& d : r.disclosure) {
        t.disclosure.rows.push_back({d.subreddit, std::to_string(d.both), std::to_string(d.only_age),
                                     std::to_string(d.only_gender), std::to_string(d.none)});
    }

    t.flair_share.header = {"subreddit", "OP_gender", "flair", "count", "share"};
    for (const auto& f : r.flair_share) {
        t.flair_share.rows.push_back({f.subreddit, f.gender, f.flair, std::to_string(f.count), fixed(f.share)});
    }

    t.sentiment.header = {"subreddit", "field", "count", "avg", "min", "max"};
    for (const auto* table : {&r.afinn_adjusted, &r.vader_compound}) {
        for (const auto& g : *table) {
            t.sentiment.rows.push_back(
                {g.group_key, g.field, std::to_string(g.count), fixed(g.mean), fixed(g.min), fixed(g.max)});
        }
    }

    t.flair_sentiment.header = {"subreddit", "flair", "count", "mean", "min", "max"};
    for (const auto& g : r.afinn_adjusted_by_flair) {
        auto bar = g.group_key.find('|');
        t.flair_sentiment.rows.push_back({g.group_key.substr(0, bar), g.group_key.substr(bar + 1),
                                          std::to_string(g.count), fixed(g.mean), fixed(g.min), fixed(g.max)});
    }

    t.disagreement.header = {"scope", "rows", "disagreements", "rate", "vader_pos_afinn_neg", "vader_neg_afinn_pos",
                             "rate_zero_agrees"};
    auto add_dis = [&](const std::string& scope, const Disagreement& d) {
        t.disagreement.rows.push_back({scope, std::to_string(d.rows), std::to_string(d.disagreements), fixed(d.rate),
                                       fixed(d.vader_pos_afinn_neg), fixed(d.vader_neg_afinn_pos),
                                       fixed(d.rate_zero_agrees)});
    };
    add_dis("all", r.disagreement);
    for (const auto& [s, d] : r.disagreement_by_subreddit) {
        add_dis(s, d);
    }

    t.unique.header = {"subreddit", "rank", "id", "cosine_similarity", "title"};
    for (const auto& [s, posts] : r.unique_posts) {
        for (std::size_t i = 0; i < posts.size(); ++i) {
            auto title = r.titles.find(posts[i].post_id);
            t.unique.rows.push_back({s, std::to_string(i + 1), posts[i].post_id, fixed(posts[i].similarity, 6),
                                     title != r.titles.end() ? title->second : std::string()});
        }
    }

    for (auto [table, source] : {std::pair{&t.nouns, &r.top_nouns}, std::pair{&t.verbs, &r.top_verbs}}) {
        table->header = {"subreddit", "base", "count"};
        for (const auto& [s, entries] : *source) {
            for (const auto& e : entries) {
                table->rows.push_back({s, e.base, std::to_string(e.count)});
            }
        }
    }

    t.pearson.header = {"feature"};
    for (const char* m : kEngagementMetrics) {
        t.pearson.header.emplace_back(m);
    }
    for (const char* f : kLanguageFeatures) {
        std::vector<std::string> row{f};
        for (const char* m : kEngagementMetrics) {
            auto cell = std::find_if(r.pearson.begin(), r.pearson.end(),
                                     [&](const PearsonCell& c) { return c.feature == f && c.metric == m; });
            row.push_back(cell != r.pearson.end() && cell->r ? fixed(*cell->r) : std::string("n/a"));
        }
        t.pearson.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace

FeatureRow assemble_features(const Post& post, const LexiconBundle& lexicons, double cosine_similarity)
{
    const Document doc = make_document(post);
    const auto tokens = tokenize(doc.text);

    FeatureRow row;
    row.id = post.id;
    row.subreddit = post.subreddit;
    row.flair = post.flair;
    row.gilded = post.gilded;
    row.num_comments = post.num_comments;
    row.score = post.score;
    row.upvote_ratio = post.upvote_ratio;
    row.word_count = static_cast<std::int64_t>(tokens.size());
    row.afinn_score = afinn_score(tokens, lexicons.afinn);
    row.afinn_adjusted = afinn_adjusted(row.afinn_score, row.word_count);
    const auto valence = valence_scores(doc.text, tokens, lexicons.valence);
    row.vader_compound = valence.compound;
    row.vader_neg = valence.neg;
    row.vader_pos = valence.pos;
    row.masc_words = static_cast<std::int64_t>(count_matches(tokens, lexicons.gender.masculine));
    row.fem_words = static_cast<std::int64_t>(count_matches(tokens, lexicons.gender.feminine));
    row.cosine_similarity = cosine_similarity;
    const auto demo = extract_self_demographics(doc.text);
    row.op_demographics = format_demographics(demo);
    row.op_age = demo.age;
    row.op_gender = demo.gender;
    return row;
}

std::vector<std::string> envelope_warnings(const FeatureRow& row)
{
    std::vector<std::string> out;
    auto check = [&](const char* name, double v, double lo, double hi) {
        if (v < lo || v > hi) {
            out.push_back(row.id + ": " + name + " = " + csv::format_real(v) + " outside typical range [" +
                          csv::format_real(lo) + ", " + csv::format_real(hi) + "]");
        }
    };
    check("gilded", static_cast<double>(row.gilded), 0, 4);
    check("num_comments", static_cast<double>(row.num_comments), 0, 6821);
    check("score", static_cast<double>(row.score), 1, 35188);
    check("upvote_ratio", row.upvote_ratio, 0.55, 1.0);
    check("afinn_score", static_cast<double>(row.afinn_score), -98, 133);
    check("word_count", static_cast<double>(row.word_count), 74, 6494);
    check("afinn_adjusted", row.afinn_adjusted, -22.047244, 27.108434);
    check("vader_neg", row.vader_neg, 0, 0.293);
    check("vader_pos", row.vader_pos, 0.011, 0.29);
    check("masc_words", static_cast<double>(row.masc_words), 0, 210);
    check("fem_words", static_cast<double>(row.fem_words), 0, 337);
    return out;
}

bool satisfies_hard_invariants(const FeatureRow& row)
{
    const bool gender_ok = row.op_gender == Gender::Female || row.op_gender == Gender::Male ||
                           row.op_gender == Gender::Nonbinary || row.op_gender == Gender::Unknown;
    return row.word_count >= 0 && std::abs(row.vader_compound) <= 1.0 && gender_ok;
}

ExtractResult extract_features(const std::vector<Post>& posts, const LexiconBundle& lexicons,
                               const EmbeddingConfig& embedding, const AutoencoderConfig& autoencoder,
                               unsigned threads)
{
    std::vector<Document> docs;
    docs.reserve(posts.size());
    for (const auto& p : posts) {
        docs.push_back(make_document(p));
    }

    ExtractResult result;
    result.embedding = embed_corpus(docs, lexicons.stopwords, embedding, autoencoder);

    result.rows.resize(posts.size());
    std::vector<std::vector<DemographicMention>> mentions(posts.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            result.rows[i] =
                assemble_features(posts[i], lexicons, result.embedding.documents[i].reconstruction_similarity);
            mentions[i] = find_demographic_mentions(docs[i].text);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(posts.size(), 1));
    if (workers == 1) {
        work(0, posts.size());
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (posts.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(posts.size(), begin + chunk);
            if (begin < end) {
                pool.emplace_back(work, begin, end);
            }
        }
    }

    for (std::size_t i = 0; i < posts.size(); ++i) {
        for (auto& m : mentions[i]) {
            result.mentions.push_back({posts[i].id, std::move(m)});
        }
    }
    return result;
}

std::vector<GroupSummary> group_summary(const std::vector<FeatureRow>& rows, const KeySelector& key,
                                        const FieldSelector& field, const std::string& field_name)
{
    if (rows.empty()) {
        throw ArgumentError("group_summary: no rows");
    }
    std::map<std::string, std::vector<double>> groups;
    for (const auto& r : rows) {
        if (auto v = field(r)) {
            groups[key(r)].push_back(*v);
        }
    }
    std::vector<GroupSummary> out;
    for (const auto& [k, values] : groups) {
        GroupSummary g{k, field_name, values.size(), 0.0, values.front(), values.front()};
        double sum = 0.0;
        for (double v : values) {
            sum += v;
            g.min = std::min(g.min, v);
            g.max = std::max(g.max, v);
        }
        g.mean = std::clamp(sum / static_cast<double>(values.size()), g.min, g.max);
        out.push_back(std::move(g));
    }
    return out;
}

FieldSelector field_selector(const std::string& name)
{
    using R = const FeatureRow&;
    static const std::map<std::string, FieldSelector> table = {
        {"gilded", [](R r) { return std::optional<double>(static_cast<double>(r.gilded)); }},
        {"num_comments", [](R r) { return std::optional<double>(static_cast<double>(r.num_comments)); }},
        {"score", [](R r) { return std::optional<double>(static_cast<double>(r.score)); }},
        {"upvote_ratio", [](R r) { return std::optional<double>(r.upvote_ratio); }},
        {"afinn_score", [](R r) { return std::optional<double>(static_cast<double>(r.afinn_score)); }},
        {"word_count", [](R r) { return std::optional<double>(static_cast<double>(r.word_count)); }},
        {"afinn_adjusted", [](R r) { return std::optional<double>(r.afinn_adjusted); }},
        {"vader_compound", [](R r) { return std::optional<double>(r.vader_compound); }},
        {"vader_neg", [](R r) { return std::optional<double>(r.vader_neg); }},
        {"vader_pos", [](R r) { return std::optional<double>(r.vader_pos); }},
        {"masc_words", [](R r) { return std::optional<double>(static_cast<double>(r.masc_words)); }},
        {"fem_words", [](R r) { return std::optional<double>(static_cast<double>(r.fem_words)); }},
        {"cosine_similarity", [](R r) { return std::optional<double>(r.cosine_similarity); }},
        {"OP_age",
         [](R r) { return r.op_age ? std::optional<double>(*r.op_age) : std::optional<double>(); }},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        throw ArgumentError("unknown feature '" + name + "'");
    }
    return it->second;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size()) {
        throw ArgumentError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw ArgumentError("pearson: need at least 2 points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ArgumentError("pearson: zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Disagreement disagreement_rate(const std::vector<FeatureRow>& rows)
{
    if (rows.empty()) {
        throw ArgumentError("disagreement_rate: no rows");
    }
    Disagreement d;
    d.rows = rows.size();
    std::size_t vp_an = 0, vn_ap = 0, loose = 0;
    for (const auto& r : rows) {
        const int a = sign_of(r.afinn_adjusted);
        const int v = sign_of(r.vader_compound);
        if (a != v) {
            ++d.disagreements;
            if (a != 0 && v != 0) {
                ++loose;
            }
        }
        vp_an += (v > 0 && a < 0) ? 1 : 0;
        vn_ap += (v < 0 && a > 0) ? 1 : 0;
    }
    const double n = static_cast<double>(rows.size());
    d.rate = static_cast<double>(d.disagreements) / n;
    d.vader_pos_afinn_neg = static_cast<double>(vp_an) / n;
    d.vader_neg_afinn_pos = static_cast<double>(vn_ap) / n;
    d.rate_zero_agrees = static_cast<double>(loose) / n;
    return d;
}

std::optional<double> median_lower(std::vector<double> values)
{
    if (values.empty()) {
        return std::nullopt;
    }
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

DisclosureCounts disclosure_counts(const std::vector<FeatureRow>& rows, const std::string& subreddit)
{
    DisclosureCounts c;
    c.subreddit = subreddit;
    for (const auto& r : rows) {
        if (r.subreddit != subreddit) {
            continue;
        }
        const bool age = r.op_age.has_value();
        const bool gender = r.op_gender != Gender::Unknown;
        if (age && gender) {
            ++c.both;
        } else if (age) {
            ++c.only_age;
        } else if (gender) {
            ++c.only_gender;
        } else {
            ++c.none;
        }
    }
    return c;
}

ComparisonReport compare_report(const ReportInputs& in)
{
    if (in.rows.empty()) {
        throw ArgumentError("compare_report: no rows");
    }
    ComparisonReport rep;
    rep.top_k = in.top_k;
    rep.titles = in.titles;

    std::set<std::string> subs;
    for (const auto& r : in.rows) {
        subs.insert(r.subreddit);
    }
    rep.subreddits.assign(subs.begin(), subs.end());

    std::map<std::string, std::vector<FeatureRow>> by_sub;
    for (const auto& r : in.rows) {
        by_sub[r.subreddit].push_back(r);
    }

    for (const auto& s : rep.subreddits) {
        const auto& rows = by_sub[s];
        SubredditMeans m;
        m.subreddit = s;
        m.posts = rows.size();
        std::vector<double> ages;
        for (const auto& r : rows) {
            m.total_gilded += r.gilded;
            if (r.op_age) {
                ages.push_back(*r.op_age);
            }
        }
        for (const auto& f : mean_features()) {
            auto sel = field_selector(f);
            double sum = 0.0;
            for (const auto& r : rows) {
                sum += *sel(r);
            }
            m.means[f] = sum / static_cast<double>(rows.size());
        }
        m.median_age = median_lower(std::move(ages));
        rep.means.push_back(std::move(m));

        rep.disclosure.push_back(disclosure_counts(in.rows, s));
        rep.disagreement_by_subreddit[s] = disagreement_rate(rows);

        std::map<std::string, std::map<std::string, std::size_t>> flair_by_gender;
        for (const auto& r : rows) {
            ++flair_by_gender[std::string(gender_code(r.op_gender))][flair_key(r)];
        }
        for (const auto& [g, flairs] : flair_by_gender) {
            std::size_t total = 0;
            for (const auto& [f, c] : flairs) {
                total += c;
            }
            for (const auto& [f, c] : flairs) {
                rep.flair_share.push_back({s, g, f, c, static_cast<double>(c) / static_cast<double>(total)});
            }
        }

        std::vector<DocEmbedding> emb;
        for (const auto& r : rows) {
            emb.push_back({r.id, {}, r.cosine_similarity});
        }
        rep.unique_posts[s] = rank_unique(emb, std::min(in.top_k, emb.size()));

        if (in.pos_lexicon != nullptr) {
            auto texts = in.pos_texts.find(s);
            const std::vector<std::string> empty;
            const auto& t = texts != in.pos_texts.end() ? texts->second : empty;
            auto nouns = frequency_table(t, PosTag::Noun, *in.pos_lexicon);
            auto verbs = frequency_table(t, PosTag::Verb, *in.pos_lexicon);
            nouns.resize(std::min(nouns.size(), in.top_k));
            verbs.resize(std::min(verbs.size(), in.top_k));
            rep.top_nouns[s] = std::move(nouns);
            rep.top_verbs[s] = std::move(verbs);
        }
    }

    auto by_subreddit = [](const FeatureRow& r) { return r.subreddit; };
    rep.afinn_adjusted = group_summary(in.rows, by_subreddit, field_selector("afinn_adjusted"), "afinn_adjusted");
    rep.vader_compound = group_summary(in.rows, by_subreddit, field_selector("vader_compound"), "vader_compound");
    rep.afinn_adjusted_by_flair = group_summary(
        in.rows, [](const FeatureRow& r) { return r.subreddit + "|" + flair_key(r); },
        field_selector("afinn_adjusted"), "afinn_adjusted");
    rep.disagreement = disagreement_rate(in.rows);

    for (const char* f : kLanguageFeatures) {
        for (const char* m : kEngagementMetrics) {
            auto fs = field_selector(f);
            auto ms = field_selector(m);
            std::vector<double> x, y;
            for (const auto& r : in.rows) {
                auto a = fs(r);
                auto b = ms(r);
                if (a && b) {
                    x.push_back(*a);
                    y.push_back(*b);
                }
            }
            PearsonCell cell{f, m, std::nullopt};
            try {
                cell.r = pearson(x, y);
            } catch (const ArgumentError&) {
                // too few points or a constant series: reported as n/a
            }
            rep.pearson.push_back(std::move(cell));
        }
    }
    return rep;
}

std::string ComparisonReport::to_text(const std::vector<std::string>& preamble) const
{
    const auto t = build_tables(*this);
    std::ostringstream out;
    for (const auto& p : preamble) {
        out << "# " << p << '\n';
    }
    out << "Subreddit comparison report (" << subreddits.size() << " subreddit"
        << (subreddits.size() == 1 ? "" : "s") << ", top-k " << top_k << ")\n";

    out << '\n' << kReportSections[0] << '\n';
    t.means.render(out);
    out << "  (means except posts, total_gilded and median_age; median uses the lower middle value)\n";

    out << '\n' << kReportSections[1] << '\n';
    t.disclosure.render(out);
    out << "\n  Share of each OP_gender group per flair\n";
    t.flair_share.render(out);

    out << '\n' << kReportSections[2] << '\n';
    t.sentiment.render(out);
    out << "\n  Adjusted AFINN by flair\n";
    t.flair_sentiment.render(out);
    out << "\n  AFINN/valence sign disagreement\n";
    t.disagreement.render(out);
    out << "  note: zero is its own sign class in `rate`; `rate_zero_agrees` counts a zero on either side as "
           "agreement.\n";

    out << '\n' << kReportSections[3] << '\n';
    t.unique.render(out);

    out << '\n' << kReportSections[4] << '\n';
    out << "  Nouns\n";
    t.nouns.render(out);
    out << "\n  Verbs\n";
    t.verbs.render(out);

    out << '\n' << kReportSections[5] << '\n';
    t.pearson.render(out);
    out << "  (sample Pearson r; n/a where a series is constant)\n";
    return out.str();
}

void ComparisonReport::write_csvs(const std::filesystem::path& dir, const std::vector<std::string>& preamble) const
{
    const auto t = build_tables(*this);
    t.means.write_csv(dir / "report_means.csv", preamble);
    t.disclosure.write_csv(dir / "report_disclosure.csv", preamble);
    t.flair_share.write_csv(dir / "report_flair_share.csv", preamble);
    t.sentiment.write_csv(dir / "report_sentiment.csv", preamble);
    t.flair_sentiment.write_csv(dir / "report_flair_sentiment.csv", preamble);
    t.disagreement.write_csv(dir / "report_disagreement.csv", preamble);
    t.unique.write_csv(dir / "report_unique.csv", preamble);
    t.nouns.write_csv(dir / "report_nouns.csv", preamble);
    t.verbs.write_csv(dir / "report_verbs.csv", preamble);
    t.pearson.write_csv(dir / "report_pearson.csv", preamble);
}

} // namespace redlens
