#include "synthetic.hpp"

#include <random>

#ifndef REDLENS_LEXICON_DIR
#error "REDLENS_LEXICON_DIR must point at the bundled lexicons"
#endif

namespace redlens::testing {

std::filesystem::path lexicon_dir()
{
    return REDLENS_LEXICON_DIR;
}

const LexiconBundle& bundled_lexicons()
{
    static const LexiconBundle bundle = load_lexicon_bundle(lexicon_dir());
    return bundle;
}

Post make_post(std::string id, std::string subreddit, std::string title, std::string body,
               std::optional<std::string> flair)
{
    Post p;
    p.id = std::move(id);
    p.subreddit = std::move(subreddit);
    p.title = std::move(title);
    p.body = std::move(body);
    p.upvote_ratio = 0.9;
    p.flair = std::move(flair);
    return p;
}

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items)
{
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

const std::vector<std::string> kFiller = {
    "We had a long talk about chores last night.",
    "My roommate left the dishes in the sink again.",
    "I waited 20 minutes for the bus and missed my shift.",
    "The apartment is in room 34B on floor 2.",
    "I'm 25 and still paying off loans.",
    "We have been together for 3 years.",
    "She said it was fine but it clearly was not.",
    "I paid 40 dollars for dinner and nobody thanked me.",
    "The meeting ran 15 min over and my boss was annoyed.",
    "He texted me at 11 pm asking for money.",
    "Our lease ends in 2 months.",
    "Am I wrong to feel upset about this?",
};

std::string planted_span(std::mt19937_64& rng, const PlantedDisclosure& d)
{
    const std::string age = std::to_string(d.age);
    std::string marker = std::string(gender_code(d.gender));
    if (d.gender == Gender::Nonbinary) {
        marker = "nb";
    }
    const bool upper = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    if (upper) {
        for (auto& c : marker) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
    }
    if (d.format == "paren") {
        return "I (" + age + marker + ")";
    }
    if (d.format == "bracket") {
        return "I [" + age + marker + "]";
    }
    if (d.format == "bare") {
        return "I " + age + marker;
    }
    return "I " + marker + age;
}

} // namespace

DemographicCorpus demographic_corpus(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::vector<std::string> formats = {"paren", "bracket", "bare", "gender_first"};
    const std::vector<Gender> genders = {Gender::Female, Gender::Male, Gender::Female, Gender::Male,
                                         Gender::Nonbinary};
    DemographicCorpus corpus;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = "d" + std::to_string(i);
        std::string body;
        const int sentences = std::uniform_int_distribution<int>(2, 6)(rng);
        for (int s = 0; s < sentences; ++s) {
            body += pick(rng, kFiller) + " ";
        }
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.6) {
            PlantedDisclosure d;
            d.age = std::uniform_int_distribution<int>(13, 99)(rng);
            d.gender = pick(rng, genders);
            d.format = pick(rng, formats);
            body = planted_span(rng, d) + " need advice. " + body;
            corpus.planted[id] = d;
        }
        corpus.posts.push_back(make_post(id, i % 2 == 0 ? "AmItheAsshole" : "relationships",
                                         "Question number " + std::to_string(i % 7), body));
    }
    return corpus;
}

ClusterCorpus two_cluster_corpus(std::size_t per_cluster, std::uint64_t seed, bool with_outlier)
{
    // Each cluster draws from its own Zipf-weighted topic vocabulary; 40% of
    // all tokens come from a shared pool of common words. The outlier is
    // off-topic but still uses the common words, like a real stray post.
    constexpr int kTopicWords = 150;
    constexpr int kCommonWords = 30;
    constexpr int kOutlierWords = 6;
    constexpr int kLength = 40;
    auto zipf = [](int n) {
        std::vector<double> w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            w[static_cast<std::size_t>(i)] = 1.0 / (i + 1);
        }
        return std::discrete_distribution<int>(w.begin(), w.end());
    };
    auto topic = zipf(kTopicWords);
    auto common = zipf(kCommonWords);
    auto off_topic = zipf(kOutlierWords);
    std::bernoulli_distribution use_common(0.4);
    std::bernoulli_distribution outlier_common(0.6);

    std::mt19937_64 rng(seed);
    ClusterCorpus corpus;
    const char* prefix[] = {"home", "wedding"};
    for (std::size_t i = 0; i < 2 * per_cluster; ++i) {
        const int c = static_cast<int>(i % 2);
        std::string text;
        for (int w = 0; w < kLength; ++w) {
            text += use_common(rng) ? "common" + std::to_string(common(rng))
                                    : prefix[c] + std::to_string(topic(rng));
            text += ' ';
        }
        text.pop_back();
        corpus.documents.push_back(Document{"c" + std::to_string(i), text});
        corpus.cluster.push_back(c);
    }
    if (with_outlier) {
        std::string text;
        for (int w = 0; w < kLength; ++w) {
            text += outlier_common(rng) ? "common" + std::to_string(common(rng))
                                        : "tractor" + std::to_string(off_topic(rng));
            text += ' ';
        }
        text.pop_back();
        corpus.outlier_id = "outlier";
        corpus.documents.push_back(Document{corpus.outlier_id, text});
        corpus.cluster.push_back(-1);
    }
    return corpus;
}

std::vector<std::string> planted_pos_titles()
{
    return {
        "He tells my sister",       // tell, sister
        "She told my boyfriend",    // tell, boyfriend
        "I want to tell him",       // want, tell
        "Telling my boyfriend",     // tell, boyfriend
        "They told us",             // tell
        "My boyfriend wants it",    // want, boyfriend
        "We want my boyfriend",     // want, boyfriend
        "My sister and I",          // sister
    };
}

} // namespace redlens::testing
