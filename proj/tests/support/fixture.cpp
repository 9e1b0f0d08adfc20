#include "fixture.hpp"

#include "redlens/cli.hpp"

#include "synthetic.hpp"

namespace redlens::testing {

EmbeddingConfig small_embedding_config()
{
    EmbeddingConfig cfg;
    cfg.dim = 16;
    cfg.epochs = 20;
    return cfg;
}

const ExtractResult& fixture_extract()
{
    static const ExtractResult result =
        extract_features(cli::fixture_posts(), bundled_lexicons(), small_embedding_config(), AutoencoderConfig{});
    return result;
}

ReportInputs fixture_report_inputs(std::size_t top_k)
{
    const auto posts = cli::fixture_posts();
    ReportInputs in;
    in.rows = fixture_extract().rows;
    in.top_k = top_k;
    in.pos_lexicon = &bundled_lexicons().pos;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        in.rows[i].flair = posts[i].flair;
        in.titles[posts[i].id] = posts[i].title;
        in.pos_texts[posts[i].subreddit].push_back(posts[i].title);
    }
    return in;
}

} // namespace redlens::testing
