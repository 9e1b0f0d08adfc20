#include "redlens/cli.hpp"

namespace redlens::cli {

std::vector<Post> fixture_posts()
{
    auto post = [](std::string id, std::int64_t created, std::string sub, std::string title, std::string body,
                   std::int64_t gilded, std::int64_t comments, std::int64_t score, double ratio,
                   std::optional<std::string> flair) {
        return Post{std::move(id), created, std::move(sub), std::move(title), std::move(body), gilded, comments,
                    score, ratio, std::move(flair)};
    };
    const std::string aita = "AmItheAsshole";
    const std::string rel = "relationships";
    return {
        post("f1", 1580000000, aita, "AITA for refusing to lend my sister money again?",
             "I (29F) lent my sister money three times last year and she never paid me back. "
             "She asked again for rent and I said no. My mom says I am being cruel and selfish. "
             "I feel terrible but I am tired of being used.",
             0, 412, 1830, 0.94, "Not the A-hole"),
        post("f2", 1580003600, aita, "AITA for skipping my friend's wedding?",
             "I (27M) told my friend months ago that I could not travel for the wedding because of work. "
             "He is now angry and says I ruined his day. I sent a nice gift and a long letter. "
             "I think he is overreacting but I feel bad.",
             1, 288, 960, 0.88, "Not the A-hole"),
        post("f3", 1580007200, aita, "AITA for telling my roommate to clean the kitchen?",
             "My roommate leaves dirty dishes in the sink for days. I asked him to clean the kitchen "
             "and he said I was rude. The kitchen smells awful and I am tired of cleaning after him.",
             0, 97, 310, 0.81, std::nullopt),
        post("f4", 1580010800, aita, "AITA for eating the last slice?", "", 0, 54, 120, 0.62, "Asshole"),
        post("f5", 1580014400, rel, "My boyfriend wants me to move across the country",
             "I (22F) have been with my boyfriend (28M) for two years. He got a great job offer and "
             "wants me to move with him. I love him but my family and my job are here. "
             "I am scared and confused and I do not want to lose him.",
             0, 156, 540, 0.97, "Relationships"),
        post("f6", 1580018000, rel, "Me (34M) with my wife (33F) of 5 years, she wants a dog",
             "My wife wants a dog and I do not. We live in a small apartment and both work long hours. "
             "I love her and want her to be happy but a dog is a big commitment.",
             0, 63, 180, 0.90, std::nullopt),
        post("f7", 1580021600, rel, "How do I get over a breakup?",
             "I [19f] broke up with my boyfriend last month after he cheated. I cannot stop thinking "
             "about him and I feel empty. My friends say it gets better but it does not feel better.",
             0, 201, 720, 0.98, "Breakups"),
        post("f8", 1580025200, rel, "Update: my girlfriend and I talked about money",
             "Update: I 26m finally talked with my girlfriend about money. It went well! She was happy "
             "that I was honest and we made a plan together. Thank you all for the great advice!",
             2, 88, 2400, 0.99, "Updates"),
    };
}

} // namespace redlens::cli
