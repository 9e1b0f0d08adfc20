#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redlens/corpus.hpp"
#include "redlens/csv.hpp"
#include "redlens/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace redlens;

namespace {

const char* kLine =
    R"({"id":"a1","title":"AITA for X","selftext":"story","subreddit":"AmItheAsshole","gilded":0,)"
    R"("num_comments":539,"score":4430,"upvote_ratio":0.96,"link_flair_text":"not","created_utc":1600000000})";

std::string error_of(std::string_view text)
{
    try {
        parse_posts(text, "posts.jsonl");
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("csv escaping and parsing round trip")
{
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv::escape("two\nlines") == "\"two\nlines\"");

    std::ostringstream out;
    csv::write_row(out, {"x", "a,b", "q\"q", ""});
    csv::write_row(out, {"line\nbreak", "2"});
    const auto rows = csv::parse(out.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"x", "a,b", "q\"q", ""});
    CHECK(rows[1] == std::vector<std::string>{"line\nbreak", "2"});
}

TEST_CASE("csv parse skips comment lines and format_real is shortest round trip")
{
    const auto rows = csv::parse("# header comment\na,b\n1,2\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "a");
    CHECK(csv::format_real(0.1) == "0.1");
    CHECK(csv::format_real(-0.0) == "0");
    CHECK(std::stod(csv::format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("parse_posts reads the documented fields")
{
    const auto posts = parse_posts(kLine);
    REQUIRE(posts.size() == 1);
    const Post& p = posts[0];
    CHECK(p.id == "a1");
    CHECK(p.title == "AITA for X");
    CHECK(p.body == "story");
    CHECK(p.subreddit == "AmItheAsshole");
    CHECK(p.num_comments == 539);
    CHECK(p.score == 4430);
    CHECK(p.upvote_ratio == doctest::Approx(0.96));
    CHECK(p.created_utc == 1600000000);
    REQUIRE(p.flair.has_value());
    CHECK(*p.flair == "not");
}

TEST_CASE("parse_posts edge cases")
{
    CHECK(parse_posts("").empty());
    CHECK(parse_posts("\n\n").empty());

    SUBCASE("null flair is no flair")
    {
        const auto posts = parse_posts(
            R"({"id":"b","title":"t","selftext":"","subreddit":"s","gilded":0,"num_comments":0,"score":1,"upvote_ratio":1,"link_flair_text":null,"created_utc":1})");
        REQUIRE(posts.size() == 1);
        CHECK_FALSE(posts[0].flair.has_value());
    }
    SUBCASE("duplicate id names line 2")
    {
        const std::string text = std::string(kLine) + "\n" + kLine + "\n";
        const auto msg = error_of(text);
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("a1") != std::string::npos);
    }
    SUBCASE("malformed json names the line")
    {
        const std::string text = std::string(kLine) + "\n{not json\n";
        CHECK(error_of(text).find("line 2") != std::string::npos);
    }
    SUBCASE("upvote ratio out of range")
    {
        std::string line = kLine;
        line.replace(line.find("0.96"), 4, "1.50");
        CHECK(error_of(line).find("upvote_ratio") != std::string::npos);
    }
    SUBCASE("empty title rejected")
    {
        std::string line = kLine;
        line.replace(line.find("AITA for X"), 10, "");
        CHECK_FALSE(error_of(line).empty());
    }
    SUBCASE("negative counts rejected")
    {
        std::string line = kLine;
        line.replace(line.find("539"), 3, "-1");
        CHECK_FALSE(error_of(line).empty());
    }
}

TEST_CASE("posts survive a JSONL round trip")
{
    auto posts = parse_posts(kLine);
    posts.push_back(posts[0]);
    posts[1].id = "a2";
    posts[1].flair.reset();
    posts[1].body = "line one\nline \"two\" \xC3\xA9";
    const auto path = std::filesystem::temp_directory_path() / "redlens_roundtrip.jsonl";
    write_posts(posts, path);
    CHECK(load_posts(path) == posts);
    std::filesystem::remove(path);
}

TEST_CASE("load_posts on a missing file is a data error")
{
    CHECK_THROWS_AS(load_posts("/nonexistent/posts.jsonl"), DataError);
}

TEST_CASE("make_document concatenates title and body")
{
    Post p;
    p.id = "x";
    p.title = "A";
    p.body = "B";
    CHECK(make_document(p).text == "A B");
    CHECK(make_document(p).post_id == "x");
    p.body.clear();
    CHECK(make_document(p).text == "A");
    p.title = "AITA?";
    p.body = "I (34F) did X";
    CHECK(make_document(p).text == "AITA? I (34F) did X");
}

TEST_CASE("gender codes")
{
    CHECK(gender_code(Gender::Female) == "f");
    CHECK(gender_code(Gender::Male) == "m");
    CHECK(gender_code(Gender::Nonbinary) == "n");
    CHECK(gender_code(Gender::Unknown) == "unknown");
    for (auto g : {Gender::Female, Gender::Male, Gender::Nonbinary, Gender::Unknown}) {
        CHECK(parse_gender(gender_code(g)) == g);
    }
}

TEST_CASE("features csv")
{
    FeatureRow a;
    a.id = "p1";
    a.subreddit = "AmItheAsshole";
    a.gilded = 1;
    a.num_comments = 10;
    a.score = 100;
    a.upvote_ratio = 0.5;
    a.afinn_score = -3;
    a.word_count = 12;
    a.afinn_adjusted = -0.25;
    a.vader_compound = -0.4;
    a.vader_neg = 0.2;
    a.vader_pos = 0.1;
    a.masc_words = 2;
    a.fem_words = 1;
    a.cosine_similarity = 0.97;
    a.op_demographics = "34,f";
    a.op_age = 34;
    a.op_gender = Gender::Female;

    FeatureRow b;
    b.id = "p2";
    b.subreddit = "relationships";

    SUBCASE("zero rows is just the header")
    {
        std::ostringstream out;
        write_features_csv({}, out);
        const auto rows = csv::parse(out.str());
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].size() == std::size(kFeatureColumns));
        CHECK(rows[0].size() == 18);
        for (std::size_t i = 0; i < rows[0].size(); ++i) {
            CHECK(rows[0][i] == kFeatureColumns[i]);
        }
    }
    SUBCASE("unknown gender cell")
    {
        std::ostringstream out;
        write_features_csv({b}, out);
        const auto rows = csv::parse(out.str());
        REQUIRE(rows.size() == 2);
        CHECK(rows[1].size() == 18);
        CHECK(rows[1][17] == "unknown");
        CHECK(rows[1][16].empty());
        CHECK(rows[1][15].empty());
    }
    SUBCASE("two rows keep input order and round trip")
    {
        std::ostringstream out;
        write_features_csv({a, b}, out, {"redlens test", "seed: 1"});
        const std::string text = out.str();
        CHECK(text.rfind("# redlens test\n# seed: 1\n", 0) == 0);
        const auto parsed = parse_features_csv(text);
        REQUIRE(parsed.size() == 2);
        CHECK(parsed[0].id == "p1");
        CHECK(parsed[1].id == "p2");
        CHECK(parsed[0].op_demographics == "34,f");
        CHECK(parsed[0].op_age == 34);
        CHECK(parsed[0].op_gender == Gender::Female);
        CHECK(parsed[0].afinn_adjusted == -0.25);
        CHECK(parsed[0].cosine_similarity == 0.97);
        CHECK(parsed[1].op_gender == Gender::Unknown);
        CHECK_FALSE(parsed[1].op_age.has_value());
    }
    SUBCASE("wrong header rejected")
    {
        CHECK_THROWS_AS(parse_features_csv("id,subreddit\np1,x\n"), DataError);
    }
}
