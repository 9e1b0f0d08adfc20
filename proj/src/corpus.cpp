#include "redlens/corpus.hpp"

#include "redlens/csv.hpp"
#include "redlens/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace redlens {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(std::string_view source, std::size_t line, const std::string& what)
{
    throw DataError(std::string(source) + ": line " + std::to_string(line) + ": " + what);
}

std::int64_t require_int(const json& obj, const char* key, std::string_view source, std::size_t line)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        fail_line(source, line, std::string("missing field '") + key + "'");
    }
    if (it->is_number_integer() || it->is_number_unsigned()) {
        return it->get<std::int64_t>();
    }
    if (it->is_number_float()) {
        double v = it->get<double>();
        if (v == static_cast<double>(static_cast<std::int64_t>(v))) {
            return static_cast<std::int64_t>(v);
        }
    }
    fail_line(source, line, std::string("field '") + key + "' is not an integer");
}

std::string require_string(const json& obj, const char* key, std::string_view source, std::size_t line)
{
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        fail_line(source, line, std::string("missing or non-string field '") + key + "'");
    }
    return it->get<std::string>();
}

std::int64_t parse_int_cell(const std::string& cell, std::string_view column, std::size_t row)
{
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size()) {
        throw DataError("features row " + std::to_string(row) + ": bad integer in " + std::string(column) + ": '" +
                        cell + "'");
    }
    return v;
}

double parse_real_cell(const std::string& cell, std::string_view column, std::size_t row)
{
    double v = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size()) {
        throw DataError("features row " + std::to_string(row) + ": bad number in " + std::string(column) + ": '" +
                        cell + "'");
    }
    return v;
}

} // namespace

std::string_view gender_code(Gender g)
{
    switch (g) {
    case Gender::Female:
        return "f";
    case Gender::Male:
        return "m";
    case Gender::Nonbinary:
        return "n";
    case Gender::Unknown:
        break;
    }
    return "unknown";
}

Gender parse_gender(std::string_view code)
{
    if (code == "f") {
        return Gender::Female;
    }
    if (code == "m") {
        return Gender::Male;
    }
    if (code == "n") {
        return Gender::Nonbinary;
    }
    if (code == "unknown") {
        return Gender::Unknown;
    }
    throw DataError("invalid gender code '" + std::string(code) + "'");
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Post> parse_posts(std::string_view jsonl, std::string_view source_name)
{
    std::vector<Post> posts;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < jsonl.size()) {
        auto eol = jsonl.find('\n', pos);
        std::string_view line = jsonl.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? jsonl.size() : eol + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
            continue;
        }

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            fail_line(source_name, line_no, std::string("malformed JSON: ") + e.what());
        }
        if (!obj.is_object()) {
            fail_line(source_name, line_no, "expected a JSON object");
        }

        Post p;
        p.id = require_string(obj, "id", source_name, line_no);
        if (p.id.empty()) {
            fail_line(source_name, line_no, "empty id");
        }
        p.created_utc = require_int(obj, "created_utc", source_name, line_no);
        p.subreddit = require_string(obj, "subreddit", source_name, line_no);
        p.title = require_string(obj, "title", source_name, line_no);
        if (p.title.empty()) {
            fail_line(source_name, line_no, "empty title");
        }
        if (auto it = obj.find("selftext"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) {
                fail_line(source_name, line_no, "field 'selftext' is not a string");
            }
            p.body = it->get<std::string>();
        }
        if (auto it = obj.find("gilded"); it != obj.end() && !it->is_null()) {
            p.gilded = require_int(obj, "gilded", source_name, line_no);
        }
        p.num_comments = require_int(obj, "num_comments", source_name, line_no);
        p.score = require_int(obj, "score", source_name, line_no);
        auto ratio = obj.find("upvote_ratio");
        if (ratio == obj.end() || !ratio->is_number()) {
            fail_line(source_name, line_no, "missing or non-numeric field 'upvote_ratio'");
        }
        p.upvote_ratio = ratio->get<double>();
        if (auto it = obj.find("link_flair_text"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) {
                fail_line(source_name, line_no, "field 'link_flair_text' is not a string");
            }
            p.flair = it->get<std::string>();
        }

        if (p.gilded < 0) {
            fail_line(source_name, line_no, "negative gilded count");
        }
        if (p.num_comments < 0) {
            fail_line(source_name, line_no, "negative num_comments");
        }
        if (!(p.upvote_ratio >= 0.0 && p.upvote_ratio <= 1.0)) {
            fail_line(source_name, line_no, "upvote_ratio outside [0,1]");
        }
        if (auto [it, inserted] = seen.emplace(p.id, line_no); !inserted) {
            fail_line(source_name, line_no,
                      "duplicate id '" + p.id + "' (first seen on line " + std::to_string(it->second) + ")");
        }
        posts.push_back(std::move(p));
    }
    return posts;
}

std::vector<Post> load_posts(const std::filesystem::path& path)
{
    return parse_posts(read_file(path), path.string());
}

std::string post_to_json(const Post& post)
{
    json obj = {
        {"id", post.id},
        {"created_utc", post.created_utc},
        {"subreddit", post.subreddit},
        {"title", post.title},
        {"selftext", post.body},
        {"gilded", post.gilded},
        {"num_comments", post.num_comments},
        {"score", post.score},
        {"upvote_ratio", post.upvote_ratio},
        {"link_flair_text", post.flair ? json(*post.flair) : json(nullptr)},
    };
    return obj.dump();
}

void write_posts(const std::vector<Post>& posts, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    for (const auto& p : posts) {
        out << post_to_json(p) << '\n';
    }
}

Document make_document(const Post& post)
{
    if (post.body.empty()) {
        return {post.id, post.title};
    }
    return {post.id, post.title + " " + post.body};
}

void write_features_csv(const std::vector<FeatureRow>& rows, std::ostream& out,
                        const std::vector<std::string>& preamble)
{
    for (const auto& line : preamble) {
        out << "# " << line << '\n';
    }
    csv::write_row(out, std::vector<std::string>(std::begin(kFeatureColumns), std::end(kFeatureColumns)));
    for (const auto& r : rows) {
        csv::write_row(out, {
                                r.id,
                                r.subreddit,
                                std::to_string(r.gilded),
                                std::to_string(r.num_comments),
                                std::to_string(r.score),
                                csv::format_real(r.upvote_ratio),
                                std::to_string(r.afinn_score),
                                std::to_string(r.word_count),
                                csv::format_real(r.afinn_adjusted),
                                csv::format_real(r.vader_compound),
                                csv::format_real(r.vader_neg),
                                csv::format_real(r.vader_pos),
                                std::to_string(r.masc_words),
                                std::to_string(r.fem_words),
                                csv::format_real(r.cosine_similarity),
                                r.op_demographics,
                                r.op_age ? std::to_string(*r.op_age) : std::string(),
                                std::string(gender_code(r.op_gender)),
                            });
    }
}

void write_features_csv(const std::vector<FeatureRow>& rows, const std::filesystem::path& path,
                        const std::vector<std::string>& preamble)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    write_features_csv(rows, out, preamble);
    if (!out) {
        throw DataError("write failed: " + path.string());
    }
}

std::vector<FeatureRow> parse_features_csv(std::string_view text)
{
    auto records = csv::parse(text);
    if (records.empty()) {
        throw DataError("features table is empty (no header)");
    }
    const auto& header = records.front();
    constexpr std::size_t ncols = std::size(kFeatureColumns);
    if (header.size() != ncols || !std::equal(header.begin(), header.end(), std::begin(kFeatureColumns))) {
        throw DataError("features table header does not match the expected 18 columns");
    }
    std::vector<FeatureRow> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& c = records[i];
        if (c.size() != ncols) {
            throw DataError("features row " + std::to_string(i) + ": expected " + std::to_string(ncols) +
                            " cells, got " + std::to_string(c.size()));
        }
        FeatureRow r;
        r.id = c[0];
        r.subreddit = c[1];
        r.gilded = parse_int_cell(c[2], kFeatureColumns[2], i);
        r.num_comments = parse_int_cell(c[3], kFeatureColumns[3], i);
        r.score = parse_int_cell(c[4], kFeatureColumns[4], i);
        r.upvote_ratio = parse_real_cell(c[5], kFeatureColumns[5], i);
        r.afinn_score = parse_int_cell(c[6], kFeatureColumns[6], i);
        r.word_count = parse_int_cell(c[7], kFeatureColumns[7], i);
        r.afinn_adjusted = parse_real_cell(c[8], kFeatureColumns[8], i);
        r.vader_compound = parse_real_cell(c[9], kFeatureColumns[9], i);
        r.vader_neg = parse_real_cell(c[10], kFeatureColumns[10], i);
        r.vader_pos = parse_real_cell(c[11], kFeatureColumns[11], i);
        r.masc_words = parse_int_cell(c[12], kFeatureColumns[12], i);
        r.fem_words = parse_int_cell(c[13], kFeatureColumns[13], i);
        r.cosine_similarity = parse_real_cell(c[14], kFeatureColumns[14], i);
        r.op_demographics = c[15];
        if (!c[16].empty()) {
            r.op_age = static_cast<int>(parse_int_cell(c[16], kFeatureColumns[16], i));
        }
        r.op_gender = parse_gender(c[17]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    try {
        return parse_features_csv(text);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace redlens
