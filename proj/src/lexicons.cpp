#include "redlens/lexicons.hpp"

#include "redlens/corpus.hpp"
#include "redlens/error.hpp"

#include <charconv>
#include <cmath>

namespace redlens {
namespace {

std::string_view trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_lowercase(std::string_view w)
{
    for (char c : w) {
        if (c >= 'A' && c <= 'Z') {
            return false;
        }
    }
    return true;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what)
{
    throw DataError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

// Calls fn(line_no, content) for every non-blank, non-comment line.
template <class Fn>
void for_each_entry(std::string_view text, Fn&& fn)
{
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (trim(line).empty() || trim(line).front() == '#') {
            continue;
        }
        fn(line_no, line);
    }
}

std::pair<std::string_view, std::string_view> split_tab(std::string_view line, std::string_view source,
                                                        std::size_t line_no)
{
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
        fail(source, line_no, "expected word<TAB>value");
    }
    auto word = line.substr(0, tab);
    auto value = trim(line.substr(tab + 1));
    if (word.empty() || value.empty()) {
        fail(source, line_no, "expected word<TAB>value");
    }
    if (!is_lowercase(word)) {
        fail(source, line_no, "word '" + std::string(word) + "' is not lowercase");
    }
    return {word, value};
}

} // namespace

std::string_view pos_tag_name(PosTag tag)
{
    switch (tag) {
    case PosTag::Noun:
        return "NOUN";
    case PosTag::Verb:
        return "VERB";
    case PosTag::Other:
        break;
    }
    return "OTHER";
}

WeightedLexicon parse_weighted_lexicon(std::string_view text, std::string_view source)
{
    WeightedLexicon lex;
    for_each_entry(text, [&](std::size_t line_no, std::string_view line) {
        auto [word, value] = split_tab(line, source, line_no);
        int weight = 0;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), weight);
        if (ec != std::errc() || end != value.data() + value.size()) {
            fail(source, line_no, "weight is not an integer");
        }
        if (weight < -5 || weight > 5 || weight == 0) {
            fail(source, line_no, "weight " + std::to_string(weight) + " outside [-5,5] or zero");
        }
        if (!lex.entries.emplace(std::string(word), weight).second) {
            fail(source, line_no, "duplicate word '" + std::string(word) + "'");
        }
    });
    if (lex.entries.empty()) {
        throw DataError(std::string(source) + ": empty lexicon");
    }
    return lex;
}

WeightedLexicon load_weighted_lexicon(const std::filesystem::path& path)
{
    return parse_weighted_lexicon(read_file(path), path.string());
}

ValenceLexicon parse_valence_lexicon(std::string_view text, std::string_view source)
{
    ValenceLexicon lex;
    for_each_entry(text, [&](std::size_t line_no, std::string_view line) {
        auto [word, value] = split_tab(line, source, line_no);
        double v = 0.0;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(v)) {
            fail(source, line_no, "valence is not a number");
        }
        if (!lex.entries.emplace(std::string(word), v).second) {
            fail(source, line_no, "duplicate word '" + std::string(word) + "'");
        }
    });
    if (lex.entries.empty()) {
        throw DataError(std::string(source) + ": empty lexicon");
    }
    return lex;
}

ValenceLexicon load_valence_lexicon(const std::filesystem::path& path)
{
    return parse_valence_lexicon(read_file(path), path.string());
}

WordSet parse_word_list(std::string_view text, std::string_view source)
{
    WordSet words;
    for_each_entry(text, [&](std::size_t line_no, std::string_view line) {
        auto w = trim(line);
        if (w.find_first_of(" \t") != std::string_view::npos) {
            fail(source, line_no, "expected one word per line");
        }
        if (!is_lowercase(w)) {
            fail(source, line_no, "word '" + std::string(w) + "' is not lowercase");
        }
        words.emplace(w);
    });
    return words;
}

WordSet load_word_list(const std::filesystem::path& path)
{
    return parse_word_list(read_file(path), path.string());
}

GenderLexicon make_gender_lexicon(WordSet masculine, WordSet feminine)
{
    if (masculine.empty() || feminine.empty()) {
        throw DataError("gender lexicon: word lists must be non-empty");
    }
    for (const auto& w : masculine) {
        if (feminine.contains(w)) {
            throw DataError("gender lexicon: '" + w + "' is in both masculine and feminine lists");
        }
    }
    return GenderLexicon{std::move(masculine), std::move(feminine)};
}

GenderLexicon load_gender_lexicon(const std::filesystem::path& masculine, const std::filesystem::path& feminine)
{
    return make_gender_lexicon(load_word_list(masculine), load_word_list(feminine));
}

PosLexicon parse_pos_lexicon(std::string_view text, std::string_view source)
{
    PosLexicon lex;
    for_each_entry(text, [&](std::size_t line_no, std::string_view line) {
        auto [word, value] = split_tab(line, source, line_no);
        PosTag tag;
        if (value == "NOUN") {
            tag = PosTag::Noun;
        } else if (value == "VERB") {
            tag = PosTag::Verb;
        } else if (value == "OTHER") {
            tag = PosTag::Other;
        } else {
            fail(source, line_no, "unknown tag '" + std::string(value) + "'");
        }
        if (!lex.entries.emplace(std::string(word), tag).second) {
            fail(source, line_no, "duplicate word '" + std::string(word) + "'");
        }
    });
    return lex;
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path)
{
    return parse_pos_lexicon(read_file(path), path.string());
}

ValenceConstants parse_valence_constants(std::string_view text, std::string_view source)
{
    ValenceConstants c;
    for_each_entry(text, [&](std::size_t line_no, std::string_view line) {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(source, line_no, "expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key == "version") {
            c.version = std::string(value);
            return;
        }
        double v = 0.0;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(v)) {
            fail(source, line_no, "value for '" + std::string(key) + "' is not a number");
        }
        if (key == "booster_increment") {
            c.booster_increment = v;
        } else if (key == "allcaps_increment") {
            c.allcaps_increment = v;
        } else if (key == "negation_scalar") {
            c.negation_scalar = v;
        } else if (key == "exclamation_increment") {
            c.exclamation_increment = v;
        } else if (key == "exclamation_max") {
            c.exclamation_max = static_cast<int>(v);
        } else if (key == "booster_damping_2") {
            c.booster_damping_2 = v;
        } else if (key == "booster_damping_3") {
            c.booster_damping_3 = v;
        } else if (key == "negation_window") {
            c.negation_window = static_cast<int>(v);
        } else if (key == "contrast_before") {
            c.contrast_before = v;
        } else if (key == "contrast_after") {
            c.contrast_after = v;
        } else if (key == "normalization_alpha") {
            if (v <= 0.0) {
                fail(source, line_no, "normalization_alpha must be positive");
            }
            c.normalization_alpha = v;
        } else {
            fail(source, line_no, "unknown key '" + std::string(key) + "'");
        }
    });
    return c;
}

ValenceRules load_valence_rules(const std::filesystem::path& dir)
{
    ValenceRules rules;
    rules.lexicon = load_valence_lexicon(dir / "vader_valence.tsv");
    rules.negators = load_word_list(dir / "negators.txt");
    rules.boosters_up = load_word_list(dir / "boosters_up.txt");
    rules.boosters_down = load_word_list(dir / "boosters_down.txt");
    rules.constants = parse_valence_constants(read_file(dir / "valence.conf"), (dir / "valence.conf").string());
    return rules;
}

std::size_t count_matches(const std::vector<Token>& tokens, const WordSet& words)
{
    std::size_t n = 0;
    for (const auto& t : tokens) {
        std::string_view key = t.normalized;
        if (key.size() > 2 && key.ends_with("'s")) {
            key.remove_suffix(2);
        }
        if (words.contains(std::string(key))) {
            ++n;
        }
    }
    return n;
}

std::string LexiconBundle::version_string() const
{
    std::string out;
    for (const auto& [k, v] : versions) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += k + "=" + v;
    }
    return out;
}

LexiconBundle load_lexicon_bundle(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) {
        throw DataError("lexicon directory not found: " + dir.string());
    }
    LexiconBundle b;
    b.afinn = load_weighted_lexicon(dir / "afinn.tsv");
    b.valence = load_valence_rules(dir);
    b.gender = load_gender_lexicon(dir / "masculine.txt", dir / "feminine.txt");
    b.stopwords = load_word_list(dir / "stopwords.txt");
    b.pos = load_pos_lexicon(dir / "pos_lexicon.tsv");

    const auto version_path = dir / "VERSION";
    for_each_entry(read_file(version_path), [&](std::size_t line_no, std::string_view line) {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(version_path.string(), line_no, "expected key = value");
        }
        b.versions[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    });
    return b;
}

} // namespace redlens
