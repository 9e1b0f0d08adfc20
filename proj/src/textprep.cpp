#include "redlens/textprep.hpp"

#include <array>
#include <unordered_map>

namespace redlens {
namespace {

bool is_space(unsigned char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(unsigned char c)
{
    return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) || (c >= 0x5b && c <= 0x60) ||
           (c >= 0x7b && c <= 0x7e);
}

// Typographic punctuation that shows up around words in forum text.
constexpr std::array<std::string_view, 12> kUnicodePunct = {
    "‘", "’", "“", "”", "…", "–",
    "—", "«", "»", "¿", "¡", "•",
};

// Length of the punctuation sequence starting at `s[i]`, or 0.
std::size_t punct_len_at(std::string_view s, std::size_t i)
{
    if (is_ascii_punct(static_cast<unsigned char>(s[i]))) {
        return 1;
    }
    for (auto p : kUnicodePunct) {
        if (s.substr(i, p.size()) == p) {
            return p.size();
        }
    }
    return 0;
}

// Length of the punctuation sequence ending just before `s[end]`, or 0.
std::size_t punct_len_before(std::string_view s, std::size_t end)
{
    if (is_ascii_punct(static_cast<unsigned char>(s[end - 1]))) {
        return 1;
    }
    for (auto p : kUnicodePunct) {
        if (end >= p.size() && s.substr(end - p.size(), p.size()) == p) {
            return p.size();
        }
    }
    return 0;
}

char to_lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string normalize_core(std::string_view core)
{
    static constexpr std::string_view kCurlyApostrophe = "’";
    std::string out;
    out.reserve(core.size());
    for (std::size_t i = 0; i < core.size(); ++i) {
        if (core.substr(i, kCurlyApostrophe.size()) == kCurlyApostrophe) {
            out.push_back('\'');
            i += kCurlyApostrophe.size() - 1;
            continue;
        }
        out.push_back(to_lower(core[i]));
    }
    return out;
}

bool all_caps(std::string_view core)
{
    int letters = 0;
    for (char c : core) {
        if (c >= 'a' && c <= 'z') {
            return false;
        }
        if (c >= 'A' && c <= 'Z') {
            ++letters;
        }
    }
    return letters >= 2;
}

const std::unordered_map<std::string_view, std::string_view>& irregulars()
{
    static const std::unordered_map<std::string_view, std::string_view> table = {
        {"am", "be"},         {"is", "be"},          {"are", "be"},        {"was", "be"},
        {"were", "be"},       {"been", "be"},        {"being", "be"},      {"told", "tell"},
        {"said", "say"},      {"says", "say"},       {"did", "do"},        {"does", "do"},
        {"done", "do"},       {"doing", "do"},       {"went", "go"},       {"gone", "go"},
        {"goes", "go"},       {"had", "have"},       {"has", "have"},      {"having", "have"},
        {"made", "make"},     {"got", "get"},        {"gotten", "get"},    {"thought", "think"},
        {"felt", "feel"},     {"left", "leave"},     {"leaving", "leave"}, {"took", "take"},
        {"taken", "take"},    {"came", "come"},      {"saw", "see"},       {"seen", "see"},
        {"knew", "know"},     {"known", "know"},     {"gave", "give"},     {"given", "give"},
        {"found", "find"},    {"kept", "keep"},      {"brought", "bring"}, {"bought", "buy"},
        {"ran", "run"},       {"wrote", "write"},    {"written", "write"}, {"spoke", "speak"},
        {"spoken", "speak"},  {"broke", "break"},    {"broken", "break"},  {"lied", "lie"},
        {"lies", "lie"},      {"lying", "lie"},      {"died", "die"},      {"dies", "die"},
        {"dying", "die"},     {"tied", "tie"},       {"ties", "tie"},      {"paid", "pay"},
        {"met", "meet"},      {"sent", "send"},      {"slept", "sleep"},   {"spent", "spend"},
        {"lost", "lose"},     {"hurt", "hurt"},      {"chose", "choose"},  {"chosen", "choose"},
        {"ate", "eat"},       {"eaten", "eat"},      {"drank", "drink"},   {"drove", "drive"},
        {"driven", "drive"},  {"threw", "throw"},    {"thrown", "throw"},  {"stole", "steal"},
        {"stolen", "steal"},  {"forgot", "forget"},  {"forgotten", "forget"}, {"forgave", "forgive"},
        {"wore", "wear"},     {"sold", "sell"},      {"heard", "hear"},    {"children", "child"},
        {"men", "man"},       {"women", "woman"},    {"wives", "wife"},    {"people", "person"},
        {"feet", "foot"},     {"teeth", "tooth"},    {"mice", "mouse"},    {"geese", "goose"},
    };
    return table;
}

bool is_vowel_at(std::string_view w, std::size_t i)
{
    switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
        return true;
    case 'y':
        return i > 0 && !is_vowel_at(w, i - 1);
    default:
        return false;
    }
}

bool is_letter(char c)
{
    return c >= 'a' && c <= 'z';
}

bool all_letters(std::string_view w)
{
    for (char c : w) {
        if (!is_letter(c)) {
            return false;
        }
    }
    return !w.empty();
}

bool has_vowel(std::string_view w)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_at(w, i)) {
            return true;
        }
    }
    return false;
}

// Number of vowel-consonant sequences in [C](VC)^m[V].
int measure(std::string_view w)
{
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool v = is_vowel_at(w, i);
        if (!v && prev_vowel) {
            ++m;
        }
        prev_vowel = v;
    }
    return m;
}

// consonant-vowel-consonant ending whose last consonant is not w, x or y
bool ends_cvc(std::string_view w)
{
    auto n = w.size();
    if (n < 3) {
        return false;
    }
    char last = w[n - 1];
    return !is_vowel_at(w, n - 3) && is_vowel_at(w, n - 2) && !is_vowel_at(w, n - 1) && last != 'w' &&
           last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix)
{
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// After removing -ed/-ing: undouble a final consonant pair, or restore a
// dropped silent e on short cvc stems (hat-ed -> hate, lik-ing -> like).
std::string tidy_verb_stem(std::string s)
{
    auto n = s.size();
    if (n >= 2 && s[n - 1] == s[n - 2] && !is_vowel_at(s, n - 1)) {
        char c = s[n - 1];
        if (c != 'l' && c != 's' && c != 'z') {
            s.pop_back();
        }
        return s;
    }
    if (measure(s) == 1 && ends_cvc(s)) {
        s.push_back('e');
    }
    return s;
}

std::string stem_once(std::string_view w)
{
    if (auto it = irregulars().find(w); it != irregulars().end()) {
        return std::string(it->second);
    }
    if (!all_letters(w)) {
        return std::string(w);
    }
    if (ends_with(w, "ies") && w.size() - 3 >= 2) {
        return std::string(w.substr(0, w.size() - 3)) + "y";
    }
    if (ends_with(w, "ied") && w.size() - 3 >= 2) {
        return std::string(w.substr(0, w.size() - 3)) + "y";
    }
    if (ends_with(w, "sses")) {
        return std::string(w.substr(0, w.size() - 2));
    }
    for (std::string_view suffix : {"ing", "ed"}) {
        if (ends_with(w, suffix)) {
            auto s = w.substr(0, w.size() - suffix.size());
            // "-eed" words like need/freed keep their ending
            if (s.size() >= 3 && has_vowel(s) && !(suffix == "ed" && ends_with(s, "e"))) {
                return tidy_verb_stem(std::string(s));
            }
            return std::string(w);
        }
    }
    if (ends_with(w, "es")) {
        auto s = w.substr(0, w.size() - 2);
        if (s.size() >= 3 && (ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") || ends_with(s, "ch") ||
                              ends_with(s, "sh"))) {
            return std::string(s);
        }
    }
    if (ends_with(w, "s")) {
        auto s = w.substr(0, w.size() - 1);
        if (s.size() >= 3 && !ends_with(s, "s") && !ends_with(s, "u") && !ends_with(s, "i")) {
            return std::string(s);
        }
    }
    return std::string(w);
}

} // namespace

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i >= text.size()) {
            break;
        }
        std::size_t start = i;
        while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        std::string_view chunk = text.substr(start, i - start);

        std::size_t lo = 0;
        std::size_t hi = chunk.size();
        while (lo < hi) {
            auto n = punct_len_at(chunk, lo);
            if (n == 0) {
                break;
            }
            lo += n;
        }
        while (hi > lo) {
            auto n = punct_len_before(chunk, hi);
            if (n == 0) {
                break;
            }
            hi -= n;
        }
        if (lo >= hi) {
            continue;
        }
        std::string_view core = chunk.substr(lo, hi - lo);
        tokens.push_back(Token{std::string(chunk), normalize_core(core), start, all_caps(core)});
    }
    return tokens;
}

std::size_t word_count(std::string_view text)
{
    return tokenize(text).size();
}

std::string stem(std::string_view word)
{
    std::string current(word);
    for (int i = 0; i < 8; ++i) {
        std::string next = stem_once(current);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return current;
}

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const WordSet& stopwords)
{
    std::vector<Token> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stopwords.contains(t.normalized)) {
            kept.push_back(t);
        }
    }
    return kept;
}

} // namespace redlens
