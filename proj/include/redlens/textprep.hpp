#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace redlens {

using WordSet = std::unordered_set<std::string>;

struct Token {
    std::string surface;    // whitespace-delimited chunk, verbatim
    std::string normalized; // lowercase, surrounding punctuation stripped
    std::size_t offset = 0; // byte offset of `surface` in the source text
    bool is_allcaps = false;

    bool operator==(const Token&) const = default;
};

/// Splits on whitespace. Leading and trailing punctuation (ASCII and common
/// typographic marks) is stripped from the normalized form; interior
/// apostrophes survive and a curly apostrophe becomes "'". Chunks with no
/// remaining characters are dropped.
std::vector<Token> tokenize(std::string_view text);

/// Number of tokens tokenize() emits, counted before stopword removal.
std::size_t word_count(std::string_view text);

/// Light suffix stemmer with an irregular-form table. Iterates to a fixed
/// point, so stem(stem(w)) == stem(w).
std::string stem(std::string_view word);

/// Order-preserving filter on Token::normalized.
std::vector<Token> remove_stopwords(const std::vector<Token>& tokens, const WordSet& stopwords);

} // namespace redlens
