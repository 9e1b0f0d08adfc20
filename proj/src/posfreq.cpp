#include "redlens/posfreq.hpp"

#include <algorithm>
#include <map>

namespace redlens {
namespace {

bool ends_with(std::string_view w, std::string_view suffix)
{
    return w.size() > suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

PosTag suffix_tag(std::string_view w)
{
    for (auto s : {"ing", "ed", "ize"}) {
        if (ends_with(w, s)) {
            return PosTag::Verb;
        }
    }
    for (auto s : {"tion", "ment", "ness", "ity"}) {
        if (ends_with(w, s)) {
            return PosTag::Noun;
        }
    }
    return PosTag::Other;
}

} // namespace

std::vector<TaggedToken> tag_pos(const std::vector<Token>& tokens, const PosLexicon& lexicon)
{
    std::vector<TaggedToken> tagged;
    tagged.reserve(tokens.size());
    for (const auto& t : tokens) {
        TaggedToken tt{t, PosTag::Other, stem(t.normalized)};
        if (auto it = lexicon.entries.find(t.normalized); it != lexicon.entries.end()) {
            tt.tag = it->second;
        } else if (auto it2 = lexicon.entries.find(tt.base); it2 != lexicon.entries.end()) {
            tt.tag = it2->second;
        } else {
            tt.tag = suffix_tag(t.normalized);
        }
        tagged.push_back(std::move(tt));
    }
    return tagged;
}

std::vector<FrequencyEntry> frequency_table(const std::vector<std::string>& texts, PosTag tag,
                                            const PosLexicon& lexicon)
{
    std::map<std::string, std::int64_t> counts;
    for (const auto& text : texts) {
        for (const auto& tt : tag_pos(tokenize(text), lexicon)) {
            if (tt.tag == tag) {
                ++counts[tt.base];
            }
        }
    }
    std::vector<FrequencyEntry> table;
    table.reserve(counts.size());
    for (auto& [base, count] : counts) {
        table.push_back({base, count});
    }
    // map order already sorts bases; stable sort keeps it for equal counts
    std::stable_sort(table.begin(), table.end(),
                     [](const FrequencyEntry& a, const FrequencyEntry& b) { return a.count > b.count; });
    return table;
}

std::vector<FrequencyEntry> frequency_table(const std::vector<Post>& posts, PosTag tag, const PosLexicon& lexicon,
                                            PosText source)
{
    std::vector<std::string> texts;
    texts.reserve(posts.size());
    for (const auto& p : posts) {
        texts.push_back(source == PosText::Titles ? p.title : make_document(p).text);
    }
    return frequency_table(texts, tag, lexicon);
}

std::vector<FrequencyEntry> frequency_table(const std::vector<Document>& documents, PosTag tag,
                                            const PosLexicon& lexicon)
{
    std::vector<std::string> texts;
    texts.reserve(documents.size());
    for (const auto& d : documents) {
        texts.push_back(d.text);
    }
    return frequency_table(texts, tag, lexicon);
}

} // namespace redlens
