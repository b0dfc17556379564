#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ratekit/corpus.hpp"
#include "ratekit/util.hpp"

namespace ratekit {

/// An instance after normalization: lowercase, stop-word-free tokens.
struct TokenizedInstance {
    std::string id;
    RatingLabel label = RatingLabel::NotRated;
    std::vector<std::string> tokens;
};

/// Stop words, one lowercase word per line, '#' comments allowed.
class StopwordList {
public:
    StopwordList() = default;

    static StopwordList from_file(const std::filesystem::path& path) {
        StopwordList list;
        list.source_ = path.string();
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open stop-word list: " + path.string());
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string word = trim(line);
            if (word.empty() || word[0] == '#') continue;
            if (word != to_lower(word))
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": stop words must be lowercase");
            list.words_.insert(std::move(word));
        }
        return list;
    }

    void add(std::string_view word) { words_.insert(to_lower(word)); }
    bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
    size_t size() const { return words_.size(); }
    const std::string& source() const { return source_; }

private:
    std::set<std::string> words_;
    std::string source_;
};

/// Inflected-form -> lemma lookup plus ordered fallback suffix rules for
/// regular English inflection. Lexicon lookup always precedes the rules;
/// a rule only applies when the resulting stem keeps at least 3 characters.
class LemmaLexicon {
public:
    LemmaLexicon() = default;

    /// File format: inflected<TAB>lemma, lowercase, one pair per line.
    static LemmaLexicon from_file(const std::filesystem::path& path) {
        LemmaLexicon lex;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open lemma lexicon: " + path.string());
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string entry = trim(line);
            if (entry.empty() || entry[0] == '#') continue;
            size_t tab = entry.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": expected inflected<TAB>lemma");
            std::string inflected = trim(entry.substr(0, tab));
            std::string lemma = trim(entry.substr(tab + 1));
            if (inflected.empty() || lemma.empty() ||
                lemma.find_first_of(" \t") != std::string::npos)
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": bad lexicon entry");
            lex.add(inflected, lemma);
        }
        return lex;
    }

    void add(std::string_view inflected, std::string_view lemma) {
        table_[to_lower(inflected)] = to_lower(lemma);
    }

    size_t size() const { return table_.size(); }

    /// Lemmatizes a lowercase token. Tokens containing apostrophes go
    /// through the lexicon only (contractions are never expanded).
    std::string lemmatize(const std::string& token) const {
        auto it = table_.find(token);
        if (it != table_.end()) return it->second;
        if (token.find('\'') != std::string::npos) return token;
        return apply_rules(token);
    }

private:
    static constexpr size_t kMinStem = 3;

    static bool ends_with(std::string_view s, std::string_view suffix) {
        return s.size() >= suffix.size() &&
               s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    }

    // After stripping -ing/-ed: undouble a doubled final consonant
    // (stopped -> stop); otherwise restore a silent e after letters that
    // rarely end an English word (loved -> love).
    static std::string fix_stem(std::string stem) {
        const std::string doubling = "bdgmnprt";
        size_t n = stem.size();
        if (n >= 2 && stem[n - 1] == stem[n - 2] &&
            doubling.find(stem[n - 1]) != std::string::npos) {
            stem.pop_back();
        } else {
            char last = stem[n - 1];
            if (last == 'v' || last == 'c' || last == 'z') stem.push_back('e');
        }
        return stem;
    }

    std::string apply_rules(const std::string& w) const {
        const size_t n = w.size();
        if (ends_with(w, "ies") && n - 3 + 1 >= kMinStem)
            return w.substr(0, n - 3) + "y";
        if (ends_with(w, "sses") && n - 2 >= kMinStem)
            return w.substr(0, n - 2);
        if (ends_with(w, "es") && n - 2 >= kMinStem) {
            char before = w[n - 3];
            bool drop_es = before == 's' || before == 'x' || before == 'z' ||
                           (n >= 4 && (ends_with(std::string_view(w).substr(0, n - 2), "ch") ||
                                       ends_with(std::string_view(w).substr(0, n - 2), "sh")));
            if (drop_es && n - 2 >= kMinStem) return w.substr(0, n - 2);
            if (n - 1 >= kMinStem) return w.substr(0, n - 1);  // -es -> -e
        }
        if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
            !ends_with(w, "is") && n - 1 >= kMinStem)
            return w.substr(0, n - 1);
        if (ends_with(w, "ing") && n - 3 >= kMinStem)
            return fix_stem(w.substr(0, n - 3));
        if (ends_with(w, "ed") && n - 2 >= kMinStem)
            return fix_stem(w.substr(0, n - 2));
        return w;
    }

    std::unordered_map<std::string, std::string> table_;
};

namespace detail {

inline bool is_alnum_ascii(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_token_char(char c) {
    return is_alnum_ascii(c) || c == '\'' || static_cast<unsigned char>(c) >= 0x80;
}

inline bool digits_only(std::string_view t) {
    for (char c : t)
        if (c < '0' || c > '9') return false;
    return !t.empty();
}

}  // namespace detail

/// Splits a sentence into raw tokens: any character that is not
/// alphanumeric or an apostrophe separates tokens. Casing is retained
/// (proper-noun detection needs it); empty tokens are dropped. Bytes
/// >= 0x80 are treated as word characters so UTF-8 text survives intact.
inline std::vector<std::string> tokenize(std::string_view sentence) {
    std::vector<std::string> tokens;
    size_t i = 0;
    const size_t n = sentence.size();
    while (i < n) {
        while (i < n && !detail::is_token_char(sentence[i])) ++i;
        size_t start = i;
        while (i < n && detail::is_token_char(sentence[i])) ++i;
        if (i > start) tokens.emplace_back(sentence.substr(start, i - start));
    }
    return tokens;
}

/// Drops tokens that start with an ASCII capital letter unless they are
/// the first token of the sentence (assumed sentence-initial, not a proper
/// noun). The pronoun "I" and its contractions are exempt.
inline std::vector<std::string> strip_proper_nouns(const std::vector<std::string>& sentence_tokens) {
    static const std::set<std::string, std::less<>> exempt = {"I", "I'm", "I'll", "I've", "I'd"};
    std::vector<std::string> out;
    out.reserve(sentence_tokens.size());
    for (size_t i = 0; i < sentence_tokens.size(); ++i) {
        const std::string& t = sentence_tokens[i];
        bool capitalized = !t.empty() && t[0] >= 'A' && t[0] <= 'Z';
        if (capitalized && i > 0 && exempt.count(t) == 0) continue;
        out.push_back(t);
    }
    return out;
}

/// Full normalization of one instance, per sentence: tokenize, strip
/// proper nouns, lowercase, drop stop words, lemmatize. Digit-only tokens
/// and bare quote marks are dropped with the punctuation. The stop-word
/// filter also runs on lemmatizer output so the result is stop-word-free.
inline TokenizedInstance normalize(const Instance& instance, const StopwordList& stopwords,
                                   const LemmaLexicon& lexicon) {
    TokenizedInstance out;
    out.id = instance.id;
    out.label = instance.label;
    for (const std::string& sentence : instance.sentences) {
        std::vector<std::string> tokens = strip_proper_nouns(tokenize(sentence));
        for (std::string& raw : tokens) {
            std::string t = to_lower(raw);
            // Leading/trailing apostrophes are quotation marks, not part
            // of the word; interior ones (don't) stay.
            size_t b = t.find_first_not_of('\'');
            if (b == std::string::npos) continue;
            size_t e = t.find_last_not_of('\'');
            t = t.substr(b, e - b + 1);
            if (t.empty() || detail::digits_only(t)) continue;
            if (stopwords.contains(t)) continue;
            std::string lemma = lexicon.lemmatize(t);
            if (lemma.empty() || stopwords.contains(lemma)) continue;
            out.tokens.push_back(std::move(lemma));
        }
    }
    return out;
}

}  // namespace ratekit
