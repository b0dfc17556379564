#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ratekit/util.hpp"

namespace ratekit {

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

/// The five content ratings used to label works.
enum class RatingLabel { GeneralAudiences, TeenAndUp, Mature, Explicit, NotRated };

inline constexpr int kNumRatings = 5;

inline const char* to_string(RatingLabel label) {
    switch (label) {
        case RatingLabel::GeneralAudiences: return "GeneralAudiences";
        case RatingLabel::TeenAndUp: return "TeenAndUp";
        case RatingLabel::Mature: return "Mature";
        case RatingLabel::Explicit: return "Explicit";
        case RatingLabel::NotRated: return "NotRated";
    }
    throw std::logic_error("invalid RatingLabel");
}

inline RatingLabel rating_from_string(std::string_view name) {
    if (name == "GeneralAudiences") return RatingLabel::GeneralAudiences;
    if (name == "TeenAndUp") return RatingLabel::TeenAndUp;
    if (name == "Mature") return RatingLabel::Mature;
    if (name == "Explicit") return RatingLabel::Explicit;
    if (name == "NotRated") return RatingLabel::NotRated;
    throw std::runtime_error("unknown rating label: '" + std::string(name) + "'");
}

/// Folder name -> label mapping for corpus roots. Lookup is
/// case-insensitive. The default mapping can be replaced from config.
class FolderMap {
public:
    static FolderMap defaults() {
        FolderMap m;
        m.entries_ = {{"general", RatingLabel::GeneralAudiences},
                      {"teen", RatingLabel::TeenAndUp},
                      {"mature", RatingLabel::Mature},
                      {"explicit", RatingLabel::Explicit},
                      {"notrated", RatingLabel::NotRated}};
        return m;
    }

    void set(std::string folder, RatingLabel label) { entries_[to_lower(folder)] = label; }

    std::optional<RatingLabel> lookup(std::string_view folder) const {
        auto it = entries_.find(to_lower(folder));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::string, RatingLabel>& entries() const { return entries_; }

private:
    std::map<std::string, RatingLabel> entries_;
};

// ---------------------------------------------------------------------------
// Works and instances
// ---------------------------------------------------------------------------

/// One fan-fiction work: full text plus the rating taken from its folder.
struct Work {
    std::string id;  // relative path with separators replaced by '_'
    RatingLabel label = RatingLabel::NotRated;
    std::string text;
};

/// A run of exactly k consecutive sentences from one work; the unit of
/// classification.
struct Instance {
    std::string id;  // "<work id>#<6-digit chunk ordinal>"
    RatingLabel label = RatingLabel::NotRated;
    std::vector<std::string> sentences;

    bool operator==(const Instance&) const = default;
};

struct InstanceSet {
    std::vector<Instance> instances;
    int k = 0;
    std::string provenance;  // source path + creation parameters, free-form

    size_t size() const { return instances.size(); }
};

struct LoadReport {
    size_t files_read = 0;
    size_t skipped_invalid_utf8 = 0;
    size_t skipped_empty = 0;
};

struct CorpusLoad {
    std::vector<Work> works;
    LoadReport report;
};

// ---------------------------------------------------------------------------
// Sentence segmentation
// ---------------------------------------------------------------------------

/// Abbreviations whose trailing period must not end a sentence.
/// File format: one lowercase abbreviation per line, trailing period
/// included ("dr.", "e.g."); '#' starts a comment.
class AbbreviationList {
public:
    AbbreviationList() = default;

    static AbbreviationList from_file(const std::filesystem::path& path) {
        AbbreviationList list;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open abbreviation list: " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            std::string entry = trim(line);
            if (entry.empty() || entry[0] == '#') continue;
            list.add(entry);
        }
        return list;
    }

    void add(std::string_view abbrev) { entries_.insert(to_lower(abbrev)); }
    bool contains(std::string_view token) const { return entries_.count(to_lower(token)) > 0; }
    size_t size() const { return entries_.size(); }

private:
    std::set<std::string, std::less<>> entries_;
};

namespace detail {

inline bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }
inline bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_quote(char c) { return c == '"' || c == '\''; }
inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// The whitespace-delimited token ending at text[dot], with leading
// non-letter characters stripped ("(Dr." -> "Dr.").
inline std::string_view token_ending_at(std::string_view text, size_t dot) {
    size_t begin = dot;
    while (begin > 0 && !is_ws(text[begin - 1])) --begin;
    while (begin < dot && !(std::isalpha(static_cast<unsigned char>(text[begin])) != 0)) ++begin;
    return text.substr(begin, dot - begin + 1);
}

}  // namespace detail

/// Splits text into sentences. A sentence ends at '.', '!' or '?' that is
/// followed by whitespace and then an ASCII capital letter or quote, or by
/// end of text. A period whose preceding token is in the abbreviation list
/// never ends a sentence. Terminators are retained; a trailing fragment
/// without a terminator becomes the last sentence; empty spans are dropped.
inline std::vector<std::string> segment_sentences(std::string_view text,
                                                  const AbbreviationList& abbrevs = {}) {
    using namespace detail;
    std::vector<std::string> sentences;
    const size_t n = text.size();

    auto push_span = [&](size_t begin, size_t end) {  // [begin, end)
        while (begin < end && is_ws(text[begin])) ++begin;
        size_t stop = end;
        while (stop > begin && is_ws(text[stop - 1])) --stop;
        if (stop > begin) sentences.emplace_back(text.substr(begin, stop - begin));
    };

    size_t start = 0;
    size_t i = 0;
    while (i < n) {
        if (is_terminator(text[i])) {
            size_t j = i + 1;
            while (j < n && is_ws(text[j])) ++j;
            const bool at_end = (j == n);
            const bool boundary =
                at_end || (j > i + 1 && (is_upper_ascii(text[j]) || is_quote(text[j])));
            if (boundary) {
                const bool suppressed =
                    text[i] == '.' && abbrevs.size() > 0 &&
                    abbrevs.contains(token_ending_at(text, i));
                if (!suppressed) {
                    push_span(start, i + 1);
                    start = j;
                    i = j;
                    continue;
                }
            }
        }
        ++i;
    }
    push_span(start, n);
    return sentences;
}

// ---------------------------------------------------------------------------
// Chunking
// ---------------------------------------------------------------------------

/// Chunk sizes swept by the experiments: 2..20 step 2, then 24..60 step 4.
inline std::vector<int> chunk_schedule() {
    std::vector<int> sizes;
    for (int k = 2; k <= 20; k += 2) sizes.push_back(k);
    for (int k = 24; k <= 60; k += 4) sizes.push_back(k);
    return sizes;
}

inline std::string chunk_id(const std::string& work_id, size_t ordinal) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%06zu", ordinal);
    return work_id + "#" + buf;
}

/// Segments a work and groups its sentences into consecutive
/// non-overlapping runs of exactly k. A trailing partial run is dropped,
/// so the output count is floor(sentence_count / k).
inline std::vector<Instance> chunk_work(const Work& work, int k,
                                        const AbbreviationList& abbrevs = {}) {
    if (k < 1) throw std::invalid_argument("chunk_work: k must be >= 1");
    std::vector<std::string> sentences = segment_sentences(work.text, abbrevs);
    std::vector<Instance> out;
    const size_t full_chunks = sentences.size() / static_cast<size_t>(k);
    out.reserve(full_chunks);
    for (size_t c = 0; c < full_chunks; ++c) {
        Instance inst;
        inst.id = chunk_id(work.id, c);
        inst.label = work.label;
        inst.sentences.assign(sentences.begin() + static_cast<std::ptrdiff_t>(c * k),
                              sentences.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
        out.push_back(std::move(inst));
    }
    return out;
}

/// Retains instances whose concatenated sentence text is at least
/// min_chars bytes long.
inline InstanceSet filter_small(const InstanceSet& set, size_t min_chars) {
    InstanceSet out;
    out.k = set.k;
    out.provenance = set.provenance;
    for (const Instance& inst : set.instances) {
        size_t total = 0;
        for (const std::string& s : inst.sentences) total += s.size();
        if (total >= min_chars) out.instances.push_back(inst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corpus loading
// ---------------------------------------------------------------------------

/// Loads a rating-labelled corpus laid out as <root>/<folder>/*.txt.
/// Unknown subdirectory names are fatal (silent label corruption is worse
/// than a hard stop); files that are not valid UTF-8 or are empty after
/// trimming are skipped and counted. Works come back sorted by id, so the
/// result does not depend on directory iteration order.
inline CorpusLoad load_corpus(const std::filesystem::path& root,
                              const FolderMap& folders = FolderMap::defaults()) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw std::runtime_error("corpus root is not a directory: " + root.string());

    CorpusLoad result;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string folder = entry.path().filename().string();
        auto label = folders.lookup(folder);
        if (!label)
            throw std::runtime_error("unknown rating folder '" + folder + "' under " +
                                     root.string());
        for (const auto& file : fs::directory_iterator(entry.path())) {
            if (!file.is_regular_file() || file.path().extension() != ".txt") continue;
            std::string text = read_file(file.path());
            if (!is_valid_utf8(text)) {
                ++result.report.skipped_invalid_utf8;
                continue;
            }
            if (trim(text).empty()) {
                ++result.report.skipped_empty;
                continue;
            }
            Work w;
            w.id = folder + "_" + file.path().filename().string();
            w.label = *label;
            w.text = std::move(text);
            result.works.push_back(std::move(w));
            ++result.report.files_read;
        }
    }
    std::sort(result.works.begin(), result.works.end(),
              [](const Work& a, const Work& b) { return a.id < b.id; });
    return result;
}

// ---------------------------------------------------------------------------
// Instance interchange files (line-delimited JSON)
// ---------------------------------------------------------------------------

/// One object per line: {"id": ..., "label": ..., "k": ..., "sentences": [...]}.
inline void write_instances(const InstanceSet& set, const std::filesystem::path& path) {
    std::string body;
    for (const Instance& inst : set.instances) {
        nlohmann::ordered_json j;
        j["id"] = inst.id;
        j["label"] = to_string(inst.label);
        j["k"] = set.k;
        j["sentences"] = inst.sentences;
        body += j.dump();
        body += '\n';
    }
    write_file(path, body);
}

inline InstanceSet read_instances(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    InstanceSet set;
    set.provenance = "file:" + path.string();
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed instance line: " + e.what());
        }
        Instance inst;
        int k = 0;
        try {
            inst.id = j.at("id").get<std::string>();
            inst.label = rating_from_string(j.at("label").get<std::string>());
            k = j.at("k").get<int>();
            inst.sentences = j.at("sentences").get<std::vector<std::string>>();
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed instance line: " + e.what());
        }
        if (k < 1 || inst.sentences.size() != static_cast<size_t>(k))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": sentence count does not match k");
        if (set.instances.empty()) {
            set.k = k;
        } else if (k != set.k) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": k mismatch (" + std::to_string(k) + " vs " +
                                     std::to_string(set.k) + ")");
        }
        set.instances.push_back(std::move(inst));
    }
    return set;
}

}  // namespace ratekit
