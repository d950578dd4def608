#include "kwsel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace kwsel {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

const std::unordered_set<std::string_view>& stopword_set() {
    // Standard English stop list (snowball-style).
    static const std::unordered_set<std::string_view> words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an",
        "and", "any", "are", "as", "at", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "cannot",
        "could", "did", "do", "does", "doing", "down", "during", "each", "few",
        "for", "from", "further", "had", "has", "have", "having", "he", "her",
        "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
        "in", "into", "is", "it", "its", "itself", "just", "me", "more", "most",
        "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
        "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own",
        "same", "she", "should", "so", "some", "such", "than", "that", "the",
        "their", "theirs", "them", "themselves", "then", "there", "these",
        "they", "this", "those", "through", "to", "too", "under", "until", "up",
        "very", "was", "we", "were", "what", "when", "where", "which", "while",
        "who", "whom", "why", "will", "with", "would", "you", "your", "yours",
        "yourself", "yourselves",
    };
    return words;
}

// Keyword token sequences grouped by first token, longest first, so the
// matcher can take the longest candidate at each position.
struct KeywordMatcher {
    struct Candidate {
        std::vector<std::string> tokens;
        std::size_t index;
    };
    std::unordered_map<std::string, std::vector<Candidate>> by_first_token;

    explicit KeywordMatcher(const Vocabulary& vocab) {
        for (std::size_t k = 0; k < vocab.size(); ++k) {
            std::vector<std::string> parts;
            const std::string& kw = vocab.keyword(k);
            std::size_t pos = 0;
            while (pos < kw.size()) {
                const std::size_t space = kw.find(' ', pos);
                const std::size_t end = space == std::string::npos ? kw.size() : space;
                parts.emplace_back(kw.substr(pos, end - pos));
                pos = end + 1;
            }
            if (parts.empty()) continue;
            by_first_token[parts.front()].push_back({std::move(parts), k});
        }
        for (auto& [first, cands] : by_first_token) {
            std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
                if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
                return a.index < b.index;
            });
        }
    }

    // Longest keyword matching at position pos, or nullopt.
    std::optional<std::pair<std::size_t, std::size_t>> // (keyword index, length)
    match_at(const std::vector<std::string>& tokens, std::size_t pos) const {
        const auto it = by_first_token.find(tokens[pos]);
        if (it == by_first_token.end()) return std::nullopt;
        for (const Candidate& cand : it->second) {
            if (pos + cand.tokens.size() > tokens.size()) continue;
            bool ok = true;
            for (std::size_t t = 1; t < cand.tokens.size(); ++t) {
                if (tokens[pos + t] != cand.tokens[t]) {
                    ok = false;
                    break;
                }
            }
            if (ok) return std::make_pair(cand.index, cand.tokens.size());
        }
        return std::nullopt;
    }
};

struct PartialCounts {
    std::vector<std::int64_t> term_freq;
    std::vector<std::int64_t> doc_presence;
    std::unordered_map<std::uint64_t, std::int64_t> co_presence;
    std::int64_t doc_count = 0;
};

void count_range(const DocumentSet& docs, const KeywordMatcher& matcher,
                 std::size_t vocab_size, std::size_t begin, std::size_t end,
                 PartialCounts& out) {
    out.term_freq.assign(vocab_size, 0);
    out.doc_presence.assign(vocab_size, 0);
    std::vector<std::size_t> present;
    for (std::size_t d = begin; d < end; ++d) {
        const auto& tokens = docs.docs[d].tokens;
        present.clear();
        std::size_t pos = 0;
        while (pos < tokens.size()) {
            if (const auto hit = matcher.match_at(tokens, pos)) {
                out.term_freq[hit->first] += 1;
                present.push_back(hit->first);
                pos += hit->second;
            } else {
                ++pos;
            }
        }
        std::sort(present.begin(), present.end());
        present.erase(std::unique(present.begin(), present.end()), present.end());
        for (std::size_t a = 0; a < present.size(); ++a) {
            out.doc_presence[present[a]] += 1;
            for (std::size_t b = a + 1; b < present.size(); ++b) {
                out.co_presence[pack_pair(present[a], present[b])] += 1;
            }
        }
        out.doc_count += 1;
    }
}

} // namespace

std::string normalize_keyword(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (const char ch : raw) {
        if (is_space(static_cast<unsigned char>(ch))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && is_space(static_cast<unsigned char>(text[pos]))) ++pos;
        std::size_t end = pos;
        while (end < text.size() && !is_space(static_cast<unsigned char>(text[end]))) ++end;
        if (end > pos) {
            std::string_view word = text.substr(pos, end - pos);
            while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.front())))
                word.remove_prefix(1);
            while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back())))
                word.remove_suffix(1);
            if (!word.empty()) {
                std::string token;
                token.reserve(word.size());
                for (const char ch : word)
                    token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
                tokens.push_back(std::move(token));
            }
        }
        pos = end;
    }
    return tokens;
}

bool is_stopword(std::string_view token) {
    return stopword_set().count(token) != 0;
}

Vocabulary::Vocabulary(const std::vector<std::string>& raw_keywords) {
    for (const std::string& raw : raw_keywords) {
        std::string norm = normalize_keyword(raw);
        if (norm.empty()) continue;
        if (index_.count(norm) != 0) continue;
        index_.emplace(norm, keywords_.size());
        keywords_.push_back(std::move(norm));
    }
}

std::optional<std::size_t> Vocabulary::find(std::string_view keyword) const {
    const auto it = index_.find(normalize_keyword(keyword));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

DocumentSet load_documents(const std::filesystem::path& path, CorpusFormat format,
                           std::string source_label) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file: " + path.string());

    DocumentSet set;
    set.source_label = std::move(source_label);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (format == CorpusFormat::plain) {
            set.docs.push_back({std::to_string(line_no), tokenize(line)});
            continue;
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("malformed JSON at line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string())
            throw InputError("line " + std::to_string(line_no) + ": missing string field \"id\"");
        if (!obj.contains("text") || !obj["text"].is_string())
            throw InputError("line " + std::to_string(line_no) + ": missing string field \"text\"");
        set.docs.push_back({obj["id"].get<std::string>(), tokenize(obj["text"].get<std::string>())});
    }
    if (set.docs.empty()) throw InputError("empty corpus: " + path.string());
    return set;
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vocabulary file: " + path.string());

    std::vector<std::string> kept;
    std::string line;
    while (std::getline(in, line)) {
        const std::string norm = normalize_keyword(line);
        if (norm.empty()) continue;
        // Drop entries with no content word: every token a stop word or a
        // single letter.
        bool has_content = false;
        for (const std::string& token : tokenize(norm)) {
            if (token.size() > 1 && !is_stopword(token)) {
                has_content = true;
                break;
            }
        }
        if (has_content) kept.push_back(norm);
    }
    Vocabulary vocab(kept);
    if (vocab.empty())
        throw InputError("empty vocabulary after filtering: " + path.string());
    return vocab;
}

std::int64_t CorpusStats::co_occurrence(std::size_t i, std::size_t j) const {
    if (i == j) return doc_presence.at(i);
    const auto it = co_presence.find(pack_pair(i, j));
    return it == co_presence.end() ? 0 : it->second;
}

std::int64_t CorpusStats::total_term_freq() const {
    return std::accumulate(term_freq.begin(), term_freq.end(), std::int64_t{0});
}

std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> CorpusStats::sorted_pairs() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> pairs;
    pairs.reserve(co_presence.size());
    for (const auto& [key, count] : co_presence)
        pairs.emplace_back(static_cast<std::size_t>(key >> 32),
                           static_cast<std::size_t>(key & 0xffffffffu), count);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

CorpusStats count_occurrences(const DocumentSet& docs,
                              std::shared_ptr<const Vocabulary> vocab,
                              unsigned threads) {
    if (!vocab || vocab->empty()) throw InputError("empty vocabulary");
    const KeywordMatcher matcher(*vocab);
    const std::size_t n_docs = docs.docs.size();
    const unsigned workers = detail::resolve_threads(threads);

    std::vector<PartialCounts> partials(std::max<std::size_t>(
        1, std::min<std::size_t>(workers, std::max<std::size_t>(n_docs, 1))));
    if (partials.size() <= 1) {
        count_range(docs, matcher, vocab->size(), 0, n_docs, partials[0]);
    } else {
        const std::size_t chunk = (n_docs + partials.size() - 1) / partials.size();
        detail::parallel_chunks(partials.size(), workers, [&](std::size_t wb, std::size_t we) {
            for (std::size_t w = wb; w < we; ++w) {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(n_docs, begin + chunk);
                count_range(docs, matcher, vocab->size(), begin, std::max(begin, end),
                            partials[w]);
            }
        });
    }

    CorpusStats stats;
    stats.vocab = std::move(vocab);
    stats.term_freq.assign(stats.vocab->size(), 0);
    stats.doc_presence.assign(stats.vocab->size(), 0);
    for (const PartialCounts& part : partials) {
        if (part.term_freq.empty()) continue;
        stats.doc_count += part.doc_count;
        for (std::size_t i = 0; i < stats.term_freq.size(); ++i) {
            stats.term_freq[i] += part.term_freq[i];
            stats.doc_presence[i] += part.doc_presence[i];
        }
        for (const auto& [key, count] : part.co_presence) stats.co_presence[key] += count;
    }
    return stats;
}

CorpusStats merge_stats(const CorpusStats& a, const CorpusStats& b) {
    if (!a.vocab || !b.vocab || !(*a.vocab == *b.vocab))
        throw InputError("cannot merge stats over different vocabularies");
    CorpusStats out = a;
    out.doc_count += b.doc_count;
    for (std::size_t i = 0; i < out.term_freq.size(); ++i) {
        out.term_freq[i] += b.term_freq[i];
        out.doc_presence[i] += b.doc_presence[i];
    }
    for (const auto& [key, count] : b.co_presence) out.co_presence[key] += count;
    return out;
}

Distribution relative_frequency(const CorpusStats& stats) {
    const std::int64_t total = stats.total_term_freq();
    if (total <= 0) throw InputError("no candidate occurs in corpus");
    Distribution dist;
    dist.vocab = stats.vocab;
    dist.probs.resize(stats.term_freq.size());
    for (std::size_t i = 0; i < stats.term_freq.size(); ++i)
        dist.probs[i] = static_cast<double>(stats.term_freq[i]) / static_cast<double>(total);
    return dist;
}

PresenceCells presence_cells(const CorpusStats& stats, std::size_t i, std::size_t j) {
    if (stats.doc_count <= 0) throw InputError("empty corpus: no documents counted");
    const double n = static_cast<double>(stats.doc_count);
    const double ni = static_cast<double>(stats.doc_presence.at(i));
    const double nj = static_cast<double>(stats.doc_presence.at(j));
    const double nij = static_cast<double>(stats.co_occurrence(i, j));
    PresenceCells cells{};
    cells.p11 = nij / n;
    cells.p10 = (ni - nij) / n;
    cells.p01 = (nj - nij) / n;
    cells.p00 = (n - ni - nj + nij) / n;
    cells.pi = ni / n;
    cells.pj = nj / n;
    return cells;
}

} // namespace kwsel
