#ifndef KWSEL_CORPUS_HPP_
#define KWSEL_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kwsel/error.hpp"

namespace kwsel {

/// Lowercase (ASCII), trim, and collapse internal whitespace runs to a
/// single space. This is the canonical form for keyword lookup.
std::string normalize_keyword(std::string_view raw);

/// Split text on whitespace, lowercase each token and strip leading/trailing
/// ASCII punctuation. Tokens that become empty are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// True for tokens on the built-in English stop list.
bool is_stopword(std::string_view token);

/// Ordered candidate keyword set with stable indices.
///
/// Construction normalizes every keyword and drops duplicates, keeping the
/// first occurrence, so `keyword -> index` is a bijection onto 0..size()-1.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(const std::vector<std::string>& raw_keywords);

    std::size_t size() const { return keywords_.size(); }
    bool empty() const { return keywords_.empty(); }
    const std::vector<std::string>& keywords() const { return keywords_; }
    const std::string& keyword(std::size_t i) const { return keywords_.at(i); }

    /// Index of a keyword (normalized before lookup), or nullopt.
    std::optional<std::size_t> find(std::string_view keyword) const;

    bool operator==(const Vocabulary& other) const {
        return keywords_ == other.keywords_;
    }

private:
    std::vector<std::string> keywords_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Document {
    std::string id;
    std::vector<std::string> tokens;
};

struct DocumentSet {
    std::vector<Document> docs;
    std::string source_label; // "target" or "context"
};

enum class CorpusFormat { jsonl, plain };

/// Read a corpus file. jsonl lines carry {"id": string, "text": string};
/// plain format is one document per line, 1-based line number as id.
DocumentSet load_documents(const std::filesystem::path& path, CorpusFormat format,
                           std::string source_label = "");

/// Read one keyword per line, normalize, drop entries whose tokens are all
/// stop words or single letters, and deduplicate preserving order.
Vocabulary load_vocabulary(const std::filesystem::path& path);

/// All corpus counts the downstream formulas consume. co_presence holds
/// document-level pair counts keyed by pack_pair(i, j) with i < j; the
/// diagonal n_ii = n_i is answered from doc_presence.
struct CorpusStats {
    std::shared_ptr<const Vocabulary> vocab;
    std::vector<std::int64_t> term_freq;    // c(t_i, C): total occurrences
    std::int64_t doc_count = 0;             // N
    std::vector<std::int64_t> doc_presence; // n_i: docs containing t_i
    std::unordered_map<std::uint64_t, std::int64_t> co_presence; // n_ij, i < j

    std::int64_t co_occurrence(std::size_t i, std::size_t j) const;
    std::int64_t total_term_freq() const;

    /// Co-presence pairs as (i, j, n_ij) with i < j, sorted. Iteration over
    /// the hash map is order-unstable, so anything feeding floats or output
    /// goes through this.
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> sorted_pairs() const;
};

constexpr std::uint64_t pack_pair(std::size_t i, std::size_t j) {
    const std::uint64_t lo = i < j ? i : j;
    const std::uint64_t hi = i < j ? j : i;
    return (lo << 32) | hi;
}

/// Count keyword occurrences over a document set. Multi-word keywords are
/// matched greedy longest-match left-to-right; matched tokens are consumed,
/// so nested keywords never double-count. threads == 0 means all cores.
CorpusStats count_occurrences(const DocumentSet& docs,
                              std::shared_ptr<const Vocabulary> vocab,
                              unsigned threads = 1);

/// Add the counters of two stats over the same vocabulary.
CorpusStats merge_stats(const CorpusStats& a, const CorpusStats& b);

/// Probability vector over a vocabulary. Sums to 1 unless explicitly noted
/// (coarsened distributions are kept unnormalized).
struct Distribution {
    std::shared_ptr<const Vocabulary> vocab;
    std::vector<double> probs;
};

/// p(t_i) = c(t_i, C) / sum_j c(t_j, C).
Distribution relative_frequency(const CorpusStats& stats);

/// Joint presence/absence probabilities of a keyword pair over documents.
struct PresenceCells {
    double p11, p10, p01, p00; // p(b_i, b_j)
    double pi, pj;             // marginals p(b_i = 1), p(b_j = 1)
};

PresenceCells presence_cells(const CorpusStats& stats, std::size_t i, std::size_t j);

} // namespace kwsel

#endif // KWSEL_CORPUS_HPP_
