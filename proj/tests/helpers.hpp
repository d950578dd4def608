#ifndef KWSEL_TESTS_HELPERS_HPP_
#define KWSEL_TESTS_HELPERS_HPP_

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kwsel/corpus.hpp"
#include "kwsel/translation.hpp"

namespace kwtest {

using RNG = std::mt19937_64;

inline std::shared_ptr<const kwsel::Vocabulary> make_vocab(std::size_t n) {
    std::vector<std::string> keywords;
    keywords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keywords.push_back("kw" + std::to_string(i));
    return std::make_shared<const kwsel::Vocabulary>(keywords);
}

inline kwsel::Distribution make_distribution(std::shared_ptr<const kwsel::Vocabulary> vocab,
                                             std::vector<double> probs) {
    return kwsel::Distribution{std::move(vocab), std::move(probs)};
}

/// Stats built directly from per-document presence sets (term_freq = one
/// occurrence per presence). Keeps mixture/translation tests independent of
/// the tokenizer.
inline kwsel::CorpusStats stats_from_presence(
    std::shared_ptr<const kwsel::Vocabulary> vocab,
    const std::vector<std::vector<std::size_t>>& docs) {
    kwsel::CorpusStats stats;
    stats.vocab = std::move(vocab);
    const std::size_t n = stats.vocab->size();
    stats.term_freq.assign(n, 0);
    stats.doc_presence.assign(n, 0);
    stats.doc_count = static_cast<std::int64_t>(docs.size());
    for (const auto& doc : docs) {
        for (std::size_t a = 0; a < doc.size(); ++a) {
            stats.term_freq[doc[a]] += 1;
            stats.doc_presence[doc[a]] += 1;
            for (std::size_t b = a + 1; b < doc.size(); ++b)
                stats.co_presence[kwsel::pack_pair(doc[a], doc[b])] += 1;
        }
    }
    return stats;
}

/// Stats with explicit term frequencies only (for mixture-model tests).
inline kwsel::CorpusStats stats_from_counts(std::shared_ptr<const kwsel::Vocabulary> vocab,
                                            std::vector<std::int64_t> counts) {
    kwsel::CorpusStats stats;
    stats.vocab = std::move(vocab);
    stats.doc_presence.assign(counts.size(), 0);
    stats.doc_count = 1;
    stats.term_freq = std::move(counts);
    return stats;
}

/// Random document presence sets: each keyword present in each document
/// independently with probability `density`.
inline std::vector<std::vector<std::size_t>> random_presence_docs(RNG& rng, std::size_t n_docs,
                                                                  std::size_t n_keywords,
                                                                  double density = 0.4) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<std::size_t>> docs(n_docs);
    for (auto& doc : docs)
        for (std::size_t i = 0; i < n_keywords; ++i)
            if (coin(rng) < density) doc.push_back(i);
    return docs;
}

/// Turn presence sets into a token-level DocumentSet (keyword i -> token
/// "kwI"), exercising the real counting path.
inline kwsel::DocumentSet docs_from_presence(const std::vector<std::vector<std::size_t>>& docs) {
    kwsel::DocumentSet set;
    set.source_label = "target";
    for (std::size_t d = 0; d < docs.size(); ++d) {
        kwsel::Document doc;
        doc.id = "d" + std::to_string(d);
        for (const std::size_t i : docs[d]) doc.tokens.push_back("kw" + std::to_string(i));
        set.docs.push_back(std::move(doc));
    }
    return set;
}

// ---------------------------------------------------------------------------
// Independent brute-force oracles. These enumerate documents per contingency
// cell and never touch the library's counting or MI code paths.

struct BruteCells {
    double p11 = 0, p10 = 0, p01 = 0, p00 = 0, pi = 0, pj = 0;
};

inline BruteCells brute_cells(const std::vector<std::vector<std::size_t>>& docs, std::size_t i,
                              std::size_t j) {
    const auto contains = [](const std::vector<std::size_t>& doc, std::size_t kw) {
        for (const std::size_t x : doc)
            if (x == kw) return true;
        return false;
    };
    std::size_t c11 = 0, c10 = 0, c01 = 0, c00 = 0;
    for (const auto& doc : docs) {
        const bool bi = contains(doc, i);
        const bool bj = contains(doc, j);
        if (bi && bj) ++c11;
        else if (bi) ++c10;
        else if (bj) ++c01;
        else ++c00;
    }
    const double n = static_cast<double>(docs.size());
    BruteCells cells;
    cells.p11 = c11 / n;
    cells.p10 = c10 / n;
    cells.p01 = c01 / n;
    cells.p00 = c00 / n;
    cells.pi = (c11 + c10) / n;
    cells.pj = (c11 + c01) / n;
    return cells;
}

inline double brute_mutual_information(const std::vector<std::vector<std::size_t>>& docs,
                                       std::size_t i, std::size_t j) {
    const BruteCells c = brute_cells(docs, i, j);
    const auto term = [](double joint, double prod) {
        return joint > 0.0 ? joint * std::log(joint / prod) : 0.0;
    };
    const double qi = 1.0 - c.pi;
    const double qj = 1.0 - c.pj;
    const double mi = term(c.p00, qi * qj) + term(c.p01, qi * c.pj) + term(c.p10, c.pi * qj) +
                      term(c.p11, c.pi * c.pj);
    return mi < 0.0 ? 0.0 : mi;
}

inline double brute_joint_entropy(const std::vector<std::vector<std::size_t>>& docs,
                                  std::size_t i, std::size_t j) {
    const BruteCells c = brute_cells(docs, i, j);
    const auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
    return h(c.p00) + h(c.p01) + h(c.p10) + h(c.p11);
}

// ---------------------------------------------------------------------------
// Random synthetic selection instances.

struct Instance {
    kwsel::Distribution p;
    kwsel::TranslationMatrix t;
};

/// Distribution strictly positive, every translation row includes the self
/// pair, entries bounded away from zero so no singleton coarsening sits at
/// the objective floor.
inline Instance random_instance(RNG& rng, std::size_t n, double density = 0.5,
                                double min_entry = 0.05) {
    std::uniform_real_distribution<double> mass(0.5, 1.5);
    std::uniform_real_distribution<double> entry(min_entry, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<double> probs(n);
    double total = 0.0;
    for (double& x : probs) {
        x = mass(rng);
        total += x;
    }
    for (double& x : probs) x /= total;

    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && coin(rng) >= density) continue;
            const double v = entry(rng);
            rows[i].emplace_back(j, v);
            row_sum += v;
        }
        for (auto& [j, v] : rows[i]) v /= row_sum;
    }
    return {make_distribution(make_vocab(n), std::move(probs)),
            kwsel::TranslationMatrix::from_rows(n, rows)};
}

} // namespace kwtest

#endif // KWSEL_TESTS_HELPERS_HPP_
