#ifndef KWSEL_EVALUATION_HPP_
#define KWSEL_EVALUATION_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kwsel/corpus.hpp"

namespace kwsel {

struct GroundTruthSet {
    std::vector<std::string> keywords; // normalized, unique
};

GroundTruthSet load_ground_truth(const std::filesystem::path& path);

/// External keyword vectors, one per line: "keyword<TAB>v1 v2 ... vd".
/// Duplicates keep the last entry; zero vectors are treated as missing.
struct VectorTable {
    std::unordered_map<std::string, std::vector<double>> vectors;
    std::size_t dim = 0;
    std::size_t duplicate_count = 0;
    std::size_t zero_vector_count = 0;
};

VectorTable load_vectors(const std::filesystem::path& path);

/// Joint entropy of the binary presence variables of two keywords.
/// Natural log, 0 * log 0 = 0.
double joint_entropy(const CorpusStats& stats, std::size_t i, std::size_t j);

struct CcScore {
    double value = 0.0;
    std::size_t pairs_counted = 0; // pairs with positive joint entropy
    std::size_t pairs_skipped = 0; // degenerate pairs contributing 0
};

/// Category correspondence: sum over (t in S, c in C) of I(t; c) / H(t; c).
/// Pairs with zero joint entropy are skipped.
CcScore category_correspondence(const CorpusStats& stats,
                                std::span<const std::size_t> selected,
                                std::span<const std::size_t> categories);

/// Name-based variant; every keyword must be present in stats' vocabulary.
CcScore category_correspondence(const CorpusStats& stats,
                                const std::vector<std::string>& selected,
                                const GroundTruthSet& categories);

struct ReprScore {
    double value = 0.0;
    std::size_t covered_ground_truth = 0;
    std::size_t skipped_ground_truth = 0; // without vectors
    std::size_t skipped_selected = 0;     // without vectors
};

/// Mean over ground-truth keywords of the best cosine similarity into the
/// selected set. Keywords without vectors are skipped and reported.
ReprScore representativeness(const std::vector<std::string>& selected,
                             const GroundTruthSet& ground_truth,
                             const VectorTable& vectors);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

} // namespace kwsel

#endif // KWSEL_EVALUATION_HPP_
