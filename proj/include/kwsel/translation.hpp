#ifndef KWSEL_TRANSLATION_HPP_
#define KWSEL_TRANSLATION_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "kwsel/corpus.hpp"

namespace kwsel {

/// Mutual information between the binary presence variables of two keywords,
/// from document-level co-occurrence. Natural log, 0 * log 0 = 0, clamped at
/// 0 from below to absorb floating-point negatives.
double mutual_information(const CorpusStats& stats, std::size_t i, std::size_t j);

/// Sparse row-normalized translation probabilities p(t_i | t_j).
///
/// Row i runs over the conditioning keyword j and sums to 1 when nonempty;
/// only pairs with positive document co-occurrence (plus the self pair) are
/// materialized, and entries whose MI is zero are absent.
class TranslationMatrix {
public:
    struct Entry {
        std::size_t index; // j in a row, i in a column
        double mi;         // unnormalized I(t_i; t_j)
        double p;          // p_MI, normalized over the row's conditioning terms
    };

    std::size_t size() const { return rows_.size(); }
    const std::vector<Entry>& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<Entry>& column(std::size_t j) const { return cols_.at(j); }
    /// Unnormalized MI row sum, the normalizer of row i.
    double row_sum(std::size_t i) const { return row_sums_.at(i); }
    /// Indices whose row had zero MI mass and was left empty.
    const std::vector<std::size_t>& empty_rows() const { return empty_rows_; }

    /// Build a matrix from explicit rows (index, p) for synthetic instances;
    /// values are taken as-is, with mi set equal to p.
    static TranslationMatrix from_rows(
        std::size_t n, const std::vector<std::vector<std::pair<std::size_t, double>>>& rows);

private:
    friend TranslationMatrix translation_matrix(const CorpusStats&, unsigned);
    void build_columns();

    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<Entry>> cols_;
    std::vector<double> row_sums_;
    std::vector<std::size_t> empty_rows_;
};

/// Compute the full matrix from corpus statistics. Rows are independent;
/// threads == 0 uses all cores.
TranslationMatrix translation_matrix(const CorpusStats& stats, unsigned threads = 1);

} // namespace kwsel

#endif // KWSEL_TRANSLATION_HPP_
