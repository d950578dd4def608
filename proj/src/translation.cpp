#include "kwsel/translation.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace kwsel {

namespace {

inline double mi_term(double joint, double marginal_product) {
    if (joint <= 0.0) return 0.0;
    return joint * std::log(joint / marginal_product);
}

} // namespace

double mutual_information(const CorpusStats& stats, std::size_t i, std::size_t j) {
    const PresenceCells c = presence_cells(stats, i, j);
    const double qi = 1.0 - c.pi;
    const double qj = 1.0 - c.pj;
    double mi = mi_term(c.p00, qi * qj) + mi_term(c.p01, qi * c.pj) +
                mi_term(c.p10, c.pi * qj) + mi_term(c.p11, c.pi * c.pj);
    return std::max(0.0, mi);
}

void TranslationMatrix::build_columns() {
    cols_.assign(rows_.size(), {});
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const Entry& e : rows_[i]) cols_[e.index].push_back({i, e.mi, e.p});
    }
}

TranslationMatrix TranslationMatrix::from_rows(
    std::size_t n, const std::vector<std::vector<std::pair<std::size_t, double>>>& rows) {
    TranslationMatrix m;
    m.rows_.resize(n);
    m.row_sums_.assign(n, 0.0);
    for (std::size_t i = 0; i < rows.size() && i < n; ++i) {
        for (const auto& [j, p] : rows[i]) {
            m.rows_[i].push_back({j, p, p});
            m.row_sums_[i] += p;
        }
        std::sort(m.rows_[i].begin(), m.rows_[i].end(),
                  [](const Entry& a, const Entry& b) { return a.index < b.index; });
    }
    for (std::size_t i = 0; i < n; ++i)
        if (m.rows_[i].empty()) m.empty_rows_.push_back(i);
    m.build_columns();
    return m;
}

TranslationMatrix translation_matrix(const CorpusStats& stats, unsigned threads) {
    const std::size_t n = stats.vocab ? stats.vocab->size() : stats.term_freq.size();

    // Sorted neighbor lists; hash-map iteration order must not leak into the
    // row sums.
    std::vector<std::vector<std::size_t>> neighbors(n);
    for (const auto& [i, j, count] : stats.sorted_pairs()) {
        (void)count;
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
    }
    for (auto& list : neighbors) std::sort(list.begin(), list.end());

    TranslationMatrix m;
    m.rows_.resize(n);
    m.row_sums_.assign(n, 0.0);

    detail::parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::vector<TranslationMatrix::Entry> row;
            double sum = 0.0;
            bool saw_self = false;
            auto consider = [&](std::size_t j) {
                const double mi = mutual_information(stats, i, j);
                sum += mi;
                if (mi > 0.0) row.push_back({j, mi, 0.0});
            };
            for (const std::size_t j : neighbors[i]) {
                if (j == i) continue; // diagonal handled below in order
                if (!saw_self && j > i) {
                    consider(i);
                    saw_self = true;
                }
                consider(j);
            }
            if (!saw_self) consider(i);
            if (sum > 0.0) {
                for (auto& e : row) e.p = e.mi / sum;
                m.rows_[i] = std::move(row);
            }
            m.row_sums_[i] = sum;
        }
    });

    for (std::size_t i = 0; i < n; ++i)
        if (m.rows_[i].empty()) m.empty_rows_.push_back(i);
    m.build_columns();
    return m;
}

} // namespace kwsel
