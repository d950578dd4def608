#include "kwsel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kwsel/translation.hpp"

namespace kwsel {

namespace {

double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

std::vector<std::size_t> resolve_all(const CorpusStats& stats,
                                     const std::vector<std::string>& keywords,
                                     const char* what) {
    std::vector<std::size_t> indices;
    indices.reserve(keywords.size());
    for (const std::string& kw : keywords) {
        const auto idx = stats.vocab ? stats.vocab->find(kw) : std::nullopt;
        if (!idx)
            throw InputError(std::string(what) + " keyword not covered by corpus stats: " + kw);
        indices.push_back(*idx);
    }
    return indices;
}

} // namespace

GroundTruthSet load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open ground-truth file: " + path.string());
    GroundTruthSet set;
    std::string line;
    std::unordered_map<std::string, bool> seen;
    while (std::getline(in, line)) {
        std::string norm = normalize_keyword(line);
        if (norm.empty() || seen.count(norm)) continue;
        seen.emplace(norm, true);
        set.keywords.push_back(std::move(norm));
    }
    if (set.keywords.empty()) throw InputError("empty ground-truth set: " + path.string());
    return set;
}

VectorTable load_vectors(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vector file: " + path.string());
    VectorTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": expected keyword<TAB>values");
        const std::string keyword = normalize_keyword(line.substr(0, tab));
        if (keyword.empty())
            throw InputError("line " + std::to_string(line_no) + ": empty keyword");

        std::istringstream values(line.substr(tab + 1));
        std::vector<double> vec;
        double v = 0.0;
        while (values >> v) vec.push_back(v);
        if (!values.eof())
            throw InputError("line " + std::to_string(line_no) + ": non-numeric vector component");
        if (vec.empty())
            throw InputError("line " + std::to_string(line_no) + ": empty vector");
        if (table.dim == 0) table.dim = vec.size();
        if (vec.size() != table.dim)
            throw InputError("inconsistent vector dimension at line " + std::to_string(line_no) +
                             ": got " + std::to_string(vec.size()) + ", expected " +
                             std::to_string(table.dim));

        const bool all_zero = std::all_of(vec.begin(), vec.end(), [](double x) { return x == 0.0; });
        if (all_zero) {
            table.zero_vector_count += 1;
            continue;
        }
        if (table.vectors.count(keyword)) table.duplicate_count += 1; // last wins
        table.vectors[keyword] = std::move(vec);
    }
    return table;
}

double joint_entropy(const CorpusStats& stats, std::size_t i, std::size_t j) {
    const PresenceCells c = presence_cells(stats, i, j);
    return entropy_term(c.p00) + entropy_term(c.p01) + entropy_term(c.p10) + entropy_term(c.p11);
}

CcScore category_correspondence(const CorpusStats& stats,
                                std::span<const std::size_t> selected,
                                std::span<const std::size_t> categories) {
    if (selected.empty()) throw InputError("empty selection");
    if (categories.empty()) throw InputError("empty category set");
    CcScore score;
    for (const std::size_t t : selected) {
        for (const std::size_t c : categories) {
            const double h = joint_entropy(stats, t, c);
            if (h <= 0.0) {
                score.pairs_skipped += 1;
                continue;
            }
            score.value += mutual_information(stats, t, c) / h;
            score.pairs_counted += 1;
        }
    }
    return score;
}

CcScore category_correspondence(const CorpusStats& stats,
                                const std::vector<std::string>& selected,
                                const GroundTruthSet& categories) {
    const auto s = resolve_all(stats, selected, "selected");
    const auto c = resolve_all(stats, categories.keywords, "category");
    return category_correspondence(stats, s, c);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa <= 0.0 || bb <= 0.0) return 0.0;
    const double cos = dot / std::sqrt(aa * bb);
    return std::clamp(cos, -1.0, 1.0);
}

ReprScore representativeness(const std::vector<std::string>& selected,
                             const GroundTruthSet& ground_truth,
                             const VectorTable& vectors) {
    std::vector<const std::vector<double>*> selected_vecs;
    ReprScore score;
    for (const std::string& kw : selected) {
        const auto it = vectors.vectors.find(normalize_keyword(kw));
        if (it == vectors.vectors.end()) {
            score.skipped_selected += 1;
            continue;
        }
        selected_vecs.push_back(&it->second);
    }
    if (selected_vecs.empty()) throw InputError("no selected keyword has a vector");

    double sum = 0.0;
    for (const std::string& kw : ground_truth.keywords) {
        const auto it = vectors.vectors.find(kw);
        if (it == vectors.vectors.end()) {
            score.skipped_ground_truth += 1;
            continue;
        }
        double best = -1.0;
        for (const auto* vec : selected_vecs)
            best = std::max(best, cosine_similarity(it->second, *vec));
        sum += best;
        score.covered_ground_truth += 1;
    }
    if (score.covered_ground_truth == 0)
        throw InputError("no ground-truth keyword has a vector");
    score.value = sum / static_cast<double>(score.covered_ground_truth);
    return score;
}

} // namespace kwsel
