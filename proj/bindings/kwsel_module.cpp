#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kwsel/baselines.hpp"
#include "kwsel/corpus.hpp"
#include "kwsel/evaluation.hpp"
#include "kwsel/mixture.hpp"
#include "kwsel/selector.hpp"
#include "kwsel/translation.hpp"

namespace py = pybind11;
using namespace kwsel;

namespace {

std::vector<std::size_t> as_indices(const py::iterable& it) {
    std::vector<std::size_t> out;
    for (const auto& v : it) out.push_back(v.cast<std::size_t>());
    return out;
}

} // namespace

PYBIND11_MODULE(_kwsel, m) {
    m.doc() = "Contrastive keyword selection: mixture-model distributions, "
              "MI translation matrices, and submodular subset selection.";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::enum_<CorpusFormat>(m, "CorpusFormat")
        .value("jsonl", CorpusFormat::jsonl)
        .value("plain", CorpusFormat::plain);

    py::enum_<SelectionMethod>(m, "SelectionMethod")
        .value("greedy", SelectionMethod::greedy)
        .value("lazy_greedy", SelectionMethod::lazy_greedy)
        .value("brute_force", SelectionMethod::brute_force)
        .value("top_k", SelectionMethod::top_k)
        .value("rf", SelectionMethod::rf)
        .value("log_odds", SelectionMethod::log_odds)
        .value("pagerank", SelectionMethod::pagerank)
        .value("facility_location", SelectionMethod::facility_location);

    py::class_<Vocabulary, std::shared_ptr<Vocabulary>>(m, "Vocabulary")
        .def(py::init<const std::vector<std::string>&>(), py::arg("keywords"))
        .def("__len__", &Vocabulary::size)
        .def("keywords", &Vocabulary::keywords)
        .def("keyword", &Vocabulary::keyword, py::arg("index"))
        .def("find", [](const Vocabulary& v, const std::string& kw) -> py::object {
            const auto idx = v.find(kw);
            return idx ? py::cast(*idx) : py::none();
        });

    py::class_<Document>(m, "Document")
        .def(py::init<>())
        .def_readwrite("id", &Document::id)
        .def_readwrite("tokens", &Document::tokens);

    py::class_<DocumentSet>(m, "DocumentSet")
        .def(py::init<>())
        .def_readwrite("docs", &DocumentSet::docs)
        .def_readwrite("source_label", &DocumentSet::source_label)
        .def("__len__", [](const DocumentSet& d) { return d.docs.size(); });

    py::class_<CorpusStats>(m, "CorpusStats")
        .def_readonly("term_freq", &CorpusStats::term_freq)
        .def_readonly("doc_count", &CorpusStats::doc_count)
        .def_readonly("doc_presence", &CorpusStats::doc_presence)
        .def_property_readonly("vocab", [](const CorpusStats& s) { return s.vocab; })
        .def("co_occurrence", &CorpusStats::co_occurrence, py::arg("i"), py::arg("j"))
        .def("total_term_freq", &CorpusStats::total_term_freq);

    py::class_<Distribution>(m, "Distribution")
        .def(py::init([](std::shared_ptr<Vocabulary> vocab, std::vector<double> probs) {
                 return Distribution{std::move(vocab), std::move(probs)};
             }),
             py::arg("vocab"), py::arg("probs"))
        .def_readonly("probs", &Distribution::probs)
        .def_property_readonly("vocab", [](const Distribution& d) { return d.vocab; });

    py::class_<TranslationMatrix>(m, "TranslationMatrix")
        .def_static("from_rows", &TranslationMatrix::from_rows, py::arg("n"), py::arg("rows"))
        .def("__len__", &TranslationMatrix::size)
        .def("row",
             [](const TranslationMatrix& t, std::size_t i) {
                 std::vector<std::tuple<std::size_t, double, double>> out;
                 for (const auto& e : t.row(i)) out.emplace_back(e.index, e.mi, e.p);
                 return out;
             },
             py::arg("i"), "Row entries as (j, mi, p) tuples")
        .def("row_sum", &TranslationMatrix::row_sum, py::arg("i"))
        .def("empty_rows", &TranslationMatrix::empty_rows);

    py::class_<EmConfig>(m, "EmConfig")
        .def(py::init<>())
        .def_readwrite("lambda_", &EmConfig::lambda)
        .def_readwrite("max_iters", &EmConfig::max_iters)
        .def_readwrite("tol", &EmConfig::tol)
        .def_readwrite("restarts", &EmConfig::restarts)
        .def_readwrite("seed", &EmConfig::seed)
        .def_readwrite("threads", &EmConfig::threads);

    py::class_<EmResult>(m, "EmResult")
        .def_readonly("theta_d", &EmResult::theta_d)
        .def_readonly("final_llv", &EmResult::final_llv)
        .def_readonly("llv_trace", &EmResult::llv_trace)
        .def_readonly("restart_index", &EmResult::restart_index)
        .def_readonly("iterations_used", &EmResult::iterations_used)
        .def_readonly("restart_final_llvs", &EmResult::restart_final_llvs);

    py::class_<CoarsenedDistribution>(m, "CoarsenedDistribution")
        .def_readonly("probs", &CoarsenedDistribution::probs)
        .def_readonly("normalized", &CoarsenedDistribution::normalized);

    py::class_<SelectionResult>(m, "SelectionResult")
        .def_readonly("selected", &SelectionResult::selected)
        .def_readonly("objective_trace", &SelectionResult::objective_trace)
        .def_readonly("method", &SelectionResult::method)
        .def_readonly("gain_evaluations", &SelectionResult::gain_evaluations)
        .def_readonly("diagnostics", &SelectionResult::diagnostics);

    py::class_<GroundTruthSet>(m, "GroundTruthSet")
        .def(py::init([](std::vector<std::string> keywords) {
                 return GroundTruthSet{std::move(keywords)};
             }),
             py::arg("keywords"))
        .def_readonly("keywords", &GroundTruthSet::keywords);

    py::class_<VectorTable>(m, "VectorTable")
        .def_readonly("dim", &VectorTable::dim)
        .def_readonly("duplicate_count", &VectorTable::duplicate_count)
        .def_readonly("zero_vector_count", &VectorTable::zero_vector_count)
        .def("__len__", [](const VectorTable& t) { return t.vectors.size(); })
        .def("get", [](const VectorTable& t, const std::string& kw) -> py::object {
            const auto it = t.vectors.find(normalize_keyword(kw));
            return it == t.vectors.end() ? py::none() : py::cast(it->second);
        });

    py::class_<CcScore>(m, "CcScore")
        .def_readonly("value", &CcScore::value)
        .def_readonly("pairs_counted", &CcScore::pairs_counted)
        .def_readonly("pairs_skipped", &CcScore::pairs_skipped);

    py::class_<ReprScore>(m, "ReprScore")
        .def_readonly("value", &ReprScore::value)
        .def_readonly("covered_ground_truth", &ReprScore::covered_ground_truth)
        .def_readonly("skipped_ground_truth", &ReprScore::skipped_ground_truth)
        .def_readonly("skipped_selected", &ReprScore::skipped_selected);

    // corpus
    m.def("normalize_keyword", &normalize_keyword, py::arg("raw"));
    m.def("tokenize", &tokenize, py::arg("text"));
    m.def("load_documents", &load_documents, py::arg("path"), py::arg("format"),
          py::arg("source_label") = "");
    m.def("load_vocabulary",
          [](const std::filesystem::path& path) {
              return std::make_shared<Vocabulary>(load_vocabulary(path));
          },
          py::arg("path"));
    m.def("count_occurrences",
          [](const DocumentSet& docs, std::shared_ptr<Vocabulary> vocab, unsigned threads) {
              return count_occurrences(docs, std::move(vocab), threads);
          },
          py::arg("docs"), py::arg("vocab"), py::arg("threads") = 1);
    m.def("merge_stats", &merge_stats, py::arg("a"), py::arg("b"));
    m.def("relative_frequency", &relative_frequency, py::arg("stats"));

    // mixture
    m.def("background_model", &background_model, py::arg("context_stats"));
    m.def("log_likelihood", &log_likelihood, py::arg("target_stats"), py::arg("theta_d"),
          py::arg("theta_b"), py::arg("lambda_"));
    m.def("em_update", &em_update, py::arg("target_stats"), py::arg("theta_d"),
          py::arg("theta_b"), py::arg("lambda_"));
    m.def("em_estimate", &em_estimate, py::arg("target_stats"), py::arg("theta_b"),
          py::arg("config") = EmConfig{});

    // translation
    m.def("mutual_information", &mutual_information, py::arg("stats"), py::arg("i"),
          py::arg("j"));
    m.def("translation_matrix", &translation_matrix, py::arg("stats"), py::arg("threads") = 1);

    // selector
    m.attr("OBJECTIVE_FLOOR") = kObjectiveFloor;
    m.def("coarsen",
          [](const Distribution& p, const TranslationMatrix& t, const py::iterable& s) {
              return coarsen(p, t, as_indices(s));
          },
          py::arg("p"), py::arg("t"), py::arg("s"));
    m.def("objective",
          [](const Distribution& p, const TranslationMatrix& t, const py::iterable& s) {
              return objective(p, t, as_indices(s));
          },
          py::arg("p"), py::arg("t"), py::arg("s"));
    m.def("greedy_select", &greedy_select, py::arg("p"), py::arg("t"), py::arg("k"),
          py::arg("threads") = 1);
    m.def("lazy_greedy_select", &lazy_greedy_select, py::arg("p"), py::arg("t"), py::arg("k"),
          py::arg("threads") = 1);
    m.def("brute_force_select", &brute_force_select, py::arg("p"), py::arg("t"), py::arg("k"));
    m.def("top_k_select", &top_k_select, py::arg("dist"), py::arg("k"));

    // baselines
    m.def("select_rf", &select_rf, py::arg("target_stats"), py::arg("k"));
    m.def("select_log_odds", &select_log_odds, py::arg("target_stats"),
          py::arg("context_stats"), py::arg("k"), py::arg("alpha") = 0.01);
    m.def("select_pagerank", &select_pagerank, py::arg("target_stats"), py::arg("k"),
          py::arg("damping") = 0.85, py::arg("pr_tol") = 1e-10);
    m.def("select_facility_location", &select_facility_location, py::arg("target_stats"),
          py::arg("k"), py::arg("threads") = 1, py::arg("use_lazy") = true);

    // evaluation
    m.def("load_ground_truth", &load_ground_truth, py::arg("path"));
    m.def("load_vectors", &load_vectors, py::arg("path"));
    m.def("joint_entropy", &joint_entropy, py::arg("stats"), py::arg("i"), py::arg("j"));
    m.def("category_correspondence",
          [](const CorpusStats& stats, const std::vector<std::string>& selected,
             const GroundTruthSet& categories) {
              return category_correspondence(stats, selected, categories);
          },
          py::arg("stats"), py::arg("selected"), py::arg("categories"));
    m.def("representativeness", &representativeness, py::arg("selected"),
          py::arg("ground_truth"), py::arg("vectors"));
}
