// kwsel: contrastive keyword selection over a target/context corpus pair.
//
// Subcommands: stats (corpus statistics export), select (keyword subset
// selection by one of several methods), evaluate (score a selection against
// a ground-truth set).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kwsel/baselines.hpp"
#include "kwsel/corpus.hpp"
#include "kwsel/evaluation.hpp"
#include "kwsel/mixture.hpp"
#include "kwsel/selector.hpp"
#include "kwsel/translation.hpp"

namespace {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("KWSEL_LOG");
        if (env == nullptr) return LogLevel::info;
        const std::string value(env);
        if (value == "error") return LogLevel::error;
        if (value == "debug") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[info] " << msg << "\n";
}

void log_warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw kwsel::InputError("cannot write output file: " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

kwsel::CorpusFormat parse_format(const std::string& name) {
    if (name == "jsonl") return kwsel::CorpusFormat::jsonl;
    if (name == "plain") return kwsel::CorpusFormat::plain;
    throw kwsel::InputError("unknown corpus format: " + name);
}

struct RunConfig {
    std::string target_path;
    std::string context_path;
    std::string vocab_path;
    std::string format = "jsonl";
    std::string method;
    std::size_t k = 20;
    double lambda = 0.9;
    int em_iters = 1000;
    double em_tol = 1e-9;
    int em_restarts = 5;
    std::uint64_t seed = 42;
    double lo_alpha = 0.01;
    double pr_damping = 0.85;
    unsigned threads = 0; // 0 = all cores
    std::string output_path;
    std::string dump_translation;
    std::string dump_distribution;
    std::string metric;
    std::string selection_path;
    std::string ground_truth_path;
    std::string vectors_path;
};

std::shared_ptr<const kwsel::Vocabulary> load_vocab_shared(const std::string& path) {
    return std::make_shared<const kwsel::Vocabulary>(kwsel::load_vocabulary(path));
}

void write_selection(Output& output, const kwsel::SelectionResult& result,
                     const kwsel::Vocabulary& vocab) {
    output.out() << "rank\tkeyword\tobjective_after_insertion\n";
    for (std::size_t r = 0; r < result.selected.size(); ++r) {
        output.out() << (r + 1) << '\t' << vocab.keyword(result.selected[r]) << '\t'
                     << fmt(result.objective_trace[r]) << '\n';
    }
}

void write_distribution(const std::string& path, const kwsel::Distribution& dist) {
    Output output(path);
    std::vector<std::size_t> order(dist.probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&dist](std::size_t a, std::size_t b) {
        if (dist.probs[a] != dist.probs[b]) return dist.probs[a] > dist.probs[b];
        return a < b;
    });
    output.out() << "keyword\tprobability\n";
    for (const std::size_t i : order)
        output.out() << dist.vocab->keyword(i) << '\t' << fmt(dist.probs[i]) << '\n';
}

void write_translation(const std::string& path, const kwsel::TranslationMatrix& matrix,
                       const kwsel::Vocabulary& vocab) {
    Output output(path);
    output.out() << "i_keyword\tj_keyword\tI\tp_mi\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (const auto& entry : matrix.row(i)) {
            output.out() << vocab.keyword(i) << '\t' << vocab.keyword(entry.index) << '\t'
                         << fmt(entry.mi) << '\t' << fmt(entry.p) << '\n';
        }
    }
}

int cmd_stats(const RunConfig& config) {
    log_info("stats: target=" + config.target_path + " vocab=" + config.vocab_path +
             " format=" + config.format + " threads=" + std::to_string(config.threads));
    const auto vocab = load_vocab_shared(config.vocab_path);
    const auto docs =
        kwsel::load_documents(config.target_path, parse_format(config.format), "target");
    const auto stats = kwsel::count_occurrences(docs, vocab, config.threads);

    Output output(config.output_path);
    output.out() << "keyword\tterm_freq\tdoc_presence\n";
    for (std::size_t i = 0; i < vocab->size(); ++i) {
        output.out() << vocab->keyword(i) << '\t' << stats.term_freq[i] << '\t'
                     << stats.doc_presence[i] << '\n';
    }

    std::size_t nonzero = 0;
    for (const auto c : stats.term_freq)
        if (c > 0) ++nonzero;
    log_info("N=" + std::to_string(stats.doc_count) + " |V|=" + std::to_string(vocab->size()) +
             " nonzero_keywords=" + std::to_string(nonzero));
    return 0;
}

int cmd_select(const RunConfig& config, const std::vector<std::string>& ignored_flags) {
    const bool needs_context =
        config.method == "mm" || config.method == "kl-mm" || config.method == "lo";
    if (needs_context && config.context_path.empty())
        throw kwsel::InputError("context corpus required for method " + config.method);
    for (const std::string& flag : ignored_flags)
        log_warn("ignoring " + flag + " for method " + config.method);

    log_info("select: method=" + config.method + " k=" + std::to_string(config.k) +
             " target=" + config.target_path +
             (config.context_path.empty() ? "" : " context=" + config.context_path) +
             " vocab=" + config.vocab_path + " lambda=" + fmt(config.lambda) +
             " em_iters=" + std::to_string(config.em_iters) + " em_tol=" + fmt(config.em_tol) +
             " em_restarts=" + std::to_string(config.em_restarts) +
             " seed=" + std::to_string(config.seed) + " lo_alpha=" + fmt(config.lo_alpha) +
             " pr_damping=" + fmt(config.pr_damping) +
             " threads=" + std::to_string(config.threads));

    const auto vocab = load_vocab_shared(config.vocab_path);
    const auto format = parse_format(config.format);
    const auto target_docs = kwsel::load_documents(config.target_path, format, "target");
    const auto target_stats = kwsel::count_occurrences(target_docs, vocab, config.threads);

    std::optional<kwsel::CorpusStats> context_stats;
    if (!config.context_path.empty()) {
        const auto context_docs = kwsel::load_documents(config.context_path, format, "context");
        context_stats = kwsel::count_occurrences(context_docs, vocab, config.threads);
    }

    auto estimate_theta_d = [&]() {
        kwsel::EmConfig em;
        em.lambda = config.lambda;
        em.max_iters = config.em_iters;
        em.tol = config.em_tol;
        em.restarts = config.em_restarts;
        em.seed = config.seed;
        em.threads = config.threads;
        const auto theta_b = kwsel::background_model(*context_stats);
        auto result = kwsel::em_estimate(target_stats, theta_b, em);
        log_info("em: restart=" + std::to_string(result.restart_index) +
                 " iterations=" + std::to_string(result.iterations_used) +
                 " llv=" + fmt(result.final_llv));
        return std::move(result.theta_d);
    };

    kwsel::SelectionResult result;
    std::optional<kwsel::Distribution> used_distribution;
    std::optional<kwsel::TranslationMatrix> used_translation;

    if (config.method == "rf") {
        result = kwsel::select_rf(target_stats, config.k);
        used_distribution = kwsel::relative_frequency(target_stats);
    } else if (config.method == "mm") {
        used_distribution = estimate_theta_d();
        result = kwsel::top_k_select(*used_distribution, config.k);
    } else if (config.method == "kl-rf" || config.method == "kl-mm" ||
               config.method == "brute") {
        used_distribution = (config.method == "kl-mm" ||
                             (config.method == "brute" && context_stats.has_value()))
                                ? estimate_theta_d()
                                : kwsel::relative_frequency(target_stats);
        used_translation = kwsel::translation_matrix(target_stats, config.threads);
        result = config.method == "brute"
                     ? kwsel::brute_force_select(*used_distribution, *used_translation, config.k)
                     : kwsel::lazy_greedy_select(*used_distribution, *used_translation,
                                                 config.k, config.threads);
    } else if (config.method == "lo") {
        result = kwsel::select_log_odds(target_stats, *context_stats, config.k, config.lo_alpha);
    } else if (config.method == "pr") {
        result = kwsel::select_pagerank(target_stats, config.k, config.pr_damping);
    } else if (config.method == "fl") {
        result = kwsel::select_facility_location(target_stats, config.k, config.threads);
    } else {
        throw kwsel::InputError("unknown method: " + config.method);
    }

    for (const std::string& note : result.diagnostics) log_warn(note);
    log_info("gain_evaluations=" + std::to_string(result.gain_evaluations));

    if (!config.dump_translation.empty()) {
        if (!used_translation)
            used_translation = kwsel::translation_matrix(target_stats, config.threads);
        write_translation(config.dump_translation, *used_translation, *vocab);
    }
    if (!config.dump_distribution.empty()) {
        if (used_distribution) {
            write_distribution(config.dump_distribution, *used_distribution);
        } else {
            log_warn("--dump-distribution has no distribution for method " + config.method);
        }
    }

    Output output(config.output_path);
    write_selection(output, result, *vocab);
    return 0;
}

std::vector<std::string> read_selection_keywords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kwsel::InputError("cannot open selection file: " + path);
    std::vector<std::string> keywords;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (first && !fields.empty() && fields[0] == "rank") {
            first = false;
            continue; // header row of a select output
        }
        first = false;
        const std::string raw = fields.size() >= 2 ? fields[1] : fields[0];
        const std::string norm = kwsel::normalize_keyword(raw);
        if (!norm.empty()) keywords.push_back(norm);
    }
    if (keywords.empty()) throw kwsel::InputError("selection file has no keywords: " + path);
    return keywords;
}

int cmd_evaluate(const RunConfig& config) {
    log_info("evaluate: metric=" + config.metric + " selection=" + config.selection_path +
             " ground_truth=" + config.ground_truth_path);
    const auto selection = read_selection_keywords(config.selection_path);
    const auto ground_truth = kwsel::load_ground_truth(config.ground_truth_path);

    Output output(config.output_path);
    output.out() << "metric\tvalue\tcovered\tskipped\n";

    if (config.metric == "cc") {
        if (config.target_path.empty())
            throw kwsel::InputError("cc metric requires --target (corpus to count pairs in)");
        // Count selection and category keywords over the same corpus.
        std::vector<std::string> combined = selection;
        combined.insert(combined.end(), ground_truth.keywords.begin(),
                        ground_truth.keywords.end());
        const auto vocab = std::make_shared<const kwsel::Vocabulary>(combined);
        const auto docs =
            kwsel::load_documents(config.target_path, parse_format(config.format), "target");
        const auto stats = kwsel::count_occurrences(docs, vocab, config.threads);
        const auto score = kwsel::category_correspondence(stats, selection, ground_truth);
        output.out() << "cc\t" << fmt(score.value) << '\t' << score.pairs_counted << '\t'
                     << score.pairs_skipped << '\n';
        return 0;
    }
    if (config.metric == "repr") {
        if (config.vectors_path.empty())
            throw kwsel::InputError("repr metric requires --vectors");
        const auto vectors = kwsel::load_vectors(config.vectors_path);
        if (vectors.duplicate_count > 0)
            log_warn(std::to_string(vectors.duplicate_count) +
                     " duplicate vector keywords (last occurrence wins)");
        const auto score = kwsel::representativeness(selection, ground_truth, vectors);
        if (score.skipped_selected > 0)
            log_warn(std::to_string(score.skipped_selected) +
                     " selected keywords have no vector");
        output.out() << "repr\t" << fmt(score.value) << '\t' << score.covered_ground_truth
                     << '\t' << score.skipped_ground_truth << '\n';
        return 0;
    }
    throw kwsel::InputError("unknown metric: " + config.metric);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contrastive keyword selection for a target corpus against a context corpus"};
    app.require_subcommand(1);

    RunConfig config;

    auto add_corpus_flags = [&config](CLI::App* cmd, bool context_too) {
        cmd->add_option("--target", config.target_path, "Target corpus file")->required();
        if (context_too)
            cmd->add_option("--context", config.context_path, "Context corpus file");
        cmd->add_option("--vocab", config.vocab_path, "Candidate keyword file, one per line")
            ->required();
        cmd->add_option("--format", config.format, "Corpus format: jsonl or plain")
            ->check(CLI::IsMember({"jsonl", "plain"}))
            ->capture_default_str();
        cmd->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
            ->capture_default_str();
    };

    CLI::App* stats = app.add_subcommand("stats", "Export corpus statistics as TSV");
    add_corpus_flags(stats, false);
    stats->add_option("--output,-o", config.output_path, "Output TSV path (default stdout)");

    CLI::App* select = app.add_subcommand("select", "Select k keywords");
    add_corpus_flags(select, true);
    select->add_option("--method", config.method, "mm, kl-mm, kl-rf, rf, lo, pr, fl, brute")
        ->required()
        ->check(CLI::IsMember({"mm", "kl-mm", "kl-rf", "rf", "lo", "pr", "fl", "brute"}));
    select->add_option("--k,-k", config.k, "Number of keywords to select")->required();
    auto* opt_lambda =
        select->add_option("--lambda", config.lambda, "Background mixing weight in [0, 1)")
            ->capture_default_str();
    auto* opt_iters = select->add_option("--em-iters", config.em_iters, "Max EM iterations")
                          ->capture_default_str();
    auto* opt_tol = select->add_option("--em-tol", config.em_tol, "EM convergence tolerance")
                        ->capture_default_str();
    auto* opt_restarts =
        select->add_option("--em-restarts", config.em_restarts, "EM random restarts")
            ->capture_default_str();
    select->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    auto* opt_alpha =
        select->add_option("--lo-alpha", config.lo_alpha, "Dirichlet prior pseudo-count")
            ->capture_default_str();
    auto* opt_damping =
        select->add_option("--pr-damping", config.pr_damping, "PageRank damping factor")
            ->capture_default_str();
    select->add_option("--output,-o", config.output_path, "Output TSV path (default stdout)");
    select->add_option("--dump-translation", config.dump_translation,
                       "Write the translation matrix as TSV");
    select->add_option("--dump-distribution", config.dump_distribution,
                       "Write the selection distribution as TSV");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a selection");
    evaluate->add_option("--metric", config.metric, "cc or repr")
        ->required()
        ->check(CLI::IsMember({"cc", "repr"}));
    evaluate->add_option("--selection", config.selection_path, "Selection TSV or keyword list")
        ->required();
    evaluate->add_option("--ground-truth", config.ground_truth_path, "Ground-truth keywords")
        ->required();
    evaluate->add_option("--vectors", config.vectors_path, "Keyword vector table (repr)");
    evaluate->add_option("--target", config.target_path, "Corpus for pair counting (cc)");
    evaluate->add_option("--format", config.format, "Corpus format: jsonl or plain")
        ->check(CLI::IsMember({"jsonl", "plain"}))
        ->capture_default_str();
    evaluate->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    evaluate->add_option("--output,-o", config.output_path, "Output TSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(stats)) return cmd_stats(config);
        if (app.got_subcommand(select)) {
            // Flags that the chosen method does not consume.
            std::vector<std::string> ignored;
            const bool uses_em = config.method == "mm" || config.method == "kl-mm" ||
                                 (config.method == "brute" && !config.context_path.empty());
            if (!uses_em) {
                if (opt_lambda->count() > 0) ignored.push_back("--lambda");
                if (opt_iters->count() > 0) ignored.push_back("--em-iters");
                if (opt_tol->count() > 0) ignored.push_back("--em-tol");
                if (opt_restarts->count() > 0) ignored.push_back("--em-restarts");
            }
            if (config.method != "lo" && opt_alpha->count() > 0) ignored.push_back("--lo-alpha");
            if (config.method != "pr" && opt_damping->count() > 0)
                ignored.push_back("--pr-damping");
            return cmd_select(config, ignored);
        }
        if (app.got_subcommand(evaluate)) return cmd_evaluate(config);
    } catch (const kwsel::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
