// Copyright 2026 The gbsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gbs/batch.hpp"
#include "gbs/bs_sampler.hpp"
#include "gbs/exact.hpp"
#include "gbs/gbs_sampler.hpp"
#include "gbs/io.hpp"
#include "gbs/matchings.hpp"
#include "gbs/verify.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;

namespace gbs::cli {
namespace {

// Chain lengths used when a verification run does not set one.
constexpr double kVerifyGbsStepConstant = 2e-4;
constexpr std::uint64_t kVerifyBsStepsPerAttempt = 20000;

constexpr int kChecksFailedExit = 3;

std::string version_string() {
    return std::string("gbsample ") + kArtifactVersion + " (file format " + std::to_string(kFormatVersion) + ")";
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

struct ChainFlags {
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double step_constant = 1.0;
    std::uint64_t max_steps = 0;  // 0: use the formula

    void add(CLI::App *app, double default_epsilon) {
        epsilon = default_epsilon;
        app->add_option("--seed", seed, "Master seed")->capture_default_str();
        app->add_option("--epsilon", epsilon, "Target total-variation error, in (0,1)")->capture_default_str();
        app->add_option("--step-constant", step_constant, "Multiplier C on the chain step formula")
            ->capture_default_str();
        app->add_option("--max-steps", max_steps, "Fixed chain length per draw (overrides the formula)");
    }

    ChainConfig config() const {
        ChainConfig c;
        c.seed = seed;
        c.epsilon = epsilon;
        c.step_constant = step_constant;
        if (max_steps > 0) {
            c.max_steps_override = max_steps;
        }
        return c;
    }

    void record(RunManifest &m) const {
        m.seed = seed;
        m.config["epsilon"] = fmt(epsilon);
        m.config["step-constant"] = fmt(step_constant);
        m.config["max-steps"] = std::to_string(max_steps);
    }
};

void write_output(const std::string &out, const std::string &content, const RunManifest &manifest) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    write_file_atomic(out, content);
    write_manifest(manifest, out);
}

std::string join_samples(const std::vector<OutcomeKey> &keys) {
    std::string text;
    for (const auto &k : keys) {
        text += sample_line(k);
    }
    return text;
}

void require_samples(std::uint64_t samples) {
    require(samples >= 1, ErrorKind::Validation, "samples must be ≥ 1");
}

// ---- sample-gbs ----------------------------------------------------------

struct SampleGbs {
    std::string graph;
    double c = 1.0;
    std::uint64_t samples = 1;
    int workers = 1;
    std::string out;
    std::string summary;
    std::string diagnostics;
    ChainFlags chain;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("sample-gbs", "Sample vertex subsets from the graph GBS distribution");
        sub->add_option("--graph", graph, "Graph JSON file")->required();
        sub->add_option("--c", c, "Positive scaling constant c")->capture_default_str();
        sub->add_option("--samples", samples, "Number of samples")->capture_default_str();
        sub->add_option("--workers", workers, "Worker threads (output does not depend on this)")
            ->capture_default_str();
        sub->add_option("--out", out, "Output JSONL file ('-' for stdout)")->required();
        sub->add_option("--summary", summary, "Also write the empirical table as JSON");
        sub->add_option("--diagnostics", diagnostics, "Write one chain trace (step,size,accepted) as CSV");
        chain.add(sub, 0.1);
        sub->callback([this] { run(); });
    }

    void run() const {
        require_samples(samples);
        GbsRequest req{read_graph_file(graph), c, chain.epsilon, chain.config()};
        req.validate();
        const auto keys = run_replicas(
            samples, chain.seed, workers, [&] { return GbsSampler(req); },
            [](GbsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
        RunManifest m{"sample-gbs", {{"graph", graph}}, chain.seed, {}};
        chain.record(m);
        m.config["c"] = fmt(c);
        m.config["samples"] = std::to_string(samples);
        write_output(out, join_samples(keys), m);
        if (!summary.empty()) {
            write_output(summary, table_to_json(empirical_distribution(OutcomeKind::Subset, keys)), m);
        }
        if (!diagnostics.empty()) {
            const GbsSampler sampler(req);
            ChainConfig cfg = req.chain;
            cfg.epsilon = chain_epsilon(req.epsilon);
            Rng rng(derive_seed(chain.seed, ~std::uint64_t{0}));
            std::ostringstream trace;
            sample_matching(sampler.product().graph, cfg, rng, &trace);
            write_output(diagnostics, trace.str(), m);
        }
    }
};

// ---- sample-bs -----------------------------------------------------------

struct SampleBs {
    std::string matrix;
    std::uint64_t samples = 1;
    int workers = 1;
    int k = 0;
    std::string weight_mode = "oracle";
    int anneal_stages = 8;
    std::uint64_t anneal_steps = 200000;
    int retry_budget = 0;
    std::string out;
    std::string summary;
    ChainFlags chain;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("sample-bs", "Sample occupancy vectors from the boson-sampling distribution");
        sub->add_option("--matrix", matrix, "Non-negative matrix (CSV, or JSON by extension)")->required();
        sub->add_option("--samples", samples, "Number of samples")->capture_default_str();
        sub->add_option("--workers", workers, "Worker threads (output does not depend on this)")
            ->capture_default_str();
        sub->add_option("--k", k, "Copies per row (default ceil(4n^2/epsilon))");
        sub->add_option("--pm-weight-mode", weight_mode, "Hole weights: oracle or anneal")
            ->check(CLI::IsMember({"oracle", "anneal"}))
            ->capture_default_str();
        sub->add_option("--anneal-stages", anneal_stages, "Stages for --pm-weight-mode anneal")
            ->capture_default_str();
        sub->add_option("--anneal-steps", anneal_steps, "Chain steps per annealing stage")->capture_default_str();
        sub->add_option("--retry-budget", retry_budget, "Attempts per sample (default 64*ceil(ln(1/eps)))");
        sub->add_option("--out", out, "Output JSONL file ('-' for stdout)")->required();
        sub->add_option("--summary", summary, "Also write the empirical table as JSON");
        chain.add(sub, 0.1);
        sub->callback([this] { run(); });
    }

    void run() const {
        require_samples(samples);
        BsRequest req;
        req.matrix = read_matrix_file(matrix);
        req.epsilon = chain.epsilon;
        req.pm.chain = chain.config();
        req.pm.retry_budget = retry_budget;
        if (k > 0) {
            req.k_override = k;
        }
        req.weight_mode = weight_mode == "oracle" ? PmWeightMode::Oracle : PmWeightMode::Anneal;
        req.anneal_stages = anneal_stages;
        req.anneal_steps_per_stage = anneal_steps;
        req.validate();
        const auto keys = run_replicas(
            samples, chain.seed, workers, [&] { return BsSampler(req); },
            [](BsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
        RunManifest m{"sample-bs", {{"matrix", matrix}}, chain.seed, {}};
        chain.record(m);
        m.config["samples"] = std::to_string(samples);
        m.config["k"] = std::to_string(k);
        m.config["pm-weight-mode"] = weight_mode;
        m.config["anneal-stages"] = std::to_string(anneal_stages);
        m.config["anneal-steps"] = std::to_string(anneal_steps);
        m.config["retry-budget"] = std::to_string(retry_budget);
        write_output(out, join_samples(keys), m);
        if (!summary.empty()) {
            write_output(summary, table_to_json(empirical_distribution(OutcomeKind::Occupancy, keys)), m);
        }
    }
};

// ---- exact ---------------------------------------------------------------

struct Exact {
    std::string graph;
    std::string matrix;
    double c = 1.0;
    int k = 0;
    double epsilon = 0.1;
    std::string out;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("exact", "Exact target distributions as JSON tables");
        sub->require_subcommand(1);
        auto *gbs = sub->add_subcommand("gbs", "mu(S) ~ c^{2|S|} Haf(A_S)^2");
        gbs->add_option("--graph", graph, "Graph JSON file")->required();
        gbs->add_option("--c", c, "Positive scaling constant c")->capture_default_str();
        gbs->callback([this] {
            emit("exact gbs", {{"graph", graph}}, exact_gbs_distribution(read_graph_file(graph), c),
                 {{"c", fmt(c)}});
        });
        auto *bs = sub->add_subcommand("bs", "mu(z) ~ Perm(A_z)^2 / prod z_i!");
        bs->add_option("--matrix", matrix, "Matrix file")->required();
        bs->callback([this] {
            emit("exact bs", {{"matrix", matrix}}, exact_bs_distribution(read_matrix_file(matrix)), {});
        });
        auto *gadget = sub->add_subcommand("gadget", "The gadget's occupancy law nu(z)");
        gadget->add_option("--matrix", matrix, "Matrix file")->required();
        gadget->add_option("--k", k, "Copies per row (default ceil(4n^2/epsilon))");
        gadget->add_option("--epsilon", epsilon, "Used to choose k")->capture_default_str();
        gadget->callback([this] {
            const auto a = read_matrix_file(matrix);
            const int kk = choose_k(static_cast<int>(a.cols()), epsilon, k > 0 ? std::optional<int>(k) : std::nullopt);
            emit("exact gadget", {{"matrix", matrix}}, exact_gadget_distribution(bs_gadget(a, kk)),
                 {{"k", std::to_string(kk)}});
        });
        auto *matchings = sub->add_subcommand("matchings", "mu(M) ~ prod lambda_e over all matchings");
        matchings->add_option("--graph", graph, "Graph JSON file")->required();
        matchings->callback([this] {
            emit("exact matchings", {{"graph", graph}}, exact_matching_distribution(read_graph_file(graph)), {});
        });
        for (auto *s : {gbs, bs, gadget, matchings}) {
            s->add_option("--out", out, "Output JSON file (default stdout)");
        }
    }

    void emit(const std::string &command, std::vector<std::pair<std::string, fs::path>> inputs,
              const DistributionTable &t, std::map<std::string, std::string> config) const {
        write_output(out, table_to_json(t), RunManifest{command, std::move(inputs), 0, std::move(config)});
    }
};

// ---- verify --------------------------------------------------------------

struct Verify {
    std::string check = "all";
    int corpus_max_n = 6;
    int matrix_max_m = 4;
    int matrix_max_n = 3;
    int bs_max_m = 3;
    int bs_max_n = 2;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    double step_constant = 0;
    std::uint64_t max_steps = 0;
    int workers = 1;
    std::string corpus_dir;
    std::string out;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("verify", "Run verification checks over the built-in corpora");
        sub->add_option("check", check, "Which check")
            ->check(CLI::IsMember({"all", "lemma1", "lemma2", "sum-zn", "logconcavity", "pm-percent", "tv-gbs",
                                   "tv-bs", "gadget-bias"}))
            ->capture_default_str();
        sub->add_option("--corpus-max-n", corpus_max_n, "Largest graph in the corpus (vertices)")
            ->capture_default_str();
        sub->add_option("--matrix-max-m", matrix_max_m, "Largest matrix row count (gadget-bias)")
            ->capture_default_str();
        sub->add_option("--matrix-max-n", matrix_max_n, "Largest matrix column count (gadget-bias)")
            ->capture_default_str();
        sub->add_option("--bs-max-m", bs_max_m, "Largest matrix row count (tv-bs)")->capture_default_str();
        sub->add_option("--bs-max-n", bs_max_n, "Largest matrix column count (tv-bs)")->capture_default_str();
        sub->add_option("--samples", samples, "Samples per sampler check")->capture_default_str();
        sub->add_option("--seed", seed, "Master seed")->capture_default_str();
        sub->add_option("--step-constant", step_constant,
                        "Chain step constant (default: 2e-4 for tv-gbs; tv-bs runs a fixed 20000 steps per attempt)");
        sub->add_option("--max-steps", max_steps, "Fixed chain length per draw or attempt for both sampler checks");
        sub->add_option("--workers", workers, "Worker threads")->capture_default_str();
        sub->add_option("--corpus-dir", corpus_dir,
                        "Extra graphs (*.json) and matrices (*.csv, *.json arrays) to check alongside the built-in "
                        "corpora")
            ->envname("GBSAMPLE_CORPUS_DIR");
        sub->add_option("--out", out, "JSONL report file (default stdout)");
        sub->callback([this] { run(); });
    }

    // A sampler that exhausts its budget fails the check for that item
    // (observed is recorded as NaN) instead of aborting the run.
    template <typename Draw>
    VerificationReport sampler_check(const std::string &check, const std::string &item, double eps,
                                     const DistributionTable &target, Draw draw) const {
        try {
            const auto keys = draw();
            return check_sampler_tv(check, item, target, keys, eps);
        } catch (const Error &e) {
            if (!is_budget_error(e.kind())) {
                throw;
            }
            std::cerr << "verify: " << check << " " << item << ": " << e.what() << "\n";
            VerificationReport r = make_report(check, item, std::numeric_limits<double>::quiet_NaN(),
                                               Comparison::LessEqual, tv_allowance(eps, target.size(), samples));
            r.passed = false;
            return r;
        }
    }

    void bs_chain(ChainConfig &c) const {
        if (max_steps > 0) {
            c.max_steps_override = max_steps;
        } else if (step_constant > 0) {
            c.step_constant = step_constant;
        } else {
            c.max_steps_override = kVerifyBsStepsPerAttempt;
        }
    }

    struct ExtraCorpus {
        std::vector<std::filesystem::path> files;
        std::vector<CorpusGraph> graphs;
        std::vector<CorpusMatrix> matrices;
    };

    // Files are read in name order; a JSON object is a graph, a JSON array a
    // matrix.
    ExtraCorpus load_corpus_dir() const {
        ExtraCorpus extra;
        if (corpus_dir.empty()) {
            return extra;
        }
        require(std::filesystem::is_directory(corpus_dir), ErrorKind::Validation,
                "corpus directory not found: " + corpus_dir);
        for (const auto &entry : std::filesystem::directory_iterator(corpus_dir)) {
            const auto ext = entry.path().extension();
            if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) {
                extra.files.push_back(entry.path());
            }
        }
        std::sort(extra.files.begin(), extra.files.end());
        for (const auto &path : extra.files) {
            const std::string name = path.filename().string();
            const std::string text = read_file(path);
            const auto first = text.find_first_not_of(" \t\r\n");
            if (path.extension() == ".json" && first != std::string::npos && text[first] == '{') {
                extra.graphs.push_back({name, read_graph_file(path)});
            } else {
                extra.matrices.push_back({name, read_matrix_file(path)});
            }
        }
        return extra;
    }

    bool wants(const char *name) const {
        return check == "all" || check == name;
    }

    void run() const {
        require_samples(samples);
        std::vector<VerificationReport> reports;
        const ExtraCorpus extra = load_corpus_dir();
        auto graphs = connected_graph_corpus(corpus_max_n);
        graphs.insert(graphs.end(), extra.graphs.begin(), extra.graphs.end());
        const auto with_extra = [&](std::vector<CorpusMatrix> ms) {
            ms.insert(ms.end(), extra.matrices.begin(), extra.matrices.end());
            return ms;
        };
        const std::vector<double> cs = {0.5, 1.0, 2.0};
        for (const auto &cg : graphs) {
            for (double c : cs) {
                if (wants("lemma1")) {
                    reports.push_back(check_lemma1(cg.graph, c, cg.id));
                }
                if (wants("lemma2")) {
                    reports.push_back(check_lemma2(cg.graph, c, cg.id));
                }
                if (wants("sum-zn")) {
                    reports.push_back(check_sum_zn(cg.graph, c, cg.id));
                }
                if (wants("pm-percent")) {
                    reports.push_back(check_pm_percent(cg.graph, c, cg.id));
                }
                if (wants("logconcavity")) {
                    reports.push_back(check_log_concavity(cartesian_product_k2(cg.graph, c).graph,
                                                          cg.id + " x K2 c=" + fmt(c)));
                }
            }
            if (wants("logconcavity")) {
                reports.push_back(check_log_concavity(cg.graph, cg.id));
            }
            if (wants("tv-gbs")) {
                GbsRequest req{cg.graph, 1.0, 0.05, {}};
                req.chain.step_constant = step_constant > 0 ? step_constant : kVerifyGbsStepConstant;
                if (max_steps > 0) {
                    req.chain.max_steps_override = max_steps;
                }
                const std::string item = cg.id + " c=1 eps=0.05";
                reports.push_back(sampler_check("tv-gbs", item, 0.05, exact_gbs_distribution(cg.graph, 1.0), [&] {
                    return run_replicas(
                        samples, derive_seed(seed, reports.size()), workers, [&] { return GbsSampler(req); },
                        [](GbsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
                }));
            }
        }
        if (wants("gadget-bias")) {
            for (const auto &cm : with_extra(matrix_corpus(matrix_max_m, matrix_max_n))) {
                for (double eps : {0.1, 0.5}) {
                    reports.push_back(check_gadget_closeness(cm.matrix, eps, cm.id));
                    reports.push_back(check_gadget_bias(cm.matrix, eps, cm.id));
                }
            }
        }
        if (wants("tv-bs")) {
            for (const auto &cm : with_extra(matrix_corpus(bs_max_m, bs_max_n))) {
                BsRequest req;
                req.matrix = cm.matrix;
                req.epsilon = 0.2;
                bs_chain(req.pm.chain);
                reports.push_back(sampler_check("tv-bs", cm.id + " eps=0.2", 0.2, exact_bs_distribution(cm.matrix), [&] {
                    return run_replicas(
                        samples, derive_seed(seed, reports.size()), workers, [&] { return BsSampler(req); },
                        [](BsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
                }));
            }
        }
        std::string text;
        bool all_passed = true;
        for (const auto &r : reports) {
            text += report_line(r);
            all_passed = all_passed && r.passed;
        }
        RunManifest m{"verify " + check, {}, seed, {}};
        for (const auto &path : extra.files) {
            m.inputs.emplace_back("corpus-dir/" + path.filename().string(), path);
        }
        m.config["corpus-max-n"] = std::to_string(corpus_max_n);
        m.config["matrix-max-m"] = std::to_string(matrix_max_m);
        m.config["matrix-max-n"] = std::to_string(matrix_max_n);
        m.config["samples"] = std::to_string(samples);
        m.config["bs-max-m"] = std::to_string(bs_max_m);
        m.config["bs-max-n"] = std::to_string(bs_max_n);
        m.config["step-constant"] = fmt(step_constant);
        m.config["max-steps"] = std::to_string(max_steps);
        write_output(out, text, m);
        if (!all_passed) {
            throw ChecksFailed();
        }
    }

    struct ChecksFailed {};
};

// ---- bias-report ---------------------------------------------------------

struct BiasReport {
    std::string matrix;
    int k = 0;
    double epsilon = 0.1;
    std::string out;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("bias-report", "Per-z gadget bias factors as CSV");
        sub->add_option("--matrix", matrix, "Matrix file")->required();
        sub->add_option("--k", k, "Copies per row (default ceil(4n^2/epsilon))");
        sub->add_option("--epsilon", epsilon, "Used to choose k")->capture_default_str();
        sub->add_option("--out", out, "Output CSV file (default stdout)");
        sub->callback([this] { run(); });
    }

    void run() const {
        const auto a = read_matrix_file(matrix);
        const int kk = choose_k(static_cast<int>(a.cols()), epsilon, k > 0 ? std::optional<int>(k) : std::nullopt);
        std::string text;
        for (std::size_t j = 0; j < a.rows(); ++j) {
            text += "z" + std::to_string(j + 1) + ",";
        }
        text += "factor\n";
        for (const auto &row : gadget_bias_report(a, kk)) {
            for (int zj : row.z.z) {
                text += std::to_string(zj) + ",";
            }
            text += fmt(row.factor) + "\n";
        }
        RunManifest m{"bias-report", {{"matrix", matrix}}, 0, {{"k", std::to_string(kk)}}};
        write_output(out, text, m);
    }
};

// ---- bench ---------------------------------------------------------------

struct Bench {
    std::string sizes = "4,6,8";
    std::uint64_t samples = 200;
    double c = 1.0;
    double edge_prob = 0.5;
    ChainFlags chain;
    std::string out;

    void add(CLI::App &app) {
        auto *sub = app.add_subcommand("bench", "Timing probe over a size grid");
        sub->require_subcommand(1);
        auto *gbs = sub->add_subcommand("gbs", "GBS sampler on random graphs G(n, p)");
        auto *bs = sub->add_subcommand("bs", "BS sampler on random n x n matrices with entries in {1,2}");
        for (auto *s : {gbs, bs}) {
            s->add_option("--sizes", sizes, "Comma-separated sizes n")->capture_default_str();
            s->add_option("--samples", samples, "Samples per size")->capture_default_str();
            s->add_option("--out", out, "Output CSV file (default stdout)");
        }
        gbs->add_option("--c", c, "Positive scaling constant c")->capture_default_str();
        gbs->add_option("--edge-prob", edge_prob, "Edge probability of the random graphs")->capture_default_str();
        chain.add(gbs, 0.1);
        gbs->callback([this] { run_gbs(); });
        ChainFlags &bs_chain = chain;
        bs_chain.add(bs, 0.5);
        bs->callback([this] { run_bs(); });
    }

    std::vector<int> grid() const {
        std::vector<int> out_sizes;
        std::stringstream in(sizes);
        std::string item;
        while (std::getline(in, item, ',')) {
            out_sizes.push_back(std::stoi(item));
            require(out_sizes.back() >= 1, ErrorKind::Validation, "sizes must be positive");
        }
        require(!out_sizes.empty(), ErrorKind::Validation, "empty size grid");
        return out_sizes;
    }

    static std::string slope_line(const std::vector<double> &xs, const std::vector<double> &ys) {
        double mx = 0;
        double my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += std::log(xs[i]) / static_cast<double>(xs.size());
            my += std::log(ys[i]) / static_cast<double>(xs.size());
        }
        double sxy = 0;
        double sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
            sxx += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
        }
        return "# loglog_slope_time_vs_n," + (sxx > 0 ? fmt(sxy / sxx) : std::string("nan")) + "\n";
    }

    void run_gbs() const {
        require_samples(samples);
        std::string text = "n,m,c,epsilon,seconds_per_sample,chain_steps,acceptance_rate\n";
        std::vector<double> ns;
        std::vector<double> times;
        for (int n : grid()) {
            Rng rng(derive_seed(chain.seed, static_cast<std::uint64_t>(n)));
            Graph g(n);
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    if (rng.uniform() < edge_prob) {
                        g.add_edge(u, v);
                    }
                }
            }
            GbsSampler sampler(GbsRequest{g, c, chain.epsilon, chain.config()});
            const auto t0 = std::chrono::steady_clock::now();
            for (std::uint64_t i = 0; i < samples; ++i) {
                sampler.sample(rng);
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / samples;
            const double acc = static_cast<double>(sampler.perfect_draws()) / sampler.draws();
            text += std::to_string(n) + "," + std::to_string(g.edge_count()) + "," + fmt(c) + "," +
                    fmt(chain.epsilon) + "," + fmt(secs) + "," + std::to_string(sampler.steps_per_draw()) + "," +
                    fmt(acc) + "\n";
            ns.push_back(n);
            times.push_back(secs);
        }
        text += slope_line(ns, times);
        write_output(out, text, RunManifest{"bench gbs", {}, chain.seed, {{"sizes", sizes}}});
    }

    void run_bs() const {
        require_samples(samples);
        std::string text = "n,m,k,epsilon,seconds_per_sample,chain_steps,acceptance_rate\n";
        std::vector<double> ns;
        std::vector<double> times;
        for (int n : grid()) {
            Rng rng(derive_seed(chain.seed, static_cast<std::uint64_t>(n)));
            BsRequest req;
            req.matrix = Matrix<double>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
            for (std::size_t r = 0; r < req.matrix.rows(); ++r) {
                for (std::size_t col = 0; col < req.matrix.cols(); ++col) {
                    req.matrix(r, col) = 1.0 + static_cast<double>(rng.below(2));
                }
            }
            req.epsilon = chain.epsilon;
            req.pm.chain = chain.config();
            BsSampler sampler(req);
            const auto t0 = std::chrono::steady_clock::now();
            for (std::uint64_t i = 0; i < samples; ++i) {
                sampler.sample(rng);
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / samples;
            const auto &pm = sampler.chain();
            text += std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(sampler.gadget().k) + "," +
                    fmt(chain.epsilon) + "," + fmt(secs) + "," + std::to_string(pm.steps_per_attempt()) + "," +
                    fmt(static_cast<double>(pm.successes()) / pm.attempts()) + "\n";
            ns.push_back(n);
            times.push_back(secs);
        }
        text += slope_line(ns, times);
        write_output(out, text, RunManifest{"bench bs", {}, chain.seed, {{"sizes", sizes}}});
    }
};

}  // namespace
}  // namespace gbs::cli

int main(int argc, char **argv) {
    using namespace gbs::cli;
    CLI::App app{"Classical samplers for graph Gaussian boson sampling and boson sampling"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    SampleGbs sample_gbs;
    SampleBs sample_bs;
    Exact exact;
    Verify verify;
    BiasReport bias;
    Bench bench;
    sample_gbs.add(app);
    sample_bs.add(app);
    exact.add(app);
    verify.add(app);
    bias.add(app);
    bench.add(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const gbs::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return gbs::is_budget_error(e.kind()) ? 2 : 1;
    } catch (const Verify::ChecksFailed &) {
        std::cerr << "verify: some checks failed\n";
        return kChecksFailedExit;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
