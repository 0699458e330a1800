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

// Acceptance suite: one PASS/FAIL line per criterion. Run all criteria, or
// one with `--only N`. Exit status is non-zero if any criterion that ran
// failed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gbs/batch.hpp"
#include "gbs/bs_sampler.hpp"
#include "gbs/exact.hpp"
#include "gbs/gbs_sampler.hpp"
#include "gbs/hafnian.hpp"
#include "gbs/io.hpp"
#include "gbs/matchings.hpp"
#include "gbs/permanent.hpp"
#include "gbs/verify.hpp"
#include "test_linalg.hpp"
#include "test_support.hpp"

using namespace gbs;

namespace {

// Pinned tolerances and run sizes.
constexpr double kProjectionTolerance = 1e-10;
constexpr double kChainTolerance = 1e-10;
const std::array<double, 3> kCs = {0.5, 1.0, 2.0};
const std::array<double, 4> kRatioCs = {0.25, 0.5, 1.0, 2.0};
constexpr int kCorpusMaxN = 6;
constexpr int kProbeDraws = 10000;
constexpr double kProbeFloor = 0.25;
constexpr double kProbeStepConstant = 1e-3;
constexpr double kGbsEpsilon = 0.05;
constexpr std::uint64_t kGbsSamples = 100000;
constexpr double kGbsStepConstant = 2e-4;
constexpr double kGbsRuntimeTarget = 600.0;
constexpr int kMatrixMaxM = 4;
constexpr int kMatrixMaxN = 3;
const std::array<double, 2> kGadgetEpsilons = {0.1, 0.5};
constexpr double kBsEpsilon = 0.2;
constexpr std::uint64_t kBsSamples = 100000;
constexpr std::uint64_t kBsStepsPerAttempt = 20000;
constexpr int kBsMaxM = 3;
constexpr int kBsMaxN = 2;
constexpr int kMatchingChainMaxEdges = 6;
constexpr int kPmChainMaxPart = 4;
constexpr int kPermanentTrials = 200;
constexpr int kHafnianMaxVertices = 10;
constexpr std::uint64_t kSeed = 20260101;

struct Result {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
    std::ostringstream out;
    out.precision(4);
    out << x;
    return out.str();
}

const std::vector<CorpusGraph> &corpus() {
    static const auto graphs = connected_graph_corpus(kCorpusMaxN);
    return graphs;
}

// Records the first failure and counts the rest.
struct Tally {
    int checked = 0;
    int failed = 0;
    std::string first;

    void add(bool ok, const std::string &what) {
        ++checked;
        if (!ok) {
            if (failed++ == 0) {
                first = what;
            }
        }
    }

    Result result(const std::string &summary) const {
        Result r;
        r.pass = failed == 0;
        r.detail = summary + ", " + std::to_string(checked) + " checks";
        if (failed > 0) {
            r.detail += ", " + std::to_string(failed) + " failed (first: " + first + ")";
        }
        return r;
    }
};

Result criterion1() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst = 0;
    for (const auto &cg : corpus()) {
        for (double c : kCs) {
            const ProductGraph pg = cartesian_product_k2(cg.graph, c);
            std::map<OutcomeKey, double> projected;
            for (const Matching &pm : enumerate_perfect_matchings(pg.graph)) {
                projected[key_of(project_to_subset(pg, pm))] += pm.weight(pg.graph);
            }
            const double dev = max_abs_deviation(DistributionTable::from_weights(OutcomeKind::Subset, projected),
                                                 exact_gbs_distribution(cg.graph, c));
            worst = std::max(worst, dev);
            tally.add(dev <= kProjectionTolerance, cg.id + " c=" + num(c));
            tally.add(check_lemma1(cg.graph, c, cg.id).passed, "check_lemma1 " + cg.id);
        }
    }
    return tally.result("max deviation " + num(worst) + " <= " + num(kProjectionTolerance) + ", " +
                        num(seconds_since(t0)) + " s");
}

Result criterion2() {
    Tally tally;
    double worst = 0;
    for (const auto &cg : corpus()) {
        for (double c : kRatioCs) {
            const auto r = check_lemma2(cg.graph, c, cg.id);
            const double n = cg.graph.vertex_count();
            worst = std::max(worst, r.observed / (2 * n * n));
            tally.add(r.passed, cg.id + " c=" + num(c));
        }
    }
    return tally.result("max Z_{n-1}/(2n^2 Z_n) = " + num(worst) + " (strict, exact)");
}

Result criterion3() {
    Tally tally;
    double worst = 0;
    Rng rng(kSeed);
    for (const auto &cg : corpus()) {
        std::vector<std::pair<Graph, std::string>> graphs = {{cg.graph, cg.id},
                                                             {test::reweighted(cg.graph, rng), cg.id + " weighted"}};
        for (double c : kCs) {
            graphs.emplace_back(cartesian_product_k2(cg.graph, c).graph, cg.id + " x K2 c=" + num(c));
        }
        for (const auto &[g, id] : graphs) {
            const auto r = check_log_concavity(g, id);
            worst = std::max(worst, r.observed);
            tally.add(r.passed, id);
        }
    }
    return tally.result("max Z_{k-1}Z_{k+1}/Z_k^2 = " + num(worst) + " (exact)");
}

Result criterion4() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst_exact = 0;
    double worst_rate = 1;
    const double floor = kProbeFloor - 3 * std::sqrt(kProbeFloor * (1 - kProbeFloor) / kProbeDraws);
    std::uint64_t index = 0;
    for (const auto &cg : corpus()) {
        for (double c : kCs) {
            const auto r = check_pm_percent(cg.graph, c, cg.id);
            worst_exact = std::max(worst_exact, r.observed);
            tally.add(r.passed, cg.id + " c=" + num(c) + " exact");
            GbsRequest req{cg.graph, c, kGbsEpsilon, {}};
            req.chain.step_constant = kProbeStepConstant;
            GbsSampler sampler(req);
            Rng rng(derive_seed(kSeed, index++));
            int perfect = 0;
            for (int i = 0; i < kProbeDraws; ++i) {
                perfect += sampler.probe(rng) ? 1 : 0;
            }
            const double rate = perfect / static_cast<double>(kProbeDraws);
            worst_rate = std::min(worst_rate, rate);
            tally.add(rate >= floor, cg.id + " c=" + num(c) + " rate " + num(rate));
        }
    }
    return tally.result("max Z'/Z'_n = " + num(worst_exact) + " < 2, min acceptance " + num(worst_rate) +
                        " >= " + num(floor) + ", C = " + num(kProbeStepConstant) + ", " + num(seconds_since(t0)) + " s");
}

Result criterion5() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst_margin = 1;
    double worst_tv = 0;
    std::uint64_t index = 0;
    for (const auto &cg : corpus()) {
        GbsRequest req{cg.graph, 1.0, kGbsEpsilon, {}};
        req.chain.step_constant = kGbsStepConstant;
        try {
            const auto keys = run_replicas(
                kGbsSamples, derive_seed(kSeed, index++), 1, [&] { return GbsSampler(req); },
                [](GbsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
            const auto r = check_sampler_tv("tv-gbs", cg.id, exact_gbs_distribution(cg.graph, 1.0), keys, kGbsEpsilon);
            worst_tv = std::max(worst_tv, r.observed);
            worst_margin = std::min(worst_margin, r.claimed_bound - r.observed);
            tally.add(r.passed, cg.id + " tv " + num(r.observed) + " > " + num(r.claimed_bound));
        } catch (const Error &e) {
            tally.add(false, cg.id + ": " + e.what());
        }
    }
    const double secs = seconds_since(t0);
    return tally.result("worst tv " + num(worst_tv) + ", min margin " + num(worst_margin) + ", C = " +
                        num(kGbsStepConstant) + ", " + num(secs) + " s (target " + num(kGbsRuntimeTarget) + " s)");
}

Result criterion6() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst_ratio = 0;
    double min_factor = 1;
    for (const auto &cm : matrix_corpus(kMatrixMaxM, kMatrixMaxN)) {
        for (double eps : kGadgetEpsilons) {
            const auto close = check_gadget_closeness(cm.matrix, eps, cm.id);
            worst_ratio = std::max(worst_ratio, close.observed / close.claimed_bound);
            tally.add(close.passed, cm.id + " eps=" + num(eps) + " closeness");
            const int k = choose_k(static_cast<int>(cm.matrix.cols()), eps);
            bool factors_ok = true;
            for (const BiasRow &row : gadget_bias_report(cm.matrix, k)) {
                min_factor = std::min(min_factor, row.factor);
                factors_ok = factors_ok && row.factor <= 1.0 && row.factor >= std::exp(-eps / 2);
            }
            tally.add(factors_ok, cm.id + " eps=" + num(eps) + " factors");
        }
    }
    return tally.result("max tv/(eps/2) = " + num(worst_ratio) + ", min factor " + num(min_factor) + ", " +
                        num(seconds_since(t0)) + " s");
}

Result criterion7() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst_tv = 0;
    double worst_margin = 1;
    std::uint64_t index = 0;
    for (const auto &cm : matrix_corpus(kBsMaxM, kBsMaxN)) {
        BsRequest req;
        req.matrix = cm.matrix;
        req.epsilon = kBsEpsilon;
        req.pm.chain.max_steps_override = kBsStepsPerAttempt;
        try {
            const auto keys = run_replicas(
                kBsSamples, derive_seed(kSeed, index++), 1, [&] { return BsSampler(req); },
                [](BsSampler &s, Rng &rng) { return key_of(s.sample(rng)); });
            const auto r = check_sampler_tv("tv-bs", cm.id, exact_bs_distribution(cm.matrix), keys, kBsEpsilon);
            worst_tv = std::max(worst_tv, r.observed);
            worst_margin = std::min(worst_margin, r.claimed_bound - r.observed);
            tally.add(r.passed, cm.id + " tv " + num(r.observed) + " > " + num(r.claimed_bound));
        } catch (const Error &e) {
            tally.add(false, cm.id + ": " + e.what());
        }
    }
    return tally.result("worst tv " + num(worst_tv) + ", min margin " + num(worst_margin) + ", " +
                        std::to_string(kBsStepsPerAttempt) + " steps per attempt, " + num(seconds_since(t0)) + " s");
}

// Representatives of p x p 0/1 biadjacency masks up to row and column
// permutations.
std::vector<Matrix<double>> bipartite_classes(int p) {
    std::vector<int> rows(static_cast<std::size_t>(p));
    std::vector<std::uint32_t> seen;
    std::vector<Matrix<double>> out;
    const auto canonical = [&](std::uint32_t mask) {
        std::uint32_t best = ~0U;
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::vector<std::uint32_t> cols(static_cast<std::size_t>(p), 0);
            for (int c = 0; c < p; ++c) {
                for (int r = 0; r < p; ++r) {
                    if ((mask >> (rows[static_cast<std::size_t>(r)] * p + c)) & 1U) {
                        cols[static_cast<std::size_t>(c)] |= 1U << r;
                    }
                }
            }
            std::sort(cols.begin(), cols.end());
            std::uint32_t code = 0;
            for (int c = 0; c < p; ++c) {
                code = (code << p) | cols[static_cast<std::size_t>(c)];
            }
            best = std::min(best, code);
        } while (std::next_permutation(rows.begin(), rows.end()));
        return best;
    };
    for (std::uint32_t mask = 0; mask < (1U << (p * p)); ++mask) {
        seen.push_back(canonical(mask));
    }
    std::vector<std::uint32_t> unique = seen;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (std::uint32_t mask = 0; mask < (1U << (p * p)); ++mask) {
        const auto it = std::lower_bound(unique.begin(), unique.end(), seen[mask]);
        if (it == unique.end() || *it != seen[mask]) {
            continue;
        }
        unique.erase(it);
        Matrix<double> b(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < p; ++c) {
                b(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = ((mask >> (r * p + c)) & 1U) ? 1.0 : 0.0;
            }
        }
        out.push_back(b);
    }
    return out;
}

BipartiteGraph from_biadjacency(const Matrix<double> &b) {
    const auto p = static_cast<int>(b.rows());
    Graph g(2 * p);
    std::vector<Side> side(static_cast<std::size_t>(2 * p), Side::Right);
    for (int i = 0; i < p; ++i) {
        side[static_cast<std::size_t>(i)] = Side::Left;
        for (int j = 0; j < p; ++j) {
            const double w = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (w != 0) {
                g.add_edge(i, p + j, w);
            }
        }
    }
    return BipartiteGraph(std::move(g), std::move(side));
}

double stationary_gap(const ChainMatrix &cm, Eigen::Index &invariant_dim) {
    const auto solve = test::stationary(cm.p, cm.weight);
    invariant_dim = solve.invariant_dim;
    double total = 0;
    for (double w : cm.weight) {
        total += w;
    }
    double gap = 0;
    for (std::size_t i = 0; i < cm.weight.size(); ++i) {
        gap = std::max(gap, std::abs(solve.pi[i] - cm.weight[i] / total));
    }
    return gap;
}

Result criterion8() {
    const auto t0 = Clock::now();
    Tally tally;
    double worst_balance = 0;
    double worst_stationary = 0;
    Rng rng(kSeed);
    int matching_graphs = 0;
    for (const auto &cg : corpus()) {
        if (cg.graph.edge_count() > kMatchingChainMaxEdges) {
            continue;
        }
        for (const Graph &g : {cg.graph, test::reweighted(cg.graph, rng)}) {
            ++matching_graphs;
            const ChainMatrix cm = matching_chain_matrix(g);
            const double balance = test::detailed_balance_gap(cm.p, cm.weight);
            Eigen::Index dim = 0;
            const double gap = stationary_gap(cm, dim);
            worst_balance = std::max(worst_balance, balance);
            worst_stationary = std::max(worst_stationary, gap);
            tally.add(balance <= kChainTolerance && gap <= kChainTolerance && dim == 1, "matching " + cg.id);
        }
    }
    int pm_graphs = 0;
    for (int p = 1; p <= kPmChainMaxPart; ++p) {
        for (const Matrix<double> &mask : bipartite_classes(p)) {
            if (permanent(mask) == 0) {
                continue;
            }
            Matrix<double> weighted = mask;
            for (std::size_t r = 0; r < mask.rows(); ++r) {
                for (std::size_t c = 0; c < mask.cols(); ++c) {
                    weighted(r, c) *= 0.5 * static_cast<double>(1 + rng.below(6));
                }
            }
            for (const Matrix<double> &b : {mask, weighted}) {
                ++pm_graphs;
                const BipartiteGraph bg = from_biadjacency(b);
                const ChainMatrix cm = pm_chain_matrix(bg, compute_hole_weights_exact(bg));
                const double balance = test::detailed_balance_gap(cm.p, cm.weight);
                Eigen::Index dim = 0;
                const double gap = stationary_gap(cm, dim);
                worst_balance = std::max(worst_balance, balance);
                worst_stationary = std::max(worst_stationary, gap);
                tally.add(balance <= kChainTolerance && gap <= kChainTolerance && dim == 1,
                          "pm " + matrix_id(b));
            }
        }
    }
    return tally.result(std::to_string(matching_graphs) + " matching-chain and " + std::to_string(pm_graphs) +
                        " PM-chain graphs, max balance gap " + num(worst_balance) + ", max stationary gap " +
                        num(worst_stationary) + ", " + num(seconds_since(t0)) + " s");
}

Result criterion9() {
    Tally tally;
    Rng rng(kSeed);
    for (int trial = 0; trial < kPermanentTrials; ++trial) {
        const auto n = static_cast<std::size_t>(1 + rng.below(8));
        Matrix<BigInt> a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) = static_cast<long long>(rng.below(7)) - 2;
            }
        }
        tally.add(permanent_ryser(a) == permanent_naive(a), "permanent trial " + std::to_string(trial));
    }
    std::vector<std::pair<Graph, std::string>> graphs;
    for (const auto &cg : corpus()) {
        graphs.emplace_back(cg.graph, cg.id);
    }
    for (int n = kCorpusMaxN + 1; n <= kHafnianMaxVertices; ++n) {
        for (int i = 0; i < 40; ++i) {
            const Graph g = test::random_graph(n, 0.25 + 0.5 * rng.uniform(), rng, false);
            graphs.emplace_back(g, graph_id(g));
        }
    }
    for (const auto &[g, id] : graphs) {
        const auto count = static_cast<long long>(enumerate_perfect_matchings(g).size());
        tally.add(hafnian_exact(g.adjacency()) == Rational(count), "hafnian " + id);
    }
    return tally.result(std::to_string(kPermanentTrials) + " Ryser/naive permanents, " +
                        std::to_string(graphs.size()) + " hafnians against perfect-matching enumeration");
}

std::string serialize(const std::vector<OutcomeKey> &keys) {
    std::string text;
    for (const auto &k : keys) {
        text += sample_line(k);
    }
    return text;
}

Result criterion10() {
    Tally tally;
    Graph g = test::cycle(5);
    g.add_edge(0, 2, 2.0);
    GbsRequest greq{g, 0.8, 0.1, {}};
    greq.chain.step_constant = 0.01;
    const auto gbs_run = [&](int workers) {
        return serialize(run_replicas(
            5000, kSeed, workers, [&] { return GbsSampler(greq); },
            [](GbsSampler &s, Rng &rng) { return key_of(s.sample(rng)); }));
    };
    BsRequest breq;
    breq.matrix = Matrix<double>{{1, 2}, {0, 1}, {2, 1}};
    breq.epsilon = 0.5;
    breq.pm.chain.max_steps_override = 3000;
    const auto bs_run = [&](int workers) {
        return serialize(run_replicas(
            3000, kSeed, workers, [&] { return BsSampler(breq); },
            [](BsSampler &s, Rng &rng) { return key_of(s.sample(rng)); }));
    };
    const auto dir = std::filesystem::temp_directory_path() / ("gbs_acceptance_" + std::to_string(kSeed));
    std::filesystem::create_directories(dir);
    for (const auto &[name, run] : std::vector<std::pair<std::string, std::function<std::string(int)>>>{
             {"gbs", gbs_run}, {"bs", bs_run}}) {
        write_file_atomic(dir / (name + "_a.jsonl"), run(1));
        write_file_atomic(dir / (name + "_b.jsonl"), run(1));
        write_file_atomic(dir / (name + "_c.jsonl"), run(3));
        const std::string a = read_file(dir / (name + "_a.jsonl"));
        tally.add(!a.empty() && a == read_file(dir / (name + "_b.jsonl")), name + " rerun");
        tally.add(a == read_file(dir / (name + "_c.jsonl")), name + " worker count");
    }
    std::filesystem::remove_all(dir);
    return tally.result("sample files byte-identical across reruns and worker counts");
}

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        }
    }
    const std::vector<std::function<Result()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                           criterion5, criterion6, criterion7, criterion8,
                                                           criterion9, criterion10};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (only != 0 && only != n) {
            continue;
        }
        Result r;
        try {
            r = criteria[i]();
        } catch (const std::exception &e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s (%s)\n", n, r.pass ? "PASS" : "FAIL", r.detail.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
