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
// Verification harness: deterministic corpora, inequality checks on the
// matching partition functions, and sampler-versus-oracle comparisons.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "gbs/distribution.hpp"
#include "gbs/exact_arith.hpp"
#include "gbs/graph.hpp"
#include "gbs/pm_chain.hpp"

namespace gbs {

enum class Comparison { Less, LessEqual, GreaterEqual };

const char *to_string(Comparison c);

struct VerificationReport {
    std::string check_name;
    std::string corpus_item;
    double claimed_bound = 0;
    double observed = 0;
    Comparison comparison = Comparison::LessEqual;
    bool passed = false;
    std::uint64_t samples_used = 0;
};

/// passed computed from observed, bound and direction.
VerificationReport make_report(std::string check, std::string item, double observed, Comparison cmp, double bound,
                               std::uint64_t samples = 0);

struct CorpusGraph {
    std::string id;
    Graph graph;
};

/// One representative of every isomorphism class of connected graphs on
/// 1..max_n vertices (143 classes for max_n = 6). The representative is
/// the labelling whose edge bitmask is smallest; ids read "n4:0-1.1-2.2-3".
std::vector<CorpusGraph> connected_graph_corpus(int max_n);

struct CorpusMatrix {
    std::string id;
    Matrix<double> matrix;
};

/// Every m x n matrix with entries in {0,1,2} and no all-zero column, for
/// 1 <= m <= max_m and 1 <= n <= max_n; ids read "3x2:1,2;0,1;2,1".
std::vector<CorpusMatrix> matrix_corpus(int max_m, int max_n);

std::string graph_id(const Graph &g);
std::string matrix_id(const Matrix<double> &a);

/// Projection of the exact perfect-matching law of G x K2 against the GBS
/// table; observed = max per-outcome deviation, bound 1e-10.
VerificationReport check_lemma1(const Graph &g, double c, const std::string &id);

/// Z_{n-1} < 2 n^2 Z_n on G x K2 in exact arithmetic (n = |V(G)|); observed
/// = Z_{n-1} / Z_n.
VerificationReport check_lemma2(const Graph &g, double c, const std::string &id);

/// Z_n(G x K2) = sum_S c^{2|S|} Haf(A_S)^2 exactly; observed = |difference|
/// as a double.
VerificationReport check_sum_zn(const Graph &g, double c, const std::string &id);

/// m_{k-1} m_{k+1} <= m_k^2 and Z_{k-1} Z_{k+1} <= Z_k^2 for every interior k,
/// exactly; observed = max over k of the ratios of left to right side.
VerificationReport check_log_concavity(const Graph &g, const std::string &id);

/// Z' < 2 Z'_n exactly after the 4n^2 boost; observed = Z' / Z'_n.
VerificationReport check_pm_percent(const Graph &g, double c, const std::string &id);

/// epsilon + 3 sqrt(support / samples).
double tv_allowance(double epsilon, std::size_t support, std::uint64_t samples);

/// tv(empirical(samples), target) <= tv_allowance(epsilon, |target|, n).
VerificationReport check_sampler_tv(const std::string &check, const std::string &id, const DistributionTable &target,
                                    std::span<const OutcomeKey> samples, double epsilon);

/// tv(nu, mu_BS) <= epsilon/2 with k = choose_k(n, epsilon).
VerificationReport check_gadget_closeness(const Matrix<double> &a, double epsilon, const std::string &id);

/// min over z of the gadget bias factor >= e^{-epsilon/2} (the max <= 1 is
/// folded in: a factor above 1 makes observed = -1).
VerificationReport check_gadget_bias(const Matrix<double> &a, double epsilon, const std::string &id);

/// Explicit transition matrix of a chain over an enumerated state space.
/// `weight` is the unnormalised stationary target each state should have.
struct ChainMatrix {
    std::vector<Matching> states;
    std::vector<double> weight;
    Matrix<double> p;  // row-stochastic
};

/// The matching chain on every matching of `g`; weight = prod lambda_e.
ChainMatrix matching_chain_matrix(const Graph &g, const OracleLimits &limits = default_limits());

/// The perfect-matching chain on every perfect and near-perfect matching of
/// `bg`; weight = Lambda.
ChainMatrix pm_chain_matrix(const BipartiteGraph &bg, const HoleWeights &hw,
                            const OracleLimits &limits = default_limits());

}  // namespace gbs
