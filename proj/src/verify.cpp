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
#include "gbs/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "gbs/bs_sampler.hpp"
#include "gbs/constructions.hpp"
#include "gbs/exact.hpp"
#include "gbs/gbs_sampler.hpp"
#include "gbs/hafnian.hpp"
#include "gbs/matching_chain.hpp"
#include "gbs/matchings.hpp"

namespace gbs {

const char *to_string(Comparison c) {
    switch (c) {
        case Comparison::Less:
            return "<";
        case Comparison::LessEqual:
            return "<=";
        case Comparison::GreaterEqual:
            return ">=";
    }
    return "?";
}

VerificationReport make_report(std::string check, std::string item, double observed, Comparison cmp, double bound,
                               std::uint64_t samples) {
    VerificationReport r{std::move(check), std::move(item), bound, observed, cmp, false, samples};
    switch (cmp) {
        case Comparison::Less:
            r.passed = observed < bound;
            break;
        case Comparison::LessEqual:
            r.passed = observed <= bound;
            break;
        case Comparison::GreaterEqual:
            r.passed = observed >= bound;
            break;
    }
    return r;
}

std::string graph_id(const Graph &g) {
    std::ostringstream out;
    out << 'n' << g.vertex_count() << ':';
    bool first = true;
    for (const Edge &e : g.edges()) {
        out << (first ? "" : ".") << std::min(e.u, e.v) << '-' << std::max(e.u, e.v);
        first = false;
    }
    return out.str();
}

std::string matrix_id(const Matrix<double> &a) {
    std::ostringstream out;
    out << a.rows() << 'x' << a.cols() << ':';
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out << (c == 0 ? (r == 0 ? "" : ";") : ",") << a(r, c);
        }
    }
    return out.str();
}

namespace {

bool mask_connected(int n, const std::vector<std::pair<int, int>> &pairs, std::uint32_t mask) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    int components = n;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        const auto &[u, v] = pairs[static_cast<std::size_t>(std::countr_zero(m))];
        const int a = find(u);
        const int b = find(v);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace

std::vector<CorpusGraph> connected_graph_corpus(int max_n) {
    require(max_n >= 1 && max_n <= 7, ErrorKind::Validation, "corpus supports 1..7 vertices");
    std::vector<CorpusGraph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                index[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                    index[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = static_cast<int>(pairs.size());
                pairs.emplace_back(u, v);
            }
        }
        // Pair relabelling table for every vertex permutation.
        std::vector<std::vector<int>> relabel;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> map(pairs.size());
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                map[p] = index[static_cast<std::size_t>(perm[static_cast<std::size_t>(pairs[p].first)])]
                              [static_cast<std::size_t>(perm[static_cast<std::size_t>(pairs[p].second)])];
            }
            relabel.push_back(std::move(map));
        } while (std::next_permutation(perm.begin(), perm.end()));

        const std::uint32_t limit = 1u << pairs.size();
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            if (!mask_connected(n, pairs, mask)) {
                continue;
            }
            bool minimal = true;
            for (const auto &map : relabel) {
                std::uint32_t image = 0;
                for (std::uint32_t m = mask; m != 0; m &= m - 1) {
                    image |= 1u << map[static_cast<std::size_t>(std::countr_zero(m))];
                }
                if (image < mask) {
                    minimal = false;
                    break;
                }
            }
            if (!minimal) {
                continue;
            }
            Graph g(n);
            for (std::uint32_t m = mask; m != 0; m &= m - 1) {
                const auto &[u, v] = pairs[static_cast<std::size_t>(std::countr_zero(m))];
                g.add_edge(u, v);
            }
            out.push_back({graph_id(g), std::move(g)});
        }
    }
    return out;
}

std::vector<CorpusMatrix> matrix_corpus(int max_m, int max_n) {
    require(max_m >= 1 && max_n >= 1 && max_m * max_n <= 16, ErrorKind::Validation, "matrix corpus too large");
    std::vector<CorpusMatrix> out;
    for (int m = 1; m <= max_m; ++m) {
        for (int n = 1; n <= max_n; ++n) {
            const auto cells = static_cast<std::size_t>(m * n);
            std::size_t total = 1;
            for (std::size_t i = 0; i < cells; ++i) {
                total *= 3;
            }
            for (std::size_t code = 0; code < total; ++code) {
                Matrix<double> a(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
                std::size_t rest = code;
                for (std::size_t i = 0; i < cells; ++i) {
                    a(i / static_cast<std::size_t>(n), i % static_cast<std::size_t>(n)) = static_cast<double>(rest % 3);
                    rest /= 3;
                }
                bool ok = true;
                for (std::size_t c = 0; c < a.cols() && ok; ++c) {
                    bool nonzero = false;
                    for (std::size_t r = 0; r < a.rows(); ++r) {
                        nonzero = nonzero || a(r, c) != 0;
                    }
                    ok = nonzero;
                }
                if (ok) {
                    out.push_back({matrix_id(a), std::move(a)});
                }
            }
        }
    }
    return out;
}

VerificationReport check_lemma1(const Graph &g, double c, const std::string &id) {
    const ProductGraph pg = cartesian_product_k2(g, c);
    std::map<OutcomeKey, double> weights;
    for (const Matching &pm : enumerate_perfect_matchings(pg.graph)) {
        weights[key_of(project_to_subset(pg, pm))] += pm.weight(pg.graph);
    }
    const auto projected = DistributionTable::from_weights(OutcomeKind::Subset, weights);
    const double dev = max_abs_deviation(projected, exact_gbs_distribution(g, c));
    return make_report("lemma1", id + " c=" + std::to_string(c), dev, Comparison::LessEqual, 1e-10);
}

VerificationReport check_lemma2(const Graph &g, double c, const std::string &id) {
    const auto prof = partition_profile_exact(cartesian_product_k2(g, c).graph);
    const auto n = static_cast<std::size_t>(g.vertex_count());
    const Rational below = prof.at(n - 1);
    const Rational top = prof.at(n);
    const Rational bound = 2 * Rational(n * n);
    auto r = make_report("lemma2", id + " c=" + std::to_string(c), to_double(below / top), Comparison::Less,
                         to_double(bound));
    r.passed = below < bound * top;
    return r;
}

VerificationReport check_sum_zn(const Graph &g, double c, const std::string &id) {
    const auto prof = partition_profile_exact(cartesian_product_k2(g, c).graph);
    const auto haf = subset_hafnians(to_rational(g.adjacency()));
    const Rational c2 = to_rational(c) * to_rational(c);
    Rational sum = 0;
    for (std::uint32_t s = 0; s < haf.size(); ++s) {
        if (haf[s] == 0) {
            continue;
        }
        Rational term = haf[s] * haf[s];
        for (int i = 0; i < std::popcount(s); ++i) {
            term *= c2;
        }
        sum += term;
    }
    const Rational diff = abs(sum - prof.at(static_cast<std::size_t>(g.vertex_count())));
    auto r = make_report("sum-zn", id + " c=" + std::to_string(c), to_double(diff), Comparison::LessEqual, 0.0);
    r.passed = diff == 0;
    return r;
}

VerificationReport check_log_concavity(const Graph &g, const std::string &id) {
    const auto counts = matching_counts(g);
    const auto prof = partition_profile_exact(g);
    bool ok = true;
    double worst = 0;
    for (std::size_t k = 1; k + 1 < counts.size(); ++k) {
        const BigInt lhs = counts[k - 1] * counts[k + 1];
        const BigInt rhs = counts[k] * counts[k];
        ok = ok && lhs <= rhs;
        worst = std::max(worst, to_double(Rational(lhs, rhs)));
    }
    for (std::size_t k = 1; k + 1 < prof.z_by_size.size(); ++k) {
        const Rational lhs = prof.at(k - 1) * prof.at(k + 1);
        const Rational rhs = prof.at(k) * prof.at(k);
        ok = ok && lhs <= rhs;
        worst = std::max(worst, to_double(lhs / rhs));
    }
    auto r = make_report("logconcavity", id, worst, Comparison::LessEqual, 1.0);
    r.passed = ok;
    return r;
}

VerificationReport check_pm_percent(const Graph &g, double c, const std::string &id) {
    const auto prof = partition_profile_exact(boost_weights(cartesian_product_k2(g, c)).graph);
    const Rational top = prof.at(static_cast<std::size_t>(g.vertex_count()));
    auto r = make_report("pm-percent", id + " c=" + std::to_string(c), to_double(prof.total / top), Comparison::Less,
                         2.0);
    r.passed = prof.total < 2 * top;
    return r;
}

double tv_allowance(double epsilon, std::size_t support, std::uint64_t samples) {
    require(samples >= 1, ErrorKind::Validation, "samples must be >= 1");
    return epsilon + 3 * std::sqrt(static_cast<double>(support) / static_cast<double>(samples));
}

VerificationReport check_sampler_tv(const std::string &check, const std::string &id, const DistributionTable &target,
                                    std::span<const OutcomeKey> samples, double epsilon) {
    const auto emp = empirical_distribution(target.kind(), samples);
    return make_report(check, id, tv_distance(emp, target), Comparison::LessEqual,
                       tv_allowance(epsilon, target.size(), samples.size()), samples.size());
}

VerificationReport check_gadget_closeness(const Matrix<double> &a, double epsilon, const std::string &id) {
    const int k = choose_k(static_cast<int>(a.cols()), epsilon);
    const double tv = tv_distance(gadget_closed_form(a, k), exact_bs_distribution(a));
    return make_report("gadget-tv", id + " eps=" + std::to_string(epsilon), tv, Comparison::LessEqual, epsilon / 2);
}

VerificationReport check_gadget_bias(const Matrix<double> &a, double epsilon, const std::string &id) {
    const int k = choose_k(static_cast<int>(a.cols()), epsilon);
    double lowest = 1;
    for (const auto &row : gadget_bias_report(a, k)) {
        lowest = std::min(lowest, row.factor > 1 ? -1.0 : row.factor);
    }
    return make_report("gadget-bias", id + " eps=" + std::to_string(epsilon), lowest, Comparison::GreaterEqual,
                       std::exp(-epsilon / 2));
}

namespace {

class StateIndex {
   public:
    explicit StateIndex(const std::vector<Matching> &states) {
        for (std::size_t i = 0; i < states.size(); ++i) {
            index_[states[i].edge_ids()] = i;
        }
    }
    std::size_t operator()(const Matching &m) const {
        return index_.at(m.edge_ids());
    }

   private:
    std::map<std::vector<int>, std::size_t> index_;
};

}  // namespace

ChainMatrix matching_chain_matrix(const Graph &g, const OracleLimits &limits) {
    ChainMatrix cm;
    for (auto &level : enumerate_matchings(g, limits)) {
        for (auto &m : level) {
            cm.weight.push_back(m.weight(g));
            cm.states.push_back(std::move(m));
        }
    }
    const std::size_t s = cm.states.size();
    const StateIndex index(cm.states);
    cm.p = Matrix<double>(s, s);
    const double pick = g.edge_count() > 0 ? 0.5 / g.edge_count() : 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        double out = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            const Move move = propose_move(g, cm.states[i], e);
            if (move.kind == MoveKind::Hold) {
                continue;
            }
            Matching next = cm.states[i];
            apply_move(g, next, move);
            const double p = pick * std::min(1.0, move.ratio);
            cm.p(i, index(next)) += p;
            out += p;
        }
        cm.p(i, i) += 1.0 - out;
    }
    return cm;
}

ChainMatrix pm_chain_matrix(const BipartiteGraph &bg, const HoleWeights &hw, const OracleLimits &limits) {
    const Graph &g = bg.graph();
    const int part = bg.part_size();
    ChainMatrix cm;
    std::vector<PmState> states;
    for (auto &level : enumerate_matchings(g, limits)) {
        for (auto &m : level) {
            if (m.size() < part - 1) {
                continue;
            }
            PmState st{m, -1, -1};
            for (int v : m.unmatched_vertices()) {
                (bg.side(v) == Side::Left ? st.hole_left : st.hole_right) = v;
            }
            cm.weight.push_back(pm_state_weight(bg, hw, st));
            states.push_back(std::move(st));
            cm.states.push_back(std::move(m));
        }
    }
    const std::size_t s = cm.states.size();
    const StateIndex index(cm.states);
    cm.p = Matrix<double>(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        const PmState &st = states[i];
        std::vector<int> proposals;
        double pick = 0;
        if (st.is_perfect()) {
            for (int l : bg.left()) {
                proposals.push_back(st.matching.mate_edge(l));
            }
            pick = 0.5 / part;
        } else {
            proposals.resize(static_cast<std::size_t>(g.edge_count()));
            std::iota(proposals.begin(), proposals.end(), 0);
            pick = 0.5 / g.edge_count();
        }
        double out = 0;
        for (int e : proposals) {
            const PmMove move = propose_pm_move(bg, hw, st, e);
            if (move.kind == MoveKind::Hold || !(move.ratio > 0)) {
                continue;
            }
            PmState next = st;
            apply_pm_move(bg, next, move);
            const double p = pick * std::min(1.0, move.ratio);
            cm.p(i, index(next.matching)) += p;
            out += p;
        }
        cm.p(i, i) += 1.0 - out;
    }
    return cm;
}

}  // namespace gbs
