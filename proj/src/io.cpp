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
#include "gbs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"

namespace gbs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text, const char *what) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        fail(ErrorKind::Validation, std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view s) {
    s = trim(s);
    double x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), ErrorKind::Validation,
            "not a number: '" + std::string(s) + "'");
    return x;
}

OutcomeKey key_from_json(const json &j) {
    require(j.is_array(), ErrorKind::Validation, "outcome key must be an integer array");
    OutcomeKey key;
    for (const auto &x : j) {
        require(x.is_number_integer(), ErrorKind::Validation, "outcome key must be an integer array");
        key.push_back(x.get<int>());
    }
    return key;
}

}  // namespace

Graph parse_graph_json(std::string_view text) {
    const json j = parse_json(text, "graph");
    require(j.is_object() && j.contains("vertices") && j.contains("edges"), ErrorKind::Validation,
            "graph JSON needs \"vertices\" and \"edges\"");
    require(j["vertices"].is_number_integer() && j["vertices"].get<long long>() >= 0, ErrorKind::Validation,
            "\"vertices\" must be a non-negative integer");
    Graph g(j["vertices"].get<int>());
    require(j["edges"].is_array(), ErrorKind::Validation, "\"edges\" must be an array");
    for (const auto &e : j["edges"]) {
        require(e.is_array() && (e.size() == 2 || e.size() == 3) && e[0].is_number_integer() &&
                    e[1].is_number_integer() && (e.size() == 2 || e[2].is_number()),
                ErrorKind::Validation, "each edge must be [u, v] or [u, v, weight]");
        g.add_edge(e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0);
    }
    return g;
}

std::string graph_to_json(const Graph &g) {
    ordered_json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = json::array();
    for (const Edge &e : g.edges()) {
        if (e.weight == 1.0) {
            j["edges"].push_back({e.u, e.v});
        } else {
            j["edges"].push_back({e.u, e.v, e.weight});
        }
    }
    return j.dump() + "\n";
}

Matrix<double> parse_matrix_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<double> row;
        std::size_t cell = 0;
        while (true) {
            const auto comma = line.find(',', cell);
            row.push_back(parse_number(line.substr(cell, comma == std::string_view::npos ? line.npos : comma - cell)));
            if (comma == std::string_view::npos) {
                break;
            }
            cell = comma + 1;
        }
        require(rows.empty() || row.size() == rows.front().size(), ErrorKind::Dimension, "ragged matrix rows");
        rows.push_back(std::move(row));
    }
    require(!rows.empty(), ErrorKind::Dimension, "matrix is empty");
    Matrix<double> a(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            a(r, c) = rows[r][c];
        }
    }
    return a;
}

Matrix<double> parse_matrix_json(std::string_view text) {
    const json j = parse_json(text, "matrix");
    require(j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty(), ErrorKind::Dimension,
            "matrix must be a non-empty array of rows");
    Matrix<double> a(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        require(j[r].is_array() && j[r].size() == a.cols(), ErrorKind::Dimension, "ragged matrix rows");
        for (std::size_t c = 0; c < a.cols(); ++c) {
            require(j[r][c].is_number(), ErrorKind::Validation, "matrix entries must be numbers");
            a(r, c) = j[r][c].get<double>();
        }
    }
    return a;
}

std::string matrix_to_csv(const Matrix<double> &a) {
    std::string out;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out += (c == 0 ? "" : ",") + json(a(r, c)).dump();
        }
        out += '\n';
    }
    return out;
}

DistributionTable parse_table_json(std::string_view text) {
    const json j = parse_json(text, "table");
    require(j.is_object() && j.contains("outcomes") && j["outcomes"].is_array(), ErrorKind::Validation,
            "table JSON needs an \"outcomes\" array");
    OutcomeKind kind = OutcomeKind::Subset;
    if (j.contains("kind")) {
        require(j["kind"].is_string(), ErrorKind::Validation, "\"kind\" must be a string");
        const auto k = j["kind"].get<std::string>();
        if (k == "subset") {
            kind = OutcomeKind::Subset;
        } else if (k == "occupancy") {
            kind = OutcomeKind::Occupancy;
        } else if (k == "matching") {
            kind = OutcomeKind::Matching;
        } else {
            fail(ErrorKind::Validation, "unknown table kind '" + k + "'");
        }
    }
    std::map<OutcomeKey, double> weights;
    for (const auto &o : j["outcomes"]) {
        require(o.is_object() && o.contains("key") && o.contains("p") && o["p"].is_number(), ErrorKind::Validation,
                "each outcome needs \"key\" and \"p\"");
        weights[key_from_json(o["key"])] = o["p"].get<double>();
    }
    const double normalizer = j.contains("normalizer") ? j["normalizer"].get<double>() : 1.0;
    return DistributionTable::from_probabilities(kind, std::move(weights), normalizer);
}

std::string table_to_json(const DistributionTable &t) {
    ordered_json j;
    j["kind"] = to_string(t.kind());
    j["outcomes"] = json::array();
    for (const auto &[key, p] : t.entries()) {
        ordered_json o;
        o["key"] = key;
        o["p"] = p;
        j["outcomes"].push_back(o);
    }
    j["normalizer"] = t.normalizer();
    return j.dump() + "\n";
}

std::string sample_line(const OutcomeKey &key) {
    return json(key).dump() + "\n";
}

std::vector<OutcomeKey> parse_samples_jsonl(std::string_view text) {
    std::vector<OutcomeKey> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        if (!line.empty()) {
            out.push_back(key_from_json(parse_json(line, "sample")));
        }
    }
    return out;
}

std::string report_line(const VerificationReport &r) {
    ordered_json j;
    j["check_name"] = r.check_name;
    j["corpus_item"] = r.corpus_item;
    j["claimed_bound"] = r.claimed_bound;
    j["comparison"] = to_string(r.comparison);
    j["observed"] = r.observed;
    j["passed"] = r.passed;
    j["samples_used"] = r.samples_used;
    return j.dump() + "\n";
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph read_graph_file(const std::filesystem::path &path) {
    return parse_graph_json(read_file(path));
}

Matrix<double> read_matrix_file(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    return path.extension() == ".json" ? parse_matrix_json(text) : parse_matrix_csv(text);
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::Io, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        require(static_cast<bool>(out), ErrorKind::Io, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::Io, "cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace gbs
