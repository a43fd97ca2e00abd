// Copyright 2026 The slipeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slipeval/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include <fmt/format.h>

#include "slipeval/errors.hpp"

namespace slipeval {

namespace {

std::string format_weight(double w) {
  std::string s = fmt::format("{:.6f}", w);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string_view dot_color(PathClass c) {
  switch (c) {
    case PathClass::IntendedPath: return "blue";
    case PathClass::ErrorPath: return "goldenrod";
    case PathClass::AlternativePath: return "red";
    case PathClass::Shared: return "black";
  }
  return "black";
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

std::string_view to_string(PathClass c) {
  switch (c) {
    case PathClass::ErrorPath: return "error";
    case PathClass::IntendedPath: return "intended";
    case PathClass::AlternativePath: return "alternative";
    case PathClass::Shared: return "shared";
  }
  return "?";
}

Lattice::Lattice(std::size_t num_nodes, std::size_t start, std::size_t end,
                 std::vector<Arc> arcs)
    : num_nodes_(num_nodes), start_(start), end_(end), arcs_(std::move(arcs)) {
  if (start_ >= num_nodes_ || end_ >= num_nodes_) {
    throw InvalidLattice("start/end node out of range");
  }
  if (start_ == end_) throw InvalidLattice("start and end must differ");
  for (const auto& a : arcs_) {
    if (a.from >= num_nodes_ || a.to >= num_nodes_) {
      throw InvalidLattice(fmt::format("arc {}->{} out of range", a.from, a.to));
    }
    if (a.label.empty()) throw InvalidLattice("arc label is empty");
    if (!std::isfinite(a.weight)) throw InvalidLattice("arc weight is not finite");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.from, a.to, a.label, a.path_class, a.weight) <
           std::tie(b.from, b.to, b.label, b.path_class, b.weight);
  });

  // Kahn's algorithm, smallest ready node first.
  std::vector<std::size_t> indegree(num_nodes_, 0);
  for (const auto& a : arcs_) ++indegree[a.to];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (const auto& a : arcs_) {
      if (a.from == v && --indegree[a.to] == 0) ready.push(a.to);
    }
  }
  if (topo_.size() != num_nodes_) throw InvalidLattice("lattice has a cycle");

  std::vector<bool> fwd(num_nodes_, false);
  std::vector<bool> bwd(num_nodes_, false);
  fwd[start_] = true;
  for (std::size_t v : topo_) {
    if (!fwd[v]) continue;
    for (const auto& a : arcs_) {
      if (a.from == v) fwd[a.to] = true;
    }
  }
  bwd[end_] = true;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (const auto& a : arcs_) {
      if (a.from == *it && bwd[a.to]) bwd[*it] = true;
    }
  }
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    if (!fwd[v] || !bwd[v]) {
      throw InvalidLattice(fmt::format("node {} is not on a start-to-end path", v));
    }
  }
}

Lattice build_error_lattice(std::string_view error_word,
                            std::optional<std::string_view> intended_word,
                            std::span<const Alternative> alternatives,
                            const PathMasses& masses) {
  if (error_word.empty()) throw InvalidProbability("error word is empty");
  const auto check_mass = [](double m, std::string_view what) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw InvalidProbability(fmt::format("{} mass must be > 0", what));
    }
  };
  check_mass(masses.error, "error");
  if (intended_word) check_mass(masses.intended, "intended");
  if (!alternatives.empty()) check_mass(masses.alternatives, "alternative");

  double alt_sum = 0.0;
  for (const auto& alt : alternatives) {
    if (alt.word.empty()) throw InvalidProbability("alternative word is empty");
    if (!(alt.probability > 0.0 && alt.probability <= 1.0)) {
      throw InvalidProbability(fmt::format("alternative '{}' probability {} not in (0, 1]",
                                           alt.word, alt.probability));
    }
    alt_sum += alt.probability;
  }
  if (intended_word && intended_word->empty()) {
    throw InvalidProbability("intended word is empty");
  }

  const double total = masses.error + (intended_word ? masses.intended : 0.0) +
                       (alternatives.empty() ? 0.0 : masses.alternatives);
  const auto weight = [](double p) { return p >= 1.0 ? 0.0 : -std::log(p); };

  std::vector<Arc> arcs;
  arcs.push_back({0, 1, std::string(error_word), weight(masses.error / total),
                  PathClass::ErrorPath});
  if (intended_word) {
    arcs.push_back({0, 1, std::string(*intended_word), weight(masses.intended / total),
                    PathClass::IntendedPath});
  }
  for (const auto& alt : alternatives) {
    const double p = masses.alternatives / total * alt.probability / alt_sum;
    arcs.push_back({0, 1, alt.word, weight(p), PathClass::AlternativePath});
  }
  return Lattice(2, 0, 1, std::move(arcs));
}

double log_total_probability(const Lattice& l) {
  std::vector<double> alpha(l.num_nodes(), -std::numeric_limits<double>::infinity());
  alpha[l.start()] = 0.0;
  for (std::size_t v : l.topological_order()) {
    for (const auto& a : l.arcs()) {
      if (a.from == v) alpha[a.to] = log_add(alpha[a.to], alpha[v] - a.weight);
    }
  }
  return alpha[l.end()];
}

Lattice reweight(const Lattice& l, const BiasConfig& bias) {
  for (double b : {bias.correction_bias, bias.verbatim_bias}) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw InvalidProbability("bias factors must be positive and finite");
    }
  }
  std::vector<Arc> arcs = l.arcs();
  for (auto& a : arcs) {
    if (a.path_class == PathClass::IntendedPath) a.weight -= std::log(bias.correction_bias);
    if (a.path_class == PathClass::ErrorPath) a.weight -= std::log(bias.verbatim_bias);
  }
  Lattice biased(l.num_nodes(), l.start(), l.end(), arcs);
  const double log_z = log_total_probability(biased);
  for (auto& a : arcs) {
    if (a.from == l.start()) a.weight += log_z;
  }
  return Lattice(l.num_nodes(), l.start(), l.end(), std::move(arcs));
}

BestPath best_path(const Lattice& l) {
  // Backward relaxation: prepending a label preserves lexicographic order
  // between equal-weight suffixes, so per-node tie-breaking is exact.
  std::vector<std::optional<BestPath>> best(l.num_nodes());
  best[l.end()] = BestPath{};
  const auto& topo = l.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::size_t v = *it;
    if (v == l.end()) continue;
    for (const auto& a : l.arcs()) {
      if (a.from != v || !best[a.to]) continue;
      const BestPath& suffix = *best[a.to];
      const double w = a.weight + suffix.total_weight;
      if (best[v]) {
        if (w > best[v]->total_weight) continue;
        if (w == best[v]->total_weight) {
          const auto& cur = best[v]->labels;
          const bool smaller =
              a.label < cur.front() ||
              (a.label == cur.front() &&
               std::lexicographical_compare(suffix.labels.begin(), suffix.labels.end(),
                                            cur.begin() + 1, cur.end()));
          if (!smaller) continue;
        }
      }
      BestPath cand;
      cand.total_weight = w;
      cand.labels.reserve(suffix.labels.size() + 1);
      cand.labels.push_back(a.label);
      cand.labels.insert(cand.labels.end(), suffix.labels.begin(), suffix.labels.end());
      best[v] = std::move(cand);
    }
  }
  if (!best[l.start()]) throw NoPath("no path from start to end");
  return *best[l.start()];
}

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "dot") return ExportFormat::Dot;
  if (s == "arclist") return ExportFormat::Arclist;
  return std::nullopt;
}

std::string export_lattice(const Lattice& l, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::Arclist) {
    for (const auto& a : l.arcs()) {
      out += fmt::format("{}\t{}\t{}\t{}\n", a.from, a.to, a.label, format_weight(a.weight));
    }
    out += fmt::format("{}\n", l.end());
    return out;
  }
  out += "digraph lattice {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle];\n";
  out += fmt::format("  {} [shape=doublecircle];\n", l.end());
  for (const auto& a : l.arcs()) {
    out += fmt::format("  {} -> {} [label=\"{}/{}\", color={}];\n", a.from, a.to,
                       dot_escape(a.label), format_weight(a.weight), dot_color(a.path_class));
  }
  out += "}\n";
  return out;
}

}  // namespace slipeval
