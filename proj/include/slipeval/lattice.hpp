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

#ifndef SLIPEVAL_LATTICE_HPP_
#define SLIPEVAL_LATTICE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slipeval {

enum class PathClass { ErrorPath, IntendedPath, AlternativePath, Shared };

std::string_view to_string(PathClass c);

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string label;
  double weight = 0.0;  // negative log probability
  PathClass path_class = PathClass::Shared;

  bool operator==(const Arc&) const = default;
};

// Weighted word DAG with one start and one end node. Construction checks
// acyclicity and that every node lies on some start-to-end path.
class Lattice {
 public:
  // Throws InvalidLattice.
  Lattice(std::size_t num_nodes, std::size_t start, std::size_t end,
          std::vector<Arc> arcs);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Nodes in a deterministic topological order.
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  bool operator==(const Lattice& o) const {
    return num_nodes_ == o.num_nodes_ && start_ == o.start_ && end_ == o.end_ &&
           arcs_ == o.arcs_;
  }

 private:
  std::size_t num_nodes_;
  std::size_t start_;
  std::size_t end_;
  std::vector<Arc> arcs_;  // sorted by (from, to, label, path_class, weight)
  std::vector<std::size_t> topo_;
};

// Prior mass per path class before normalization over the classes present.
struct PathMasses {
  double error = 0.5;
  double intended = 0.3;
  double alternatives = 0.2;
};

struct Alternative {
  std::string word;
  double probability = 1.0;  // relative share of the alternative mass
};

// One-slot lattice: start -> end with one arc per candidate word. The
// alternatives split their mass in proportion to `probability`.
// Throws InvalidProbability.
Lattice build_error_lattice(std::string_view error_word,
                            std::optional<std::string_view> intended_word,
                            std::span<const Alternative> alternatives,
                            const PathMasses& masses = {});

struct BiasConfig {
  double correction_bias = 1.0;  // multiplies intended-path probability
  double verbatim_bias = 1.0;    // multiplies error-path probability

  BiasConfig inverse() const { return {1.0 / correction_bias, 1.0 / verbatim_bias}; }
};

// Scales the intended and error paths, then renormalizes so path
// probabilities sum to 1. The normalizer is folded into the arcs leaving the
// start node, which every path crosses exactly once. Throws
// InvalidProbability for non-positive biases.
Lattice reweight(const Lattice& lattice, const BiasConfig& bias);

// log of the summed probability of all start-to-end paths.
double log_total_probability(const Lattice& lattice);

struct BestPath {
  std::vector<std::string> labels;
  double total_weight = 0.0;
};

// Minimum-weight path; equal weights resolve to the lexicographically
// smallest label sequence. Throws NoPath.
BestPath best_path(const Lattice& lattice);

enum class ExportFormat { Dot, Arclist };

std::optional<ExportFormat> parse_export_format(std::string_view s);

// `arclist`: from<TAB>to<TAB>label<TAB>weight per arc, then the end node.
// `dot`: Graphviz digraph, arcs labelled word/weight and coloured by class.
// Weights use six decimals.
std::string export_lattice(const Lattice& lattice, ExportFormat format);

}  // namespace slipeval

#endif  // SLIPEVAL_LATTICE_HPP_
