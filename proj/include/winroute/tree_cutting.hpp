// Copyright 2026 The winroute Authors
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

#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "winroute/rooted_tree.hpp"

namespace winroute {

// (t_1, ..., t_k): edge counts of k rooted subtrees.
using SizeVector = std::vector<int>;

struct CuttingOptions {
  int max_k = 4;
  // Parts larger than this are dropped while the table is built (-1: no cap).
  int part_cap = -1;
  // Max number of parts that may contain each edge, indexed by EdgeId.
  // Empty means k (any overlap).
  std::vector<int> edge_multiplicity;
};

// k subtrees, each a list of EdgeIds forming a tree that contains the root
// (or empty). Their union is every edge of the tree.
struct SubtreeCover {
  std::vector<std::vector<EdgeId>> parts;
  SizeVector sizes() const;
};

enum class CutMode { kExact, kAtMost };

// Every size vector of a k-tuple of rooted subtrees covering E(T).
std::set<SizeVector> AchievableSizeVectors(const RootedTree& tree, int k,
                                           const CuttingOptions& options = {});

// A cover whose size vector equals `sizes` (kExact) or is dominated by it
// (kAtMost), or nullopt.
std::optional<SubtreeCover> CutTree(const RootedTree& tree, const SizeVector& sizes,
                                    CutMode mode, const CuttingOptions& options = {});

// Union is E(T); every nonempty part is connected and contains the root.
bool IsValidCover(const RootedTree& tree, const SubtreeCover& cover);

// Dynamic-programming table behind the two functions above. Keeps, per
// vertex, one representative cover for each reachable size vector together
// with back-pointers, so any achievable vector can be expanded to a cover.
class CuttingTable {
 public:
  CuttingTable(const RootedTree& tree, int k, CuttingOptions options = {});

  int k() const { return k_; }
  // Size vectors at the root, in construction order.
  std::vector<SizeVector> RootVectors() const;
  bool Contains(const SizeVector& sizes) const;
  SubtreeCover Expand(const SizeVector& sizes) const;
  // Largest number of vectors stored for any single vertex.
  std::size_t max_table_size() const { return max_table_size_; }

 private:
  using Key = unsigned long long;
  struct Stage {
    std::vector<Key> order;
    // key -> (key in the previous stage, key in the child's primed table)
    std::unordered_map<Key, std::pair<Key, Key>> back;
  };
  struct Primed {
    std::vector<Key> order;
    // key -> (key in the child's final stage, parts receiving the child edge)
    std::unordered_map<Key, std::pair<Key, unsigned>> back;
  };

  Key Encode(const SizeVector& v) const;
  SizeVector Decode(Key key) const;
  const std::vector<Key>& Final(int v) const;
  void ExpandInto(int v, Key key, SubtreeCover& cover) const;

  const RootedTree& tree_;
  int k_;
  CuttingOptions options_;
  std::vector<std::vector<Stage>> stages_;  // per vertex, one per child
  std::vector<Primed> primed_;              // per child vertex
  std::vector<Key> leaf_{0};
  std::size_t max_table_size_ = 0;
};

}  // namespace winroute
