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

#include "winroute/tree_cutting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "winroute/errors.hpp"

namespace winroute {

namespace {
constexpr int kBitsPerPart = 16;
constexpr unsigned long long kPartMask = (1ULL << kBitsPerPart) - 1;
}  // namespace

SizeVector SubtreeCover::sizes() const {
  SizeVector s;
  for (const auto& part : parts) s.push_back(static_cast<int>(part.size()));
  return s;
}

CuttingTable::CuttingTable(const RootedTree& tree, int k, CuttingOptions options)
    : tree_(tree), k_(k), options_(std::move(options)) {
  if (k < 1) throw InputError("number of parts must be positive");
  if (k > options_.max_k || k * kBitsPerPart > 64) {
    throw InputError("number of parts exceeds the configured bound");
  }
  if (tree.num_edges() > static_cast<int>(kPartMask)) throw InputError("tree too large");
  const int n = tree.num_vertices();
  stages_.assign(n, {});
  primed_.assign(n, {});
  const int cap = options_.part_cap;
  auto multiplicity = [&](EdgeId e) {
    if (options_.edge_multiplicity.empty()) return k_;
    return std::min(k_, options_.edge_multiplicity.at(e));
  };

  for (int v : tree.PostOrder()) {
    for (int c : tree.children[v]) {
      // Additive step: hand the edge {v, c} to the parts of every cover of
      // B(c), extending nonempty parts and any subset of empty ones.
      Primed& pr = primed_[c];
      const int limit = multiplicity(tree.parent_edge[c]);
      for (Key child_key : Final(c)) {
        const SizeVector t = Decode(child_key);
        unsigned nonempty = 0;
        for (int j = 0; j < k_; ++j) {
          if (t[j] != 0) nonempty |= 1u << j;
        }
        const unsigned empty = ((1u << k_) - 1) & ~nonempty;
        // Enumerate subsets I of the empty parts (nonempty I when all are empty).
        for (unsigned sub = empty;; sub = (sub - 1) & empty) {
          const unsigned mask = nonempty | sub;
          if (mask != 0 && std::popcount(mask) <= limit) {
            SizeVector u = t;
            bool ok = true;
            for (int j = 0; j < k_; ++j) {
              if (mask >> j & 1u) {
                ++u[j];
                if (cap >= 0 && u[j] > cap) ok = false;
              }
            }
            if (ok) {
              const Key key = Encode(u);
              if (pr.back.emplace(key, std::make_pair(child_key, mask)).second) {
                pr.order.push_back(key);
              }
            }
          }
          if (sub == 0) break;
        }
      }
      // Merge with the branches of the earlier children.
      Stage stage;
      if (stages_[v].empty()) {
        for (Key key : pr.order) {
          stage.back.emplace(key, std::make_pair(Key{0}, key));
          stage.order.push_back(key);
        }
      } else {
        const Stage& prev = stages_[v].back();
        for (Key a : prev.order) {
          const SizeVector va = Decode(a);
          for (Key b : pr.order) {
            const SizeVector vb = Decode(b);
            SizeVector sum(k_);
            bool ok = true;
            for (int j = 0; j < k_; ++j) {
              sum[j] = va[j] + vb[j];
              if (cap >= 0 && sum[j] > cap) ok = false;
            }
            if (!ok) continue;
            const Key key = Encode(sum);
            if (stage.back.emplace(key, std::make_pair(a, b)).second) stage.order.push_back(key);
          }
        }
      }
      max_table_size_ = std::max(max_table_size_, stage.order.size());
      stages_[v].push_back(std::move(stage));
    }
  }
}

CuttingTable::Key CuttingTable::Encode(const SizeVector& v) const {
  Key key = 0;
  for (int j = 0; j < k_; ++j) key |= static_cast<Key>(v[j]) << (kBitsPerPart * j);
  return key;
}

SizeVector CuttingTable::Decode(Key key) const {
  SizeVector v(k_);
  for (int j = 0; j < k_; ++j) v[j] = static_cast<int>((key >> (kBitsPerPart * j)) & kPartMask);
  return v;
}

const std::vector<CuttingTable::Key>& CuttingTable::Final(int v) const {
  return stages_[v].empty() ? leaf_ : stages_[v].back().order;
}

std::vector<SizeVector> CuttingTable::RootVectors() const {
  std::vector<SizeVector> out;
  for (Key key : Final(tree_.root)) out.push_back(Decode(key));
  return out;
}

bool CuttingTable::Contains(const SizeVector& sizes) const {
  if (static_cast<int>(sizes.size()) != k_) return false;
  for (int s : sizes) {
    if (s < 0 || s > static_cast<int>(kPartMask)) return false;
  }
  const Key key = Encode(sizes);
  if (stages_[tree_.root].empty()) return key == 0;
  return stages_[tree_.root].back().back.contains(key);
}

SubtreeCover CuttingTable::Expand(const SizeVector& sizes) const {
  if (!Contains(sizes)) throw InputError("size vector is not achievable");
  SubtreeCover cover;
  cover.parts.assign(k_, {});
  ExpandInto(tree_.root, Encode(sizes), cover);
  for (auto& part : cover.parts) std::sort(part.begin(), part.end());
  return cover;
}

void CuttingTable::ExpandInto(int v, Key key, SubtreeCover& cover) const {
  const auto& stages = stages_[v];
  for (int i = static_cast<int>(stages.size()) - 1; i >= 0; --i) {
    const auto [prev, primed_key] = stages[i].back.at(key);
    const int c = tree_.children[v][i];
    const auto [child_key, mask] = primed_[c].back.at(primed_key);
    for (int j = 0; j < k_; ++j) {
      if (mask >> j & 1u) cover.parts[j].push_back(tree_.parent_edge[c]);
    }
    ExpandInto(c, child_key, cover);
    key = prev;
  }
}

std::set<SizeVector> AchievableSizeVectors(const RootedTree& tree, int k,
                                           const CuttingOptions& options) {
  const CuttingTable table(tree, k, options);
  const auto vectors = table.RootVectors();
  return {vectors.begin(), vectors.end()};
}

std::optional<SubtreeCover> CutTree(const RootedTree& tree, const SizeVector& sizes,
                                    CutMode mode, const CuttingOptions& options) {
  const int k = static_cast<int>(sizes.size());
  for (int s : sizes) {
    if (s < 0) throw InputError("negative part size");
  }
  const CuttingTable table(tree, k, options);
  if (mode == CutMode::kExact) {
    if (!table.Contains(sizes)) return std::nullopt;
    return table.Expand(sizes);
  }
  for (const SizeVector& v : table.RootVectors()) {
    bool dominated = true;
    for (int j = 0; j < k; ++j) dominated = dominated && v[j] <= sizes[j];
    if (dominated) return table.Expand(v);
  }
  return std::nullopt;
}

bool IsValidCover(const RootedTree& tree, const SubtreeCover& cover) {
  const int m = tree.num_edges();
  std::vector<char> covered(m, 0);
  for (const auto& part : cover.parts) {
    std::vector<char> in(m, 0);
    for (EdgeId e : part) {
      if (e < 0 || e >= m || in[e]) return false;
      in[e] = 1;
      covered[e] = 1;
    }
    // Rooted and connected: the upper edge of every part edge is in the part
    // too, unless it hangs directly off the root.
    for (EdgeId e : part) {
      const int upper = tree.UpperEnd(e);
      if (upper != tree.root && !in[tree.parent_edge[upper]]) return false;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

}  // namespace winroute
