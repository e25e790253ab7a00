#pragma once

// Suffix tree over integer symbol strings, built with Ukkonen's online
// algorithm in O(n log sigma). A unique terminator is appended internally so
// every suffix ends at a leaf; internal-node paths therefore never contain
// the terminator and spell exactly the right-maximal repeated substrings.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace gfm {

class SuffixTree {
public:
  static constexpr int32_t kTerminator = -1;

  explicit SuffixTree(std::vector<int32_t> text) : n_(text.size()) {
    text_ = std::move(text);
    text_.push_back(kTerminator);
    build();
    finalize();
  }

  /// Length of the original text (terminator excluded).
  int text_size() const { return static_cast<int>(n_); }

  /// Text plus trailing terminator; edge labels index into this.
  const std::vector<int32_t>& padded_text() const { return text_; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  bool is_leaf(int v) const { return nodes_[v].next.empty(); }
  int parent(int v) const { return nodes_[v].parent; }

  /// String depth: length of the path from the root to v.
  int depth(int v) const { return nodes_[v].depth; }
  int parent_depth(int v) const { return nodes_[nodes_[v].parent].depth; }

  /// Sorted start positions of the path string of v as a substring of the
  /// original text (suffix indices of the leaves below v).
  const std::vector<int>& positions(int v) const {
    ensure_positions();
    return positions_[v];
  }

  /// Number of leaves below v.
  int leaf_count(int v) const {
    ensure_positions();
    return static_cast<int>(positions_[v].size());
  }

  /// Node at or below the end of the path t[pos, pos+len); the path must
  /// exist, which holds for every substring of the text.
  int locate(int pos, int len) const {
    int v = 0;
    int consumed = 0;
    while (consumed < len) {
      auto it = nodes_[v].next.find(text_[pos + consumed]);
      v = it->second;
      consumed += edge_length(v);
    }
    return v;
  }

  /// Node at or below the path spelled by syms, or -1 when no such path
  /// exists in the tree.
  int find(const std::vector<int32_t>& syms) const {
    int v = 0;
    std::size_t i = 0;
    while (i < syms.size()) {
      auto it = nodes_[v].next.find(syms[i]);
      if (it == nodes_[v].next.end()) return -1;
      v = it->second;
      int e = nodes_[v].start;
      int stop = e + edge_length(v);
      while (e < stop && i < syms.size()) {
        if (text_[e] != syms[i]) return -1;
        ++e;
        ++i;
      }
    }
    return v;
  }

  /// Applies f(node) to every internal node except the root.
  template <class F>
  void for_each_internal(F&& f) const {
    for (int v = 1; v < node_count(); ++v)
      if (!is_leaf(v)) f(v);
  }

private:
  struct Node {
    std::map<int32_t, int> next;
    int start = -1;              // incoming edge label [start, end) in text_
    int end = kOpenEnd;
    int link = 0;
    int parent = 0;
    int depth = 0;
  };
  static constexpr int kOpenEnd = std::numeric_limits<int>::max();

  int new_node(int start, int end) {
    nodes_.push_back(Node{});
    nodes_.back().start = start;
    nodes_.back().end = end;
    return static_cast<int>(nodes_.size()) - 1;
  }

  int edge_length(int v) const {
    return std::min(nodes_[v].end, static_cast<int>(text_.size())) -
           nodes_[v].start;
  }

  void build() {
    const int total = static_cast<int>(text_.size());
    nodes_.clear();
    nodes_.reserve(2 * total + 2);
    new_node(-1, -1);  // root

    int active_node = 0, active_edge = 0, active_len = 0;
    int remainder = 0;
    for (int pos = 0; pos < total; ++pos) {
      int need_link = 0;
      auto add_link = [&](int v) {
        if (need_link) nodes_[need_link].link = v;
        need_link = v;
      };
      ++remainder;
      while (remainder > 0) {
        if (active_len == 0) active_edge = pos;
        auto it = nodes_[active_node].next.find(text_[active_edge]);
        if (it == nodes_[active_node].next.end()) {
          int leaf = new_node(pos, kOpenEnd);
          nodes_[active_node].next[text_[active_edge]] = leaf;
          add_link(active_node);
        } else {
          int nxt = it->second;
          int len = std::min(nodes_[nxt].end, pos + 1) - nodes_[nxt].start;
          if (active_len >= len) {  // walk down one edge
            active_edge += len;
            active_len -= len;
            active_node = nxt;
            continue;
          }
          if (text_[nodes_[nxt].start + active_len] == text_[pos]) {
            ++active_len;
            add_link(active_node);
            break;
          }
          int split = new_node(nodes_[nxt].start, nodes_[nxt].start + active_len);
          nodes_[active_node].next[text_[active_edge]] = split;
          int leaf = new_node(pos, kOpenEnd);
          nodes_[split].next[text_[pos]] = leaf;
          nodes_[nxt].start += active_len;
          nodes_[split].next[text_[nodes_[nxt].start]] = nxt;
          add_link(split);
        }
        --remainder;
        if (active_node == 0 && active_len > 0) {
          --active_len;
          active_edge = pos - remainder + 1;
        } else if (active_node != 0) {
          active_node = nodes_[active_node].link;
        }
      }
    }
  }

  // Iterative DFS fixing leaf ends, parents and string depths.
  void finalize() {
    const int total = static_cast<int>(text_.size());
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (nodes_[v].end == kOpenEnd) nodes_[v].end = total;
      for (auto& [sym, child] : nodes_[v].next) {
        nodes_[child].parent = v;
        int child_end = std::min(nodes_[child].end, total);
        nodes_[child].depth = nodes_[v].depth + child_end - nodes_[child].start;
        stack.push_back(child);
      }
    }
  }

  // Leaf positions are only needed by extraction; fill them on first use.
  void ensure_positions() const {
    if (!positions_.empty()) return;
    const int total = static_cast<int>(text_.size());
    positions_.assign(nodes_.size(), {});
    // post-order: children before parents
    std::vector<int> order;
    order.reserve(nodes_.size());
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto& [sym, child] : nodes_[v].next) stack.push_back(child);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      if (is_leaf(v)) {
        positions_[v].push_back(total - nodes_[v].depth);
      } else {
        std::size_t want = 0;
        for (auto& [sym, child] : nodes_[v].next)
          want += positions_[child].size();
        positions_[v].reserve(want);
        for (auto& [sym, child] : nodes_[v].next)
          positions_[v].insert(positions_[v].end(), positions_[child].begin(),
                               positions_[child].end());
        std::sort(positions_[v].begin(), positions_[v].end());
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<int32_t> text_;
  std::vector<Node> nodes_;
  mutable std::vector<std::vector<int>> positions_;
};

}  // namespace gfm
