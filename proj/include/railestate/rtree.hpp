#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "railestate/geometry.hpp"

namespace railestate {

/// Static R-tree bulk loaded with Sort-Tile-Recursive packing.
///
/// Leaves own contiguous runs of items and internal nodes own contiguous runs
/// of child nodes, so the whole tree lives in two flat vectors. Queries return
/// every item whose box intersects the query box; exact refinement is the
/// caller's job.
template <class Payload>
class RTree {
 public:
  using Item = std::pair<Box, Payload>;

  static constexpr std::size_t kFanout = 16;

  RTree() = default;

  explicit RTree(std::vector<Item> items) : items_(std::move(items)) { build(); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  template <class Visit>
  void query(const Box& q, Visit&& visit) const {
    if (nodes_.empty()) return;
    std::vector<std::uint32_t> stack{root_};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      if (!node.box.intersects(q)) continue;
      if (node.leaf) {
        for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
          if (items_[i].first.intersects(q)) visit(items_[i].second);
        }
      } else {
        for (std::uint32_t c = node.first; c < node.first + node.count; ++c) stack.push_back(c);
      }
    }
  }

  /// Every child box (item or node) lies inside its parent's box, and every
  /// item is reachable exactly once.
  bool check_invariants() const {
    if (nodes_.empty()) return items_.empty();
    std::vector<int> seen(items_.size(), 0);
    std::vector<std::uint32_t> stack{root_};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const Box& child = node.leaf ? items_[i].first : nodes_[i].box;
        if (!node.box.contains(child)) return false;
        if (node.leaf) {
          ++seen[i];
        } else {
          stack.push_back(i);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
  }

  std::size_t height() const { return height_; }

 private:
  struct Node {
    Box box;
    std::uint32_t first = 0;
    std::uint32_t count = 0;
    bool leaf = false;
  };

  static double center_lon(const Box& b) { return (b.min_lon + b.max_lon) / 2.0; }
  static double center_lat(const Box& b) { return (b.min_lat + b.max_lat) / 2.0; }

  // STR ordering: slice by x, then sort each slice by y.
  static std::vector<std::size_t> str_order(const std::vector<Box>& boxes) {
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t n = boxes.size();
    const std::size_t pages = (n + kFanout - 1) / kFanout;
    const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(pages))));
    const std::size_t per_slice = std::max<std::size_t>(1, slices * kFanout);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return center_lon(boxes[a]) < center_lon(boxes[b]);
    });
    for (std::size_t start = 0; start < n; start += per_slice) {
      auto first = order.begin() + static_cast<std::ptrdiff_t>(start);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(std::min(n, start + per_slice));
      std::sort(first, last, [&](std::size_t a, std::size_t b) {
        return center_lat(boxes[a]) < center_lat(boxes[b]);
      });
    }
    return order;
  }

  template <class T>
  static void permute(std::vector<T>& v, const std::vector<std::size_t>& order) {
    std::vector<T> out;
    out.reserve(v.size());
    for (std::size_t i : order) out.push_back(std::move(v[i]));
    v = std::move(out);
  }

  void build() {
    if (items_.empty()) return;
    {
      std::vector<Box> boxes;
      boxes.reserve(items_.size());
      for (const auto& it : items_) boxes.push_back(it.first);
      permute(items_, str_order(boxes));
    }
    std::size_t level_begin = 0;
    for (std::size_t i = 0; i < items_.size(); i += kFanout) {
      Node leaf;
      leaf.leaf = true;
      leaf.first = static_cast<std::uint32_t>(i);
      leaf.count = static_cast<std::uint32_t>(std::min(kFanout, items_.size() - i));
      leaf.box = items_[i].first;
      for (std::uint32_t k = 1; k < leaf.count; ++k) leaf.box.expand(items_[i + k].first);
      nodes_.push_back(leaf);
    }
    height_ = 1;
    std::size_t level_end = nodes_.size();
    while (level_end - level_begin > 1) {
      // Reorder this level before parents reference it; children of these
      // nodes live in earlier levels and are unaffected.
      std::vector<Box> boxes;
      for (std::size_t i = level_begin; i < level_end; ++i) boxes.push_back(nodes_[i].box);
      const auto order = str_order(boxes);
      std::vector<Node> level(nodes_.begin() + static_cast<std::ptrdiff_t>(level_begin),
                              nodes_.begin() + static_cast<std::ptrdiff_t>(level_end));
      for (std::size_t k = 0; k < order.size(); ++k) nodes_[level_begin + k] = level[order[k]];

      const std::size_t next_begin = level_end;
      for (std::size_t i = level_begin; i < level_end; i += kFanout) {
        Node parent;
        parent.first = static_cast<std::uint32_t>(i);
        parent.count = static_cast<std::uint32_t>(std::min(kFanout, level_end - i));
        parent.box = nodes_[i].box;
        for (std::uint32_t k = 1; k < parent.count; ++k) parent.box.expand(nodes_[i + k].box);
        nodes_.push_back(parent);
      }
      level_begin = next_begin;
      level_end = nodes_.size();
      ++height_;
    }
    root_ = static_cast<std::uint32_t>(level_begin);
  }

  std::vector<Item> items_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  std::size_t height_ = 0;
};

}  // namespace railestate
