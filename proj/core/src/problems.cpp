#include "bpe/problems.hpp"

#include <algorithm>
#include <string>

#include "bpe/errors.hpp"

namespace bpe {

HittingSetInstance::HittingSetInstance(int set_size, std::vector<std::vector<int>> collection,
                                       int k)
    : set_size_(set_size), collection_(std::move(collection)), k_(k) {
  if (set_size_ < 0) throw ParameterError("hitting set: negative set size");
  if (k_ < 0) throw ParameterError("hitting set: negative k");
  if (static_cast<std::size_t>(k_) > collection_.size()) {
    throw ParameterError("hitting set: k = " + std::to_string(k_) + " exceeds |C| = " +
                         std::to_string(collection_.size()));
  }
  for (auto& c : collection_) {
    if (c.empty()) throw ParameterError("hitting set: empty member set can never be hit");
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.front() < 0 || c.back() >= set_size_) {
      throw ParameterError("hitting set: element out of range 0.." +
                           std::to_string(set_size_ - 1));
    }
  }
}

bool HittingSetInstance::is_hitting_set(const std::vector<int>& elements) const {
  return std::all_of(collection_.begin(), collection_.end(), [&](const std::vector<int>& c) {
    return std::any_of(elements.begin(), elements.end(),
                       [&](int e) { return std::binary_search(c.begin(), c.end(), e); });
  });
}

PartitionedGraph::PartitionedGraph(int k, int n, std::set<Edge> edges)
    : k_(k), n_(n), edges_(std::move(edges)) {
  if (k_ < 1) throw ParameterError("partitioned graph: need at least one part");
  if (n_ < 1) throw ParameterError("partitioned graph: parts must be nonempty");
  auto in_range = [this](const Vertex& v) {
    return v.part >= 0 && v.part < k_ && v.index >= 0 && v.index < n_;
  };
  for (const auto& e : edges_) {
    if (!in_range(e.a) || !in_range(e.b)) {
      throw ParameterError("partitioned graph: edge endpoint out of range");
    }
    if (e.a.part == e.b.part) {
      throw ParameterError("partitioned graph: edge inside part " + std::to_string(e.a.part));
    }
  }
}

bool PartitionedGraph::adjacent(Vertex u, Vertex v) const {
  if (u.part == v.part) return false;
  return edges_.contains(Edge(u, v));
}

PartitionedGraph PartitionedGraph::without_edge(const Edge& e) const {
  auto copy = edges_;
  copy.erase(e);
  return PartitionedGraph(k_, n_, std::move(copy));
}

}  // namespace bpe
