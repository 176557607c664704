#pragma once

// Source problems of the hardness reductions.

#include <compare>
#include <set>
#include <vector>

namespace bpe {

// A finite set S = {0..set_size-1}, a collection C of nonempty subsets and a
// budget k <= |C|. Members are stored sorted and duplicate-free.
class HittingSetInstance {
 public:
  // Throws ParameterError on an empty member, an out-of-range element or k > |C|.
  HittingSetInstance(int set_size, std::vector<std::vector<int>> collection, int k);

  int set_size() const noexcept { return set_size_; }
  const std::vector<std::vector<int>>& collection() const noexcept { return collection_; }
  int k() const noexcept { return k_; }

  bool is_hitting_set(const std::vector<int>& elements) const;

  friend bool operator==(const HittingSetInstance&, const HittingSetInstance&) = default;

 private:
  int set_size_;
  std::vector<std::vector<int>> collection_;
  int k_;
};

// Vertex `index` of part `part`, both 0-based.
struct Vertex {
  int part;
  int index;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Normalized so that a.part < b.part.
struct Edge {
  Vertex a;
  Vertex b;

  Edge(Vertex x, Vertex y) : a(x.part < y.part ? x : y), b(x.part < y.part ? y : x) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// k-partite graph with parts V_0..V_{k-1}, each of exactly n vertices.
class PartitionedGraph {
 public:
  // Throws ParameterError on k < 1, n < 1, an out-of-range vertex or an
  // edge inside a single part.
  PartitionedGraph(int k, int n, std::set<Edge> edges = {});

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  int vertex_count() const noexcept { return k_ * n_; }
  bool adjacent(Vertex u, Vertex v) const;

  PartitionedGraph without_edge(const Edge& e) const;

  friend bool operator==(const PartitionedGraph&, const PartitionedGraph&) = default;

 private:
  int k_;
  int n_;
  std::set<Edge> edges_;
};

}  // namespace bpe
