#pragma once

#include <vector>

namespace aligneval {

// Hopcroft-Karp maximum cardinality matching on a bipartite graph with
// `left` and `right` vertices. adjacency[u] lists the right vertices joined
// to left vertex u. Returns, for every left vertex, its matched right vertex
// or -1.
std::vector<int> maximum_bipartite_matching(int left, int right,
                                            const std::vector<std::vector<int>>& adjacency);

}  // namespace aligneval
