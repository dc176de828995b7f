#ifndef RACAH_TREES_HPP
#define RACAH_TREES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "racah/subset.hpp"

namespace racah {

/* Unordered coupling scheme: the internal non-root node-sets of a tree,
 * sorted by (size, mask). Two trees that differ only by twists share one
 * labelling algebra. */
using LabellingAlgebra = std::vector<subset_t>;

std::string algebra_str(const LabellingAlgebra& algebra);

/* One recoupling move: internal set G1 is replaced by G2. The local triple
 * (K, L, M) drives every overlap computation downstream: K = G1 \ G2,
 * L = G1 ∩ G2, M = G2 \ G1. */
struct SwapMove {
    subset_t removed = 0; // G1
    subset_t added = 0;   // G2
    subset_t K = 0;
    subset_t L = 0;
    subset_t M = 0;
};

/* Binary coupling tree on leaves {1..n}: a maximal nested family of subsets
 * with ordered children (orientation matters for generator signs). */
class CouplingTree {
public:
    struct Node {
        subset_t set = 0;
        int left = -1;   // child indices; -1 for leaves
        int right = -1;
        int parent = -1; // -1 for the root
    };

    /* Everything an sl2 triple needs to know about an internal non-root
     * node: its set A, ordered children K (left) and L (right), sibling M,
     * and parent B = A ∪ M. */
    struct NodeContext {
        subset_t A = 0;
        subset_t K = 0;
        subset_t L = 0;
        subset_t M = 0;
        subset_t B = 0;
    };

    /* Grammar: leaf = 1-based integer, node = "(" tree "," tree ")", fully
     * parenthesized, whitespace-free, every leaf 1..n exactly once. */
    static CouplingTree parse(const std::string& text, int n);

    /* Rebuild a tree from its labelling algebra with canonical orientation
     * (children ordered by minimum leaf). */
    static CouplingTree from_algebra(int n, const LabellingAlgebra& algebra);

    int n() const { return m_n; }
    int root() const { return m_root; }
    const std::vector<Node>& nodes() const { return m_nodes; }
    const Node& node(int idx) const { return m_nodes[idx]; }
    int node_index(subset_t set) const; // throws IndexError when absent
    bool has_node(subset_t set) const;

    LabellingAlgebra labelling_algebra() const; // sorted, size n-2
    NodeContext context(subset_t A) const;      // throws on root/leaf

    std::string to_string() const;  // parenthesized, stored orientation
    CouplingTree canonical() const; // children reordered by minimum leaf
    CouplingTree twisted(subset_t A) const; // children of A exchanged

private:
    CouplingTree() = default;
    void finalize(); // fills lookup, validates shape

    int m_n = 0;
    int m_root = -1;
    std::vector<Node> m_nodes;
    std::map<subset_t, int> m_lookup;
};

/* All labelling algebras for leaf count n (trees modulo twists), in a fixed
 * deterministic order; count is (2n-3)!!. Guard: 2 <= n <= 8. */
std::vector<LabellingAlgebra> enumerate_trees(int n);

/* The left-combed chain (((1,2),3),...,n): internal sets {1..k}, k=2..n-1. */
CouplingTree chain_tree(int n);

struct Neighbor {
    SwapMove move;
    LabellingAlgebra algebra;
};

/* The 2(n-2) one-swap neighbors of a tree's labelling algebra. */
std::vector<Neighbor> neighbors(const CouplingTree& t);
std::vector<Neighbor> neighbors(int n, const LabellingAlgebra& algebra);

struct RecouplingGraph {
    int n = 0;
    std::vector<LabellingAlgebra> vertices;
    std::map<LabellingAlgebra, int> index;
    // adjacency[v]: (neighbor vertex id, move that gets there)
    std::vector<std::vector<std::pair<int, SwapMove>>> adjacency;
};

RecouplingGraph recoupling_graph(int n);

/* Breadth-first shortest move sequence between two vertices; empty when
 * from == to. Throws IndexError when either vertex is not in the graph. */
std::vector<SwapMove> path(const RecouplingGraph& g, const LabellingAlgebra& from,
                           const LabellingAlgebra& to);

/* Largest BFS eccentricity over all vertices. */
int graph_diameter(const RecouplingGraph& g);

} // namespace racah

#endif
