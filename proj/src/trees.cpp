#include "racah/trees.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "racah/errors.hpp"

namespace racah {

namespace {

bool subset_order(subset_t lhs, subset_t rhs) {
    const int sl = subset_size(lhs), sr = subset_size(rhs);
    if (sl != sr) return sl < sr;
    return lhs < rhs;
}

void sort_algebra(LabellingAlgebra& algebra) {
    std::sort(algebra.begin(), algebra.end(), subset_order);
}

} // namespace

std::string algebra_str(const LabellingAlgebra& algebra) {
    std::string out = "{";
    for (std::size_t i = 0; i < algebra.size(); ++i) {
        if (i) out += ",";
        out += subset_str(algebra[i]);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// CouplingTree

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int n;
    std::vector<CouplingTree::Node>& nodes;

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream msg;
        msg << "tree \"" << text << "\": " << why << " at position " << pos;
        throw ParseError(msg.str());
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    int parse_node() {
        if (peek() == '(') {
            ++pos;
            const int left = parse_node();
            if (peek() != ',') fail("expected ','");
            ++pos;
            const int right = parse_node();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            CouplingTree::Node node;
            node.set = nodes[left].set | nodes[right].set;
            if ((nodes[left].set & nodes[right].set) != 0)
                fail("duplicate leaf under one node");
            node.left = left;
            node.right = right;
            nodes.push_back(node);
            const int idx = static_cast<int>(nodes.size()) - 1;
            nodes[left].parent = idx;
            nodes[right].parent = idx;
            return idx;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected leaf number or '('");
        int leaf = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            leaf = leaf * 10 + (text[pos] - '0');
            ++pos;
        }
        if (leaf < 1 || leaf > n) fail("leaf outside 1..n");
        CouplingTree::Node node;
        node.set = subset_singleton(leaf);
        nodes.push_back(node);
        return static_cast<int>(nodes.size()) - 1;
    }
};

} // namespace

CouplingTree CouplingTree::parse(const std::string& text, int n) {
    if (n < 2 || n > 31) throw ConfigError("leaf count out of range");
    CouplingTree tree;
    tree.m_n = n;
    Parser parser{text, 0, n, tree.m_nodes};
    tree.m_root = parser.parse_node();
    if (parser.pos != text.size()) parser.fail("trailing characters");
    if (tree.m_nodes[tree.m_root].set != subset_full(n))
        throw ParseError("tree \"" + text + "\": leaves do not cover 1.." +
                         std::to_string(n));
    tree.finalize();
    return tree;
}

CouplingTree CouplingTree::from_algebra(int n, const LabellingAlgebra& algebra) {
    if (n < 2 || n > 31) throw ConfigError("leaf count out of range");
    if (static_cast<int>(algebra.size()) != n - 2)
        throw ConfigError("labelling algebra must contain n-2 sets, got " +
                          std::to_string(algebra.size()));

    // Full nested family: singletons, the given internal sets, the root.
    std::vector<subset_t> family;
    for (int k = 1; k <= n; ++k) family.push_back(subset_singleton(k));
    for (subset_t s : algebra) {
        const int size = subset_size(s);
        if (size < 2 || size >= n)
            throw ConfigError("internal set " + subset_str(s) +
                              " must have 1 < size < n");
        if ((s & ~subset_full(n)) != 0)
            throw IndexError("internal set " + subset_str(s) +
                             " reaches past leaf count");
        family.push_back(s);
    }
    family.push_back(subset_full(n));
    std::sort(family.begin(), family.end(), subset_order);
    for (std::size_t i = 0; i + 1 < family.size(); ++i)
        if (family[i] == family[i + 1])
            throw ConfigError("duplicate set " + subset_str(family[i]) +
                              " in labelling algebra");
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!subsets_nested_or_disjoint(family[i], family[j]))
                throw ConfigError("sets " + subset_str(family[i]) + " and " +
                                  subset_str(family[j]) + " cross");

    CouplingTree tree;
    tree.m_n = n;
    tree.m_nodes.resize(family.size());
    std::map<subset_t, int> where;
    for (std::size_t i = 0; i < family.size(); ++i) {
        tree.m_nodes[i].set = family[i];
        where[family[i]] = static_cast<int>(i);
    }
    // Parent = smallest strict superset; family is size-sorted so scanning
    // forward finds it first.
    for (std::size_t i = 0; i + 1 < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if ((family[i] & family[j]) == family[i]) {
                const int child = static_cast<int>(i);
                const int parent = static_cast<int>(j);
                tree.m_nodes[child].parent = parent;
                // Canonical orientation: left child owns the smaller leaf.
                Node& p = tree.m_nodes[parent];
                if (p.left == -1) {
                    p.left = child;
                } else if (p.right == -1) {
                    if (subset_min_mode(tree.m_nodes[p.left].set) <
                        subset_min_mode(family[i])) {
                        p.right = child;
                    } else {
                        p.right = p.left;
                        p.left = child;
                    }
                } else {
                    throw ConfigError("set " + subset_str(family[j]) +
                                      " has more than two children; family "
                                      "is not maximal");
                }
                break;
            }
        }
    }
    tree.m_root = where.at(subset_full(n));
    tree.finalize();
    return tree;
}

void CouplingTree::finalize() {
    m_lookup.clear();
    int internal = 0;
    for (int i = 0; i < static_cast<int>(m_nodes.size()); ++i) {
        const Node& node = m_nodes[i];
        if (!m_lookup.emplace(node.set, i).second)
            throw ConfigError("duplicate set " + subset_str(node.set));
        const bool leaf = node.left == -1 && node.right == -1;
        if (leaf) {
            if (subset_size(node.set) != 1)
                throw ConfigError("leaf with non-singleton set");
        } else {
            if (node.left == -1 || node.right == -1)
                throw ConfigError("internal node with one child");
            ++internal;
        }
        if (i == m_root) {
            if (node.parent != -1) throw ConfigError("root with a parent");
        } else if (node.parent == -1) {
            throw ConfigError("non-root node without parent");
        }
    }
    if (internal != m_n - 1)
        throw ConfigError("tree is not a perfect binary coupling tree");
}

int CouplingTree::node_index(subset_t set) const {
    auto it = m_lookup.find(set);
    if (it == m_lookup.end())
        throw IndexError("set " + subset_str(set) + " is not a tree node");
    return it->second;
}

bool CouplingTree::has_node(subset_t set) const {
    return m_lookup.count(set) != 0;
}

LabellingAlgebra CouplingTree::labelling_algebra() const {
    LabellingAlgebra algebra;
    for (const Node& node : m_nodes) {
        const int size = subset_size(node.set);
        if (size > 1 && size < m_n) algebra.push_back(node.set);
    }
    sort_algebra(algebra);
    return algebra;
}

CouplingTree::NodeContext CouplingTree::context(subset_t A) const {
    const Node& node = m_nodes[node_index(A)];
    if (node.left == -1)
        throw IndexError("set " + subset_str(A) + " is a leaf");
    if (node.parent == -1)
        throw IndexError("set " + subset_str(A) + " is the root");
    const Node& parent = m_nodes[node.parent];
    NodeContext ctx;
    ctx.A = A;
    ctx.K = m_nodes[node.left].set;
    ctx.L = m_nodes[node.right].set;
    ctx.B = parent.set;
    ctx.M = parent.set & ~A;
    return ctx;
}

namespace {

void render(const CouplingTree& tree, int idx, std::string& out) {
    const CouplingTree::Node& node = tree.node(idx);
    if (node.left == -1) {
        out += std::to_string(subset_min_mode(node.set));
        return;
    }
    out += "(";
    render(tree, node.left, out);
    out += ",";
    render(tree, node.right, out);
    out += ")";
}

void render_canonical(const CouplingTree& tree, int idx, std::string& out) {
    const CouplingTree::Node& node = tree.node(idx);
    if (node.left == -1) {
        out += std::to_string(subset_min_mode(node.set));
        return;
    }
    int first = node.left, second = node.right;
    if (subset_min_mode(tree.node(second).set) <
        subset_min_mode(tree.node(first).set))
        std::swap(first, second);
    out += "(";
    render_canonical(tree, first, out);
    out += ",";
    render_canonical(tree, second, out);
    out += ")";
}

} // namespace

std::string CouplingTree::to_string() const {
    std::string out;
    render(*this, m_root, out);
    return out;
}

CouplingTree CouplingTree::canonical() const {
    std::string out;
    render_canonical(*this, m_root, out);
    return parse(out, m_n);
}

CouplingTree CouplingTree::twisted(subset_t A) const {
    const int idx = node_index(A);
    if (m_nodes[idx].left == -1)
        throw IndexError("cannot twist leaf " + subset_str(A));
    CouplingTree copy = *this;
    std::swap(copy.m_nodes[idx].left, copy.m_nodes[idx].right);
    return copy;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

/* All maximal nested families on the leaf set S, each returned as the list
 * of its non-singleton nodes including S itself. */
std::vector<std::vector<subset_t>> nested_families(subset_t S) {
    if (subset_size(S) == 1) return {{}};
    std::vector<std::vector<subset_t>> result;
    const subset_t low = S & (~S + 1); // lowest set bit
    // Proper submasks containing the lowest leaf: each unordered split once.
    for (subset_t sub = (S - 1) & S; sub != 0; sub = (sub - 1) & S) {
        if ((sub & low) == 0) continue;
        const subset_t rest = S & ~sub;
        for (const auto& f1 : nested_families(sub)) {
            for (const auto& f2 : nested_families(rest)) {
                std::vector<subset_t> family = f1;
                family.insert(family.end(), f2.begin(), f2.end());
                family.push_back(S);
                result.push_back(std::move(family));
            }
        }
    }
    return result;
}

} // namespace

std::vector<LabellingAlgebra> enumerate_trees(int n) {
    if (n < 2 || n > 8)
        throw ConfigError("tree enumeration supports 2 <= n <= 8, got " +
                          std::to_string(n));
    std::vector<LabellingAlgebra> algebras;
    for (const auto& family : nested_families(subset_full(n))) {
        LabellingAlgebra algebra;
        for (subset_t s : family)
            if (subset_size(s) < n) algebra.push_back(s);
        sort_algebra(algebra);
        algebras.push_back(std::move(algebra));
    }
    std::sort(algebras.begin(), algebras.end());
    algebras.erase(std::unique(algebras.begin(), algebras.end()),
                   algebras.end());
    return algebras;
}

CouplingTree chain_tree(int n) {
    if (n < 2 || n > 31) throw ConfigError("leaf count out of range");
    std::string text = "1";
    for (int k = 2; k <= n; ++k)
        text = "(" + text + "," + std::to_string(k) + ")";
    return CouplingTree::parse(text, n);
}

std::vector<Neighbor> neighbors(const CouplingTree& t) {
    std::vector<Neighbor> result;
    for (subset_t A : t.labelling_algebra()) {
        const auto ctx = t.context(A);
        for (subset_t added : {ctx.K | ctx.M, ctx.L | ctx.M}) {
            Neighbor nb;
            nb.move.removed = A;
            nb.move.added = added;
            nb.move.K = A & ~added;
            nb.move.L = A & added;
            nb.move.M = added & ~A;
            nb.algebra = t.labelling_algebra();
            std::replace(nb.algebra.begin(), nb.algebra.end(), A, added);
            sort_algebra(nb.algebra);
            result.push_back(std::move(nb));
        }
    }
    return result;
}

std::vector<Neighbor> neighbors(int n, const LabellingAlgebra& algebra) {
    return neighbors(CouplingTree::from_algebra(n, algebra));
}

RecouplingGraph recoupling_graph(int n) {
    RecouplingGraph graph;
    graph.n = n;
    graph.vertices = enumerate_trees(n);
    for (int i = 0; i < static_cast<int>(graph.vertices.size()); ++i)
        graph.index.emplace(graph.vertices[i], i);
    graph.adjacency.resize(graph.vertices.size());
    for (int i = 0; i < static_cast<int>(graph.vertices.size()); ++i) {
        for (const Neighbor& nb : neighbors(n, graph.vertices[i])) {
            auto it = graph.index.find(nb.algebra);
            if (it == graph.index.end())
                throw Error("neighbor fell outside the enumerated graph");
            graph.adjacency[i].emplace_back(it->second, nb.move);
        }
    }
    return graph;
}

std::vector<SwapMove> path(const RecouplingGraph& g, const LabellingAlgebra& from,
                           const LabellingAlgebra& to) {
    auto source = g.index.find(from);
    auto target = g.index.find(to);
    if (source == g.index.end())
        throw IndexError("start scheme " + algebra_str(from) +
                         " is not a vertex");
    if (target == g.index.end())
        throw IndexError("goal scheme " + algebra_str(to) + " is not a vertex");

    std::vector<int> previous(g.vertices.size(), -1);
    std::vector<SwapMove> arriving(g.vertices.size());
    std::vector<bool> seen(g.vertices.size(), false);
    std::queue<int> frontier;
    frontier.push(source->second);
    seen[source->second] = true;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        if (v == target->second) break;
        for (const auto& [w, move] : g.adjacency[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            previous[w] = v;
            arriving[w] = move;
            frontier.push(w);
        }
    }
    if (!seen[target->second])
        throw Error("recoupling graph is disconnected"); // never expected

    std::vector<SwapMove> moves;
    for (int v = target->second; v != source->second; v = previous[v])
        moves.push_back(arriving[v]);
    std::reverse(moves.begin(), moves.end());
    return moves;
}

int graph_diameter(const RecouplingGraph& g) {
    const int count = static_cast<int>(g.vertices.size());
    int diameter = 0;
    for (int start = 0; start < count; ++start) {
        std::vector<int> dist(count, -1);
        std::queue<int> frontier;
        frontier.push(start);
        dist[start] = 0;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (const auto& [w, move] : g.adjacency[v]) {
                if (dist[w] != -1) continue;
                dist[w] = dist[v] + 1;
                diameter = std::max(diameter, dist[w]);
                frontier.push(w);
            }
        }
    }
    return diameter;
}

} // namespace racah
