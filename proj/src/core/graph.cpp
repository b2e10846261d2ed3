#include "tropical_heights/graph.hpp"

#include <algorithm>
#include <numeric>

#include "tropical_heights/error.hpp"

namespace th::graph {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

bool acyclic(const Multigraph& g, const std::vector<std::size_t>& subset, UnionFind& uf)
{
    for (auto e : subset)
        if (!uf.unite(g.edge(e).tail, g.edge(e).head))
            return false;
    return true;
}

} // namespace

Multigraph::Multigraph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edges)
    : vertices_(std::move(vertex_ids))
{
    if (vertices_.empty())
        throw InputError("graph has no vertices", "vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!vindex_.emplace(vertices_[i], i).second)
            throw InputError("duplicate vertex id '" + vertices_[i] + "'", "vertices[" + std::to_string(i) + "].id");
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a].id < edges[b].id; });
    for (auto i : order) {
        const auto& s = edges[i];
        std::string path = "edges[" + std::to_string(i) + "]";
        if (s.id.empty())
            throw InputError("empty edge id", path + ".id");
        auto t = vindex_.find(s.tail);
        if (t == vindex_.end())
            throw InputError("unknown vertex '" + s.tail + "'", path + ".tail");
        auto h = vindex_.find(s.head);
        if (h == vindex_.end())
            throw InputError("unknown vertex '" + s.head + "'", path + ".head");
        if (!eindex_.emplace(s.id, edges_.size()).second)
            throw InputError("duplicate edge id '" + s.id + "'", path + ".id");
        edges_.push_back({s.id, t->second, h->second});
    }
}

std::size_t Multigraph::vertex_index(const std::string& id) const
{
    auto it = vindex_.find(id);
    if (it == vindex_.end())
        throw InputError("unknown vertex '" + id + "'");
    return it->second;
}

std::size_t Multigraph::edge_index(const std::string& id) const
{
    auto it = eindex_.find(id);
    if (it == eindex_.end())
        throw InputError("unknown edge '" + id + "'");
    return it->second;
}

std::vector<std::size_t> Multigraph::components(const std::vector<std::size_t>& edge_subset) const
{
    UnionFind uf(vertex_count());
    for (auto e : edge_subset)
        uf.unite(edges_[e].tail, edges_[e].head);
    std::vector<std::size_t> label(vertex_count());
    for (std::size_t v = 0; v < vertex_count(); ++v)
        label[v] = uf.find(v);
    return label;
}

bool Multigraph::is_connected() const
{
    std::vector<std::size_t> all(edge_count());
    std::iota(all.begin(), all.end(), 0);
    auto label = components(all);
    return std::all_of(label.begin(), label.end(), [](auto l) { return l == 0; });
}

std::vector<std::size_t> Multigraph::valence() const
{
    std::vector<std::size_t> val(vertex_count(), 0);
    for (const auto& e : edges_) {
        ++val[e.tail];
        ++val[e.head];
    }
    return val;
}

poly::RegistryPtr Multigraph::edge_registry() const
{
    std::vector<std::string> names;
    for (const auto& e : edges_)
        names.push_back("Y_" + e.id);
    return std::make_shared<const poly::Registry>(std::move(names));
}

IntMatrix boundary_matrix(const Multigraph& g)
{
    IntMatrix b = IntMatrix::Zero(static_cast<Eigen::Index>(g.vertex_count()), static_cast<Eigen::Index>(g.edge_count()));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (ed.tail == ed.head)
            continue;
        b(static_cast<Eigen::Index>(ed.head), static_cast<Eigen::Index>(e)) += 1;
        b(static_cast<Eigen::Index>(ed.tail), static_cast<Eigen::Index>(e)) -= 1;
    }
    return b;
}

std::vector<std::int64_t> boundary_of(const Multigraph& g, const Chain& c)
{
    if (c.size() != g.edge_count())
        throw InputError("chain length does not match edge count");
    std::vector<std::int64_t> d(g.vertex_count(), 0);
    for (std::size_t e = 0; e < c.size(); ++e) {
        d[g.edge(e).head] += c[e];
        d[g.edge(e).tail] -= c[e];
    }
    return d;
}

bool is_cycle(const Multigraph& g, const Chain& c)
{
    auto d = boundary_of(g, c);
    return std::all_of(d.begin(), d.end(), [](auto x) { return x == 0; });
}

std::vector<std::size_t> designated_tree(const Multigraph& g)
{
    if (!g.is_connected())
        throw InputError("graph is disconnected");
    UnionFind uf(g.vertex_count());
    std::vector<std::size_t> tree;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (uf.unite(g.edge(e).tail, g.edge(e).head))
            tree.push_back(e);
    return tree;
}

CycleBasis cycle_basis(const Multigraph& g)
{
    auto tree = designated_tree(g);
    std::vector<bool> in_tree(g.edge_count(), false);
    for (auto e : tree)
        in_tree[e] = true;

    // Root the tree at vertex 0; parent_edge[v] is the tree edge towards the root.
    std::size_t n = g.vertex_count();
    std::vector<std::ptrdiff_t> parent_edge(n, -1);
    std::vector<std::size_t> depth(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto e : tree) {
            const auto& ed = g.edge(e);
            std::size_t w;
            if (ed.tail == v)
                w = ed.head;
            else if (ed.head == v)
                w = ed.tail;
            else
                continue;
            if (seen[w])
                continue;
            seen[w] = true;
            parent_edge[w] = static_cast<std::ptrdiff_t>(e);
            depth[w] = depth[v] + 1;
            stack.push_back(w);
        }
    }
    auto other = [&](std::size_t e, std::size_t v) { return g.edge(e).tail == v ? g.edge(e).head : g.edge(e).tail; };

    CycleBasis basis;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e])
            continue;
        Chain c(g.edge_count(), 0);
        c[e] = 1;
        // Walk the tree path from head(e) back to tail(e).
        std::size_t a = g.edge(e).head, b = g.edge(e).tail;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                auto pe = static_cast<std::size_t>(parent_edge[a]);
                auto next = other(pe, a);
                c[pe] += (g.edge(pe).tail == a) ? 1 : -1;
                a = next;
            } else {
                auto pe = static_cast<std::size_t>(parent_edge[b]);
                auto next = other(pe, b);
                c[pe] += (g.edge(pe).tail == next) ? 1 : -1;
                b = next;
            }
        }
        basis.cycles.push_back(std::move(c));
    }
    return basis;
}

CycleBasis change_basis(const CycleBasis& b, const IntMatrix& u)
{
    auto h = static_cast<Eigen::Index>(b.size());
    if (u.rows() != h || u.cols() != h)
        throw InputError("change of basis has wrong size");
    CycleBasis out;
    std::size_t m = b.size() ? b.cycles[0].size() : 0;
    for (Eigen::Index i = 0; i < h; ++i) {
        Chain c(m, 0);
        for (Eigen::Index j = 0; j < h; ++j)
            for (std::size_t e = 0; e < m; ++e)
                c[e] += u(i, j) * b.cycles[static_cast<std::size_t>(j)][e];
        out.cycles.push_back(std::move(c));
    }
    return out;
}

std::size_t first_betti(const Multigraph& g)
{
    std::vector<std::size_t> all(g.edge_count());
    std::iota(all.begin(), all.end(), 0);
    auto label = g.components(all);
    std::sort(label.begin(), label.end());
    auto comps = static_cast<std::size_t>(std::unique(label.begin(), label.end()) - label.begin());
    return g.edge_count() + comps - g.vertex_count();
}

TreeEnumeration spanning_trees(const Multigraph& g)
{
    TreeEnumeration out;
    if (!g.is_connected()) {
        out.disconnected = true;
        return out;
    }
    for_each_combination(g.edge_count(), g.vertex_count() - 1, [&](const std::vector<std::size_t>& s) {
        UnionFind uf(g.vertex_count());
        if (acyclic(g, s, uf))
            out.trees.push_back(s);
    });
    return out;
}

std::vector<TwoForest> spanning_2forests(const Multigraph& g)
{
    std::vector<TwoForest> out;
    if (g.vertex_count() < 2 || !g.is_connected())
        return out;
    for_each_combination(g.edge_count(), g.vertex_count() - 2, [&](const std::vector<std::size_t>& s) {
        UnionFind uf(g.vertex_count());
        if (!acyclic(g, s, uf))
            return;
        TwoForest f{s, std::vector<bool>(g.vertex_count())};
        auto root = uf.find(0);
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            f.in_first[v] = uf.find(v) == root;
        out.push_back(std::move(f));
    });
    return out;
}

Multigraph reorient(const Multigraph& g, const std::vector<bool>& flip)
{
    std::vector<EdgeSpec> specs;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        bool f = e < flip.size() && flip[e];
        specs.push_back({ed.id, g.vertex_id(f ? ed.head : ed.tail), g.vertex_id(f ? ed.tail : ed.head)});
    }
    return Multigraph(g.vertex_ids(), specs);
}

} // namespace th::graph
