#include "hypersep/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hypersep/errors.hpp"

namespace hypersep {

namespace {

// Union-find over vertices, used for component decomposition.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<size_t>(n) + 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[parent_[static_cast<size_t>(x)]];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent_[static_cast<size_t>(find(a))] = find(b); }

private:
    std::vector<int> parent_;
};

}  // namespace

Hypergraph make_hypergraph(int n, std::vector<Edge> edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& e : edges) {
        if (e.empty()) throw std::invalid_argument("empty edge");
        std::sort(e.begin(), e.end());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 1 || e[i] > n) throw std::invalid_argument("vertex id out of range");
            if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("duplicate vertex in edge");
        }
    }
    return Hypergraph{n, std::move(edges)};
}

ComponentDecomposition connected_components(const Hypergraph& h) {
    DisjointSets ds(h.n);
    for (const auto& e : h.edges)
        for (size_t i = 1; i < e.size(); ++i) ds.unite(e[0], e[i]);

    std::vector<char> covered(static_cast<size_t>(h.n) + 1, 0);
    for (const auto& e : h.edges)
        for (int v : e) covered[static_cast<size_t>(v)] = 1;

    // Map each root to a component slot, in order of minimum vertex id.
    std::vector<int> slot(static_cast<size_t>(h.n) + 1, -1);
    ComponentDecomposition out;
    for (int v = 1; v <= h.n; ++v) {
        if (!covered[static_cast<size_t>(v)]) {
            out.isolated_vertices.push_back(v);
            continue;
        }
        int root = ds.find(v);
        if (slot[static_cast<size_t>(root)] < 0) {
            slot[static_cast<size_t>(root)] = static_cast<int>(out.components.size());
            out.components.emplace_back();
        }
        out.components[static_cast<size_t>(slot[static_cast<size_t>(root)])].vertices.push_back(v);
    }
    for (int i = 1; i <= h.m(); ++i) {
        int root = ds.find(h.edge(i)[0]);
        out.components[static_cast<size_t>(slot[static_cast<size_t>(root)])].edges.push_back(i);
    }
    return out;
}

std::vector<int> vertex_degrees(const Hypergraph& h) {
    std::vector<int> deg(static_cast<size_t>(h.n) + 1, 0);
    for (const auto& e : h.edges)
        for (int v : e) ++deg[static_cast<size_t>(v)];
    return deg;
}

int max_degree(const Hypergraph& h) {
    auto deg = vertex_degrees(h);
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

EdgePartition edge_partition(const Hypergraph& h, const std::vector<char>& in_s) {
    EdgePartition p;
    for (int i = 1; i <= h.m(); ++i) {
        const Edge& e = h.edge(i);
        int hits = 0;
        for (int v : e) hits += in_s[static_cast<size_t>(v)] ? 1 : 0;
        if (hits == static_cast<int>(e.size()))
            p.inside.push_back(i);
        else if (hits == 0)
            p.outside.push_back(i);
        else
            p.crossing.push_back(i);
    }
    return p;
}

EdgePartition edge_partition(const Hypergraph& h, const std::vector<int>& s) {
    std::vector<char> in_s(static_cast<size_t>(h.n) + 1, 0);
    for (int v : s) in_s[static_cast<size_t>(v)] = 1;
    return edge_partition(h, in_s);
}

RemovedEdges remove_edges(const Hypergraph& h, const std::vector<int>& remove) {
    std::vector<char> gone(static_cast<size_t>(h.m()) + 1, 0);
    for (int i : remove) {
        if (i < 1 || i > h.m()) throw std::invalid_argument("edge index out of range");
        gone[static_cast<size_t>(i)] = 1;
    }
    RemovedEdges out;
    out.graph.n = h.n;
    out.old_index.push_back(0);  // slot for 1-based indexing
    for (int i = 1; i <= h.m(); ++i) {
        if (gone[static_cast<size_t>(i)]) continue;
        out.graph.edges.push_back(h.edge(i));
        out.old_index.push_back(i);
    }
    return out;
}

UniformizeResult uniformize(const Hypergraph& h, int r, int k) {
    if (k < 1) throw std::invalid_argument("uniformize: k must be >= 1");
    if (r < 1) throw std::invalid_argument("uniformize: r must be >= 1");
    for (const auto& e : h.edges)
        if (static_cast<int>(e.size()) > r)
            throw std::invalid_argument("uniformize: edge larger than r");
    if (max_degree(h) > k) throw std::invalid_argument("uniformize: max degree exceeds k");

    std::vector<Edge> edges = h.edges;
    std::vector<std::vector<int>> added(edges.size());

    // Short edges in index order, grouped into blocks of k. Each block lazily
    // materializes its pool of r fresh vertices; an edge takes the first
    // r - |e| pool entries, keeping every fresh degree within the block size.
    std::vector<int> short_edges;
    for (size_t i = 0; i < edges.size(); ++i)
        if (static_cast<int>(edges[i].size()) < r) short_edges.push_back(static_cast<int>(i));

    int next_fresh = h.n;
    int fresh_allocated = 0;
    for (size_t start = 0; start < short_edges.size(); start += static_cast<size_t>(k)) {
        size_t stop = std::min(short_edges.size(), start + static_cast<size_t>(k));
        std::vector<int> pool;
        for (size_t j = start; j < stop; ++j) {
            int idx = short_edges[j];
            size_t need = static_cast<size_t>(r) - edges[static_cast<size_t>(idx)].size();
            while (pool.size() < need) {
                pool.push_back(++next_fresh);
                ++fresh_allocated;
            }
            for (size_t t = 0; t < need; ++t) {
                edges[static_cast<size_t>(idx)].push_back(pool[t]);
                added[static_cast<size_t>(idx)].push_back(pool[t]);
            }
        }
    }

    // Drop isolated vertices and compact ids.
    std::vector<char> used(static_cast<size_t>(next_fresh) + 1, 0);
    for (const auto& e : edges)
        for (int v : e) used[static_cast<size_t>(v)] = 1;
    std::vector<int> remap(static_cast<size_t>(next_fresh) + 1, 0);
    UniformizeResult out;
    out.original_vertex.push_back(0);
    int next_id = 0;
    for (int v = 1; v <= next_fresh; ++v) {
        if (!used[static_cast<size_t>(v)]) continue;
        remap[static_cast<size_t>(v)] = ++next_id;
        out.original_vertex.push_back(v <= h.n ? v : 0);
    }
    for (auto& e : edges) {
        for (int& v : e) v = remap[static_cast<size_t>(v)];
        std::sort(e.begin(), e.end());
    }
    for (auto& a : added)
        for (int& v : a) v = remap[static_cast<size_t>(v)];

    out.graph = Hypergraph{next_id, std::move(edges)};
    out.added = std::move(added);
    out.fresh_allocated = fresh_allocated;
    return out;
}

namespace {

bool is_content_line(const std::string& line) {
    for (char c : line)
        if (!isspace(static_cast<unsigned char>(c))) return true;
    return false;
}

}  // namespace

Hypergraph parse_hg(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (!is_content_line(line)) {
            if (n >= 0 && static_cast<int>(edges.size()) < m)
                throw ParseError("empty edge", lineno);
            continue;
        }
        if (line[0] == 'c') continue;
        std::istringstream ss(line);
        if (n < 0) {
            std::string p, tag;
            ss >> p >> tag >> n >> m;
            if (ss.fail() || p != "p" || tag != "hg" || n < 0 || m < 0)
                throw ParseError("expected header 'p hg <n> <m>'", lineno);
            std::string extra;
            if (ss >> extra) throw ParseError("trailing tokens after header", lineno);
            continue;
        }
        if (static_cast<int>(edges.size()) == m)
            throw ParseError("more edge lines than the header's edge count", lineno);
        Edge e;
        int v;
        while (ss >> v) {
            if (v < 1 || v > n) throw ParseError("vertex id out of range", lineno);
            if (!e.empty() && v <= e.back())
                throw ParseError("vertex ids not strictly increasing", lineno);
            e.push_back(v);
        }
        if (!ss.eof()) throw ParseError("non-integer token in edge line", lineno);
        if (e.empty()) throw ParseError("empty edge", lineno);
        edges.push_back(std::move(e));
    }
    if (n < 0) throw ParseError("missing 'p hg' header");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError("fewer edge lines than the header's edge count");
    return Hypergraph{n, std::move(edges)};
}

Hypergraph parse_hg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_hg(in);
}

void write_hg(std::ostream& out, const Hypergraph& h) {
    out << "p hg " << h.n << ' ' << h.m() << '\n';
    for (const auto& e : h.edges) {
        for (size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

}  // namespace hypersep
