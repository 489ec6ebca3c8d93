#include "hypersep/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "hypersep/errors.hpp"
#include "hypersep/rng.hpp"
#include "hypersep/separator.hpp"

namespace hypersep {

namespace {

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double out = 1.0;
    for (int i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
    return out;
}

}  // namespace

double GeneratorParams::q() const {
    if (n <= 0 || k <= 0) return 0.0;
    double candidates = binomial(n, r);
    if (candidates <= 0.0) return 0.0;
    return std::min(1.0, (static_cast<double>(n) * k / r) / candidates);
}

int GeneratorParams::trim_threshold() const {
    return static_cast<int>(std::ceil(2.0 * std::exp(1.0) * k));
}

Hypergraph random_uniform_hypergraph(const GeneratorParams& params, long long max_candidates) {
    if (params.r < 2 || params.r > std::max(params.n, 2))
        throw std::invalid_argument("generator requires 2 <= r <= n");
    if (binomial(params.n, params.r) > static_cast<double>(max_candidates))
        throw BudgetError("candidate edge enumeration budget exceeded");

    const double q = params.q();
    Rng rng(params.seed);
    std::vector<Edge> edges;

    // All r-subsets in lexicographic order, one coin each.
    std::vector<int> pick(static_cast<size_t>(params.r));
    std::iota(pick.begin(), pick.end(), 1);
    if (params.n >= params.r) {
        while (true) {
            if (rng.coin(q)) edges.push_back(pick);
            int i = params.r - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == params.n - (params.r - 1 - i)) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < params.r; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }

    // One left-to-right pass removes any edge that still touches an
    // over-threshold vertex; qualification is monotone as degrees only drop.
    const int threshold = params.trim_threshold();
    std::vector<int> deg(static_cast<size_t>(params.n) + 1, 0);
    for (const auto& e : edges)
        for (int v : e) ++deg[static_cast<size_t>(v)];
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const auto& e : edges) {
        bool drop = false;
        for (int v : e)
            if (deg[static_cast<size_t>(v)] > threshold) drop = true;
        if (drop) {
            for (int v : e) --deg[static_cast<size_t>(v)];
        } else {
            kept.push_back(e);
        }
    }
    return Hypergraph{params.n, std::move(kept)};
}

namespace {

// Union-find over vertices with per-component kept-edge counts and a rollback
// trail, for the branch-and-bound separator search.
class KeptComponents {
public:
    explicit KeptComponents(const Hypergraph& h) : h_(h) {
        parent_.resize(static_cast<size_t>(h.n) + 1);
        std::iota(parent_.begin(), parent_.end(), 0);
        size_.assign(static_cast<size_t>(h.n) + 1, 1);
        edges_.assign(static_cast<size_t>(h.n) + 1, 0);
    }

    int find(int x) const {
        while (parent_[static_cast<size_t>(x)] != x) x = parent_[static_cast<size_t>(x)];
        return x;
    }

    // Keeps edge i; returns the resulting component's edge count.
    int keep(int i) {
        marks_.push_back(trail_.size());
        const Edge& e = h_.edge(i);
        int root = find(e[0]);
        int total = edges_[static_cast<size_t>(root)];
        for (size_t j = 1; j < e.size(); ++j) {
            int other = find(e[j]);
            if (other == root) continue;
            total += edges_[static_cast<size_t>(other)];
            if (size_[static_cast<size_t>(root)] < size_[static_cast<size_t>(other)])
                std::swap(root, other);
            trail_.push_back({other, root, size_[static_cast<size_t>(root)],
                              edges_[static_cast<size_t>(root)]});
            parent_[static_cast<size_t>(other)] = root;
            size_[static_cast<size_t>(root)] += size_[static_cast<size_t>(other)];
        }
        trail_.push_back({-1, root, 0, edges_[static_cast<size_t>(root)]});
        edges_[static_cast<size_t>(root)] = total + 1;
        return total + 1;
    }

    void undo() {
        size_t mark = marks_.back();
        marks_.pop_back();
        while (trail_.size() > mark) {
            const auto& t = trail_.back();
            if (t.absorbed < 0) {
                edges_[static_cast<size_t>(t.into)] = t.old_edges;
            } else {
                parent_[static_cast<size_t>(t.absorbed)] = t.absorbed;
                size_[static_cast<size_t>(t.into)] = t.old_size;
                edges_[static_cast<size_t>(t.into)] = t.old_edges;
            }
            trail_.pop_back();
        }
    }

private:
    struct Trail {
        int absorbed;
        int into;
        int old_size;
        int old_edges;
    };
    const Hypergraph& h_;
    std::vector<int> parent_, size_, edges_;
    std::vector<Trail> trail_;
    std::vector<size_t> marks_;
};

}  // namespace

MinSeparator min_balanced_separator(const Hypergraph& h, int max_edges, long long max_nodes) {
    const int m = h.m();
    if (m > max_edges) throw BudgetError("minimum separator oracle edge cap exceeded");
    if (m == 0) return {0, {}};
    const int half = m / 2;
    long long nodes = 0;

    // Iterative deepening over the removal count; within a size, edges are
    // decided in index order with the remove branch first, so the first full
    // assignment found is the lexicographically least witness of that size.
    for (int s = 0; s <= (m + 1) / 2; ++s) {
        KeptComponents kc(h);
        std::vector<int> removal;
        std::function<bool(int, int)> go = [&](int pos, int rem) -> bool {
            if (++nodes > max_nodes)
                throw BudgetError("minimum separator search budget exceeded");
            if (pos > m) return rem == 0;  // kept components all fit by construction
            if (rem > m - pos + 1) return false;
            if (rem > 0) {
                removal.push_back(pos);
                if (go(pos + 1, rem - 1)) return true;
                removal.pop_back();
            }
            int grown = kc.keep(pos);
            bool ok = grown <= half && go(pos + 1, rem);
            kc.undo();
            return ok;
        };
        if (go(1, s)) return {s, removal};
    }
    throw std::logic_error("removing half of the edges is always balanced");
}

InducedRegularitySample sample_induced_regularity(const Hypergraph& h, int r, double alpha,
                                                  int samples, std::uint64_t seed) {
    InducedRegularitySample out;
    out.alpha = alpha;
    if (h.n == 0 || h.m() == 0 || samples <= 0) return out;
    const int target = std::max(1, static_cast<int>(alpha * h.n));
    Rng rng(seed);
    double sum = 0.0, lo = 1e300, hi = -1e300;
    std::vector<int> ids(static_cast<size_t>(h.n));
    std::iota(ids.begin(), ids.end(), 1);
    for (int s = 0; s < samples; ++s) {
        for (size_t i = ids.size(); i > 1; --i)
            std::swap(ids[i - 1], ids[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
        std::vector<int> subset(ids.begin(), ids.begin() + target);
        auto part = edge_partition(h, subset);
        double expected = std::pow(static_cast<double>(target) / h.n, r) * h.m();
        double ratio = expected > 0 ? part.inside.size() / expected : 0.0;
        sum += ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    out.samples = samples;
    out.mean_ratio = sum / samples;
    out.min_ratio = lo;
    out.max_ratio = hi;
    return out;
}

ExperimentReport tightness_experiment(const ExperimentSweep& sweep) {
    std::vector<ExperimentRow> rows;
    for (int n : sweep.n_values)
        for (int k : sweep.k_values)
            for (int i = 0; i < sweep.instances_per_cell; ++i) {
                ExperimentRow row;
                row.n = n;
                row.k = k;
                row.r = sweep.r;
                row.seed = derive_seed(sweep.seed, rows.size());
                rows.push_back(row);
            }

    auto run_row = [&](ExperimentRow& row) {
        GeneratorParams params{row.n, row.k, row.r, row.seed};
        Hypergraph h = random_uniform_hypergraph(params);
        row.m = h.m();
        row.max_degree = max_degree(h);
        row.min_sep = min_balanced_separator(h, sweep.oracle_edge_cap).size;
        row.theory_bound = (0.5 - epsilon_r(row.r)) * row.m;
        row.ratio = row.m > 0 ? static_cast<double>(row.min_sep) / row.m : 0.0;
    };

    const int jobs = std::max(1, sweep.jobs);
    if (jobs == 1 || rows.size() <= 1) {
        for (auto& row : rows) run_row(row);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        for (int t = 0; t < jobs; ++t)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
                    try {
                        run_row(rows[i]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& w : workers) w.join();
        if (failure) std::rethrow_exception(failure);
    }
    return ExperimentReport{std::move(rows)};
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
    out << "n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed\n";
    char buf[160];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%.6f,%.6f,%llu\n", row.n, row.k, row.r,
                      row.m, row.max_degree, row.min_sep, row.theory_bound, row.ratio,
                      static_cast<unsigned long long>(row.seed));
        out << buf;
    }
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream ss;
    write_csv(ss, report);
    return ss.str();
}

}  // namespace hypersep
