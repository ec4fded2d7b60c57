#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gasket/format.hpp"
#include "gasket/metric.hpp"

namespace gasket {

/// Level-m graph approximation: vertices V_n^m, edges the sides of level-m
/// cells.  All edges have length 2^{-m}, so shortest paths reduce to
/// unweighted BFS.
struct LevelGraph {
    int n = 2;
    int m = 0;
    std::vector<BaryCoord> vertices;
    std::vector<PointAddress> addresses;  // canonical address per vertex
    std::vector<std::vector<int>> adj;

    std::size_t edge_count() const {
        std::size_t s = 0;
        for (const auto& nb : adj) s += nb.size();
        return s / 2;
    }
};

inline LevelGraph build_graph(int n, int m, std::uint64_t cell_budget = 1u << 20) {
    if (n < 2 || m < 0) throw DomainError("need n >= 2 and m >= 0");
    std::uint64_t cells = 1;
    for (int i = 0; i < m; ++i) {
        cells *= static_cast<std::uint64_t>(n + 1);
        if (cells > cell_budget) throw BudgetExceeded("level graph too large");
    }
    LevelGraph g;
    g.n = n;
    g.m = m;
    std::map<BaryCoord, int> index;
    std::set<std::pair<int, int>> edges;
    auto vertex_id = [&](const BaryCoord& b) {
        auto [it, fresh] = index.emplace(b, static_cast<int>(g.vertices.size()));
        if (fresh) {
            g.vertices.push_back(b);
            g.addresses.push_back(canonicalize(bary_to_address(b).front()));
        }
        return it->second;
    };

    std::vector<Letter> word;
    auto visit_cells = [&](auto&& self, int depth) -> void {
        if (depth == m) {
            Word w{word, n};
            std::vector<int> ids(n + 1);
            for (int i = 0; i <= n; ++i)
                ids[i] = vertex_id(apply_map(w, detail::corner_coord(n, static_cast<Letter>(i))));
            for (int i = 0; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    edges.emplace(std::min(ids[i], ids[j]), std::max(ids[i], ids[j]));
            return;
        }
        for (int a = 0; a <= n; ++a) {
            word.push_back(static_cast<Letter>(a));
            self(self, depth + 1);
            word.pop_back();
        }
    };
    visit_cells(visit_cells, 0);

    g.adj.resize(g.vertices.size());
    for (auto [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    return g;
}

/// BFS from u: hop counts and the number of distinct shortest edge-paths,
/// accumulated over the BFS DAG.
inline std::pair<std::vector<int>, std::vector<std::uint64_t>> bfs_all(const LevelGraph& g, int u) {
    std::vector<int> dist(g.vertices.size(), -1);
    std::vector<std::uint64_t> count(g.vertices.size(), 0);
    std::queue<int> q;
    dist[u] = 0;
    count[u] = 1;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.adj[x]) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
            if (dist[y] == dist[x] + 1) count[y] += count[x];
        }
    }
    return {std::move(dist), std::move(count)};
}

inline std::pair<Dyadic, std::uint64_t> bfs_distance_and_count(const LevelGraph& g, int u, int v) {
    auto [dist, count] = bfs_all(g, u);
    return {Dyadic(mpz_class(dist[v]), static_cast<unsigned>(g.m)), count[v]};
}

struct VerifyReport {
    int n = 0, m = 0;
    std::size_t vertex_count = 0;
    std::size_t pairs_checked = 0;
    std::uint64_t max_count = 0;
    std::pair<PointAddress, PointAddress> max_pair;
    struct Mismatch {
        PointAddress x, y;
        std::string bfs_distance, metric_distance;
        std::uint64_t bfs_count = 0, metric_count = 0;
    };
    std::vector<Mismatch> mismatches;

    bool ok() const { return mismatches.empty(); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n;
        j["m"] = m;
        j["vertices"] = vertex_count;
        j["pairs_checked"] = pairs_checked;
        j["max_geodesic_count"] = max_count;
        j["max_pair"] = {to_text(max_pair.first), to_text(max_pair.second)};
        j["ok"] = ok();
        j["mismatches"] = nlohmann::json::array();
        for (const auto& mm : mismatches) {
            j["mismatches"].push_back({{"x", to_text(mm.x)},
                                       {"y", to_text(mm.y)},
                                       {"bfs_distance", mm.bfs_distance},
                                       {"metric_distance", mm.metric_distance},
                                       {"bfs_count", mm.bfs_count},
                                       {"metric_count", mm.metric_count}});
        }
        return j;
    }
};

/// Exhaustive check of the closed-form metric against BFS over all vertex
/// pairs of the level-m graph: exact distance equality and equal shortest
/// path counts.
inline VerifyReport verify_metric(int n, int m, bool check_counts = true) {
    LevelGraph g = build_graph(n, m);
    VerifyReport rep;
    rep.n = n;
    rep.m = m;
    rep.vertex_count = g.vertices.size();
    rep.max_pair = {g.addresses.empty() ? PointAddress{} : g.addresses.front(),
                    g.addresses.empty() ? PointAddress{} : g.addresses.front()};
    const int N = static_cast<int>(g.vertices.size());
    for (int u = 0; u < N; ++u) {
        auto [dist, count] = bfs_all(g, u);
        for (int v = u + 1; v < N; ++v) {
            ++rep.pairs_checked;
            Dyadic bfs_d(mpz_class(dist[v]), static_cast<unsigned>(m));
            Dyadic met_d = distance(g.addresses[u], g.addresses[v]);
            std::uint64_t met_c = check_counts ? count_geodesics(g.addresses[u], g.addresses[v]) : count[v];
            if (count[v] > rep.max_count) {
                rep.max_count = count[v];
                rep.max_pair = {g.addresses[u], g.addresses[v]};
            }
            if (bfs_d != met_d || count[v] != met_c) {
                rep.mismatches.push_back({g.addresses[u], g.addresses[v], bfs_d.frac_str(),
                                          met_d.frac_str(), count[v], met_c});
            }
        }
    }
    return rep;
}

}  // namespace gasket
