#include "krboot/extremal_search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "krboot/errors.hpp"
#include "krboot/graph_io.hpp"

namespace krboot {

namespace {

constexpr int kMaxSmallN = 11;

// Is there a k-clique inside cand? Candidates are tried in ascending order,
// so recursion only ever looks at higher-numbered vertices.
bool clique_in(const std::uint32_t* row, std::uint32_t cand, int k) {
    if (k <= 0) return true;
    if (std::popcount(cand) < k) return false;
    if (k == 1) return true;
    while (cand) {
        int u = std::countr_zero(cand);
        cand &= cand - 1;
        if (clique_in(row, cand & row[u], k - 1)) return true;
    }
    return false;
}

void apply_mask(int n, std::uint64_t mask, std::uint32_t* row) {
    int idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            if (mask >> idx & 1) {
                row[u] |= std::uint32_t{1} << v;
                row[v] |= std::uint32_t{1} << u;
            }
        }
    }
}

std::uint64_t relabel_mask(int n, std::uint64_t mask, const int* perm) {
    std::uint64_t out = 0;
    int idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            if (mask >> idx & 1) {
                int a = perm[u];
                int b = perm[v];
                if (b < a) std::swap(a, b);
                out |= std::uint64_t{1} << pair_index(n, a, b);
            }
        }
    }
    return out;
}

std::uint64_t degree_key(int n, std::uint64_t mask) {
    int deg[kMaxSmallN] = {0};
    int idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            if (mask >> idx & 1) {
                ++deg[u];
                ++deg[v];
            }
        }
    }
    std::sort(deg, deg + n);
    std::uint64_t key = 0;
    for (int u = 0; u < n; ++u) {
        key = key << 4 | static_cast<std::uint64_t>(deg[u]);
    }
    return key;
}

bool isomorphic(int n, std::uint64_t a, std::uint64_t b) {
    int perm[kMaxSmallN];
    std::iota(perm, perm + n, 0);
    do {
        if (relabel_mask(n, a, perm) == b) return true;
    } while (std::next_permutation(perm, perm + n));
    return false;
}

struct BlockSummary {
    bool any = false;
    long long best = 0;
    std::vector<std::uint64_t> witnesses;
    std::uint64_t scanned = 0;
};

struct ScanPlan {
    int n = 0;
    int pair_bits = 0;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> reps;  // only in dedup mode
    bool dedup = false;
};

ScanPlan make_plan(int n, const SearchOptions& opt) {
    if (n < 3) {
        throw InputError("exhaustive scans need n >= 3");
    }
    if (n > 8) {
        throw BudgetError("exhaustive search for n >= 9 is out of scope "
                          "(2^" +
                          std::to_string(n * (n - 1) / 2) + " graphs)");
    }
    if (n > opt.budget) {
        throw BudgetError(
            "n = " + std::to_string(n) + " needs 2^" +
            std::to_string(n * (n - 1) / 2) + " = " +
            std::to_string(std::uint64_t{1} << (n * (n - 1) / 2)) +
            " closures; raise the budget to allow it");
    }
    if (opt.shards < 1 || opt.shard_index < 0 || opt.shard_index >= opt.shards) {
        throw InputError("shard index must lie in [0, shards)");
    }
    if (opt.witness_cap < 0) {
        throw InputError("witness cap must be nonnegative");
    }
    ScanPlan plan;
    plan.n = n;
    plan.pair_bits = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << plan.pair_bits;
    const std::uint64_t shards = static_cast<std::uint64_t>(opt.shards);
    const std::uint64_t idx = static_cast<std::uint64_t>(opt.shard_index);
    const std::uint64_t base = total / shards;
    const std::uint64_t rem = total % shards;
    plan.lo = idx * base + std::min(idx, rem);
    plan.hi = plan.lo + base + (idx < rem ? 1 : 0);
    plan.dedup = opt.dedup;
    if (opt.dedup) {
        if (n > 6) {
            throw BudgetError("the dedup scan is limited to n <= 6; the "
                              "pairwise isomorphism check is too slow beyond "
                              "that");
        }
        std::map<std::uint64_t, std::vector<std::uint64_t>> buckets;
        for (std::uint64_t k = plan.lo; k < plan.hi; ++k) {
            std::uint64_t mask = k ^ (k >> 1);
            auto& bucket = buckets[degree_key(n, mask)];
            bool fresh = true;
            for (std::uint64_t rep : bucket) {
                if (isomorphic(n, mask, rep)) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) {
                bucket.push_back(mask);
                plan.reps.push_back(mask);
            }
        }
    }
    return plan;
}

// Scans every graph in the slice, keeps the best score and the first
// witnesses in enumeration order. Work is handed to threads in fixed blocks
// and the block summaries are merged in block order, so the result does not
// depend on the worker count.
template <typename Eval>
SearchResult run_scan(const std::string& objective, int n, int r,
                      bool maximize, const SearchOptions& opt, Eval eval) {
    const auto start = std::chrono::steady_clock::now();
    ScanPlan plan = make_plan(n, opt);

    SearchResult result;
    result.objective = objective;
    result.n = n;
    result.r = r;
    result.shards = opt.shards;
    result.shard_index = opt.shard_index;

    const std::uint64_t count =
        plan.dedup ? plan.reps.size() : plan.hi - plan.lo;
    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<BlockSummary> summaries(blocks);

    int workers = opt.workers;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                                blocks > 0 ? blocks : 1));

    std::atomic<std::uint64_t> next_block{0};
    auto work = [&]() {
        for (std::uint64_t b = next_block.fetch_add(1); b < blocks;
             b = next_block.fetch_add(1)) {
            BlockSummary& sum = summaries[b];
            const std::uint64_t begin = b * kBlock;
            const std::uint64_t end = std::min(count, begin + kBlock);
            for (std::uint64_t i = begin; i < end; ++i) {
                std::uint64_t mask;
                if (plan.dedup) {
                    mask = plan.reps[i];
                } else {
                    std::uint64_t k = plan.lo + i;
                    mask = k ^ (k >> 1);
                }
                ++sum.scanned;
                std::optional<long long> score = eval(mask);
                if (!score) continue;
                if (!sum.any || (maximize ? *score > sum.best
                                          : *score < sum.best)) {
                    sum.any = true;
                    sum.best = *score;
                    sum.witnesses.clear();
                    sum.witnesses.push_back(mask);
                } else if (*score == sum.best &&
                           static_cast<int>(sum.witnesses.size()) <
                               opt.witness_cap) {
                    sum.witnesses.push_back(mask);
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    std::vector<std::uint64_t> witness_masks;
    for (const BlockSummary& sum : summaries) {
        result.graphs_scanned += sum.scanned;
        if (!sum.any) continue;
        if (!result.found ||
            (maximize ? sum.best > result.value : sum.best < result.value)) {
            result.found = true;
            result.value = sum.best;
            witness_masks = sum.witnesses;
        } else if (sum.best == result.value) {
            for (std::uint64_t mask : sum.witnesses) {
                if (static_cast<int>(witness_masks.size()) >= opt.witness_cap) {
                    break;
                }
                witness_masks.push_back(mask);
            }
        }
    }
    if (static_cast<int>(witness_masks.size()) > opt.witness_cap) {
        witness_masks.resize(opt.witness_cap);
    }
    for (std::uint64_t mask : witness_masks) {
        result.witnesses.push_back(graph_from_mask(n, mask));
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace

SmallClosure small_close(int n, std::uint64_t edge_mask, int r) {
    if (n < 1 || n > kMaxSmallN) {
        throw InputError("small_close handles 1 <= n <= 11");
    }
    ProcessParams params{r};
    check_params(params);
    const int pairs = n * (n - 1) / 2;
    const std::uint64_t full =
        pairs == 0 ? 0 : (std::uint64_t{1} << pairs) - 1;
    if ((edge_mask & ~full) != 0) {
        throw InputError("edge mask has bits beyond C(n,2)");
    }
    std::uint32_t row[kMaxSmallN] = {0};
    apply_mask(n, edge_mask, row);
    const int need = r - 2;
    SmallClosure out;
    std::uint64_t mask = edge_mask;
    while (true) {
        std::uint64_t add = 0;
        int idx = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v, ++idx) {
                if (mask >> idx & 1) continue;
                std::uint32_t common = row[u] & row[v];
                if (std::popcount(common) < need) continue;
                if (clique_in(row, common, need)) {
                    add |= std::uint64_t{1} << idx;
                }
            }
        }
        if (add == 0) break;
        ++out.tau;
        mask |= add;
        apply_mask(n, add, row);
    }
    out.closure_mask = mask;
    out.percolates = (mask == full);
    return out;
}

Graph graph_from_mask(int n, std::uint64_t edge_mask) {
    std::vector<Edge> edges;
    int idx = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++idx) {
            if (edge_mask >> idx & 1) edges.push_back({u, v});
        }
    }
    return build_graph(n, edges);
}

std::uint64_t mask_from_graph(const Graph& g) {
    if (g.n() > kMaxSmallN) {
        throw InputError("edge masks cover graphs with n <= 11 only");
    }
    std::uint64_t mask = 0;
    for (const Edge& e : g.edges()) {
        mask |= std::uint64_t{1} << pair_index(g.n(), e.first, e.second);
    }
    return mask;
}

SearchResult tau_max(int n, int r, const SearchOptions& options) {
    ProcessParams params{r};
    check_params(params);
    return run_scan("tau_max", n, r, true, options,
                    [n, r](std::uint64_t mask) -> std::optional<long long> {
                        return small_close(n, mask, r).tau;
                    });
}

SearchResult min_percolating_edges(int n, int r, const SearchOptions& options) {
    ProcessParams params{r};
    check_params(params);
    if (n < r) {
        throw InputError("minimum percolating size needs n >= r");
    }
    return run_scan("min_percolating_edges", n, r, false, options,
                    [n, r](std::uint64_t mask) -> std::optional<long long> {
                        if (!small_close(n, mask, r).percolates) {
                            return std::nullopt;
                        }
                        return std::popcount(mask);
                    });
}

SearchResult min_edges_given_tau(int n, int r, int t,
                                 const SearchOptions& options) {
    ProcessParams params{r};
    check_params(params);
    if (t < 0) {
        throw InputError("saturation time target must be nonnegative");
    }
    SearchResult result = run_scan(
        "min_edges_given_tau", n, r, false, options,
        [n, r, t](std::uint64_t mask) -> std::optional<long long> {
            if (small_close(n, mask, r).tau != t) return std::nullopt;
            return std::popcount(mask);
        });
    result.tau_target = t;
    return result;
}

std::string search_result_to_json(const SearchResult& result) {
    nlohmann::json j;
    j["objective"] = result.objective;
    j["n"] = result.n;
    j["r"] = result.r;
    if (result.tau_target >= 0) {
        j["tau_target"] = result.tau_target;
    } else {
        j["tau_target"] = nullptr;
    }
    j["found"] = result.found;
    j["value"] = result.found ? nlohmann::json(result.value)
                              : nlohmann::json(nullptr);
    j["graphs_scanned"] = result.graphs_scanned;
    j["shards"] = result.shards;
    j["shard_index"] = result.shard_index;
    j["seconds"] = result.seconds;
    j["witnesses"] = nlohmann::json::array();
    for (const Graph& g : result.witnesses) {
        j["witnesses"].push_back(graph_to_text(g));
    }
    return j.dump(2) + "\n";
}

}  // namespace krboot
