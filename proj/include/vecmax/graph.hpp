#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "vecmax/error.hpp"
#include "vecmax/instance.hpp"

namespace vecmax {

inline constexpr std::size_t kDefaultPointCap = 5000;

/// The relation ⪰ materialized on A: edge a -> b iff a ⪰ b and a != b (as indices).
///
/// Adjacency is kept both as sorted lists and as a dense bit matrix with the diagonal set,
/// so "a ⪰ b" is one bit lookup.
class SuccessorGraph {
public:
    explicit SuccessorGraph(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(n * words_, 0), succ_(n) {
        for (std::size_t i = 0; i < n; ++i) set_bit(i, i);
    }

    std::size_t size() const noexcept { return n_; }
    const std::vector<std::size_t>& successors(std::size_t a) const { return succ_.at(a); }
    bool related(std::size_t a, std::size_t b) const {
        return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
    }
    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& s : succ_) c += s.size();
        return c;
    }

    /// First triple (a, b, c) with a ⪰ b ⪰ c but not a ⪰ c.
    std::optional<std::array<std::size_t, 3>> transitivity_violation() const {
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b : succ_[a]) {
                for (std::size_t w = 0; w < words_; ++w) {
                    const std::uint64_t missing = bits_[b * words_ + w] & ~bits_[a * words_ + w];
                    if (missing) {
                        const std::size_t c = w * 64 + static_cast<std::size_t>(__builtin_ctzll(missing));
                        return std::array<std::size_t, 3>{a, b, c};
                    }
                }
            }
        }
        return std::nullopt;
    }

    /// Appends edge a -> b. Touches only row a, so distinct rows may be filled concurrently.
    void add_edge(std::size_t a, std::size_t b) {
        set_bit(a, b);
        succ_[a].push_back(b);
    }

private:
    void set_bit(std::size_t a, std::size_t b) { bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<std::size_t>> succ_;
};

/// Evaluates the order on all ordered pairs of A. Rows are split over `threads` workers; each
/// worker writes only its own rows.
template <class T>
SuccessorGraph successor_graph(const Instance<T>& inst, std::size_t cap = kDefaultPointCap, unsigned threads = 1) {
    const std::size_t n = inst.size();
    if (n > cap) {
        throw InvalidArgument("instance has " + std::to_string(n) + " points, above the cap of " +
                              std::to_string(cap));
    }
    SuccessorGraph g(n);
    auto fill_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b || !inst.geq(a, b)) continue;
                g.add_edge(a, b);
            }
        }
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        fill_rows(0, n);
        return g;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& th : pool) th.join();
    return g;
}

/// Strongly connected components of a successor graph (iterative Tarjan).
struct Components {
    std::vector<std::size_t> component_of;            // node -> component id
    std::vector<std::vector<std::size_t>> members;     // component id -> sorted nodes
    std::vector<bool> is_sink;                         // no edge leaves the component

    std::size_t count() const noexcept { return members.size(); }
};

inline Components strongly_connected_components(const SuccessorGraph& g) {
    const std::size_t n = g.size();
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    Components out;
    out.component_of.assign(n, kUnset);
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next_edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            const auto& succ = g.successors(f.node);
            if (f.next_edge < succ.size()) {
                const std::size_t w = succ[f.next_edge++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const std::size_t v = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] != index[v]) continue;
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                out.component_of[w] = out.members.size();
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.members.push_back(std::move(comp));
        }
    }
    out.is_sink.assign(out.members.size(), true);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b : g.successors(a)) {
            if (out.component_of[a] != out.component_of[b]) out.is_sink[out.component_of[a]] = false;
        }
    }
    return out;
}

/// Breadth-first search from `start`, neighbors in ascending index order. Returns the parent
/// array (start is its own parent; unreachable nodes keep the max value).
inline std::vector<std::size_t> bfs_parents(const SuccessorGraph& g, std::size_t start) {
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(g.size(), kUnset);
    parent.at(start) = start;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : g.successors(v)) {
            if (parent[w] != kUnset) continue;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    return parent;
}

inline std::vector<std::size_t> path_to(const std::vector<std::size_t>& parent, std::size_t target) {
    std::vector<std::size_t> path{target};
    while (parent.at(path.back()) != path.back()) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace vecmax
