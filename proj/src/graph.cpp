#include "descent/graph.hpp"

#include <algorithm>
#include <limits>

namespace descent {

Condensation condense(const Adjacency& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unseen), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    Condensation c;
    c.component.assign(n, unseen);
    std::size_t counter = 0;

    // Iterative DFS so deep chains cannot overflow the call stack.
    struct Frame {
        std::size_t v, next;
    };
    std::vector<Frame> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unseen) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& fr = frames.back();
            if (fr.next < adj[fr.v].size()) {
                std::size_t w = adj[fr.v][fr.next++];
                if (index[w] == unseen) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            std::size_t v = fr.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    c.component[w] = c.members.size();
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                c.members.push_back(std::move(comp));
            }
        }
    }

    c.successors.assign(c.members.size(), {});
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w : adj[v])
            if (c.component[v] != c.component[w]) c.successors[c.component[v]].push_back(c.component[w]);
    c.is_sink.assign(c.members.size(), false);
    for (std::size_t k = 0; k < c.members.size(); ++k) {
        auto& s = c.successors[k];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        c.is_sink[k] = s.empty();
    }
    return c;
}

VertexSet reachable_from(const Adjacency& adj, std::size_t source) {
    VertexSet seen(adj.size());
    std::vector<std::size_t> todo{source};
    seen.set(source);
    while (!todo.empty()) {
        std::size_t v = todo.back();
        todo.pop_back();
        for (std::size_t w : adj[v])
            if (!seen.test(w)) {
                seen.set(w);
                todo.push_back(w);
            }
    }
    return seen;
}

}  // namespace descent
