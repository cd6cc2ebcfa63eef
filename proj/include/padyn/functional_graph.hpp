#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace padyn {

/// Rho-shape decomposition of a self-map of {0, ..., n-1}.
struct FunctionalGraphCensus {
    std::vector<std::uint32_t> period;  // exact period, 0 for non-periodic elements
    std::vector<std::uint32_t> tail;    // steps until the orbit enters a cycle
    std::vector<std::vector<std::uint64_t>> cycles;  // each starts at its smallest element; sorted

    std::uint64_t periodic_count() const {
        std::uint64_t n = 0;
        for (auto p : period) n += p != 0;
        return n;
    }
};

inline FunctionalGraphCensus analyze_functional_graph(const std::vector<std::uint64_t>& table) {
    const std::size_t n = table.size();
    FunctionalGraphCensus out;
    out.period.assign(n, 0);
    out.tail.assign(n, 0);
    enum : std::uint8_t { Fresh, OnPath, Done };
    std::vector<std::uint8_t> state(n, Fresh);
    std::vector<std::uint64_t> path;
    for (std::uint64_t start = 0; start < n; ++start) {
        if (state[start] != Fresh) continue;
        path.clear();
        std::uint64_t x = start;
        while (state[x] == Fresh) {
            state[x] = OnPath;
            path.push_back(x);
            x = table[x];
        }
        std::size_t cut = path.size();
        if (state[x] == OnPath) {
            // x closes a new cycle inside the current path.
            std::size_t pos = cut;
            while (path[pos - 1] != x) --pos;
            cut = pos - 1;
            auto len = static_cast<std::uint32_t>(path.size() - cut);
            std::vector<std::uint64_t> cyc(path.begin() + static_cast<std::ptrdiff_t>(cut), path.end());
            for (auto y : cyc) {
                out.period[y] = len;
                state[y] = Done;
            }
            std::size_t lo = 0;
            for (std::size_t i = 1; i < cyc.size(); ++i)
                if (cyc[i] < cyc[lo]) lo = i;
            std::vector<std::uint64_t> rotated(cyc.begin() + static_cast<std::ptrdiff_t>(lo), cyc.end());
            rotated.insert(rotated.end(), cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(lo));
            out.cycles.push_back(std::move(rotated));
        }
        for (std::size_t i = cut; i-- > 0;) {
            out.tail[path[i]] = out.tail[table[path[i]]] + 1;
            state[path[i]] = Done;
        }
    }
    std::sort(out.cycles.begin(), out.cycles.end());
    return out;
}

}  // namespace padyn
