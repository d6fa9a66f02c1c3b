// Deterministic fork-join helper: results come back in index order no
// matter how many worker threads run.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace toric {

/** Process-wide worker count used by parallelFor (default 1). */
void setThreadCount(unsigned n);
unsigned threadCount();

/** Calls body(i) for i in [0, n), possibly concurrently. Rethrows the first (lowest index) exception. */
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

template <typename T, typename Fn>
std::vector<T> parallelMap(std::size_t n, Fn&& fn)
{
    std::vector<std::optional<T>> slots(n);
    parallelFor(n, [&](std::size_t i) { slots[i].emplace(fn(i)); });
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

}   // namespace toric
