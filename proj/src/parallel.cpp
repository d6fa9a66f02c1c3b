#include "toric/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace toric {

namespace {
std::atomic<unsigned> gThreads{1};
}

void setThreadCount(unsigned n)
{
    gThreads.store(std::max(1u, n));
}

unsigned threadCount()
{
    return gThreads.load();
}

void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threadCount(), n));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
}

}   // namespace toric
