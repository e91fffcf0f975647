#include "psifrac/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace psifrac {

namespace {

std::size_t cap_from_env()
{
    const char* env = std::getenv("PSIFRAC_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    try {
        const long value = std::stol(env);
        return value < 1 ? 1 : static_cast<std::size_t>(value);
    } catch (...) {
        return 1;
    }
}

std::atomic<std::size_t>& cap_storage()
{
    static std::atomic<std::size_t> cap{cap_from_env()};
    return cap;
}

} // namespace

std::size_t thread_cap() { return cap_storage().load(); }

void set_thread_cap(std::size_t cap) { cap_storage().store(std::max<std::size_t>(cap, 1)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk)
{
    const std::size_t workers = std::min(thread_cap(), std::max<std::size_t>(n / std::max<std::size_t>(min_chunk, 1), 1));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) {
        th.join();
    }
}

} // namespace psifrac
