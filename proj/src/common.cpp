#include "pslab/common.hpp"

#include <algorithm>
#include <cstdio>

namespace pslab {

namespace {
std::atomic<int> g_thread_limit{0};
}

int thread_limit() {
    int n = g_thread_limit.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

void set_thread_limit(int n) { g_thread_limit.store(n < 0 ? 0 : n); }

void parallel_chunks(std::int64_t n, std::int64_t chunk,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (chunk <= 0) chunk = 1;
    std::int64_t n_chunks = (n + chunk - 1) / chunk;
    int workers = std::min<std::int64_t>(thread_limit(), n_chunks);
    if (workers <= 1) {
        for (std::int64_t ci = 0; ci < n_chunks; ++ci)
            fn(ci * chunk, std::min(n, (ci + 1) * chunk));
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::int64_t ci = next.fetch_add(1);
            if (ci >= n_chunks) return;
            fn(ci * chunk, std::min(n, (ci + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers - 1));
    for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace pslab
