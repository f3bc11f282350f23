#ifndef PATCHKPP_UTIL_HPP
#define PATCHKPP_UTIL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace patchkpp {

inline int worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PATCHKPP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && unsigned(cap) < n) n = unsigned(cap);
    }
    return int(n);
}

/** Run fn(i) for i in [0, n) on the worker pool. Work items must be
 *  independent; results go into caller-owned slots indexed by i. The first
 *  exception, if any, is rethrown on the caller thread. */
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace patchkpp

#endif
