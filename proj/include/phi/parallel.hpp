#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace phi {

/// Runs fn(i) for i in [0, count) across at most `jobs` workers, each
/// owning a contiguous index range. Callers write results into
/// per-index slots, so the outcome is identical for every job count.
template <typename Fn>
void parallel_for_indexed(long long count, int jobs, Fn fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 4) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    long long per = (count + jobs - 1) / jobs;
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int w = 0; w < jobs; ++w) {
        long long lo = w * per;
        long long hi = std::min(count, lo + per);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            try {
                for (long long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace phi
