#include "gmg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmg {

namespace {

std::atomic<std::size_t> g_threads{std::max<std::size_t>(1, std::thread::hardware_concurrency())};
thread_local bool t_inside_worker = false;

} // namespace

void set_thread_count(std::size_t threads) { g_threads = std::max<std::size_t>(1, threads); }

std::size_t thread_count() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1 || t_inside_worker) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        t_inside_worker = true;
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
        t_inside_worker = false;
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace gmg
