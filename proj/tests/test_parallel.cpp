#include <doctest.h>

#include <stdexcept>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "gmg/parallel.hpp"

using namespace gmg;

TEST_CASE("parallel_for visits every index once")
{
    set_thread_count(4);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits)
        CHECK(h == 1);
    set_thread_count(1);
}

TEST_CASE("nested parallel_for runs inline")
{
    set_thread_count(3);
    std::atomic<int> total{0};
    parallel_for(5, [&](std::size_t) { parallel_for(4, [&](std::size_t) { total += 1; }); });
    CHECK(total == 20);
    set_thread_count(1);
}

TEST_CASE("exceptions propagate")
{
    set_thread_count(2);
    CHECK_THROWS_AS(parallel_for(10,
                                 [](std::size_t i) {
                                     if (i == 7)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    set_thread_count(1);
    CHECK(thread_count() == 1);
}
