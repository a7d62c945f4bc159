//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/parallel.hpp
//! \brief Index-parallel fan-out for grid sweeps.
//!
//! Workers claim indices from a shared counter and write results into
//! caller-owned slots, so output order never depends on scheduling. The
//! ENTANGLE_LAB_THREADS environment variable caps the worker count.
//---------------------------------------------------------------------------//
#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace entlab
{

//---------------------------------------------------------------------------//
//! Worker count: hardware concurrency, capped by ENTANGLE_LAB_THREADS.
inline std::size_t worker_count(std::size_t jobs)
{
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0)
    {
        workers = 1;
    }
    if (char const* env = std::getenv("ENTANGLE_LAB_THREADS"))
    {
        char* end = nullptr;
        long const cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0)
        {
            workers = std::min(workers, static_cast<std::size_t>(cap));
        }
    }
    return std::max<std::size_t>(1, std::min(workers, jobs));
}

//---------------------------------------------------------------------------//
/*!
 * Run fn(i) for i in [0, n). The first exception thrown by any worker is
 * rethrown on the calling thread after all workers join.
 */
template<class F>
void parallel_for(std::size_t n, F&& fn)
{
    if (n == 0)
    {
        return;
    }
    std::size_t const workers = worker_count(n);
    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;)
        {
            std::size_t const i = next.fetch_add(1);
            if (i >= n)
            {
                return;
            }
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                {
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back(run);
    }
    for (auto& th : pool)
    {
        th.join();
    }
    if (first_error)
    {
        std::rethrow_exception(first_error);
    }
}

}  // namespace entlab
