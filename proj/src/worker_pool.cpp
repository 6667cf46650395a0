/*
 *  Copyright (c) 2026  The aspine authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "aspine/worker_pool.hpp"

#include <cassert>

namespace aspine {

WorkerPool::WorkerPool(unsigned workers) : workers_(workers == 0 ? 1 : workers) {
    for (unsigned id = 1; id < workers_; ++id)
        threads_.emplace_back([this, id] { worker_loop(id); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lk(mtx_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::run(std::size_t n_items, const std::function<void(unsigned, std::size_t)>& fn) {
    if (workers_ == 1 || n_items <= 1) {
        for (std::size_t i = 0; i < n_items; ++i) fn(0, i);
        return;
    }
    {
        std::lock_guard lk(mtx_);
        job_items_ = n_items;
        job_fn_ = &fn;
        pending_ = workers_ - 1;
        ++generation_;
    }
    start_cv_.notify_all();
    for (std::size_t i = 0; i < n_items; i += workers_) fn(0, i);
    std::unique_lock lk(mtx_);
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    job_fn_ = nullptr;
}

void WorkerPool::worker_loop(unsigned id) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(unsigned, std::size_t)>* fn;
        std::size_t n;
        {
            std::unique_lock lk(mtx_);
            start_cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            fn = job_fn_;
            n = job_items_;
        }
        for (std::size_t i = id; i < n; i += workers_) (*fn)(id, i);
        {
            std::lock_guard lk(mtx_);
            if (--pending_ == 0) done_cv_.notify_all();
        }
    }
}

void WorkerPool::or_reduce(std::size_t n_items, std::size_t words,
                           const std::function<void(std::size_t, std::span<std::uint64_t>)>& accumulate,
                           std::span<std::uint64_t> out) {
    assert(out.size() == words);
    std::fill(out.begin(), out.end(), 0);
    std::vector<std::uint64_t> partials(static_cast<std::size_t>(workers_) * words, 0);
    run(n_items, [&](unsigned worker, std::size_t item) {
        accumulate(item, std::span<std::uint64_t>(partials.data() + worker * words, words));
    });
    for (unsigned w = 0; w < workers_; ++w)
        for (std::size_t k = 0; k < words; ++k) out[k] |= partials[w * words + k];
}

}  // namespace aspine
