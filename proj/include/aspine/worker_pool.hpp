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

#ifndef ASPINE_WORKER_POOL_HPP
#define ASPINE_WORKER_POOL_HPP

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace aspine {

/// Fixed pool of workers executing strided item ranges: worker w of W
/// handles items w, w+W, w+2W, ... The caller participates as worker 0,
/// so size()==1 runs inline with no synchronization at all. run() blocks
/// until every worker passed the end of the range (a full barrier), so a
/// job's writes are visible to whatever follows it.
class WorkerPool {
public:
    explicit WorkerPool(unsigned workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    unsigned size() const { return workers_; }

    /// fn(worker_id, item_index) for every index in [0, n_items).
    void run(std::size_t n_items, const std::function<void(unsigned, std::size_t)>& fn);

    /// OR-reduction of n per-item bitmaps into `out` (all `words` wide):
    /// item i contributes via `load(i, scratch)` OR-ing into scratch.
    /// Associative and commutative, so the result is identical for any
    /// worker count.
    void or_reduce(std::size_t n_items, std::size_t words,
                   const std::function<void(std::size_t, std::span<std::uint64_t>)>& accumulate,
                   std::span<std::uint64_t> out);

private:
    void worker_loop(unsigned id);

    unsigned workers_;
    std::vector<std::thread> threads_;

    std::mutex mtx_;
    std::condition_variable start_cv_, done_cv_;
    std::uint64_t generation_ = 0;
    std::size_t job_items_ = 0;
    const std::function<void(unsigned, std::size_t)>* job_fn_ = nullptr;
    unsigned pending_ = 0;
    bool stop_ = false;
};

}  // namespace aspine

#endif
