// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>

namespace gdistill {

// Fixed-size worker pool. Bodies passed to ParallelFor must only write to
// state owned by their own index so results do not depend on scheduling.
class Executor {
 public:
  // threads == 0 picks the hardware concurrency.
  explicit Executor(std::size_t threads = 1);
  ~Executor();
  Executor(Executor&&) noexcept;
  Executor& operator=(Executor&&) noexcept;

  std::size_t threads() const { return threads_; }

  // Calls body(i) for every i in [begin, end).
  void ParallelFor(std::size_t begin, std::size_t end,
                   const std::function<void(std::size_t)>& body) const;

  // Shared single-threaded instance.
  static const Executor& Serial();

 private:
  struct Arena;
  std::size_t threads_;
  std::unique_ptr<Arena> arena_;
};

}  // namespace gdistill
