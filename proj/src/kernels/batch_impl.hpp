// Copyright 2026-present the subdiff project
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

// Internal: per-backend entry points behind kernels/batch.hpp.  The avx2
// namespace is only compiled (and only called) on x86-64 with AVX2+FMA.

namespace subdiff::kernels {

namespace scalar {
void exp_batch(const double* x, double* y, std::size_t n);
void log_batch(const double* x, double* y, std::size_t n);
void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SUBDIFF_HAVE_AVX2_TU 1
namespace avx2 {
void exp_batch(const double* x, double* y, std::size_t n);
void log_batch(const double* x, double* y, std::size_t n);
void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g);
}  // namespace avx2
#endif

}  // namespace subdiff::kernels
