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

// Batch transcendental kernels.  The quadrature inner loops spend nearly all
// their time in elementwise exp/log and in power-sum accumulations of the form
//     h[i] = sum_k a[k] * x[i]^e[k],   g[i] = sum_k b[k] * x[i]^e[k]
// (power evaluated as exp(e[k] * log x[i])).  Each entry point below has a
// scalar reference implementation and an AVX2+FMA variant; the active backend
// is picked once at startup from CPUID and can be forced for testing.

namespace subdiff::kernels {

enum class backend { automatic, scalar };

// Name of the implementation currently in use: "scalar" or "avx2".
const char* active_backend();

// Testing hook: backend::scalar pins the reference path, backend::automatic
// restores CPU-feature dispatch.  Not thread-safe; call before spawning work.
void force_backend(backend b);

// y[i] = exp(x[i]).  Finite inputs; overflow saturates to +inf, deep
// underflow flushes to 0.
void exp_batch(const double* x, double* y, std::size_t n);

// y[i] = log(x[i]) for x[i] > 0.  x == 0 gives -inf, x < 0 gives NaN.
void log_batch(const double* x, double* y, std::size_t n);

// Weighted power sums sharing one set of exponents:
//   h[i] = sum_k wa[k] * exp(e[k] * lx[i])
//   g[i] = sum_k wb[k] * exp(e[k] * lx[i])
// lx holds log(x) so callers can reuse it across calls.  g may be null when
// only h is needed.
void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g);

}  // namespace subdiff::kernels
