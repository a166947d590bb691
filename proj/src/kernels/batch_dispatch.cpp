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

#include "subdiff/kernels/batch.hpp"

#include "batch_impl.hpp"

namespace subdiff::kernels {

namespace {

using exp_fn = void (*)(const double*, double*, std::size_t);
using log_fn = void (*)(const double*, double*, std::size_t);
using powsum_fn = void (*)(const double*, std::size_t, const double*, const double*,
                           const double*, std::size_t, double*, double*);

bool cpu_has_avx2() {
#ifdef SUBDIFF_HAVE_AVX2_TU
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct table {
    exp_fn exp;
    log_fn log;
    powsum_fn powsum;
    const char* name;
};

table pick(backend b) {
#ifdef SUBDIFF_HAVE_AVX2_TU
    if (b == backend::automatic && cpu_has_avx2())
        return {avx2::exp_batch, avx2::log_batch, avx2::powsum_batch, "avx2"};
#else
    (void)b;
#endif
    return {scalar::exp_batch, scalar::log_batch, scalar::powsum_batch, "scalar"};
}

table g_active = pick(backend::automatic);

}  // namespace

const char* active_backend() { return g_active.name; }

void force_backend(backend b) { g_active = pick(b); }

void exp_batch(const double* x, double* y, std::size_t n) { g_active.exp(x, y, n); }

void log_batch(const double* x, double* y, std::size_t n) { g_active.log(x, y, n); }

void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g) {
    g_active.powsum(lx, n, e, wa, wb, k, h, g);
}

}  // namespace subdiff::kernels
