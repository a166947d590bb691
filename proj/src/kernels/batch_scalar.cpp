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

#include <cmath>
#include <cstddef>

#include "batch_impl.hpp"

namespace subdiff::kernels::scalar {

void exp_batch(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void log_batch(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
}

void powsum_batch(const double* lx, std::size_t n, const double* e, const double* wa,
                  const double* wb, std::size_t k, double* h, double* g) {
    for (std::size_t i = 0; i < n; ++i) {
        double sh = 0.0, sg = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double p = std::exp(e[j] * lx[i]);
            sh += wa[j] * p;
            sg += wb[j] * p;
        }
        h[i] = sh;
        if (g) g[i] = sg;
    }
}

}  // namespace subdiff::kernels::scalar
