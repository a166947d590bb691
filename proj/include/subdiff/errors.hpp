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

#include <stdexcept>
#include <string>

namespace subdiff {

enum class errc {
    // input validation
    negative_weight,
    empty_support,
    support_out_of_range,
    normalization_violation,
    endpoint_mismatch,
    domain_error,
    config_error,
    degenerate_support,
    delta_unsupported,
    // numerical failures
    quadrature_nonconvergence,
    convergence_failure,
    contour_failure,
    grid_too_coarse,
};

// Every failure the library raises carries one of the codes above; the CLI
// maps validation-class codes to exit 2 and numerical-class codes to exit 3.
class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

    bool is_validation() const noexcept {
        switch (code_) {
            case errc::negative_weight:
            case errc::empty_support:
            case errc::support_out_of_range:
            case errc::normalization_violation:
            case errc::endpoint_mismatch:
            case errc::domain_error:
            case errc::config_error:
            case errc::degenerate_support:
            case errc::delta_unsupported:
                return true;
            default:
                return false;
        }
    }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace subdiff
