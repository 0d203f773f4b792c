// SPDX-License-Identifier: Apache-2.0
//
// macovert: movable-antenna aided covert communication toolkit
// Copyright (C) 2026 The macovert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "macovert/geometry.hpp"
#include "macovert/metrics.hpp"

#include <cstddef>
#include <cstdint>

namespace macovert
{

struct DpgdSettings
{
    double step_size = 1e-3;
    double tolerance = 1e-5;
    std::size_t max_iterations = 100000;
    AngleConvention convention = AngleConvention::Difference;
    // Start 0 is always x0 = (F_1, ..., F_N); further starts are drawn from `seed`.
    std::size_t starts = 1;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const DpgdSettings &) const = default;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

// One complete problem instance.
struct Scenario
{
    ArraySpec spec = ArraySpec::uniform(3, 1.0);
    double theta_b = 0.0;
    double theta_w = 0.3;
    NoiseModel noise = NoiseModel::from_db(1.0, 3.0);
    double rate = 1.0;
    DpgdSettings dpgd;
    std::uint64_t oracle_budget = kDefaultOracleBudget;

    void validate() const;
    double slope() const { return phase_slope(theta_b, theta_w, spec.wavelength, dpgd.convention); }
    double beta() const { return beta_for_rate(rate); }

    bool operator==(const Scenario &) const = default;
};

} // namespace macovert
