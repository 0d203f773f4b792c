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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace macovert
{

// Absolute tolerance on power comparisons at branch boundaries.
inline constexpr double kBoundaryTolerance = 1e-12;

/*!
Bounded noise uncertainty: the noise power sigma^2 is log-uniform on
[sigma0^2 / rho, rho sigma0^2] with density 1 / (2 ln(rho) x).
*/
class NoiseModel
{
public:
    // rho is linear and must exceed 1; sigma0_sq must be positive.
    NoiseModel(double sigma0_sq, double rho);
    static NoiseModel from_db(double sigma0_sq, double rho_db);

    double sigma0_sq() const { return sigma0_sq_; }
    double rho() const { return rho_; }
    double rho_db() const;
    double lower() const { return sigma0_sq_ / rho_; }
    double upper() const { return rho_ * sigma0_sq_; }

    double pdf(double x) const;
    // ln(rho x / sigma0^2) / (2 ln rho), clamped to [0, 1]
    double cdf(double x) const;

    bool operator==(const NoiseModel &) const = default;

private:
    double sigma0_sq_;
    double rho_;
};

// beta = 2^R - 1
double beta_for_rate(double rate);

// Received powers per unit transmit power, plus the target rate.
struct LinkBudget
{
    double p_a = 0.0;    // transmit power
    double gain_b = 0.0; // |h_ab^H w|^2
    double gain_w = 0.0; // |h_aw^H w|^2
    double rate = 1.0;   // bits per channel use

    // MRT towards Bob: gain_b = N and gain_w = f0 / N.
    static LinkBudget mrt(double p_a, std::size_t n_antennas, double f0, double rate);

    double beta() const { return beta_for_rate(rate); }
    void validate() const;
};

struct CovertnessReport
{
    double xi_star = 1.0;
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    double optimal_tau = 0.0;
    bool covert_feasible = true; // kappa1 < kappa0
};

// (rho - 1/rho) sigma0^2
double kappa0(const NoiseModel &noise);

// Pr(sigma_w^2 > tau) + Pr(sigma_w^2 < tau - kappa1) for threshold tau.
double xi_of_tau(double tau, double kappa1, const NoiseModel &noise);

// Minimum of xi_of_tau over tau, in closed form.
CovertnessReport xi_star(double kappa1, const NoiseModel &noise);
CovertnessReport xi_star(const LinkBudget &budget, const NoiseModel &noise);

// Pr(log2(1 + g / sigma_b^2) <= R) for received power g = P_a |h_ab^H w|^2.
double outage_probability(double received_power, double rate, const NoiseModel &noise);
double outage_probability(const LinkBudget &budget, const NoiseModel &noise);

// i.i.d. draws sigma0^2 rho^(2U - 1), U ~ U[0, 1]. Deterministic in the seed.
std::vector<double> sample_noise_power(const NoiseModel &noise, std::uint64_t seed, std::size_t count);

} // namespace macovert
