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

#include "macovert/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace macovert
{

NoiseModel::NoiseModel(double sigma0_sq, double rho) : sigma0_sq_(sigma0_sq), rho_(rho)
{
    if (!(std::isfinite(sigma0_sq) && sigma0_sq > 0.0))
        throw std::invalid_argument("NoiseModel: sigma0_sq must be positive");
    if (!(std::isfinite(rho) && rho > 1.0))
        throw std::invalid_argument("NoiseModel: rho must be greater than 1");
}

NoiseModel NoiseModel::from_db(double sigma0_sq, double rho_db)
{
    return NoiseModel(sigma0_sq, std::pow(10.0, rho_db / 10.0));
}

double NoiseModel::rho_db() const
{
    return 10.0 * std::log10(rho_);
}

double NoiseModel::pdf(double x) const
{
    if (x < lower() || x > upper())
        return 0.0;
    return 1.0 / (2.0 * std::log(rho_) * x);
}

double NoiseModel::cdf(double x) const
{
    if (x <= lower())
        return 0.0;
    if (x >= upper())
        return 1.0;
    return std::clamp(std::log(rho_ * x / sigma0_sq_) / (2.0 * std::log(rho_)), 0.0, 1.0);
}

double beta_for_rate(double rate)
{
    return std::exp2(rate) - 1.0;
}

LinkBudget LinkBudget::mrt(double p_a, std::size_t n_antennas, double f0, double rate)
{
    const double n = double(n_antennas);
    return {p_a, n, f0 / n, rate};
}

void LinkBudget::validate() const
{
    if (!(p_a >= 0.0) || !std::isfinite(p_a))
        throw std::invalid_argument("LinkBudget: p_a must be non-negative");
    if (!(gain_b >= 0.0) || !(gain_w >= 0.0))
        throw std::invalid_argument("LinkBudget: gains must be non-negative");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("LinkBudget: rate must be positive");
}

double kappa0(const NoiseModel &noise)
{
    return (noise.rho() - 1.0 / noise.rho()) * noise.sigma0_sq();
}

double xi_of_tau(double tau, double kappa1, const NoiseModel &noise)
{
    if (!(tau >= 0.0))
        throw std::invalid_argument("xi_of_tau: tau must be non-negative");
    if (!(kappa1 >= 0.0))
        throw std::invalid_argument("xi_of_tau: kappa1 must be non-negative");

    const double false_alarm = 1.0 - noise.cdf(tau);
    const double miss = noise.cdf(tau - kappa1);
    return std::clamp(false_alarm + miss, 0.0, 1.0);
}

CovertnessReport xi_star(double kappa1, const NoiseModel &noise)
{
    if (!(kappa1 >= 0.0))
        throw std::invalid_argument("xi_star: kappa1 must be non-negative");

    CovertnessReport report;
    report.kappa0 = kappa0(noise);
    report.kappa1 = kappa1;

    if (kappa1 >= report.kappa0 - kBoundaryTolerance)
    {
        // Any tau in [rho sigma0^2, sigma0^2 / rho + kappa1] separates the hypotheses.
        report.xi_star = 0.0;
        report.optimal_tau = noise.upper();
        report.covert_feasible = false;
        return report;
    }

    const double rho = noise.rho();
    report.xi_star =
        std::clamp(1.0 - std::log1p(rho * kappa1 / noise.sigma0_sq()) / (2.0 * std::log(rho)), 0.0, 1.0);
    report.optimal_tau = noise.lower() + kappa1;
    report.covert_feasible = true;
    return report;
}

CovertnessReport xi_star(const LinkBudget &budget, const NoiseModel &noise)
{
    budget.validate();
    return xi_star(budget.p_a * budget.gain_w, noise);
}

double outage_probability(double received_power, double rate, const NoiseModel &noise)
{
    if (!(received_power >= 0.0))
        throw std::invalid_argument("outage_probability: received power must be non-negative");

    const double beta = beta_for_rate(rate);
    const double low = noise.lower() * beta;
    const double high = noise.upper() * beta;
    if (received_power <= low + kBoundaryTolerance)
        return 1.0;
    if (received_power >= high - kBoundaryTolerance)
        return 0.0;
    // Pr(sigma^2 >= g / beta) = 1 - F(g / beta)
    const double value = std::log(high / received_power) / (2.0 * std::log(noise.rho()));
    return std::clamp(value, 0.0, 1.0);
}

double outage_probability(const LinkBudget &budget, const NoiseModel &noise)
{
    budget.validate();
    return outage_probability(budget.p_a * budget.gain_b, budget.rate, noise);
}

std::vector<double> sample_noise_power(const NoiseModel &noise, std::uint64_t seed, std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("sample_noise_power: count must be at least 1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> samples(count);
    const double log_rho = std::log(noise.rho());
    for (auto &s : samples)
        s = noise.sigma0_sq() * std::exp((2.0 * unit(rng) - 1.0) * log_rho);
    return samples;
}

} // namespace macovert
