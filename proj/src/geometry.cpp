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

#include "macovert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace macovert
{

namespace
{
constexpr double kPositionTolerance = 1e-9;
}

ArraySpec ArraySpec::uniform(std::size_t n_antennas, double l0, GridSize grid, double wavelength, double d_min)
{
    ArraySpec spec;
    spec.n_antennas = n_antennas;
    spec.wavelength = wavelength;
    spec.d_min = d_min;
    spec.l0 = l0;
    spec.grid_sizes.assign(n_antennas, grid);
    return spec;
}

void ArraySpec::validate() const
{
    if (n_antennas == 0)
        throw std::invalid_argument("ArraySpec: n_antennas must be at least 1");
    if (!(std::isfinite(wavelength) && wavelength > 0.0))
        throw std::invalid_argument("ArraySpec: wavelength must be positive");
    if (!(std::isfinite(d_min) && d_min > 0.0))
        throw std::invalid_argument("ArraySpec: d_min must be positive");
    if (!(std::isfinite(l0) && l0 >= 1.0))
        throw std::invalid_argument("ArraySpec: l0 must be >= 1");
    if (grid_sizes.size() != n_antennas)
        throw std::invalid_argument("ArraySpec: expected " + std::to_string(n_antennas) +
                                    " grid sizes, got " + std::to_string(grid_sizes.size()));
    for (const auto &k : grid_sizes)
        if (k && *k == 0)
            throw std::invalid_argument("ArraySpec: grid size must be at least 1");
}

double ArraySpec::total_range() const
{
    return l0 * double(n_antennas - 1) * d_min;
}

double ArraySpec::box_width() const
{
    const double free_span = total_range() - double(n_antennas - 1) * d_min;
    // l0 == 1 can leave a tiny negative residue
    return std::max(0.0, free_span / double(n_antennas));
}

bool ArraySpec::all_grids_finite() const
{
    return std::all_of(grid_sizes.begin(), grid_sizes.end(), [](const GridSize &k) { return k.has_value(); });
}

Box compute_bounds(const ArraySpec &spec, std::size_t n)
{
    if (n >= spec.n_antennas)
        throw std::out_of_range("compute_bounds: antenna index " + std::to_string(n) + " out of range for N = " +
                                std::to_string(spec.n_antennas));
    const double width = spec.box_width();
    const double lower = (width + spec.d_min) * double(n);
    return {lower, lower + width};
}

std::vector<Box> compute_all_bounds(const ArraySpec &spec)
{
    std::vector<Box> boxes;
    boxes.reserve(spec.n_antennas);
    for (std::size_t n = 0; n < spec.n_antennas; ++n)
        boxes.push_back(compute_bounds(spec, n));
    return boxes;
}

std::vector<double> build_grid(Box box, std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("build_grid: grid needs at least one point");
    if (count == 1)
        return {box.lower};

    std::vector<double> grid(count);
    const double step = (box.upper - box.lower) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = box.lower + double(i) * step;
    grid.back() = box.upper;
    return grid;
}

std::vector<double> build_grid(const ArraySpec &spec, std::size_t n)
{
    const Box box = compute_bounds(spec, n);
    const GridSize &k = spec.grid_sizes.at(n);
    if (!k)
        throw std::invalid_argument("build_grid: antenna " + std::to_string(n) + " has a continuous range");
    return build_grid(box, *k);
}

AntennaLayout::AntennaLayout(ArraySpec spec, std::vector<double> positions)
    : spec_(std::move(spec)), positions_(std::move(positions))
{
    spec_.validate();
    if (positions_.size() != spec_.n_antennas)
        throw std::invalid_argument("AntennaLayout: expected " + std::to_string(spec_.n_antennas) +
                                    " positions, got " + std::to_string(positions_.size()));

    for (std::size_t n = 0; n < positions_.size(); ++n)
    {
        const double x = positions_[n];
        const Box box = compute_bounds(spec_, n);
        if (!std::isfinite(x) || x < box.lower - kPositionTolerance || x > box.upper + kPositionTolerance)
            throw std::invalid_argument("AntennaLayout: position " + std::to_string(n) + " = " + std::to_string(x) +
                                        " outside [" + std::to_string(box.lower) + ", " +
                                        std::to_string(box.upper) + "]");
        if (spec_.grid_sizes[n])
        {
            const auto grid = build_grid(box, *spec_.grid_sizes[n]);
            const bool on_grid = std::any_of(grid.begin(), grid.end(),
                                             [x](double g) { return std::abs(g - x) <= kPositionTolerance; });
            if (!on_grid)
                throw std::invalid_argument("AntennaLayout: position " + std::to_string(n) +
                                            " is not a grid point");
        }
    }
}

double SteeringVector::squared_norm() const
{
    double sum = 0.0;
    for (const auto &e : entries)
        sum += std::norm(e);
    return sum;
}

SteeringVector steering_vector(std::span<const double> positions, double theta, double wavelength)
{
    if (!(wavelength > 0.0))
        throw std::invalid_argument("steering_vector: wavelength must be positive");

    SteeringVector h;
    h.angle = theta;
    h.entries.reserve(positions.size());
    const double k = 2.0 * kPi / wavelength * std::cos(theta);
    for (double x : positions)
        h.entries.push_back(std::polar(1.0, k * x));
    return h;
}

SteeringVector steering_vector(const AntennaLayout &layout, double theta)
{
    return steering_vector(layout.positions(), theta, layout.spec().wavelength);
}

double phase_slope(double theta_b, double theta_w, double wavelength, AngleConvention convention)
{
    const double k = 2.0 * kPi / wavelength;
    if (convention == AngleConvention::Sum)
        return k * (std::cos(theta_b) + std::cos(theta_w));
    return k * (std::cos(theta_b) - std::cos(theta_w));
}

double effective_warden_angle(double theta_w, AngleConvention convention)
{
    return convention == AngleConvention::Sum ? kPi - theta_w : theta_w;
}

double leakage_gain(std::span<const double> positions, double slope)
{
    double t1 = 0.0, t2 = 0.0;
    for (double x : positions)
    {
        t1 += std::sin(slope * x);
        t2 += std::cos(slope * x);
    }
    return t1 * t1 + t2 * t2;
}

double effective_gain_f0(const AntennaLayout &layout, double theta_b, double theta_w, AngleConvention convention)
{
    const auto h_ab = steering_vector(layout, theta_b);
    const auto h_aw = steering_vector(layout, effective_warden_angle(theta_w, convention));

    std::complex<double> inner = 0.0;
    for (std::size_t n = 0; n < h_ab.entries.size(); ++n)
        inner += std::conj(h_aw.entries[n]) * h_ab.entries[n];
    return std::norm(inner);
}

std::vector<double> fpa_positions(const ArraySpec &spec)
{
    std::vector<double> x(spec.n_antennas);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = double(n) * spec.d_min;
    return x;
}

AntennaLayout fpa_layout(const ArraySpec &spec)
{
    ArraySpec fixed = ArraySpec::uniform(spec.n_antennas, 1.0, kContinuous, spec.wavelength, spec.d_min);
    return AntennaLayout(std::move(fixed), fpa_positions(spec));
}

} // namespace macovert
