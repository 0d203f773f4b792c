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

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace macovert
{

inline constexpr double kPi = std::numbers::pi;

// Number of selectable positions for one antenna. An empty value means the
// antenna may sit anywhere inside its box.
using GridSize = std::optional<std::size_t>;
inline constexpr GridSize kContinuous = std::nullopt;

struct Box
{
    double lower = 0.0; // F_n
    double upper = 0.0; // G_n
};

/*!
Linear movable-antenna array.

The array occupies [0, L] with L = l0 * (N - 1) * d_min. Each antenna owns a
box of identical width (L - (N - 1) d_min) / N, and neighbouring boxes are
separated by exactly d_min, so any per-box choice of positions keeps the
adjacent spacing at or above d_min.

Lengths are in the same unit as the wavelength (wavelength = 1 by default,
so d_min = 0.5 is the half-wavelength spacing).
*/
struct ArraySpec
{
    std::size_t n_antennas = 1;
    double wavelength = 1.0;
    double d_min = 0.5;
    double l0 = 1.0;                   // movable scale factor, >= 1
    std::vector<GridSize> grid_sizes;  // one entry per antenna

    // Same grid for every antenna.
    static ArraySpec uniform(std::size_t n_antennas, double l0, GridSize grid = kContinuous,
                             double wavelength = 1.0, double d_min = 0.5);

    // Throws std::invalid_argument on any violated constraint.
    void validate() const;

    double total_range() const; // L
    double box_width() const;   // G_n - F_n, identical for all n
    bool all_grids_finite() const;

    bool operator==(const ArraySpec &) const = default;
};

// Box of antenna n (0-based). Throws std::out_of_range for n >= N.
Box compute_bounds(const ArraySpec &spec, std::size_t n);
std::vector<Box> compute_all_bounds(const ArraySpec &spec);

// Equally spaced, endpoint-inclusive points on [box.lower, box.upper].
// count == 1 yields {box.lower}; count == 0 throws std::invalid_argument.
std::vector<double> build_grid(Box box, std::size_t count);

// Candidate positions of antenna n. Throws std::invalid_argument when the
// antenna is continuous.
std::vector<double> build_grid(const ArraySpec &spec, std::size_t n);

// Antenna positions validated against an ArraySpec: every x_n lies in its box
// and, for finite grids, on a grid point (absolute tolerance 1e-9).
class AntennaLayout
{
public:
    AntennaLayout(ArraySpec spec, std::vector<double> positions);

    const ArraySpec &spec() const { return spec_; }
    const std::vector<double> &positions() const { return positions_; }
    std::size_t size() const { return positions_.size(); }
    double operator[](std::size_t n) const { return positions_[n]; }

private:
    ArraySpec spec_;
    std::vector<double> positions_;
};

struct SteeringVector
{
    std::vector<std::complex<double>> entries;
    double angle = 0.0;

    double squared_norm() const;
};

// entry_n = exp(j 2pi/lambda x_n cos(theta))
SteeringVector steering_vector(std::span<const double> positions, double theta, double wavelength);
SteeringVector steering_vector(const AntennaLayout &layout, double theta);

// How the warden angle enters the phase slope A of the leakage objective.
//   Difference: A = 2pi/lambda (cos theta_b - cos theta_w), obtained by conjugating the
//               warden steering vector.
//   Sum:        A = 2pi/lambda (cos theta_b + cos theta_w), equivalent to mirroring the
//               warden to pi - theta_w.
enum class AngleConvention
{
    Difference,
    Sum
};

double phase_slope(double theta_b, double theta_w, double wavelength,
                   AngleConvention convention = AngleConvention::Difference);

// Warden angle that realises the given convention through plain steering vectors.
double effective_warden_angle(double theta_w, AngleConvention convention);

// |sum_n exp(j A x_n)|^2 = T1^2 + T2^2, with T1 = sum sin(A x_n), T2 = sum cos(A x_n).
double leakage_gain(std::span<const double> positions, double slope);

// f0(x) = |h_aw^H h_ab|^2 evaluated through the steering vectors themselves.
double effective_gain_f0(const AntennaLayout &layout, double theta_b, double theta_w,
                         AngleConvention convention = AngleConvention::Difference);

// Uniform fixed-position array x_n = n d_min (0-based n). Only antenna 0 is
// guaranteed to sit inside its movable box; for l0 > 1 the others fall below F_n.
std::vector<double> fpa_positions(const ArraySpec &spec);

// The fixed array as a layout of its own spec: same N, wavelength and d_min,
// with l0 = 1 (point boxes) and continuous grids.
AntennaLayout fpa_layout(const ArraySpec &spec);

} // namespace macovert
