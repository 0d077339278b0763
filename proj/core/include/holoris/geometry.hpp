// SPDX-License-Identifier: Apache-2.0
//
// holoris - holographic self-controlled RIS simulation library
// Copyright (C) 2026 The holoris authors
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

#include <holoris/grid.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>

namespace holoris
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    constexpr double deg2rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
    constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        Vec3 operator+(const Vec3 &o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
        Vec3 operator-(const Vec3 &o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
        Vec3 operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
        double dot(const Vec3 &o) const noexcept { return x * o.x + y * o.y + z * o.z; }
        double norm() const noexcept { return std::sqrt(dot(*this)); }
        bool operator==(const Vec3 &) const = default;
    };

    // Uniform planar array in the xOz plane, centered at the origin, facing +y.
    // Rows (n_z, pitch d_z) run along z, columns (n_x, pitch d_x) along x.
    class ArrayGeometry
    {
    public:
        // Throws InvalidArgument unless n_z, n_x >= 2 and all lengths/frequencies are positive.
        ArrayGeometry(std::size_t n_z, std::size_t n_x, double d_z_m, double d_x_m, double carrier_hz);

        // 32 x 32 panel, 0.02 m pitch, 3.5 GHz carrier.
        static ArrayGeometry reference_panel();

        std::size_t n_z() const noexcept { return n_z_; }
        std::size_t n_x() const noexcept { return n_x_; }
        double d_z() const noexcept { return d_z_; }
        double d_x() const noexcept { return d_x_; }
        double carrier_hz() const noexcept { return carrier_hz_; }
        double wavelength() const noexcept { return speed_of_light / carrier_hz_; }
        double wavenumber() const noexcept { return two_pi / wavelength(); }

        // Position of element (m, n), both 1-based.
        Vec3 element_position(std::size_t m, std::size_t n) const noexcept;

        bool operator==(const ArrayGeometry &) const = default;

    private:
        std::size_t n_z_;
        std::size_t n_x_;
        double d_z_;
        double d_x_;
        double carrier_hz_;
    };

    // Direction in degrees. theta is elevation, phi azimuth; the front half-space is |theta|, |phi| < 90.
    struct AngularLocation
    {
        double theta_deg = 0.0;
        double phi_deg = 0.0;
        bool operator==(const AngularLocation &) const = default;
    };

    // Phase increments per sample, radians: omega_z per row, omega_x per column.
    struct SpatialFrequencyPair
    {
        double omega_z = 0.0;
        double omega_x = 0.0;
        bool operator==(const SpatialFrequencyPair &) const = default;
    };

    bool in_front_half_space(AngularLocation loc) noexcept;

    // Unit vector pointing from the array center toward a source at `loc`. Consistent with
    // spatial_frequencies: omega = k0 * d * (direction . axis) on each axis.
    Vec3 direction_vector(AngularLocation loc) noexcept;

    Grid<Vec3> element_positions(const ArrayGeometry &geom);

    // omega_x = 2 pi (d_x / lambda) cos(theta) sin(phi), omega_z = -2 pi (d_z / lambda) sin(theta).
    // Throws InvalidArgument outside the front half-space.
    SpatialFrequencyPair spatial_frequencies(AngularLocation loc, const ArrayGeometry &geom);

    // Wavenumber feasibility: (omega_x / (k0 d_x))^2 + (omega_z / (k0 d_z))^2 <= 1.
    bool is_propagating(SpatialFrequencyPair freqs, const ArrayGeometry &geom) noexcept;

    // Inverse of spatial_frequencies. Throws InfeasibleFrequency for evanescent pairs.
    AngularLocation angles_from_frequencies(SpatialFrequencyPair freqs, const ArrayGeometry &geom);

    // Wraps an angle in degrees to [-180, 180).
    double wrap_degrees(double deg) noexcept;

    // Euclidean distance between the wrapped per-axis angle differences, degrees.
    double angular_error_deg(AngularLocation estimate, AngularLocation truth) noexcept;
}
