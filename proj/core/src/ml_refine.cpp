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

#include <holoris/localization.hpp>
#include <holoris/errors.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace holoris
{
    namespace
    {
        // Least-squares misfit of y ~ a + b cos(psi) + c sin(psi), psi = dz * m + dx * n (1-based).
        // Rank-deficient bases (dz, dx both multiples of 2 pi) fall back to the reduced fit.
        class ModelFit
        {
        public:
            explicit ModelFit(const RealGrid &y)
                : y_(y), cz_(y.rows()), sz_(y.rows()), cx_(y.cols()), sx_(y.cols()),
                  cos_(y.size()), sin_(y.size()) {}

            double residual(double dz, double dx)
            {
                for (std::size_t m = 0; m < y_.rows(); ++m)
                {
                    cz_[m] = std::cos(dz * double(m + 1));
                    sz_[m] = std::sin(dz * double(m + 1));
                }
                for (std::size_t n = 0; n < y_.cols(); ++n)
                {
                    cx_[n] = std::cos(dx * double(n + 1));
                    sx_[n] = std::sin(dx * double(n + 1));
                }

                // Normal equations for the basis [1, cos, sin].
                std::array<std::array<double, 4>, 3> a{};
                std::size_t j = 0;
                for (std::size_t m = 0; m < y_.rows(); ++m)
                    for (std::size_t n = 0; n < y_.cols(); ++n, ++j)
                    {
                        const double c = cz_[m] * cx_[n] - sz_[m] * sx_[n];
                        const double s = sz_[m] * cx_[n] + cz_[m] * sx_[n];
                        const double v = y_(m, n);
                        cos_[j] = c;
                        sin_[j] = s;
                        const std::array<double, 3> row{1.0, c, s};
                        for (std::size_t p = 0; p < 3; ++p)
                        {
                            for (std::size_t q = 0; q < 3; ++q)
                                a[p][q] += row[p] * row[q];
                            a[p][3] += row[p] * v;
                        }
                    }

                const auto coef = solve(a);
                double rss = 0.0;
                for (std::size_t i = 0; i < y_.size(); ++i)
                {
                    const double e = y_.data()[i] - (coef[0] + coef[1] * cos_[i] + coef[2] * sin_[i]);
                    rss += e * e;
                }
                return rss;
            }

        private:
            // Gaussian elimination with partial pivoting; columns with a vanishing pivot get coefficient 0.
            static std::array<double, 3> solve(std::array<std::array<double, 4>, 3> a)
            {
                const double scale = a[0][0];
                std::array<bool, 3> active{true, true, true};
                for (std::size_t col = 0, row = 0; col < 3; ++col)
                {
                    std::size_t piv = row;
                    for (std::size_t r = row; r < 3; ++r)
                        if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                            piv = r;
                    if (row >= 3 || std::abs(a[piv][col]) <= 1e-9 * scale)
                    {
                        active[col] = false;
                        continue;
                    }
                    std::swap(a[row], a[piv]);
                    for (std::size_t r = 0; r < 3; ++r)
                        if (r != row)
                        {
                            const double f = a[r][col] / a[row][col];
                            for (std::size_t c = col; c < 4; ++c)
                                a[r][c] -= f * a[row][c];
                        }
                    ++row;
                }
                std::array<double, 3> coef{};
                for (std::size_t col = 0, row = 0; col < 3; ++col)
                {
                    if (!active[col])
                        continue;
                    coef[col] = a[row][3] / a[row][col];
                    ++row;
                }
                return coef;
            }

            const RealGrid &y_;
            std::vector<double> cz_, sz_, cx_, sx_, cos_, sin_;
        };
    }

    AngularLocation ml_refine(const Hologram &holo, AngularLocation bs, AngularLocation coarse,
                              double search_halfwidth_deg, double grid_step_deg)
    {
        if (!(grid_step_deg > 0.0) || !(search_halfwidth_deg >= 0.0))
            throw InvalidArgument("ml_refine: grid_step must be > 0 and search_halfwidth >= 0");
        const auto &geom = holo.geometry;
        const auto bs_freq = spatial_frequencies(bs, geom);
        const auto steps = long(std::floor(search_halfwidth_deg / grid_step_deg + 1e-9));

        ModelFit fit(holo.values);
        double best_rss = std::numeric_limits<double>::infinity();
        AngularLocation best = coarse;
        for (long i = -steps; i <= steps; ++i)
            for (long j = -steps; j <= steps; ++j)
            {
                const AngularLocation cand{coarse.theta_deg + double(i) * grid_step_deg,
                                           coarse.phi_deg + double(j) * grid_step_deg};
                if (!in_front_half_space(cand))
                    continue;
                const auto f = spatial_frequencies(cand, geom);
                const double rss = fit.residual(f.omega_z - bs_freq.omega_z, f.omega_x - bs_freq.omega_x);
                if (rss < best_rss)
                {
                    best_rss = rss;
                    best = cand;
                }
            }
        return best;
    }
}
