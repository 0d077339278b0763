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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace holoris
{
    // Dense row-major matrix. Rows run along z (index m), columns along x (index n).
    template <typename T>
    class Grid
    {
    public:
        Grid() = default;
        Grid(std::size_t rows, std::size_t cols, T fill = T{})
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }

        T &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
        const T &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

        T &at(std::size_t r, std::size_t c)
        {
            if (r >= rows_ || c >= cols_)
                throw std::out_of_range("Grid index out of range");
            return (*this)(r, c);
        }
        const T &at(std::size_t r, std::size_t c) const
        {
            if (r >= rows_ || c >= cols_)
                throw std::out_of_range("Grid index out of range");
            return (*this)(r, c);
        }

        T *data() noexcept { return data_.data(); }
        const T *data() const noexcept { return data_.data(); }
        std::span<T> values() noexcept { return data_; }
        std::span<const T> values() const noexcept { return data_; }

        auto begin() noexcept { return data_.begin(); }
        auto end() noexcept { return data_.end(); }
        auto begin() const noexcept { return data_.begin(); }
        auto end() const noexcept { return data_.end(); }

        bool operator==(const Grid &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
    };

    using RealGrid = Grid<double>;
    using ComplexGrid = Grid<std::complex<double>>;
}
