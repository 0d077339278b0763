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

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace holoris
{
    namespace
    {
        // FFTW planning is not thread-safe; execution with the new-array interface is.
        class PlanCache
        {
        public:
            ~PlanCache()
            {
                for (auto &[dims, plan] : plans_)
                    fftw_destroy_plan(plan);
            }

            fftw_plan get(std::size_t rows, std::size_t cols)
            {
                std::lock_guard lock(mutex_);
                auto it = plans_.find({rows, cols});
                if (it != plans_.end())
                    return it->second;
                auto *scratch = fftw_alloc_complex(rows * cols);
                fftw_plan plan = fftw_plan_dft_2d(int(rows), int(cols), scratch, scratch, FFTW_FORWARD,
                                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
                fftw_free(scratch);
                if (!plan)
                    throw Error("fft2: FFTW planning failed");
                plans_.emplace(std::pair{rows, cols}, plan);
                return plan;
            }

        private:
            std::mutex mutex_;
            std::map<std::pair<std::size_t, std::size_t>, fftw_plan> plans_;
        };

        PlanCache &plan_cache()
        {
            static PlanCache cache;
            return cache;
        }
    }

    Spectrum fft2(const RealGrid &intensity, std::size_t zero_pad_factor)
    {
        if (intensity.rows() < 2 || intensity.cols() < 2)
            throw InvalidArgument("fft2: hologram must be at least 2 x 2");
        if (zero_pad_factor < 1)
            throw InvalidArgument("fft2: zero_pad_factor must be >= 1");

        const std::size_t rows = intensity.rows() * zero_pad_factor;
        const std::size_t cols = intensity.cols() * zero_pad_factor;
        Spectrum out{ComplexGrid(rows, cols), zero_pad_factor};
        for (std::size_t m = 0; m < intensity.rows(); ++m)
            for (std::size_t n = 0; n < intensity.cols(); ++n)
                out.values(m, n) = intensity(m, n);

        auto *buf = reinterpret_cast<fftw_complex *>(out.values.data());
        fftw_execute_dft(plan_cache().get(rows, cols), buf, buf);
        return out;
    }
}
