// SPDX-License-Identifier: Apache-2.0
//
// beamforge - beam pattern synthesis for analog/hybrid beamforming arrays
// Copyright (C) 2026 The beamforge authors
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
#include "beamforge/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace beamforge
{
    namespace
    {
        // The FFTW planner is not thread-safe, execution is.
        std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }
    }

    struct fft_engine::impl
    {
        std::size_t n;
        fftw_complex *buf_in = nullptr;
        fftw_complex *buf_out = nullptr;
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;

        explicit impl(std::size_t n_) : n(n_)
        {
            std::lock_guard lock(planner_mutex());
            buf_in = fftw_alloc_complex(n);
            buf_out = fftw_alloc_complex(n);
            fwd = fftw_plan_dft_1d(int(n), buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_1d(int(n), buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
        }

        ~impl()
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
            fftw_free(buf_in);
            fftw_free(buf_out);
        }

        void run(fftw_plan plan, std::span<const cd> in, std::span<cd> out)
        {
            if (in.size() > n || out.size() < n)
                throw invalid_argument("fft_engine: buffer size mismatch");
            auto *dst = reinterpret_cast<cd *>(buf_in);
            std::copy(in.begin(), in.end(), dst);
            std::fill(dst + in.size(), dst + n, cd{});
            fftw_execute(plan);
            const auto *src = reinterpret_cast<const cd *>(buf_out);
            std::copy(src, src + n, out.begin());
        }
    };

    fft_engine::fft_engine(std::size_t n)
    {
        if (n < 1)
            throw invalid_argument("fft_engine: length must be positive");
        impl_ = std::make_unique<impl>(n);
    }

    fft_engine::~fft_engine() = default;
    fft_engine::fft_engine(fft_engine &&) noexcept = default;
    fft_engine &fft_engine::operator=(fft_engine &&) noexcept = default;

    std::size_t fft_engine::size() const { return impl_->n; }

    void fft_engine::forward(std::span<const cd> in, std::span<cd> out) { impl_->run(impl_->fwd, in, out); }
    void fft_engine::backward(std::span<const cd> in, std::span<cd> out) { impl_->run(impl_->bwd, in, out); }
}
