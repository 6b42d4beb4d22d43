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
#ifndef BEAMFORGE_FFT_HPP
#define BEAMFORGE_FFT_HPP

#include "beamforge/types.hpp"

#include <cstddef>
#include <memory>
#include <span>

namespace beamforge
{
    // Unnormalized complex DFT of fixed length, backed by FFTW.
    //   forward:  X[k] = sum_n x[n] exp(-j 2 pi n k / N)
    //   backward: x[n] = sum_k X[k] exp(+j 2 pi n k / N)
    // Inputs shorter than N are zero-padded. Not safe for concurrent use of one
    // instance; create one per thread.
    class fft_engine
    {
    public:
        explicit fft_engine(std::size_t n);
        ~fft_engine();
        fft_engine(fft_engine &&) noexcept;
        fft_engine &operator=(fft_engine &&) noexcept;
        fft_engine(const fft_engine &) = delete;
        fft_engine &operator=(const fft_engine &) = delete;

        std::size_t size() const;

        void forward(std::span<const cd> in, std::span<cd> out);
        void backward(std::span<const cd> in, std::span<cd> out);

    private:
        struct impl;
        std::unique_ptr<impl> impl_;
    };
}

#endif
