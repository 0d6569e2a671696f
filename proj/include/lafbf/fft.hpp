/*
   Copyright 2026 The lafbf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <complex>
#include <span>

namespace lafbf {

/// In-place unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i jk/n).
///
/// Plans are created with FFTW_ESTIMATE and cached per length, so repeated
/// transforms of the same length give bit-identical results. Safe to call
/// from several threads.
void fft_forward(std::span<std::complex<double>> data);

}  // namespace lafbf
