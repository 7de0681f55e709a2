// include/dirseg/kernels.hpp

// Copyright 2026  The dirseg authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops shared by the pipeline stages.
//
// Each kernel exists twice with the same signature. `serial` is the reference
// implementation; `parallel` spreads independent columns over OpenMP threads.
// Every output element is written by one thread using the serial loop order,
// so both versions are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dirseg/matrix.hpp"

namespace dirseg::kernels {

namespace serial {

// Magnitude STFT. Column k is |rfft(window .* samples[k*hop ...])| with the
// frame zero-padded to fft_size. `out` must be (fft_size/2 + 1) x n_frames.
void stft_magnitudes(std::span<const double> samples, std::span<const double> window,
                     std::size_t hop, std::size_t fft_size, Matrix &out);

// Stack w neighbouring columns, centre aligned, edges replicated.
Matrix stack_context(const Matrix &frames, std::size_t w);

// Scale columns to unit norm. Columns with norm <= eps are zeroed, flag 0.
std::vector<std::uint8_t> normalize_columns(Matrix &m, double eps);

// a^T b for a (d x m) and b (d x n).
Matrix gram(const Matrix &a, const Matrix &b);

// out(:, z) = sum_i weights(i, z) * x(:, i)
Matrix weighted_column_sums(const Matrix &x, const Matrix &weights);

// Posteriors from dots (Z x N) with log p_iz = log_prior[z] + kappa[z] * dots(z, i).
// Fills gamma (N x Z) and the per-point log mixture density.
void vmf_posteriors(const Matrix &dots, std::span<const double> log_prior,
                    std::span<const double> kappa, Matrix &gamma,
                    std::span<double> point_loglik);

// (gamma <x_i, x_j> + coef0)^degree over the columns of x.
Matrix poly_kernel_matrix(const Matrix &x, double gamma, double coef0, int degree);

// sum_i coef[i] * K(support_i, x_j) + bias for every column j of x.
std::vector<double> poly_decision_values(const Matrix &support,
                                         std::span<const double> coef, double bias,
                                         const Matrix &x, double gamma, double coef0,
                                         int degree);

}  // namespace serial

namespace parallel {

// Magnitude STFT. Column k is |rfft(window .* samples[k*hop ...])| with the
// frame zero-padded to fft_size. `out` must be (fft_size/2 + 1) x n_frames.
void stft_magnitudes(std::span<const double> samples, std::span<const double> window,
                     std::size_t hop, std::size_t fft_size, Matrix &out);

// Stack w neighbouring columns, centre aligned, edges replicated.
Matrix stack_context(const Matrix &frames, std::size_t w);

// Scale columns to unit norm. Columns with norm <= eps are zeroed, flag 0.
std::vector<std::uint8_t> normalize_columns(Matrix &m, double eps);

// a^T b for a (d x m) and b (d x n).
Matrix gram(const Matrix &a, const Matrix &b);

// out(:, z) = sum_i weights(i, z) * x(:, i)
Matrix weighted_column_sums(const Matrix &x, const Matrix &weights);

// Posteriors from dots (Z x N) with log p_iz = log_prior[z] + kappa[z] * dots(z, i).
// Fills gamma (N x Z) and the per-point log mixture density.
void vmf_posteriors(const Matrix &dots, std::span<const double> log_prior,
                    std::span<const double> kappa, Matrix &gamma,
                    std::span<double> point_loglik);

// (gamma <x_i, x_j> + coef0)^degree over the columns of x.
Matrix poly_kernel_matrix(const Matrix &x, double gamma, double coef0, int degree);

// sum_i coef[i] * K(support_i, x_j) + bias for every column j of x.
std::vector<double> poly_decision_values(const Matrix &support,
                                         std::span<const double> coef, double bias,
                                         const Matrix &x, double gamma, double coef0,
                                         int degree);

}  // namespace parallel

int max_threads();
void set_threads(int n);

}  // namespace dirseg::kernels
