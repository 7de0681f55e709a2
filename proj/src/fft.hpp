// src/fft.hpp

// Copyright 2026  The dirseg authors

// See ../COPYING for clarification regarding multiple authors
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

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <mutex>
#include <span>

namespace dirseg::detail {

// Real-to-complex FFT of fixed size. The plan is shared; each thread brings
// its own Workspace and runs it through fftw's new-array execute, which is
// thread safe. Planning itself is not, hence the mutex.
class RealFft {
 public:
  class Workspace {
   public:
    explicit Workspace(std::size_t n)
        : n_(n),
          in_(static_cast<double *>(fftw_malloc(sizeof(double) * n))),
          out_(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {}
    ~Workspace() {
      fftw_free(in_);
      fftw_free(out_);
    }
    Workspace(const Workspace &) = delete;
    Workspace &operator=(const Workspace &) = delete;

    std::span<double> input() { return {in_, n_}; }
    std::size_t bins() const { return n_ / 2 + 1; }
    double magnitude(std::size_t k) const;

   private:
    friend class RealFft;
    std::size_t n_;
    double *in_;
    fftw_complex *out_;
  };

  explicit RealFft(std::size_t n) : n_(n) {
    Workspace probe(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), probe.in_, probe.out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  std::size_t size() const { return n_; }
  void execute(Workspace &ws) const { fftw_execute_dft_r2c(plan_, ws.in_, ws.out_); }

 private:
  static std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
  }
  std::size_t n_;
  fftw_plan plan_;
};

inline double RealFft::Workspace::magnitude(std::size_t k) const {
  const double re = out_[k][0];
  const double im = out_[k][1];
  return std::sqrt(re * re + im * im);
}

}  // namespace dirseg::detail
