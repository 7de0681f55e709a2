// include/dirseg/bessel.hpp

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

// Logarithm of the modified Bessel function of the first kind, I_nu(x), for
// orders up to a few thousand and arguments up to ~1e6, without overflow.
//
// Two evaluation routes:
//  * the ascending power series, used while x <= 2 sqrt(nu + 1);
//  * the uniform asymptotic (Debye) expansion in nu, used beyond that. For
//    orders below kDebyeMinOrder the expansion is taken at nu + m >= kDebyeMinOrder
//    and brought back down with the (stable) downward ratio recurrence
//    I_{k-1}/I_k = 2k/x + I_{k+1}/I_k.

namespace dirseg::bessel {

inline constexpr double kDebyeMinOrder = 50.0;

double log_i(double nu, double x);

// log(I_nu(x) / (x/2)^nu); finite at x = 0 where it equals -lgamma(nu + 1).
double log_i_scaled(double nu, double x);

// I_{nu+1}(x) / I_nu(x).
double ratio(double nu, double x);

// The two routes, exposed so tests can compare them across the crossover.
double log_i_series(double nu, double x);
double log_i_asymptotic(double nu, double x);

double series_crossover(double nu);

}  // namespace dirseg::bessel
