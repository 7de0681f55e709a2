# tests/oracles/bessel_oracle.py

# Copyright 2026  The dirseg authors

# See ../../COPYING for clarification regarding multiple authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http:#www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

# Offline oracle for log C_p(kappa), the vMF normalizing constant, using
# mpmath at 60 digits. Output is frozen into tests/test_bessel.cpp.
import mpmath as mp

mp.mp.dps = 60


def log_norm_const(dim, kappa):
    nu = mp.mpf(dim) / 2 - 1
    k = mp.mpf(kappa)
    return nu * mp.log(k) - (mp.mpf(dim) / 2) * mp.log(2 * mp.pi) - mp.log(mp.besseli(nu, k))


for dim in (256, 1024, 2565):
    for kappa in (1, 10, 100, 1000, 10000):
        print(f"    {{{dim}, {kappa}.0, {mp.nstr(log_norm_const(dim, kappa), 20)}}},")
print(f"    {{2565, 500.0, {mp.nstr(log_norm_const(2565, 500), 20)}}},")
for dim in (2, 10, 16, 50):
    for kappa in (0.5, 5, 50, 500, 50000):
        print(f"    {{{dim}, {kappa}, {mp.nstr(log_norm_const(dim, kappa), 20)}}},")
