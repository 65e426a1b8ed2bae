// SPDX-License-Identifier: Apache-2.0
//
// nfce: near-field line-of-sight channel synthesis and wavefront estimation
// Copyright (C) 2026 The nfce authors
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

#ifndef NFCE_BINOMIAL_HPP
#define NFCE_BINOMIAL_HPP

#include "nfce/lattice.hpp"

namespace nfce
{
    // Generalized binomial coefficient for integer n of either sign:
    // n(n-1)...(n-k+1)/k! for k >= 0, and 0 for k < 0.
    double binom_general(long long n, int k);

    // Same falling-factorial formula for a real upper argument
    double binom_real(double x, int k);

    // Product of per-dimension binomials, C(n, m) = prod_d C(n_d, m_d).
    // This is the polynomial phase basis p_m(n): its m-th forward difference is 1
    // and it takes integer values on the lattice.
    double basis_value(const MultiIndex &m, const MultiIndex &n);

} // namespace nfce

#endif
