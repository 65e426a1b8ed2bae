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

#include "nfce/binomial.hpp"

namespace nfce
{
    double binom_general(long long n, int k)
    {
        if (k < 0)
            return 0.0;
        // Exact in double for the small arguments used here; accumulate as
        // c_{i+1} = c_i (n - i) / (i + 1), which stays integral at every step.
        double c = 1.0;
        for (int i = 0; i < k; ++i)
            c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
        return c;
    }

    double binom_real(double x, int k)
    {
        if (k < 0)
            return 0.0;
        double c = 1.0;
        for (int i = 0; i < k; ++i)
            c *= (x - i) / static_cast<double>(i + 1);
        return c;
    }

    double basis_value(const MultiIndex &m, const MultiIndex &n)
    {
        double p = 1.0;
        for (int d = 0; d < kDims; ++d)
            if (m[d] != 0)
                p *= binom_general(n[d], m[d]);
        return p;
    }

} // namespace nfce
