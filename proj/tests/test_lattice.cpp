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

#include "catch_amalgamated.hpp"

#include "nfce/binomial.hpp"
#include "nfce/lattice.hpp"

#include "oracles.hpp"

using namespace nfce;

TEST_CASE("lattice indexing is row-major with the last index fastest", "[lattice]")
{
    const Shape s{2, 1, 3, 1, 4};
    CHECK(element_count(s) == 24);
    CHECK(flat_index(s, {0, 0, 0, 0, 1}) == 1);
    CHECK(flat_index(s, {0, 0, 1, 0, 0}) == 4);
    CHECK(flat_index(s, {1, 0, 0, 0, 0}) == 12);

    MultiIndex n{};
    std::size_t i = 0;
    do
    {
        CHECK(flat_index(s, n) == i);
        CHECK(unflatten(s, i) == n);
        ++i;
    } while (next_index(s, n));
    CHECK(i == 24);
}

TEST_CASE("lattice rejects empty extents and mismatched data", "[lattice]")
{
    CHECK_THROWS_AS(element_count({1, 0, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexLattice({2, 1, 1, 1, 1}, std::vector<cdouble>(3)), std::invalid_argument);
    const ComplexLattice a({2, 1, 1, 1, 1}, cdouble(1.0, 2.0));
    CHECK(a.size() == 2);
    CHECK(a[1] == cdouble(1.0, 2.0));
}

TEST_CASE("degree helpers", "[lattice]")
{
    CHECK(total_degree({1, 0, 2, 0, 1}) == 4);
    CHECK(fits_within({1, 0, 2, 0, 0}, {2, 1, 3, 1, 1}));
    CHECK_FALSE(fits_within({0, 0, 3, 0, 0}, {2, 1, 3, 1, 1}));
    CHECK(to_string({1, 0, 2, 0, 1}) == "(1,0,2,0,1)");
}

TEST_CASE("generalized binomial coefficient", "[binomial]")
{
    CHECK(binom_general(5, 2) == 10.0);
    CHECK(binom_general(7, -1) == 0.0);
    CHECK(binom_general(-1, 2) == 1.0);
    CHECK(binom_general(-3, 3) == -10.0);
    CHECK(binom_general(3, 5) == 0.0);
    CHECK(binom_general(0, 0) == 1.0);
    for (int n = 0; n < 25; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(binom_general(n, k) == oracle::choose(n, k));
}

TEST_CASE("real-argument binomial matches the integer one on integers", "[binomial]")
{
    for (int n = -4; n < 10; ++n)
        for (int k = 0; k < 5; ++k)
            CHECK(binom_real(n, k) == Catch::Approx(binom_general(n, k)).margin(1e-12));
    CHECK(binom_real(0.5, 2) == Catch::Approx(0.5 * -0.5 / 2.0));
}

TEST_CASE("basis values are products of binomials", "[binomial]")
{
    CHECK(basis_value({0, 0, 0, 0, 0}, {3, 1, 4, 1, 5}) == 1.0);
    CHECK(basis_value({1, 0, 2, 0, 1}, {3, 0, 4, 0, 1}) == 3.0 * 6.0 * 1.0);
    CHECK(basis_value({0, 0, 2, 0, 0}, {0, 0, 1, 0, 0}) == 0.0);
}
