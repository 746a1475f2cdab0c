// Copyright 2026 The fklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fklab/lattice.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fklab/errors.h"
#include "oracles.h"

using namespace fklab;

TEST(lattice, one_by_two) {
    LatticeGeometry g = build_lattice(1, 2);
    ASSERT_EQ(g.edges.size(), 1u);
    EXPECT_EQ(g.edges[0], Edge(0, 1));
    EXPECT_EQ(g.partition_b, std::vector<uint32_t>{1});
}

TEST(lattice, two_by_two) {
    LatticeGeometry g = build_lattice(2, 2);
    EXPECT_EQ(g.edges.size(), 4u);
    EXPECT_EQ(g.partition_b, (std::vector<uint32_t>{1, 2}));
}

TEST(lattice, five_by_five_counts) {
    LatticeGeometry g = build_lattice(5, 5);
    EXPECT_EQ(g.edges.size(), 40u);
    EXPECT_EQ(g.partition_b.size(), 12u);
}

TEST(lattice, matches_brute_force_enumeration) {
    for (uint32_t r = 1; r <= 8; r++) {
        for (uint32_t c = 1; c <= 8; c++) {
            if (r * c < 2) {
                continue;
            }
            LatticeGeometry g = build_lattice(r, c);
            std::set<Edge> got;
            for (auto [a, b] : g.edges) {
                got.insert({std::min(a, b), std::max(a, b)});
            }
            auto want_v = oracle::brute_edges(r, c);
            std::set<Edge> want(want_v.begin(), want_v.end());
            EXPECT_EQ(got, want) << r << "x" << c;
            EXPECT_EQ(g.edges.size(), size_t{r} * (c - 1) + size_t{c} * (r - 1));
        }
    }
}

TEST(lattice, every_edge_crosses_the_bipartition) {
    for (uint32_t r = 1; r <= 8; r++) {
        for (uint32_t c = 1; c <= 8; c++) {
            if (r * c < 2) {
                continue;
            }
            LatticeGeometry g = build_lattice(r, c);
            for (auto [a, b] : g.edges) {
                EXPECT_NE(g.in_partition_b(a), g.in_partition_b(b));
            }
            for (uint32_t q : g.partition_b) {
                EXPECT_EQ((q / c + q % c) % 2, 1u);
            }
        }
    }
}

TEST(lattice, partition_mask_and_adjacency) {
    LatticeGeometry g = build_lattice(2, 3);
    uint64_t mask = 0;
    for (uint32_t q : g.partition_b) {
        mask |= uint64_t{1} << q;
    }
    EXPECT_EQ(g.partition_b_mask(), mask);
    auto adj = g.adjacency();
    ASSERT_EQ(adj.size(), 6u);
    EXPECT_EQ(adj[4].size(), 3u);
    EXPECT_EQ(adj[0].size(), 2u);
}

TEST(lattice, rejects_bad_dimensions) {
    EXPECT_THROW(build_lattice(0, 3), DimensionError);
    EXPECT_THROW(build_lattice(3, 0), DimensionError);
    EXPECT_THROW(build_lattice(1, 1), DimensionError);
}

TEST(lattice, random_input_is_reproducible) {
    RandomStream a(99, "input");
    RandomStream b(99, "input");
    InputSpec x = random_input(4, a);
    InputSpec y = random_input(4, b);
    EXPECT_EQ(x.size(), 4u);
    EXPECT_EQ(x, y);
}

TEST(lattice, random_input_is_balanced) {
    RandomStream r(5, "input");
    InputSpec s = random_input(10000, r);
    double frac = static_cast<double>(std::count(s.choices.begin(), s.choices.end(), InputType::X_TYPE)) / 1e4;
    EXPECT_GE(frac, 0.47);
    EXPECT_LE(frac, 0.53);
}

TEST(lattice, random_input_single_qubit) {
    RandomStream r(1);
    EXPECT_EQ(random_input(1, r).size(), 1u);
}

TEST(lattice, input_string_round_trip) {
    InputSpec s = input_from_string("XYYX");
    EXPECT_EQ(to_string(s), "XYYX");
    EXPECT_EQ(s.choices[1], InputType::Y_TYPE);
    EXPECT_THROW(input_from_string("XQ"), ValidationError);
}

TEST(lattice, check_sizes) {
    EXPECT_NO_THROW(check_sizes(build_lattice(1, 2), input_from_string("XY")));
    EXPECT_THROW(check_sizes(build_lattice(1, 2), input_from_string("XYX")), DimensionError);
}
