// Copyright 2026 The cymub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cymub/pauli.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"

namespace cymub {
namespace {

BitMatrix random_symmetric(std::mt19937_64 &rng, size_t m) {
    BitMatrix b(m, m);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = i; j < m; j++) {
            bool v = rng() & 1;
            b.set(i, j, v);
            b.set(j, i, v);
        }
    }
    return b;
}

std::set<std::string> class_labels(const BitMatrix &b, int64_t j) {
    std::set<std::string> out;
    for (const PauliVec &p : class_members(generator(j, b))) {
        if (!p.is_identity()) {
            out.insert(p.label());
        }
    }
    return out;
}

TEST(PauliVec, LabelsAndValidation) {
    EXPECT_EQ(PauliVec(2, 0b01, 0b00).label(), "X1");
    EXPECT_EQ(PauliVec(2, 0b00, 0b01).label(), "Z1");
    EXPECT_EQ(PauliVec(2, 0b00, 0b10).label(), "1Z");
    EXPECT_EQ(PauliVec(2, 0b11, 0b11).label(), "YY");
    EXPECT_EQ(PauliVec(3, 0b101, 0b011).label(), "YZX");
    EXPECT_TRUE(PauliVec(4, 0, 0).is_identity());
    EXPECT_THROW(PauliVec(2, 0b100, 0), ArgumentError);
    EXPECT_THROW(PauliVec(65, 0, 0), ArgumentError);
    EXPECT_EQ(PauliVec::from_row_bits(2, 0b0111), PauliVec(2, 0b11, 0b01));
    EXPECT_THROW(PauliVec::from_row_bits(0, 0), ArgumentError);
    EXPECT_THROW(PauliVec::from_row_bits(33, 0), ArgumentError);
}

TEST(SymplInner, KnownPairs) {
    PauliVec x1(2, 0b01, 0b00);
    PauliVec z1(2, 0b00, 0b01);
    PauliVec oz(2, 0b00, 0b10);
    PauliVec xx(2, 0b11, 0b00);
    PauliVec zz(2, 0b00, 0b11);
    EXPECT_EQ(sympl_inner(x1, z1), 1);  // same site, X against Z
    EXPECT_EQ(sympl_inner(x1, oz), 0);  // different sites
    EXPECT_EQ(sympl_inner(xx, zz), 0);  // two anticommuting sites cancel
    EXPECT_FALSE(commute(x1, z1));
    EXPECT_TRUE(commute(xx, zz));
    EXPECT_THROW(sympl_inner(x1, PauliVec(3, 0, 0)), ShapeError);
}

TEST(SymplInner, BilinearAlternatingSymmetric) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; t++) {
        size_t m = 1 + rng() % 12;
        uint64_t mask = (uint64_t{1} << m) - 1;
        PauliVec a(m, rng() & mask, rng() & mask);
        PauliVec b(m, rng() & mask, rng() & mask);
        PauliVec c(m, rng() & mask, rng() & mask);
        EXPECT_EQ(sympl_inner(a, a), 0);
        EXPECT_EQ(sympl_inner(a, b), sympl_inner(b, a));
        EXPECT_EQ(sympl_inner(a + b, c), (sympl_inner(a, c) + sympl_inner(b, c)) & 1);
    }
}

TEST(ClassMembers, SpanSizeAndClosure) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 10; t++) {
        size_t m = 1 + rng() % 5;
        BitMatrix b = random_symmetric(rng, m);
        GeneratorMatrix g = generator(1 + int64_t(rng() % 9), b);
        std::vector<PauliVec> members = class_members(g);
        ASSERT_EQ(members.size(), size_t{1} << m);
        EXPECT_TRUE(members[0].is_identity());
        // Spot-check the subset indexing: member c is the XOR of picked rows.
        for (uint64_t c = 0; c < members.size(); c++) {
            PauliVec expect(m, 0, 0);
            for (size_t r = 0; r < m; r++) {
                if ((c >> r) & 1) {
                    expect = expect + PauliVec::from_row_bits(m, g.mat.row_bits(r));
                }
            }
            ASSERT_EQ(members[c], expect);
        }
        // Everyone inside one class commutes.
        for (size_t i = 0; i < members.size(); i += 3) {
            for (size_t j = i; j < members.size(); j += 5) {
                EXPECT_TRUE(commute(members[i], members[j]));
            }
        }
    }
}

TEST(ClassMembers, BudgetGuard) {
    GeneratorMatrix g{13, 1, hstack(BitMatrix::zeros(13, 13), BitMatrix::identity(13))};
    EXPECT_THROW(class_members(g), BudgetError);
    EXPECT_EQ(class_members(g, true).size(), size_t{1} << 13);
}

TEST(Partition, TwoSiteTableIsReproduced) {
    // d = 4: the five commuting classes of the two-site Pauli words.
    BitMatrix b = BitMatrix::from_rows({"11", "10"});
    EXPECT_EQ(class_labels(b, 1), (std::set<std::string>{"Z1", "1Z", "ZZ"}));
    EXPECT_EQ(class_labels(b, 2), (std::set<std::string>{"X1", "1X", "XX"}));
    EXPECT_EQ(class_labels(b, 3), (std::set<std::string>{"YX", "XZ", "ZY"}));
    EXPECT_EQ(class_labels(b, 4), (std::set<std::string>{"YY", "Y1", "1Y"}));
    EXPECT_EQ(class_labels(b, 5), (std::set<std::string>{"YZ", "ZX", "XY"}));
}

TEST(Partition, GoodSeedsPartitionBadSeedsDoNot) {
    std::vector<BitMatrix> good = {
        BitMatrix::from_rows({"1"}),
        BitMatrix::from_rows({"11", "10"}),
        BitMatrix::from_rows({"111", "110", "100"}),
        BitMatrix::from_rows({"1111", "1110", "1100", "1001"}),
    };
    for (const BitMatrix &b : good) {
        EXPECT_TRUE(partition_verify(b)) << "m=" << b.n_rows;
        EXPECT_TRUE(partition_verify(b, PartitionMode::kPolynomial)) << "m=" << b.n_rows;
    }
    EXPECT_FALSE(partition_verify(BitMatrix::zeros(2, 2)));
    EXPECT_FALSE(partition_verify(BitMatrix::zeros(3, 3)));
    EXPECT_FALSE(partition_verify(BitMatrix::identity(2)));
    EXPECT_FALSE(partition_verify(BitMatrix::from_rows({"01", "00"})));  // not symmetric
}

TEST(Partition, EnumerationAndPolynomialModesAgree) {
    std::mt19937_64 rng(43);
    int positives = 0;
    for (int t = 0; t < 60; t++) {
        size_t m = 1 + rng() % 8;
        BitMatrix b = random_symmetric(rng, m);
        bool enumerated = partition_verify(b, PartitionMode::kEnumerate);
        bool polynomial = partition_verify(b, PartitionMode::kPolynomial);
        ASSERT_EQ(enumerated, polynomial) << "m=" << m << " trial=" << t;
        positives += enumerated;
    }
    EXPECT_GT(positives, 0);
}

TEST(Partition, Guards) {
    EXPECT_THROW(partition_verify(BitMatrix(2, 3)), ShapeError);
    EXPECT_THROW(partition_verify(BitMatrix::zeros(15, 15), PartitionMode::kEnumerate), BudgetError);
    EXPECT_THROW(partition_verify(BitMatrix::zeros(29, 29), PartitionMode::kPolynomial), BudgetError);
}

}  // namespace
}  // namespace cymub
