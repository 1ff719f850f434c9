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

// Acceptance gate: eleven end-to-end criteria, one verdict line each.
// Everything numeric is exact ring equality; the only tolerances are the
// wall-clock budgets pinned below.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cymub/certificate.hpp"
#include "gtest/gtest.h"

namespace {

using cymub::BitMatrix;
using cymub::check_conditions;
using cymub::class_members;
using cymub::ConditionReport;
using cymub::corner_search;
using cymub::Cyc8;
using cymub::Cyc8Matrix;
using cymub::enumerate_all;
using cymub::factor_squarefree_irreducible;
using cymub::fib_coeff;
using cymub::fib_poly;
using cymub::fib_scan_invertibility;
using cymub::g_poly;
using cymub::generator;
using cymub::GeneratorMatrix;
using cymub::global_phase;
using cymub::global_phase_trace;
using cymub::known_corner;
using cymub::known_seed;
using cymub::min_poly;
using cymub::PartitionMode;
using cymub::partition_verify;
using cymub::PauliVec;
using cymub::permute_b;
using cymub::phase_vector;
using cymub::Poly2;
using cymub::poly_divides;
using cymub::poly_eval_matrix;
using cymub::ScaledCyc8;
using cymub::ScanReport;
using cymub::SearchResult;
using cymub::spans_disjoint;
using cymub::spectrum_check;
using cymub::unitary_pow;
using cymub::verify_cyclic_mub;

// Wall-clock budgets (seconds). All result comparisons are exact; time is
// the only tolerance in this suite.
constexpr double kSearchPerSizeSeconds = 60.0;       // criterion 1, m = 4..16
constexpr double kLargeSizesTotalSeconds = 1800.0;   // criterion 1, m = 20, 21, 24
constexpr double kEnumerationTotalSeconds = 10.0;    // criterion 2
constexpr double kDenseSweepTopSizeSeconds = 300.0;  // criterion 4, m = 6
constexpr double kTopSizeScanSeconds = 60.0;         // criterion 11, one m = 24 scan

const Cyc8 kOne = Cyc8::one();
const Cyc8 kI = Cyc8::i();

class Stopwatch {
  public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_;
};

void report(int n, const std::string &name) {
    bool failed = ::testing::Test::HasFailure();
    std::cout << "[ACCEPTANCE] criterion " << n << " (" << name
              << "): " << (failed ? "FAIL" : "PASS") << std::endl;
}

Cyc8Matrix matrix_from(size_t dim, int64_t scale, const std::vector<Cyc8> &entries) {
    Cyc8Matrix out(dim, scale);
    out.entries = entries;
    return out;
}

// Smallest k >= 1 with b^k = identity, searched up to limit.
int64_t matrix_order(const BitMatrix &b, int64_t limit) {
    BitMatrix acc = b;
    BitMatrix id = BitMatrix::identity(b.n_rows);
    for (int64_t k = 1; k <= limit; k++) {
        if (acc == id) {
            return k;
        }
        acc = acc * b;
    }
    return -1;
}

uint64_t pauli_key(const PauliVec &p) {
    return (uint64_t(p.z_bits) << 32) | uint64_t(p.x_bits);
}

// --- 1. tabulated corners ---------------------------------------------------

TEST(Acceptance, Criterion01TabulatedCornersAreRediscovered) {
    for (size_t m = 4; m <= 16; m++) {
        Stopwatch sw;
        SearchResult r = corner_search(m, /*max_corner=*/3, /*budget_seconds=*/0.0);
        double elapsed = sw.seconds();
        EXPECT_LT(elapsed, kSearchPerSizeSeconds) << "m=" << m;
        BitMatrix expected = known_corner(m);
        bool found = false;
        for (const auto &hit : r.hits) {
            if (hit.corner.has_value() && hit.corner.value() == expected) {
                found = true;
                EXPECT_TRUE(hit.report.all_ok()) << "m=" << m;
            }
        }
        EXPECT_TRUE(found) << "m=" << m << ": tabulated corner not among the hits";
    }
    Stopwatch large;
    for (size_t m : {size_t{20}, size_t{21}, size_t{24}}) {
        ConditionReport rep = check_conditions(known_seed(m));
        EXPECT_TRUE(rep.all_ok()) << "m=" << m;
    }
    EXPECT_LT(large.seconds(), kLargeSizesTotalSeconds);
    report(1, "tabulated corners rediscovered, large sizes accepted");
}

// --- 2. exhaustive counts ---------------------------------------------------

TEST(Acceptance, Criterion02ExhaustiveCountsAndOrderSplit) {
    Stopwatch sw;
    EXPECT_EQ(enumerate_all(1).size(), 1u);
    EXPECT_EQ(enumerate_all(2).size(), 2u);
    EXPECT_EQ(enumerate_all(3).size(), 6u);
    std::vector<BitMatrix> all4 = enumerate_all(4);
    EXPECT_EQ(all4.size(), 96u);
    // The 96 solutions split 48/48 by their annihilating polynomial, with
    // matrix orders 15 and 5 respectively.
    const Poly2 quartic_a = Poly2::from_coeff_bits(0b10011);  // x^4 + x + 1
    const Poly2 quartic_b = Poly2::from_coeff_bits(0b11111);  // x^4 + .. + 1
    size_t n_a = 0;
    size_t n_b = 0;
    for (const BitMatrix &b : all4) {
        bool a_zero = poly_eval_matrix(quartic_a, b).is_zero();
        bool b_zero = poly_eval_matrix(quartic_b, b).is_zero();
        EXPECT_NE(a_zero, b_zero);  // exactly one family claims each solution
        if (a_zero) {
            n_a++;
            EXPECT_EQ(matrix_order(b, 20), 15);
        }
        if (b_zero) {
            n_b++;
            EXPECT_EQ(matrix_order(b, 20), 5);
        }
    }
    EXPECT_EQ(n_a, 48u);
    EXPECT_EQ(n_b, 48u);
    EXPECT_LT(sw.seconds(), kEnumerationTotalSeconds);
    report(2, "counts 1/2/6/96 with the 48/48 order split");
}

// --- 3. golden matrices -----------------------------------------------------

TEST(Acceptance, Criterion03GoldenMatricesAreReproducedExactly) {
    // Diagonal phase vectors, as powers of i: (1,-i), (1,1,-i,i),
    // (1,1,-i,-i,-i,i,1,-1), and the sixteen-entry list for m = 4.
    EXPECT_EQ(phase_vector(known_seed(1)).exps, (std::vector<uint8_t>{0, 3}));
    EXPECT_EQ(phase_vector(known_seed(2)).exps, (std::vector<uint8_t>{0, 0, 3, 1}));
    EXPECT_EQ(phase_vector(known_seed(3)).exps, (std::vector<uint8_t>{0, 0, 3, 3, 3, 1, 0, 2}));
    EXPECT_EQ(phase_vector(known_seed(4)).exps,
              (std::vector<uint8_t>{0, 3, 0, 3, 3, 2, 1, 0, 3, 0, 1, 2, 0, 1, 0, 1}));

    const Cyc8 w(-1, 0, 1, 0);  // -1 + i
    // m = 1: (-1 + i)/2 * [[1, -i], [1, i]]
    Cyc8Matrix expect1 = matrix_from(2, 2, {w * kOne, w * -kI, w * kOne, w * kI});
    EXPECT_TRUE(build_u(known_seed(1)).value_equals(expect1));

    // m = 2: (1/2) * [[i, i, 1, -1], [i, -i, 1, 1], [i, i, -1, 1], [i, -i, -1, -1]]
    Cyc8Matrix expect2 = matrix_from(4, 2,
                                     {kI, kI, kOne, -kOne,    //
                                      kI, -kI, kOne, kOne,    //
                                      kI, kI, -kOne, kOne,    //
                                      kI, -kI, -kOne, -kOne});
    EXPECT_TRUE(build_u(known_seed(2)).value_equals(expect2));

    // m = 3: numerators of (-1 + i)/4; +-1 entries code +-1, +-i entries +-2.
    const int sgn[8][8] = {
        {1, 1, -2, -2, -2, 2, 1, -1},  {1, -1, -2, 2, -2, -2, 1, 1},
        {1, 1, 2, 2, -2, 2, -1, 1},    {1, -1, 2, -2, -2, -2, -1, -1},
        {1, 1, -2, -2, 2, -2, -1, 1},  {1, -1, -2, 2, 2, 2, -1, -1},
        {1, 1, 2, 2, 2, -2, 1, -1},    {1, -1, 2, -2, 2, 2, 1, 1},
    };
    std::vector<Cyc8> entries;
    for (int i = 0; i < 8; i++) {
        for (int j = 0; j < 8; j++) {
            Cyc8 cell = (sgn[i][j] == 1)    ? kOne
                        : (sgn[i][j] == -1) ? -kOne
                        : (sgn[i][j] == 2)  ? kI
                                            : -kI;
            entries.push_back(w * cell);
        }
    }
    EXPECT_TRUE(build_u(known_seed(3)).value_equals(matrix_from(8, 4, entries)));
    report(3, "displayed matrices and phase lists match entry for entry");
}

// --- 4. the full cycle, exactly ---------------------------------------------

TEST(Acceptance, Criterion04CycleClosesAndAllPowersAreUnbiased) {
    for (size_t m = 1; m <= 6; m++) {
        Stopwatch sw;
        cymub::MubVerdict v = verify_cyclic_mub(build_u(known_seed(m)));
        EXPECT_TRUE(v.unitary_ok) << "m=" << m;
        EXPECT_TRUE(v.unbiased_ok) << "m=" << m;
        EXPECT_TRUE(v.cyclic_ok) << "m=" << m;
        EXPECT_TRUE(v.all_ok()) << "m=" << m;
        if (m == 6) {
            EXPECT_LT(sw.seconds(), kDenseSweepTopSizeSeconds);
        }
    }
    report(4, "every power is unitary and unbiased, the cycle closes");
}

// --- 5. power traces --------------------------------------------------------

TEST(Acceptance, Criterion05EveryPowerTraceIsMinusOne) {
    for (size_t m = 1; m <= 6; m++) {
        cymub::SpectrumVerdict v = spectrum_check(build_u(known_seed(m)));
        EXPECT_TRUE(v.ok) << "m=" << m;
        EXPECT_FALSE(v.first_bad_power.has_value()) << "m=" << m;
    }
    report(5, "trace of every proper power is exactly -1");
}

// --- 6. scalar prefactor, two routes ----------------------------------------

TEST(Acceptance, Criterion06ScalarPrefactorAgreesWithTraceRoute) {
    for (size_t m = 1; m <= 12; m++) {
        ScaledCyc8 closed_form = global_phase(m);
        ScaledCyc8 via_trace = global_phase_trace(phase_vector(known_seed(m)));
        EXPECT_TRUE(closed_form.value_equals(via_trace)) << "m=" << m;
    }
    report(6, "closed-form scalar equals the trace-derived scalar");
}

// --- 7. polynomial family identities -----------------------------------------

TEST(Acceptance, Criterion07PolynomialFamilyIdentitiesHold) {
    // Coefficient formula against the recursion.
    for (int64_t k = 0; k <= 64; k++) {
        Poly2 f = fib_poly(k);
        for (int64_t i = 0; i <= k; i++) {
            EXPECT_EQ(fib_coeff(k, i), f.get(i) ? 1 : 0) << "k=" << k << " i=" << i;
        }
    }
    // Power-of-two collapse and neighbour sum.
    for (int m = 1; m <= 10; m++) {
        int64_t d = int64_t{1} << m;
        EXPECT_EQ(fib_poly(d - 1), Poly2::monomial(d - 1)) << "m=" << m;
        Poly2 neighbour;
        for (int j = 1; j <= m; j++) {
            neighbour.set(d - (int64_t{1} << j), true);
        }
        EXPECT_EQ(fib_poly(d - 2), neighbour) << "m=" << m;
    }
    for (int64_t k = 0; k <= 32; k++) {
        for (int64_t l = 0; l <= 32; l++) {
            // Cross-determinant identity.
            EXPECT_EQ(fib_poly(k) * fib_poly(l - 1) + fib_poly(l) * fib_poly(k - 1),
                      fib_poly(std::max(k, l) - std::min(k, l) - 1));
            // Index addition (generalized recursion).
            EXPECT_EQ(fib_poly(k + l), fib_poly(k) * fib_poly(l) + fib_poly(k - 1) * fib_poly(l - 1));
        }
    }
    // Divisibility along index divisors.
    for (int64_t k = 1; k <= 64; k++) {
        for (int64_t kp = 1; kp <= k; kp++) {
            if (k % kp == 0) {
                EXPECT_TRUE(poly_divides(fib_poly(kp - 1), fib_poly(k - 1))) << kp << "|" << k;
            }
        }
    }
    for (int64_t k = 0; k <= 32; k++) {
        // Odd indices factor through a shifted square.
        EXPECT_EQ(fib_poly(2 * k + 1), fib_poly(k).square().shifted(1)) << "k=" << k;
        // Even indices are the companion family evaluated at x^2.
        Poly2 g = g_poly(k);
        Poly2 spread;
        for (int64_t i = 0; !g.is_zero() && i <= g.degree(); i++) {
            if (g.get(i)) {
                spread.set(2 * i, true);
            }
        }
        EXPECT_EQ(fib_poly(2 * k), spread) << "k=" << k;
    }
    report(7, "family identities: coefficients, collapse, products, divisibility");
}

// --- 8. two routes to invertibility ------------------------------------------

TEST(Acceptance, Criterion08QuotientScanAgreesWithDenseSweep) {
    // Accepted seeds: the scan passes and so does every dense check.
    for (size_t m = 1; m <= 8; m++) {
        BitMatrix b = known_seed(m);
        int64_t k_max = int64_t{1} << (m - 1);
        std::vector<Poly2> factors = factor_squarefree_irreducible(min_poly(b));
        ScanReport scan = fib_scan_invertibility(factors, k_max);
        EXPECT_TRUE(scan.passed) << "m=" << m;
        for (int64_t j = 1; j <= k_max; j++) {
            EXPECT_TRUE(poly_eval_matrix(fib_poly(j), b).invertible()) << "m=" << m << " j=" << j;
        }
    }
    // Rejected seeds: both routes must name the same first failing index.
    for (size_t m = 4; m <= 8; m++) {
        BitMatrix b = BitMatrix::identity(m);  // fails quickly: f(2) = x^2 + 1
        int64_t k_max = int64_t{1} << (m - 1);
        std::vector<Poly2> factors = factor_squarefree_irreducible(min_poly(b));
        ScanReport scan = fib_scan_invertibility(factors, k_max);
        EXPECT_FALSE(scan.passed) << "m=" << m;
        std::optional<int64_t> dense_first;
        for (int64_t j = 1; j <= k_max && !dense_first.has_value(); j++) {
            if (!poly_eval_matrix(fib_poly(j), b).invertible()) {
                dense_first = j;
            }
        }
        ASSERT_TRUE(dense_first.has_value());
        ASSERT_TRUE(scan.first_failing_j.has_value());
        EXPECT_EQ(scan.first_failing_j.value(), dense_first.value()) << "m=" << m;
    }
    // Span disjointness against the polynomial criterion, all pairs.
    for (size_t m = 2; m <= 6; m++) {
        BitMatrix b = known_seed(m);
        int64_t n_bases = (int64_t{1} << m) + 1;
        for (int64_t j = 1; j <= n_bases; j++) {
            for (int64_t k = j + 1; k <= n_bases; k++) {
                bool by_rank = spans_disjoint(generator(j, b), generator(k, b));
                bool by_poly = poly_eval_matrix(fib_poly(k - j - 1), b).invertible();
                EXPECT_EQ(by_rank, by_poly) << "m=" << m << " j=" << j << " k=" << k;
            }
        }
    }
    report(8, "quotient scan, dense sweep and rank tests tell one story");
}

// --- 9. the operator partition ----------------------------------------------

TEST(Acceptance, Criterion09ClassesPartitionTheNonidentityWords) {
    // Independent enumeration for the sizes where it is cheap.
    for (size_t m = 1; m <= 4; m++) {
        BitMatrix b = known_seed(m);
        size_t d = size_t{1} << m;
        std::set<uint64_t> seen;
        size_t total = 0;
        for (int64_t j = 1; j <= int64_t(d) + 1; j++) {
            // The span walk lists all 2^m words with the identity first; the
            // class itself is the d - 1 words after it.
            std::vector<PauliVec> members = class_members(generator(j, b));
            EXPECT_EQ(members.size(), d) << "m=" << m << " j=" << j;
            EXPECT_TRUE(members[0].is_identity()) << "m=" << m << " j=" << j;
            for (size_t a = 1; a < members.size(); a++) {
                EXPECT_NE(pauli_key(members[a]), 0u);
                EXPECT_TRUE(seen.insert(pauli_key(members[a])).second)
                    << "m=" << m << ": word in two classes";
                for (size_t c = a + 1; c < members.size(); c++) {
                    EXPECT_TRUE(commute(members[a], members[c]))
                        << "m=" << m << " j=" << j << ": class is not isotropic";
                }
            }
            total += members.size() - 1;
        }
        EXPECT_EQ(total, d * d - 1) << "m=" << m;
        EXPECT_TRUE(partition_verify(b, PartitionMode::kEnumerate)) << "m=" << m;
    }
    for (size_t m = 5; m <= 6; m++) {
        EXPECT_TRUE(partition_verify(known_seed(m))) << "m=" << m;
    }
    // The two-site classes, as printed label sets.
    BitMatrix b2 = known_seed(2);
    auto labels = [&](int64_t j) {
        std::set<std::string> out;
        for (const PauliVec &p : class_members(generator(j, b2))) {
            if (!p.is_identity()) {
                out.insert(p.label());
            }
        }
        return out;
    };
    EXPECT_EQ(labels(1), (std::set<std::string>{"Z1", "1Z", "ZZ"}));
    EXPECT_EQ(labels(2), (std::set<std::string>{"X1", "1X", "XX"}));
    EXPECT_EQ(labels(3), (std::set<std::string>{"YX", "XZ", "ZY"}));
    EXPECT_EQ(labels(4), (std::set<std::string>{"YY", "Y1", "1Y"}));
    EXPECT_EQ(labels(5), (std::set<std::string>{"YZ", "ZX", "XY"}));
    report(9, "classes are isotropic, disjoint, and cover all nonzero words");
}

// --- 10. relabeling invariance ----------------------------------------------

TEST(Acceptance, Criterion10RelabeledSeedsRemainSolutions) {
    for (size_t m : {size_t{3}, size_t{4}}) {
        std::vector<BitMatrix> all = enumerate_all(m);
        auto in_enumerated = [&](const BitMatrix &b) {
            return std::find(all.begin(), all.end(), b) != all.end();
        };
        std::vector<size_t> sigma(m);
        for (size_t i = 0; i < m; i++) {
            sigma[i] = i;
        }
        BitMatrix base = known_seed(m);
        do {
            BitMatrix moved = permute_b(base, sigma);
            EXPECT_TRUE(check_conditions(moved).all_ok()) << "m=" << m;
            EXPECT_TRUE(in_enumerated(moved)) << "m=" << m;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    report(10, "every relabeling of an accepted seed is again accepted");
}

// --- 11. scan throughput at the top tabulated size ---------------------------

TEST(Acceptance, Criterion11TopSizeScanFitsTheBudget) {
    BitMatrix b = known_seed(24);
    Stopwatch sw;
    ConditionReport rep = check_conditions(b);
    double elapsed = sw.seconds();
    EXPECT_TRUE(rep.all_ok());
    EXPECT_LT(elapsed, kTopSizeScanSeconds);
    std::cout << "[ACCEPTANCE] criterion 11 timing: " << elapsed << " s for the size-24 scan\n";
    report(11, "size-24 acceptance scan finishes inside the budget");
}

}  // namespace
