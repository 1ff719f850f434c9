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

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/errors.hpp"
#include "cymub/poly2.hpp"

namespace cymub {

// The bilinear form [[0, I], [I, 0]] on F2^(2m).
inline BitMatrix symplectic_form(size_t m) {
    BitMatrix z = BitMatrix::zeros(m, m);
    BitMatrix id = BitMatrix::identity(m);
    return block2x2(z, id, id, z);
}

// True when c^T J c = J, i.e. c preserves the form above.
inline bool is_symplectic(const BitMatrix &c) {
    if (!c.is_square() || (c.n_rows & 1)) {
        return false;
    }
    BitMatrix j = symplectic_form(c.n_rows / 2);
    return c.transposed() * j * c == j;
}

// Embeds a symmetric seed B into the block companion [[B, I], [I, 0]].
// Symmetry of B makes the result symplectic; that is re-verified, not assumed.
inline BitMatrix embed_c(const BitMatrix &b) {
    if (!b.is_square()) {
        throw ShapeError("embed_c: seed matrix not square");
    }
    if (!b.is_symmetric()) {
        throw ValidationError("embed_c: seed matrix must be symmetric");
    }
    size_t m = b.n_rows;
    BitMatrix c = block2x2(b, BitMatrix::identity(m), BitMatrix::identity(m), BitMatrix::zeros(m, m));
    if (!is_symplectic(c)) {
        throw InternalError("embed_c: companion embedding is not symplectic");
    }
    return c;
}

// Row space generator of the j-th class: the m x 2m matrix (f(j-2)(B) | f(j-3)(B)).
// Consecutive family members are coprime, so these always have full row rank.
struct GeneratorMatrix {
    size_t m = 0;
    int64_t j = 0;
    BitMatrix mat;  // m rows, 2m columns
};

inline GeneratorMatrix generator(int64_t j, const BitMatrix &b) {
    if (!b.is_square() || b.n_rows == 0) {
        throw ShapeError("generator: seed matrix must be square and nonempty");
    }
    if (!b.is_symmetric()) {
        throw ValidationError("generator: seed matrix must be symmetric");
    }
    if (j < 1) {
        throw ArgumentError("generator: class index starts at 1");
    }
    size_t m = b.n_rows;
    BitMatrix left(m, m), right(m, m);
    if (j == 1) {
        left = BitMatrix::zeros(m, m);      // f(-1)
        right = BitMatrix::identity(m);     // f(-2)
    } else {
        // Reduce the indices against the minimal polynomial before evaluating,
        // which keeps arbitrarily large j cheap.
        Poly2 mu = min_poly(b);
        QuotientPair qp = fib_pair_at(j - 2, mu);
        left = poly_eval_matrix(qp.hi, b);   // f(j-2)(B)
        right = poly_eval_matrix(qp.lo, b);  // f(j-3)(B)
    }
    GeneratorMatrix g{m, j, hstack(left, right)};
    if (g.mat.rank() != m) {
        throw InternalError("generator: row rank collapsed, which coprimality forbids");
    }
    return g;
}

// Two rank-m row spaces in F2^(2m) intersect trivially exactly when their
// stack has full rank 2m.
inline bool spans_disjoint(const GeneratorMatrix &a, const GeneratorMatrix &b) {
    if (a.m != b.m) {
        throw ShapeError("spans_disjoint: mixed dimensions");
    }
    return vstack(a.mat, b.mat).rank() == 2 * a.m;
}

// Verifies the companion of B has multiplicative order dividing 2^m + 1 by
// square-and-multiply; with the invertibility and closure conditions this
// pins the full cyclic orbit length.
inline bool order_check(const BitMatrix &b) {
    BitMatrix c = embed_c(b);
    size_t m = b.n_rows;
    BitMatrix s = c;
    for (size_t i = 0; i < m; i++) {
        s = s * s;  // C^(2^m)
    }
    return s * c == BitMatrix::identity(2 * m);
}

// Aggregate verdict on a candidate seed matrix. first_failing_j is set when
// some f(j)(B) with 1 <= j <= 2^(m-1) fails to be invertible.
struct ConditionReport {
    size_t m = 0;
    bool symmetric_ok = false;
    bool symplectic_ok = false;
    bool invertibility_ok = false;  // f(j)(B) invertible for 1 <= j <= 2^(m-1)
    std::optional<int64_t> first_failing_j;
    bool closure_ok = false;  // f(2^(m-1))(B) == f(2^(m-1) - 1)(B)
    bool order_ok = false;    // companion of B has order dividing 2^m + 1

    bool all_ok() const {
        return symmetric_ok && symplectic_ok && invertibility_ok && closure_ok && order_ok;
    }
};

// Full screen of one seed candidate. Polynomial conditions are evaluated in
// the quotient ring by the minimal polynomial; for m <= 8 the invertibility
// verdict is re-derived densely and the implied order identity is confirmed,
// so the cheap route is cross-checked rather than trusted.
inline ConditionReport check_conditions(const BitMatrix &b) {
    if (!b.is_square() || b.n_rows == 0) {
        throw ShapeError("check_conditions: candidate must be square and nonempty");
    }
    size_t m = b.n_rows;
    if (m > 28) {
        throw BudgetError("check_conditions: scan bound 2^(m-1) is capped at m <= 28");
    }
    ConditionReport rep;
    rep.m = m;
    rep.symmetric_ok = b.is_symmetric();
    rep.symplectic_ok = rep.symmetric_ok && is_symplectic(embed_c(b));

    int64_t k_max = int64_t{1} << (m - 1);
    Poly2 mu = min_poly(b);
    std::vector<Poly2> factors = factor_squarefree_irreducible(mu);
    ScanReport scan = fib_scan_invertibility(factors, k_max);
    rep.invertibility_ok = scan.passed;
    rep.first_failing_j = scan.first_failing_j;

    QuotientPair at_half = fib_pair_at(k_max, mu);
    rep.closure_ok = at_half.hi == at_half.lo;

    rep.order_ok = rep.symmetric_ok && order_check(b);

    if (rep.symmetric_ok && rep.invertibility_ok && rep.closure_ok && !rep.order_ok) {
        throw InternalError("check_conditions: passing polynomial conditions must force the order identity");
    }
    if (m <= 8) {
        // Dense ground truth for the scan verdict.
        std::optional<int64_t> dense_first;
        BitMatrix prev = BitMatrix::zeros(m, m);
        BitMatrix cur = BitMatrix::identity(m);
        for (int64_t j = 1; j <= k_max; j++) {
            BitMatrix next = b * cur + prev;
            prev = std::move(cur);
            cur = std::move(next);
            if (!cur.invertible()) {
                dense_first = j;
                break;
            }
        }
        if (dense_first != rep.first_failing_j || scan.passed != !dense_first.has_value()) {
            throw InternalError("check_conditions: quotient-ring scan disagrees with dense verification");
        }
    }
    return rep;
}

}  // namespace cymub
