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

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/cyc8.hpp"
#include "cymub/errors.hpp"
#include "cymub/pauli.hpp"
#include "cymub/symplectic.hpp"

namespace cymub {

// The closed-form trace phase failed to be unimodular: the expected spectrum
// property does not hold for the seed in question. Surfaced loudly on purpose.
struct TraceNotUnimodularError : std::runtime_error {
    explicit TraceNotUnimodularError(const std::string &msg) : std::runtime_error(msg) {}
};

// The 2^m diagonal phases of the generating unitary, stored as exponents of i.
struct PhaseVector {
    size_t m = 0;
    std::vector<uint8_t> exps;  // exps[j] in 0..3; the phase is i^exps[j]

    size_t dim() const {
        return exps.size();
    }
    Cyc8 phase(size_t j) const {
        return Cyc8::i_pow(exps[j]);
    }
};

// Evaluates the diagonal phases from the seed matrix. Index j is read as the
// bit string (j_1 .. j_m) with j_1 the most significant bit. The exponent of
// i is the plain integer dot product diag(B) . j — reducing it mod 2 early
// would corrupt the signs — plus twice the parity of the quadratic prefix sum
// sum_k j_k * <row_k(B), (j_1 .. j_k, 0 .. 0)>, where the prefix keeps
// position k itself.
inline PhaseVector phase_vector(const BitMatrix &b) {
    if (!b.is_square() || b.n_rows == 0) {
        throw ShapeError("phase_vector: seed matrix must be square and nonempty");
    }
    if (!b.is_symmetric()) {
        throw ValidationError("phase_vector: seed matrix must be symmetric");
    }
    size_t m = b.n_rows;
    if (m > 14) {
        throw BudgetError("phase_vector: 2^m enumeration capped at m <= 14");
    }
    // Repack rows so that position k (1-based) sits at bit m - k, matching the
    // big-endian digits of the index j.
    std::vector<uint64_t> rev_rows(m, 0);
    uint64_t rev_diag = 0;
    for (size_t r = 0; r < m; r++) {
        for (size_t c = 0; c < m; c++) {
            if (b.get(r, c)) {
                rev_rows[r] |= uint64_t{1} << (m - 1 - c);
            }
        }
        if (b.get(r, r)) {
            rev_diag |= uint64_t{1} << (m - 1 - r);
        }
    }
    PhaseVector pv;
    pv.m = m;
    pv.exps.resize(size_t{1} << m);
    for (uint64_t j = 0; j < pv.exps.size(); j++) {
        int linear = std::popcount(rev_diag & j);  // integer dot product
        int quad = 0;
        for (size_t k = 0; k < m; k++) {
            if ((j >> (m - 1 - k)) & 1) {  // digit j_{k+1}
                uint64_t prefix_mask = (~uint64_t{0} << (m - 1 - k)) & ((uint64_t{1} << m) - 1);
                quad ^= std::popcount(rev_rows[k] & j & prefix_mask) & 1;
            }
        }
        pv.exps[j] = uint8_t((linear + 2 * quad) & 3);
    }
    return pv;
}

// Closed-form overall phase of the generating unitary: (-1 + i)/sqrt(2) for
// odd m and i for even m.
inline ScaledCyc8 global_phase(size_t m) {
    if (m == 0) {
        throw ArgumentError("global_phase: need m >= 1");
    }
    if (m & 1) {
        return ScaledCyc8(Cyc8(-1, 0, 1, 0), 1);
    }
    return ScaledCyc8(Cyc8::i(), 0);
}

// Overall phase recovered from the trace route: -sum_j (-1)^popcount(j)
// conj(p_j) / sqrt(2)^m. For a seed whose powers all have trace -1 this is
// unimodular; if it is not, the discrepancy is thrown, never patched over.
inline ScaledCyc8 global_phase_trace(const PhaseVector &p) {
    size_t m = p.m;
    if (m == 0 || p.exps.size() != (size_t{1} << m)) {
        throw ArgumentError("global_phase_trace: malformed phase vector");
    }
    Cyc8 sum;
    for (uint64_t j = 0; j < p.exps.size(); j++) {
        Cyc8 term = Cyc8::i_pow((4 - p.exps[j]) & 3);  // conj(i^e)
        sum = (std::popcount(j) & 1) ? sum - term : sum + term;
    }
    ScaledCyc8 out(-sum, int64_t(m));
    Cyc8::Norm2 n2 = out.v.norm2();
    if (n2.b != 0 || n2.a != (int64_t{1} << m)) {
        throw TraceNotUnimodularError("global_phase_trace: trace phase is not unimodular for this seed");
    }
    return out;
}

// Dense square matrix over Z[zeta] with one common denominator sqrt(2)^scale_exp.
struct Cyc8Matrix {
    size_t dim = 0;
    int64_t scale_exp = 0;
    std::vector<Cyc8> entries;  // row-major

    Cyc8Matrix() = default;
    explicit Cyc8Matrix(size_t d, int64_t scale = 0) : dim(d), scale_exp(scale), entries(d * d) {
        if (scale < 0) {
            throw ArgumentError("Cyc8Matrix: negative scale");
        }
    }

    static Cyc8Matrix identity(size_t d) {
        Cyc8Matrix out(d);
        for (size_t i = 0; i < d; i++) {
            out.at(i, i) = Cyc8::one();
        }
        return out;
    }

    Cyc8 &at(size_t i, size_t j) {
        return entries[i * dim + j];
    }
    const Cyc8 &at(size_t i, size_t j) const {
        return entries[i * dim + j];
    }

    bool is_zero() const {
        for (const Cyc8 &e : entries) {
            if (!e.is_zero()) {
                return false;
            }
        }
        return true;
    }

    // Pulls every shared factor of sqrt(2) out of the denominator, giving the
    // canonical representative of the underlying complex matrix.
    void normalize() {
        if (is_zero()) {
            scale_exp = 0;
            return;
        }
        while (scale_exp > 0) {
            for (const Cyc8 &e : entries) {
                if (!e.divisible_by_sqrt2()) {
                    return;
                }
            }
            for (Cyc8 &e : entries) {
                e = e.div_sqrt2();
            }
            scale_exp--;
        }
    }

    Cyc8Matrix operator*(const Cyc8Matrix &o) const {
        if (dim != o.dim) {
            throw ShapeError("Cyc8Matrix mul: dimensions differ");
        }
        Cyc8Matrix out(dim, detail::checked_add(scale_exp, o.scale_exp));
        for (size_t i = 0; i < dim; i++) {
            for (size_t k = 0; k < dim; k++) {
                const Cyc8 &aik = at(i, k);
                if (aik.is_zero()) {
                    continue;
                }
                for (size_t j = 0; j < dim; j++) {
                    const Cyc8 &bkj = o.at(k, j);
                    if (bkj.is_zero()) {
                        continue;
                    }
                    out.at(i, j) = out.at(i, j) + aik * bkj;
                }
            }
        }
        out.normalize();
        return out;
    }

    Cyc8Matrix dagger() const {
        Cyc8Matrix out(dim, scale_exp);
        for (size_t i = 0; i < dim; i++) {
            for (size_t j = 0; j < dim; j++) {
                out.at(i, j) = at(j, i).conj();
            }
        }
        return out;
    }

    bool value_equals(const Cyc8Matrix &o) const {
        if (dim != o.dim) {
            return false;
        }
        Cyc8Matrix a = *this;
        Cyc8Matrix b = o;
        a.normalize();
        b.normalize();
        return a.scale_exp == b.scale_exp && a.entries == b.entries;
    }

    bool is_identity_value() const {
        return value_equals(identity(dim));
    }

    bool is_unitary() const {
        return (*this * dagger()).is_identity_value();
    }

    ScaledCyc8 trace() const {
        Cyc8 sum;
        for (size_t i = 0; i < dim; i++) {
            sum = sum + at(i, i);
        }
        return ScaledCyc8(sum, scale_exp);
    }

    // True when every entry has squared modulus exactly 1/dim (dim = 2^m).
    bool entries_unbiased() const {
        if (dim == 0 || (dim & (dim - 1)) != 0) {
            throw ArgumentError("entries_unbiased: dimension must be a power of two");
        }
        int64_t m = std::countr_zero(dim);
        for (const Cyc8 &e : entries) {
            if (!ScaledCyc8(e, scale_exp).abs2_equals(1, m)) {
                return false;
            }
        }
        return true;
    }
};

// Kronecker product; the left factor indexes the most significant bits.
inline Cyc8Matrix kron(const Cyc8Matrix &a, const Cyc8Matrix &b) {
    Cyc8Matrix out(a.dim * b.dim, detail::checked_add(a.scale_exp, b.scale_exp));
    for (size_t ia = 0; ia < a.dim; ia++) {
        for (size_t ja = 0; ja < a.dim; ja++) {
            if (a.at(ia, ja).is_zero()) {
                continue;
            }
            for (size_t ib = 0; ib < b.dim; ib++) {
                for (size_t jb = 0; jb < b.dim; jb++) {
                    out.at(ia * b.dim + ib, ja * b.dim + jb) = a.at(ia, ja) * b.at(ib, jb);
                }
            }
        }
    }
    return out;
}

// Explicit matrix of a Pauli word: the tensor product over sites of
// 1, X, Z, or Y = i X Z, with site 0 on the most significant index bits.
// Overall sign conventions beyond the i in Y are not modeled anywhere else
// and do not affect any check in this library.
inline Cyc8Matrix pauli_unitary(const PauliVec &p) {
    if (p.m == 0 || p.m > 10) {
        throw BudgetError("pauli_unitary: dense form capped at 1 <= m <= 10");
    }
    auto site = [](bool x, bool z) {
        Cyc8Matrix s(2);
        if (x && z) {  // Y
            s.at(0, 1) = -Cyc8::i();
            s.at(1, 0) = Cyc8::i();
        } else if (x) {
            s.at(0, 1) = Cyc8::one();
            s.at(1, 0) = Cyc8::one();
        } else if (z) {
            s.at(0, 0) = Cyc8::one();
            s.at(1, 1) = -Cyc8::one();
        } else {
            s = Cyc8Matrix::identity(2);
        }
        return s;
    };
    Cyc8Matrix out = site((p.x_bits >> 0) & 1, (p.z_bits >> 0) & 1);
    for (size_t k = 1; k < p.m; k++) {
        out = kron(out, site((p.x_bits >> k) & 1, (p.z_bits >> k) & 1));
    }
    return out;
}

// Assembles the generating unitary for a passing seed: the scaled Hadamard
// transform H^(x)m times the diagonal of phase_vector, times the closed-form
// overall phase. The seed is screened first; a failing seed is a caller error.
inline Cyc8Matrix build_u(const BitMatrix &b) {
    if (!b.is_square() || b.n_rows == 0) {
        throw ShapeError("build_u: seed matrix must be square and nonempty");
    }
    size_t m = b.n_rows;
    if (m > 10) {
        throw BudgetError("build_u: dense construction capped at m <= 10");
    }
    ConditionReport rep = check_conditions(b);
    if (!rep.all_ok()) {
        throw ValidationError("build_u: seed fails the construction conditions");
    }
    PhaseVector pv = phase_vector(b);
    ScaledCyc8 g = global_phase(m);
    size_t d = size_t{1} << m;
    Cyc8Matrix u(d, detail::checked_add(int64_t(m), g.scale_exp));
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            Cyc8 v = g.v * pv.phase(j);
            u.at(i, j) = (std::popcount(i & j) & 1) ? -v : v;
        }
    }
    u.normalize();
    return u;
}

// Exact k-th power by square-and-multiply (normalization happens inside the
// products).
inline Cyc8Matrix unitary_pow(const Cyc8Matrix &u, uint64_t k) {
    Cyc8Matrix result = Cyc8Matrix::identity(u.dim);
    Cyc8Matrix base = u;
    while (k) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k) {
            base = base * base;
        }
    }
    return result;
}

// Verdict of the dense sweep over all d nontrivial powers plus the closing
// power d + 1.
struct MubVerdict {
    bool unitary_ok = false;    // every power is exactly unitary
    bool unbiased_ok = false;   // every power has all |entry|^2 == 1/d
    bool cyclic_ok = false;     // U^(d+1) is exactly the identity
    std::optional<uint64_t> first_bad_power;

    bool all_ok() const {
        return unitary_ok && unbiased_ok && cyclic_ok;
    }
};

// Walks U, U^2, .., U^d checking exact unitarity and entrywise modulus
// 1/sqrt(d), then checks U^(d+1) == 1. Together these are precisely the
// pairwise-unbiasedness of the d + 1 cyclically generated bases: the overlap
// matrix between bases k < l is U^(l-k) up to conjugation.
inline MubVerdict verify_cyclic_mub(const Cyc8Matrix &u) {
    size_t d = u.dim;
    if (d == 0 || (d & (d - 1)) != 0) {
        throw ArgumentError("verify_cyclic_mub: dimension must be a power of two");
    }
    if (d > 64) {
        throw BudgetError("verify_cyclic_mub: dense power sweep capped at dim <= 64");
    }
    MubVerdict verdict;
    verdict.unitary_ok = true;
    verdict.unbiased_ok = true;
    Cyc8Matrix p = u;
    for (uint64_t t = 1; t <= d; t++) {
        if (!p.is_unitary()) {
            verdict.unitary_ok = false;
            if (!verdict.first_bad_power) {
                verdict.first_bad_power = t;
            }
        }
        if (!p.entries_unbiased()) {
            verdict.unbiased_ok = false;
            if (!verdict.first_bad_power) {
                verdict.first_bad_power = t;
            }
        }
        if (!verdict.unitary_ok && !verdict.unbiased_ok) {
            break;  // no point grinding on; cyclic check still runs below
        }
        p = p * u;
    }
    verdict.cyclic_ok = unitary_pow(u, uint64_t(d) + 1).is_identity_value();
    return verdict;
}

// Checks that tr(U^t) == -1 exactly for every t in 1..d; with unitarity this
// pins the spectrum to the (d+1)-th roots of unity other than 1.
struct SpectrumVerdict {
    bool ok = false;
    std::optional<uint64_t> first_bad_power;
};

inline SpectrumVerdict spectrum_check(const Cyc8Matrix &u) {
    size_t d = u.dim;
    if (d == 0 || (d & (d - 1)) != 0) {
        throw ArgumentError("spectrum_check: dimension must be a power of two");
    }
    if (d > 64) {
        throw BudgetError("spectrum_check: dense power sweep capped at dim <= 64");
    }
    ScaledCyc8 minus_one(-Cyc8::one(), 0);
    Cyc8Matrix p = u;
    for (uint64_t t = 1; t <= d; t++) {
        if (!p.trace().value_equals(minus_one)) {
            return {false, t};
        }
        p = p * u;
    }
    return {true, std::nullopt};
}

}  // namespace cymub
