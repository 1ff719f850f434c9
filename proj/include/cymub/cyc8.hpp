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

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "cymub/errors.hpp"

namespace cymub {

namespace detail {

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("exact arithmetic overflowed a 64-bit add");
    }
    return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError("exact arithmetic overflowed a 64-bit subtract");
    }
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("exact arithmetic overflowed a 64-bit multiply");
    }
    return r;
}

}  // namespace detail

// An element of Z[zeta] for zeta = exp(i pi / 4), stored on the power basis
// 1, zeta, zeta^2, zeta^3 with zeta^4 = -1. This ring carries every number the
// construction needs: i = zeta^2 and sqrt(2) = zeta - zeta^3. All arithmetic
// is exact, 64-bit, and overflow-checked.
struct Cyc8 {
    std::array<int64_t, 4> c{0, 0, 0, 0};

    Cyc8() = default;
    Cyc8(int64_t c0, int64_t c1, int64_t c2, int64_t c3) : c{c0, c1, c2, c3} {}

    static Cyc8 zero() {
        return {};
    }
    static Cyc8 one() {
        return {1, 0, 0, 0};
    }
    static Cyc8 i() {
        return {0, 0, 1, 0};
    }
    static Cyc8 from_int(int64_t n) {
        return {n, 0, 0, 0};
    }
    static Cyc8 sqrt2() {
        return {0, 1, 0, -1};
    }

    // zeta^k for any integer k (reduced mod 8; the upper half flips sign).
    static Cyc8 zeta_pow(int64_t k) {
        k = ((k % 8) + 8) % 8;
        Cyc8 out;
        out.c[k & 3] = (k < 4) ? 1 : -1;
        return out;
    }

    // i^k = zeta^(2k).
    static Cyc8 i_pow(int64_t k) {
        return zeta_pow(2 * k);
    }

    bool is_zero() const {
        return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
    }

    bool operator==(const Cyc8 &o) const {
        return c == o.c;
    }
    bool operator!=(const Cyc8 &o) const {
        return c != o.c;
    }

    Cyc8 operator+(const Cyc8 &o) const {
        Cyc8 out;
        for (int k = 0; k < 4; k++) {
            out.c[k] = detail::checked_add(c[k], o.c[k]);
        }
        return out;
    }

    Cyc8 operator-(const Cyc8 &o) const {
        Cyc8 out;
        for (int k = 0; k < 4; k++) {
            out.c[k] = detail::checked_sub(c[k], o.c[k]);
        }
        return out;
    }

    Cyc8 operator-() const {
        Cyc8 out;
        for (int k = 0; k < 4; k++) {
            out.c[k] = detail::checked_sub(0, c[k]);
        }
        return out;
    }

    Cyc8 operator*(const Cyc8 &o) const {
        Cyc8 out;
        for (int a = 0; a < 4; a++) {
            if (c[a] == 0) {
                continue;
            }
            for (int b = 0; b < 4; b++) {
                if (o.c[b] == 0) {
                    continue;
                }
                int64_t term = detail::checked_mul(c[a], o.c[b]);
                int k = a + b;
                if (k >= 4) {
                    k -= 4;
                    term = detail::checked_sub(0, term);
                }
                out.c[k] = detail::checked_add(out.c[k], term);
            }
        }
        return out;
    }

    // Complex conjugate: zeta bar = zeta^(-1) = -zeta^3.
    Cyc8 conj() const {
        return Cyc8(c[0], detail::checked_sub(0, c[3]), detail::checked_sub(0, c[2]), detail::checked_sub(0, c[1]));
    }

    // Squared modulus, which always lands in Z[sqrt(2)]: returns (a, b) with
    // |z|^2 = a + b sqrt(2). The vanishing of the other two coordinates is
    // asserted, not assumed.
    struct Norm2 {
        int64_t a;
        int64_t b;
    };
    Norm2 norm2() const {
        Cyc8 p = *this * conj();
        if (p.c[2] != 0 || detail::checked_add(p.c[1], p.c[3]) != 0) {
            throw InternalError("norm2: |z|^2 left the real subring, which conjugation forbids");
        }
        return {p.c[0], p.c[1]};
    }

    // z is divisible by sqrt(2) exactly when c0 = c2 and c1 = c3 modulo 2.
    bool divisible_by_sqrt2() const {
        return (((c[0] ^ c[2]) & 1) == 0) && (((c[1] ^ c[3]) & 1) == 0);
    }

    // Exact division by sqrt(2) = zeta - zeta^3:
    // z / sqrt(2) = ((c1 - c3) + (c0 + c2) zeta + (c1 + c3) zeta^2 + (c2 - c0) zeta^3) / 2.
    Cyc8 div_sqrt2() const {
        if (!divisible_by_sqrt2()) {
            throw ArgumentError("div_sqrt2: element is not divisible by sqrt(2)");
        }
        return Cyc8(
            detail::checked_sub(c[1], c[3]) / 2,
            detail::checked_add(c[0], c[2]) / 2,
            detail::checked_add(c[1], c[3]) / 2,
            detail::checked_sub(c[2], c[0]) / 2);
    }

    Cyc8 mul_sqrt2() const {
        return *this * sqrt2();
    }

    // True when the value lies in Z[i] (no odd zeta powers).
    bool is_gauss() const {
        return c[1] == 0 && c[3] == 0;
    }

    std::complex<double> to_complex() const {
        constexpr double r = 0.7071067811865475244;  // 1/sqrt(2)
        // zeta = (1 + i)/sqrt(2), zeta^3 = (-1 + i)/sqrt(2)
        double re = double(c[0]) + r * double(c[1]) - r * double(c[3]);
        double im = r * double(c[1]) + double(c[2]) + r * double(c[3]);
        return {re, im};
    }

    std::string to_string() const {
        if (is_zero()) {
            return "0";
        }
        static const char *basis[] = {"", "w", "w^2", "w^3"};
        std::string out;
        for (int k = 0; k < 4; k++) {
            if (c[k] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += c[k] > 0 ? " + " : " - ";
            } else if (c[k] < 0) {
                out += "-";
            }
            int64_t mag = c[k] < 0 ? -c[k] : c[k];
            if (mag != 1 || k == 0) {
                out += std::to_string(mag);
            }
            if (k > 0) {
                if (mag != 1) {
                    out += "*";
                }
                out += basis[k];
            }
        }
        return out;
    }
};

// A Cyc8 value divided by sqrt(2)^scale_exp. Canonical form pulls out every
// whole factor of sqrt(2) (or hits scale 0), making equality a plain compare.
struct ScaledCyc8 {
    Cyc8 v;
    int64_t scale_exp = 0;

    ScaledCyc8() = default;
    ScaledCyc8(Cyc8 value, int64_t scale) : v(value), scale_exp(scale) {
        if (scale < 0) {
            throw ArgumentError("ScaledCyc8: negative scale");
        }
    }

    ScaledCyc8 canonical() const {
        ScaledCyc8 out = *this;
        if (out.v.is_zero()) {
            out.scale_exp = 0;
            return out;
        }
        while (out.scale_exp > 0 && out.v.divisible_by_sqrt2()) {
            out.v = out.v.div_sqrt2();
            out.scale_exp--;
        }
        return out;
    }

    bool value_equals(const ScaledCyc8 &o) const {
        ScaledCyc8 a = canonical();
        ScaledCyc8 b = o.canonical();
        return a.v == b.v && a.scale_exp == b.scale_exp;
    }

    // |value|^2 must be checked against rationals of the form n / 2^k;
    // returns true when |v / sqrt(2)^scale|^2 == num / 2^den_exp exactly.
    bool abs2_equals(int64_t num, int64_t den_exp) const {
        Cyc8::Norm2 n2 = v.norm2();
        if (n2.b != 0) {
            return false;
        }
        // a / 2^scale == num / 2^den_exp  <=>  a * 2^den_exp == num * 2^scale.
        // Compare via shifting the smaller exponent side; both stay in range
        // because callers only use moduli that appear in unitary matrices.
        int64_t lhs = n2.a;
        int64_t rhs = num;
        int64_t le = den_exp;
        int64_t re = scale_exp;
        int64_t shift = std::min(le, re);
        le -= shift;
        re -= shift;
        if (le > 62 || re > 62) {
            throw OverflowError("abs2_equals: exponent out of range");
        }
        return detail::checked_mul(lhs, int64_t{1} << le) == detail::checked_mul(rhs, int64_t{1} << re);
    }

    std::complex<double> to_complex() const {
        std::complex<double> z = v.to_complex();
        return z / std::pow(std::sqrt(2.0), double(scale_exp));
    }

    std::string to_string() const {
        ScaledCyc8 a = canonical();
        if (a.scale_exp == 0) {
            return a.v.to_string();
        }
        return "(" + a.v.to_string() + ")/sqrt2^" + std::to_string(a.scale_exp);
    }
};

}  // namespace cymub
