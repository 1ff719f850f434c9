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

#ifndef CYMUB_CERTIFICATE_HPP_
#define CYMUB_CERTIFICATE_HPP_

#include <chrono>
#include <cstdint>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "cymub/bitmatrix.hpp"
#include "cymub/errors.hpp"
#include "cymub/poly2.hpp"
#include "cymub/search.hpp"
#include "cymub/symplectic.hpp"
#include "cymub/unitary.hpp"
#include "json.hpp"

namespace cymub {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kCertSchema = "mubcert/1";

// ---------------------------------------------------------------------------
// JSON encodings of the core types. Row strings list column 0 first; the
// cyclotomic coordinates are listed in ascending power order.
// ---------------------------------------------------------------------------

inline nlohmann::json bitmatrix_to_json(const BitMatrix &b) {
    return nlohmann::json{{"rows", b.to_row_strings()}};
}

inline BitMatrix bitmatrix_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) {
        throw ValidationError("bitmatrix_from_json: expected an object with a nonempty rows array");
    }
    std::vector<std::string> rows;
    for (const auto &row : j["rows"]) {
        if (!row.is_string()) {
            throw ValidationError("bitmatrix_from_json: rows must be strings of 0s and 1s");
        }
        rows.push_back(row.get<std::string>());
    }
    return BitMatrix::from_rows(rows);
}

inline nlohmann::json cyc8_to_json(const Cyc8 &z) {
    return nlohmann::json::array({z.c[0], z.c[1], z.c[2], z.c[3]});
}

inline Cyc8 cyc8_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 4) {
        throw ValidationError("cyc8_from_json: expected an array of four integers");
    }
    for (const auto &v : j) {
        if (!v.is_number_integer()) {
            throw ValidationError("cyc8_from_json: coordinates must be integers");
        }
    }
    return Cyc8(j[0].get<int64_t>(), j[1].get<int64_t>(), j[2].get<int64_t>(), j[3].get<int64_t>());
}

inline nlohmann::json scaled_to_json(const ScaledCyc8 &s) {
    return nlohmann::json{{"coeffs", cyc8_to_json(s.v)}, {"scale_exp", s.scale_exp}};
}

inline ScaledCyc8 scaled_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("scale_exp") ||
        !j["scale_exp"].is_number_integer()) {
        throw ValidationError("scaled_from_json: expected {coeffs, scale_exp}");
    }
    return ScaledCyc8(cyc8_from_json(j["coeffs"]), j["scale_exp"].get<int64_t>());
}

inline nlohmann::json matrix_to_json(const Cyc8Matrix &u) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Cyc8 &e : u.entries) {
        entries.push_back(cyc8_to_json(e));
    }
    return nlohmann::json{{"dim", u.dim}, {"scale_exp", u.scale_exp}, {"entries", entries}};
}

inline Cyc8Matrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("scale_exp") || !j.contains("entries") ||
        !j["dim"].is_number_unsigned() || !j["scale_exp"].is_number_integer() ||
        !j["entries"].is_array()) {
        throw ValidationError("matrix_from_json: expected {dim, scale_exp, entries}");
    }
    size_t dim = j["dim"].get<size_t>();
    Cyc8Matrix out(dim, j["scale_exp"].get<int64_t>());
    if (j["entries"].size() != dim * dim) {
        throw ValidationError("matrix_from_json: entry count does not match the dimension");
    }
    for (size_t k = 0; k < out.entries.size(); k++) {
        out.entries[k] = cyc8_from_json(j["entries"][k]);
    }
    return out;
}

inline nlohmann::json report_to_json(const ConditionReport &r) {
    nlohmann::json j{
        {"symmetric_ok", r.symmetric_ok},       {"symplectic_ok", r.symplectic_ok},
        {"invertibility_ok", r.invertibility_ok}, {"closure_ok", r.closure_ok},
        {"order_ok", r.order_ok},
    };
    if (r.first_failing_j.has_value()) {
        j["first_failing_j"] = r.first_failing_j.value();
    }
    return j;
}

inline ConditionReport report_from_json(const nlohmann::json &j, size_t m) {
    const char *keys[] = {"symmetric_ok", "symplectic_ok", "invertibility_ok", "closure_ok",
                          "order_ok"};
    for (const char *k : keys) {
        if (!j.contains(k) || !j[k].is_boolean()) {
            throw ValidationError("report_from_json: missing or non-boolean verdict field");
        }
    }
    ConditionReport r;
    r.m = m;
    r.symmetric_ok = j["symmetric_ok"].get<bool>();
    r.symplectic_ok = j["symplectic_ok"].get<bool>();
    r.invertibility_ok = j["invertibility_ok"].get<bool>();
    r.closure_ok = j["closure_ok"].get<bool>();
    r.order_ok = j["order_ok"].get<bool>();
    if (j.contains("first_failing_j")) {
        if (!j["first_failing_j"].is_number_integer()) {
            throw ValidationError("report_from_json: first_failing_j must be an integer");
        }
        r.first_failing_j = j["first_failing_j"].get<int64_t>();
    }
    return r;
}

// ---------------------------------------------------------------------------
// The certificate: everything needed to reproduce and re-verify one accepted
// seed. The verification depth recorded inside depends on the size:
//   "full"       (m <= 6): dense power sweep, spectrum and trace all ran;
//   "trace"      (m <= 14): phases and the trace identity were checked;
//   "symplectic" (m > 14): the binary conditions alone were checked.
// ---------------------------------------------------------------------------

struct CertificateMeta {
    std::string created_at;  // ISO-8601 UTC
    double elapsed_ms = 0.0;
    std::string tool_version = kToolVersion;
};

struct MubCertificate {
    size_t m = 0;
    BitMatrix b;
    std::optional<BitMatrix> corner;
    ConditionReport report;
    Poly2 min_poly;
    std::optional<std::vector<uint8_t>> phase_exps;
    std::optional<ScaledCyc8> global;
    std::string level;  // "full", "trace" or "symplectic"
    std::optional<bool> unitary_ok;
    std::optional<bool> unbiased_ok;
    std::optional<bool> cyclic_ok;
    std::optional<bool> spectrum_ok;
    std::optional<bool> trace_ok;
    std::optional<CertificateMeta> meta;
};

inline std::string iso8601_now_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Builds a certificate for a seed, running the deepest verification the size
// allows. Throws ValidationError when the seed fails the conditions.
inline MubCertificate build_certificate(const BitMatrix &b,
                                        std::optional<BitMatrix> corner = std::nullopt,
                                        bool with_meta = true) {
    auto t0 = std::chrono::steady_clock::now();
    MubCertificate cert;
    cert.report = check_conditions(b);
    if (!cert.report.all_ok()) {
        throw ValidationError("build_certificate: seed fails the acceptance conditions");
    }
    cert.m = b.n_rows;
    cert.b = b;
    if (corner.has_value()) {
        if (ansatz_b(cert.m, corner.value()) != b) {
            throw ValidationError("build_certificate: corner does not reproduce the seed");
        }
        cert.corner = corner;
    }
    cert.min_poly = min_poly(b);
    if (cert.m <= 14) {
        PhaseVector pv = phase_vector(b);
        cert.phase_exps = pv.exps;
        ScaledCyc8 g = global_phase(cert.m);
        cert.global = g;
        cert.trace_ok = global_phase_trace(pv).value_equals(g);
        cert.level = "trace";
    } else {
        cert.level = "symplectic";
    }
    if (cert.m <= 6) {
        Cyc8Matrix u = build_u(b);
        MubVerdict verdict = verify_cyclic_mub(u);
        cert.unitary_ok = verdict.unitary_ok;
        cert.unbiased_ok = verdict.unbiased_ok;
        cert.cyclic_ok = verdict.cyclic_ok;
        cert.spectrum_ok = spectrum_check(u).ok;
        cert.level = "full";
    }
    if (with_meta) {
        CertificateMeta meta;
        meta.created_at = iso8601_now_utc();
        auto t1 = std::chrono::steady_clock::now();
        meta.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        cert.meta = meta;
    }
    return cert;
}

inline nlohmann::json certificate_to_json(const MubCertificate &cert) {
    nlohmann::json j;
    j["schema"] = kCertSchema;
    j["m"] = cert.m;
    j["b"] = bitmatrix_to_json(cert.b);
    if (cert.corner.has_value()) {
        j["corner"] = bitmatrix_to_json(cert.corner.value());
    }
    j["report"] = report_to_json(cert.report);
    j["min_poly"] = cert.min_poly.to_hex();
    if (cert.phase_exps.has_value()) {
        j["phases"] = nlohmann::json{{"exps", cert.phase_exps.value()},
                                     {"global", scaled_to_json(cert.global.value())}};
    }
    nlohmann::json ver;
    ver["level"] = cert.level;
    if (cert.unitary_ok.has_value()) {
        ver["unitary_ok"] = cert.unitary_ok.value();
    }
    if (cert.unbiased_ok.has_value()) {
        ver["unbiased_ok"] = cert.unbiased_ok.value();
    }
    if (cert.cyclic_ok.has_value()) {
        ver["cyclic_ok"] = cert.cyclic_ok.value();
    }
    if (cert.spectrum_ok.has_value()) {
        ver["spectrum_ok"] = cert.spectrum_ok.value();
    }
    if (cert.trace_ok.has_value()) {
        ver["trace_ok"] = cert.trace_ok.value();
    }
    j["verification"] = ver;
    if (cert.meta.has_value()) {
        j["meta"] = nlohmann::json{{"created_at", cert.meta->created_at},
                                   {"elapsed_ms", cert.meta->elapsed_ms},
                                   {"tool_version", cert.meta->tool_version}};
    }
    return j;
}

inline MubCertificate certificate_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kCertSchema) {
        throw ValidationError("certificate_from_json: missing or unsupported schema tag");
    }
    for (const char *k : {"m", "b", "report", "min_poly", "verification"}) {
        if (!j.contains(k)) {
            throw ValidationError(std::string("certificate_from_json: missing field ") + k);
        }
    }
    if (!j["m"].is_number_unsigned()) {
        throw ValidationError("certificate_from_json: m must be a nonnegative integer");
    }
    MubCertificate cert;
    cert.m = j["m"].get<size_t>();
    cert.b = bitmatrix_from_json(j["b"]);
    if (cert.b.n_rows != cert.m || cert.b.n_cols != cert.m) {
        throw ValidationError("certificate_from_json: seed shape does not match m");
    }
    if (j.contains("corner")) {
        cert.corner = bitmatrix_from_json(j["corner"]);
    }
    cert.report = report_from_json(j["report"], cert.m);
    if (!j["min_poly"].is_string()) {
        throw ValidationError("certificate_from_json: min_poly must be a hex string");
    }
    cert.min_poly = Poly2::from_hex(j["min_poly"].get<std::string>());
    if (j.contains("phases")) {
        const auto &p = j["phases"];
        if (!p.is_object() || !p.contains("exps") || !p.contains("global") || !p["exps"].is_array()) {
            throw ValidationError("certificate_from_json: malformed phases block");
        }
        std::vector<uint8_t> exps;
        for (const auto &e : p["exps"]) {
            if (!e.is_number_integer() || e.get<int64_t>() < 0 || e.get<int64_t>() > 3) {
                throw ValidationError("certificate_from_json: phase exponents must lie in 0..3");
            }
            exps.push_back(static_cast<uint8_t>(e.get<int64_t>()));
        }
        cert.phase_exps = exps;
        cert.global = scaled_from_json(p["global"]);
    }
    const auto &ver = j["verification"];
    if (!ver.is_object() || !ver.contains("level") || !ver["level"].is_string()) {
        throw ValidationError("certificate_from_json: malformed verification block");
    }
    cert.level = ver["level"].get<std::string>();
    if (cert.level != "full" && cert.level != "trace" && cert.level != "symplectic") {
        throw ValidationError("certificate_from_json: unknown verification level");
    }
    auto read_flag = [&](const char *k, std::optional<bool> &dst) {
        if (ver.contains(k)) {
            if (!ver[k].is_boolean()) {
                throw ValidationError("certificate_from_json: verification flags must be booleans");
            }
            dst = ver[k].get<bool>();
        }
    };
    read_flag("unitary_ok", cert.unitary_ok);
    read_flag("unbiased_ok", cert.unbiased_ok);
    read_flag("cyclic_ok", cert.cyclic_ok);
    read_flag("spectrum_ok", cert.spectrum_ok);
    read_flag("trace_ok", cert.trace_ok);
    if (j.contains("meta")) {
        const auto &mj = j["meta"];
        if (!mj.is_object() || !mj.contains("created_at") || !mj.contains("elapsed_ms") ||
            !mj.contains("tool_version")) {
            throw ValidationError("certificate_from_json: malformed meta block");
        }
        CertificateMeta meta;
        meta.created_at = mj["created_at"].get<std::string>();
        meta.elapsed_ms = mj["elapsed_ms"].get<double>();
        meta.tool_version = mj["tool_version"].get<std::string>();
        cert.meta = meta;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Re-verification of a parsed certificate. Everything is recomputed from the
// seed; stored claims that contradict the recomputation fail the check.
// ---------------------------------------------------------------------------

enum class VerifyLevel {
    kSymplectic,  // binary conditions, minimal polynomial, corner linkage
    kDense,       // + dense power sweep of the generated unitary (m <= 6)
    kSpectrum,    // + exact trace of every power (m <= 6)
};

struct VerifySummary {
    bool ok = false;
    std::string detail;  // human-readable reason for the verdict
    ConditionReport report;
};

inline VerifySummary verify_certificate(const MubCertificate &cert,
                                        VerifyLevel level = VerifyLevel::kSymplectic) {
    VerifySummary out;
    if (cert.m == 0 || cert.b.n_rows != cert.m || !cert.b.is_square()) {
        out.detail = "seed shape does not match m";
        return out;
    }
    out.report = check_conditions(cert.b);
    if (!out.report.all_ok()) {
        out.detail = "seed fails the acceptance conditions on recomputation";
        return out;
    }
    if (out.report.symmetric_ok != cert.report.symmetric_ok ||
        out.report.symplectic_ok != cert.report.symplectic_ok ||
        out.report.invertibility_ok != cert.report.invertibility_ok ||
        out.report.closure_ok != cert.report.closure_ok ||
        out.report.order_ok != cert.report.order_ok) {
        out.detail = "stored condition report contradicts recomputation";
        return out;
    }
    if (min_poly(cert.b) != cert.min_poly) {
        out.detail = "stored minimal polynomial is wrong";
        return out;
    }
    if (cert.corner.has_value()) {
        if (cert.corner->n_rows > cert.m || ansatz_b(cert.m, cert.corner.value()) != cert.b) {
            out.detail = "stored corner does not reproduce the seed";
            return out;
        }
    }
    if (cert.phase_exps.has_value()) {
        if (cert.m > 14) {
            out.detail = "phase block present but the size exceeds the phase budget";
            return out;
        }
        PhaseVector pv = phase_vector(cert.b);
        if (pv.exps != cert.phase_exps.value()) {
            out.detail = "stored phase exponents are wrong";
            return out;
        }
        if (!cert.global.has_value() || !cert.global->value_equals(global_phase(cert.m))) {
            out.detail = "stored scalar prefactor is wrong";
            return out;
        }
        ScaledCyc8 via_trace = global_phase_trace(pv);
        if (!via_trace.value_equals(global_phase(cert.m))) {
            out.detail = "trace route contradicts the closed-form prefactor";
            return out;
        }
        if (cert.trace_ok.has_value() && !cert.trace_ok.value()) {
            out.detail = "certificate claims a failed trace check for an accepted seed";
            return out;
        }
    }
    if (level == VerifyLevel::kDense || level == VerifyLevel::kSpectrum) {
        if (cert.m > 6) {
            throw BudgetError("verify_certificate: dense verification capped at m <= 6");
        }
        Cyc8Matrix u = build_u(cert.b);
        MubVerdict verdict = verify_cyclic_mub(u);
        if (!verdict.all_ok()) {
            out.detail = "dense power sweep failed on recomputation";
            return out;
        }
        auto contradicted = [&](const std::optional<bool> &flag) {
            return flag.has_value() && !flag.value();
        };
        if (contradicted(cert.unitary_ok) || contradicted(cert.unbiased_ok) ||
            contradicted(cert.cyclic_ok)) {
            out.detail = "certificate claims a failed dense check for an accepted seed";
            return out;
        }
        if (level == VerifyLevel::kSpectrum) {
            SpectrumVerdict traces = spectrum_check(u);
            if (!traces.ok) {
                out.detail = "trace of some power deviates from the expected constant";
                return out;
            }
            if (cert.spectrum_ok.has_value() && !cert.spectrum_ok.value()) {
                out.detail = "certificate claims a failed spectrum check for an accepted seed";
                return out;
            }
        }
    }
    out.ok = true;
    out.detail = "ok";
    return out;
}

}  // namespace cymub

#endif  // CYMUB_CERTIFICATE_HPP_
