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

// Command line front end: searches for seed matrices, builds certificates,
// re-verifies them, and prints the tabulated corners.
//
// Exit codes: 0 success, 1 verification failed, 2 usage or limit error,
// 3 nothing found, 4 build precondition failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cymub/certificate.hpp"
#include "json.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kNotFound = 3;
constexpr int kPrecondition = 4;

struct OutputOpts {
    bool json = false;
    bool no_meta = false;
    std::string out_path;
};

int emit(const OutputOpts &opts, const std::string &payload) {
    if (opts.out_path.empty()) {
        std::cout << payload << "\n";
        return kOk;
    }
    std::ofstream f(opts.out_path);
    if (!f) {
        std::cerr << "error: cannot open output file " << opts.out_path << "\n";
        return kUsage;
    }
    f << payload << "\n";
    return kOk;
}

std::string rows_joined(const cymub::BitMatrix &b, const std::string &indent) {
    std::string out;
    for (const std::string &row : b.to_row_strings()) {
        out += indent + row + "\n";
    }
    return out;
}

// Parses a flat comma-separated bit list ("0,0,0,1") into a square matrix.
cymub::BitMatrix parse_corner(const std::string &text) {
    std::vector<bool> bits;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "0") {
            bits.push_back(false);
        } else if (tok == "1") {
            bits.push_back(true);
        } else {
            throw cymub::ArgumentError("corner entries must be 0 or 1, separated by commas");
        }
    }
    size_t n = 0;
    while (n * n < bits.size()) {
        n++;
    }
    if (n == 0 || n * n != bits.size()) {
        throw cymub::ArgumentError("corner must list a square number of entries, row by row");
    }
    cymub::BitMatrix corner = cymub::BitMatrix::zeros(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            corner.set(i, j, bits[i * n + j]);
        }
    }
    if (!corner.is_symmetric()) {
        throw cymub::ArgumentError("corner must be symmetric");
    }
    return corner;
}

nlohmann::json hit_to_json(const cymub::SearchHit &hit) {
    nlohmann::json j;
    if (hit.corner.has_value()) {
        j["corner"] = cymub::bitmatrix_to_json(hit.corner.value());
    }
    j["b"] = cymub::bitmatrix_to_json(hit.b);
    j["report"] = cymub::report_to_json(hit.report);
    return j;
}

nlohmann::json search_to_json(const cymub::SearchResult &r, bool no_meta) {
    nlohmann::json j;
    j["m"] = r.m;
    j["strategy"] = r.strategy;
    j["tested"] = r.tested;
    j["budget_exhausted"] = r.budget_exhausted;
    j["hit_count"] = r.hits.size();
    if (r.corner_size.has_value()) {
        j["corner_size"] = r.corner_size.value();
    }
    if (!no_meta) {
        j["elapsed_ms"] = r.elapsed_ms;
    }
    nlohmann::json hits = nlohmann::json::array();
    for (const cymub::SearchHit &hit : r.hits) {
        hits.push_back(hit_to_json(hit));
    }
    j["hits"] = hits;
    return j;
}

std::string search_to_text(const cymub::SearchResult &r) {
    std::ostringstream out;
    out << "search: m=" << r.m << " strategy=" << r.strategy << "\n";
    out << "tested " << r.tested << " candidates";
    if (r.budget_exhausted) {
        out << " (budget exhausted)";
    }
    out << "\n";
    if (r.hits.empty()) {
        out << "no accepted seed found\n";
        return out.str();
    }
    out << "accepted seeds: " << r.hits.size();
    if (r.corner_size.has_value()) {
        out << " (corner size " << r.corner_size.value() << ")";
    }
    out << "\n";
    const cymub::SearchHit &first = r.hits.front();
    if (first.corner.has_value()) {
        out << "first corner:\n" << rows_joined(first.corner.value(), "  ");
    }
    out << "first seed:\n" << rows_joined(first.b, "  ");
    return out.str();
}

int run_search(size_t m, size_t max_corner, double budget, bool force, const OutputOpts &opts) {
    if (m == 0) {
        std::cerr << "error: need -m of at least 1\n";
        return kUsage;
    }
    if (m > 28) {
        std::cerr << "error: sizes above 28 are outside the engine limits\n";
        return kUsage;
    }
    if (m > 24 && !force) {
        std::cerr << "error: sizes above 24 are untabulated territory; pass --force to try anyway\n";
        return kUsage;
    }
    if (m >= 20 && budget <= 0) {
        std::cerr << "error: sizes of 20 and above require an explicit --budget in seconds\n";
        return kUsage;
    }
    cymub::SearchResult result;
    try {
        if (m <= 3) {
            result = cymub::enumerate_search(m);
        } else {
            result = cymub::corner_search(m, max_corner, budget);
        }
    } catch (const cymub::BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::string payload = opts.json ? search_to_json(result, opts.no_meta).dump(2)
                                    : search_to_text(result);
    int rc = emit(opts, payload);
    if (rc != kOk) {
        return rc;
    }
    return result.hits.empty() ? kNotFound : kOk;
}

std::string certificate_to_text(const cymub::MubCertificate &cert) {
    std::ostringstream out;
    out << "certificate: m=" << cert.m << " level=" << cert.level << "\n";
    out << "seed:\n" << rows_joined(cert.b, "  ");
    if (cert.corner.has_value()) {
        out << "corner:\n" << rows_joined(cert.corner.value(), "  ");
    }
    out << "minimal polynomial (hex): " << cert.min_poly.to_hex() << "\n";
    if (cert.phase_exps.has_value()) {
        out << "phase exponents:";
        for (uint8_t e : cert.phase_exps.value()) {
            out << " " << int(e);
        }
        out << "\n";
        out << "scalar prefactor: " << cert.global->to_string() << "\n";
    }
    auto flag = [&](const char *name, const std::optional<bool> &v) {
        if (v.has_value()) {
            out << name << ": " << (v.value() ? "pass" : "FAIL") << "\n";
        }
    };
    flag("unitary sweep", cert.unitary_ok);
    flag("unbiased sweep", cert.unbiased_ok);
    flag("cycle closure", cert.cyclic_ok);
    flag("power traces", cert.spectrum_ok);
    flag("trace identity", cert.trace_ok);
    return out.str();
}

int run_build(size_t m, const std::string &corner_text, bool emit_u, const OutputOpts &opts) {
    cymub::BitMatrix b;
    std::optional<cymub::BitMatrix> corner;
    try {
        if (!corner_text.empty()) {
            corner = parse_corner(corner_text);
            b = cymub::ansatz_b(m, corner.value());
        } else if (m >= 1 && m <= 24) {
            b = cymub::known_seed(m);
            if (m >= 4) {
                corner = cymub::known_corner(m);
            }
        } else {
            std::cerr << "error: no tabulated seed for m=" << m << "; run a search instead\n";
            return kUsage;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (emit_u && m > 6) {
        std::cerr << "error: --emit-u keeps the dense matrix in the output; that is capped at m <= 6\n";
        return kUsage;
    }
    cymub::MubCertificate cert;
    try {
        cert = cymub::build_certificate(b, corner, !opts.no_meta);
    } catch (const cymub::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const cymub::BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::string payload;
    if (opts.json) {
        nlohmann::json j = cymub::certificate_to_json(cert);
        if (emit_u) {
            j["unitary"] = cymub::matrix_to_json(cymub::build_u(b));
        }
        payload = j.dump(2);
    } else {
        payload = certificate_to_text(cert);
    }
    return emit(opts, payload);
}

int run_verify(const std::string &path, const std::string &level_text, const OutputOpts &opts) {
    cymub::VerifyLevel level;
    if (level_text == "symplectic") {
        level = cymub::VerifyLevel::kSymplectic;
    } else if (level_text == "dense") {
        level = cymub::VerifyLevel::kDense;
    } else if (level_text == "spectrum") {
        level = cymub::VerifyLevel::kSpectrum;
    } else {
        std::cerr << "error: --level must be symplectic, dense or spectrum\n";
        return kUsage;
    }
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot read " << path << "\n";
        return kUsage;
    }
    cymub::MubCertificate cert;
    try {
        nlohmann::json j = nlohmann::json::parse(f);
        cert = cymub::certificate_from_json(j);
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: not valid JSON: " << e.what() << "\n";
        return kUsage;
    } catch (const cymub::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    cymub::VerifySummary summary;
    try {
        summary = cymub::verify_certificate(cert, level);
    } catch (const cymub::BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    std::string payload;
    if (opts.json) {
        nlohmann::json j;
        j["ok"] = summary.ok;
        j["detail"] = summary.detail;
        j["level"] = level_text;
        j["m"] = cert.m;
        j["report"] = cymub::report_to_json(summary.report);
        payload = j.dump(2);
    } else {
        std::ostringstream out;
        out << "verify: m=" << cert.m << " level=" << level_text << "\n";
        out << (summary.ok ? "PASS" : "FAIL") << ": " << summary.detail << "\n";
        payload = out.str();
    }
    int rc = emit(opts, payload);
    if (rc != kOk) {
        return rc;
    }
    return summary.ok ? kOk : kVerifyFailed;
}

int run_table(const OutputOpts &opts) {
    if (opts.json) {
        nlohmann::json entries = nlohmann::json::array();
        for (size_t m = 1; m <= 24; m++) {
            nlohmann::json e;
            e["m"] = m;
            if (m >= 4) {
                cymub::BitMatrix c = cymub::known_corner(m);
                e["corner"] = cymub::bitmatrix_to_json(c);
                e["corner_size"] = c.n_rows;
            } else {
                e["corner"] = nullptr;
                e["corner_size"] = 0;
            }
            entries.push_back(e);
        }
        return emit(opts, nlohmann::json{{"entries", entries}}.dump(2));
    }
    std::ostringstream out;
    out << "tabulated corners (the seed is the staircase with the corner XORed in)\n";
    for (size_t m = 1; m <= 24; m++) {
        out << "  m=" << m << ": ";
        if (m < 4) {
            out << "bare staircase\n";
            continue;
        }
        cymub::BitMatrix c = cymub::known_corner(m);
        bool first = true;
        for (const std::string &row : c.to_row_strings()) {
            out << (first ? "" : "/") << row;
            first = false;
        }
        out << "\n";
    }
    return emit(opts, out.str());
}

int run_enumerate(size_t m, bool force, const OutputOpts &opts) {
    cymub::SearchResult r;
    try {
        r = cymub::enumerate_search(m, force);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (opts.json) {
        nlohmann::json j;
        j["m"] = r.m;
        j["tested"] = r.tested;
        j["count"] = r.hits.size();
        if (!opts.no_meta) {
            j["elapsed_ms"] = r.elapsed_ms;
        }
        nlohmann::json seeds = nlohmann::json::array();
        for (const cymub::SearchHit &hit : r.hits) {
            seeds.push_back(cymub::bitmatrix_to_json(hit.b));
        }
        j["seeds"] = seeds;
        int rc = emit(opts, j.dump(2));
        return rc != kOk ? rc : (r.hits.empty() ? kNotFound : kOk);
    }
    std::ostringstream out;
    out << "exhaustive sweep: m=" << m << ", " << r.tested << " candidates, " << r.hits.size()
        << " accepted\n";
    for (const cymub::SearchHit &hit : r.hits) {
        bool first = true;
        for (const std::string &row : hit.b.to_row_strings()) {
            out << (first ? "  " : "/") << row;
            first = false;
        }
        out << "\n";
    }
    int rc = emit(opts, out.str());
    return rc != kOk ? rc : (r.hits.empty() ? kNotFound : kOk);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"cymub: exact search and verification of cyclically generated unbiased bases"};
    app.require_subcommand(1);
    int rc = kOk;

    // --- search ---
    auto *search = app.add_subcommand("search", "sweep corner adjustments for an accepted seed");
    size_t search_m = 0;
    size_t search_max_corner = 3;
    double search_budget = 0.0;
    bool search_force = false;
    OutputOpts search_opts;
    search->add_option("-m,--size", search_m, "index size (the seed is m x m)")->required();
    search->add_option("--max-corner", search_max_corner, "largest corner size to try (2..4)");
    search->add_option("--budget", search_budget, "wall clock budget in seconds (0 = unlimited)");
    search->add_flag("--force", search_force, "allow sizes above 24");
    search->add_flag("--json", search_opts.json, "emit JSON instead of text");
    search->add_flag("--no-meta", search_opts.no_meta, "omit timing so reruns are byte-identical");
    search->add_option("--out", search_opts.out_path, "write output to a file instead of stdout");
    search->callback(
        [&]() { rc = run_search(search_m, search_max_corner, search_budget, search_force, search_opts); });

    // --- build ---
    auto *build = app.add_subcommand("build", "build a certificate for a seed");
    size_t build_m = 0;
    std::string build_corner;
    bool build_emit_u = false;
    OutputOpts build_opts;
    build->add_option("-m,--size", build_m, "index size (the seed is m x m)")->required();
    build->add_option("--corner", build_corner,
                      "corner bits row by row, e.g. 0,0,0,1 (default: tabulated corner)");
    build->add_flag("--emit-u", build_emit_u, "embed the dense generating matrix (m <= 6)");
    build->add_flag("--json", build_opts.json, "emit the certificate as JSON");
    build->add_flag("--no-meta", build_opts.no_meta, "omit timestamps so reruns are byte-identical");
    build->add_option("--out", build_opts.out_path, "write output to a file instead of stdout");
    build->callback([&]() { rc = run_build(build_m, build_corner, build_emit_u, build_opts); });

    // --- verify ---
    auto *verify = app.add_subcommand("verify", "re-verify a stored certificate");
    std::string verify_path;
    std::string verify_level = "symplectic";
    OutputOpts verify_opts;
    verify->add_option("--from-cert", verify_path, "certificate JSON file")->required();
    verify->add_option("--level", verify_level, "symplectic (default), dense or spectrum");
    verify->add_flag("--json", verify_opts.json, "emit JSON instead of text");
    verify->add_option("--out", verify_opts.out_path, "write output to a file instead of stdout");
    verify->callback([&]() { rc = run_verify(verify_path, verify_level, verify_opts); });

    // --- table ---
    auto *table = app.add_subcommand("table", "print the tabulated corners for m = 1..24");
    OutputOpts table_opts;
    table->add_flag("--json", table_opts.json, "emit JSON instead of text");
    table->add_option("--out", table_opts.out_path, "write output to a file instead of stdout");
    table->callback([&]() { rc = run_table(table_opts); });

    // --- enumerate ---
    auto *enumerate = app.add_subcommand("enumerate", "exhaustively list all accepted seeds");
    size_t enum_m = 0;
    bool enum_force = false;
    OutputOpts enum_opts;
    enumerate->add_option("-m,--size", enum_m, "index size (the seed is m x m)")->required();
    enumerate->add_flag("--force", enum_force, "extend the cap from 4 to 5");
    enumerate->add_flag("--json", enum_opts.json, "emit JSON instead of text");
    enumerate->add_flag("--no-meta", enum_opts.no_meta, "omit timing so reruns are byte-identical");
    enumerate->add_option("--out", enum_opts.out_path, "write output to a file instead of stdout");
    enumerate->callback([&]() { rc = run_enumerate(enum_m, enum_force, enum_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return rc;
}
