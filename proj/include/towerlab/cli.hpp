#pragma once

#include "towerlab/error.hpp"
#include "towerlab/report.hpp"
#include "towerlab/suites.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

namespace towerlab {

enum class Command { Count, Verify, Bounds, GvScan, RamCheck, DrinfeldVerify, ReportAll };

inline Command parse_command(std::string_view s) {
    if (s == "count") return Command::Count;
    if (s == "verify") return Command::Verify;
    if (s == "bounds") return Command::Bounds;
    if (s == "gv-scan") return Command::GvScan;
    if (s == "ramcheck") return Command::RamCheck;
    if (s == "drinfeld-verify") return Command::DrinfeldVerify;
    if (s == "report-all") return Command::ReportAll;
    throw Error(ErrorCode::InvalidParameter, "unknown command '" + std::string(s) + "'");
}

struct RunConfig {
    Command command = Command::ReportAll;
    std::uint32_t p = 2;
    unsigned q_exp = 1;
    unsigned n = 3;
    std::optional<unsigned> j;
    std::optional<unsigned> k;
    unsigned levels = 3;
    std::uint64_t max_ell = 10000;
    std::string output;  // empty: stdout
    Format format = Format::Json;
};

enum ExitCode : int { kPass = 0, kValidation = 1, kAssertion = 2, kIo = 3 };

namespace detail {

/// Missing j or k is filled in from n; j defaults to 1.
inline std::pair<unsigned, unsigned> resolve_jk(const RunConfig& c) {
    if ((c.j && *c.j >= c.n) || (c.k && *c.k >= c.n)) {
        throw Error(ErrorCode::InvalidParameter, "n must equal j + k with j, k >= 1");
    }
    const unsigned j = c.j ? *c.j : (c.k ? c.n - *c.k : 1);
    const unsigned k = c.k ? *c.k : c.n - j;
    if (j == 0 || k == 0 || j + k != c.n) {
        throw Error(ErrorCode::InvalidParameter, "n must equal j + k with j, k >= 1");
    }
    return {j, k};
}

inline TowerParams tower_of(const RunConfig& c) {
    const auto [j, k] = resolve_jk(c);
    return make_params(c.p, c.q_exp, c.n, j, k);
}

} // namespace detail

/// Rejects invalid combinations before any computation.
inline void validate(const RunConfig& c) {
    switch (c.command) {
    case Command::Count:
    case Command::Verify: {
        const TowerParams t = detail::tower_of(c);
        if (c.levels == 0 || (c.command == Command::Verify && c.levels < 2)) {
            throw Error(ErrorCode::InvalidParameter, "levels must be at least 1 (2 for verify)");
        }
        const auto per_root = detail::checked_pow(t.qpow(t.n - 1), c.levels - 1, kEnumerationCap);
        std::uint64_t field = t.ell();
        if (c.command == Command::Verify) {
            field *= t.ell();
        }
        if (field > kEnumerationCap || !per_root || (c.command == Command::Verify && *per_root * (field - 1) > kEnumerationCap)) {
            throw Error(ErrorCode::CapExceeded, "requested enumeration exceeds the cap of 2^20");
        }
        break;
    }
    case Command::RamCheck:
        detail::tower_of(c);
        break;
    case Command::Bounds:
        if (!detail::is_prime(c.p)) {
            throw Error(ErrorCode::NonPrime, std::to_string(c.p) + " is not prime");
        }
        if (c.q_exp == 0 || c.n < 2) {
            throw Error(ErrorCode::InvalidParameter, "need q_exp >= 1 and n >= 2");
        }
        if (c.j || c.k) {
            detail::tower_of(c);
        }
        break;
    case Command::GvScan:
        if (c.max_ell < 125) {
            throw Error(ErrorCode::InvalidParameter, "max-ell must be at least 125");
        }
        if (c.max_ell > 1000000) {
            throw Error(ErrorCode::CapExceeded, "max-ell is limited to 10^6");
        }
        break;
    case Command::DrinfeldVerify: {
        const unsigned j = c.j ? *c.j : 1;
        make_drinfeld_params(c.p, c.q_exp, c.n, j);
        if (c.k && *c.k != c.n - j) {
            throw Error(ErrorCode::InvalidParameter, "n must equal j + k");
        }
        break;
    }
    case Command::ReportAll:
        break;
    }
}

inline Report build_report(const RunConfig& c) {
    switch (c.command) {
    case Command::Count: return count_suite(detail::tower_of(c), c.levels);
    case Command::Verify: return verify_suite(detail::tower_of(c), c.levels);
    case Command::RamCheck: return ramcheck_suite({detail::tower_of(c)}, true);
    case Command::Bounds: {
        if (c.j || c.k) {
            Report r = bounds_suite(c.p, c.q_exp, c.n);
            const TowerParams t = detail::tower_of(c);
            auto& rows = r.table->rows;
            std::erase_if(rows, [&t](const Json& row) {
                return !(row["j"] == t.j && row["k"] == t.k) && !(row["j"] == t.k && row["k"] == t.j);
            });
            return r;
        }
        return bounds_suite(c.p, c.q_exp, c.n);
    }
    case Command::GvScan: return gv_suite(c.max_ell);
    case Command::DrinfeldVerify: return drinfeld_suite(make_drinfeld_params(c.p, c.q_exp, c.n, c.j ? *c.j : 1));
    case Command::ReportAll: return report_all();
    }
    throw Error(ErrorCode::InvalidParameter, "unhandled command");
}

/// Validates, runs the suite, writes the artifact. Diagnostics go to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Report report;
    try {
        validate(c);
        report = build_report(c);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    const std::string bytes = serialize(report, c.format);
    if (c.output.empty()) {
        out << bytes;
        out.flush();
        if (!out) {
            err << "error: failed writing to stdout\n";
            return kIo;
        }
    } else {
        std::ofstream file(c.output, std::ios::binary | std::ios::trunc);
        file << bytes;
        file.close();
        if (!file) {
            err << "error: cannot write " << c.output << "\n";
            return kIo;
        }
    }
    if (!report.passed()) {
        for (const Check& chk : report.checks) {
            if (!chk.passed) {
                err << "FAIL " << chk.name << " [" << chk.identity << "]: " << chk.detail << "\n";
            }
        }
        return kAssertion;
    }
    return kPass;
}

} // namespace towerlab
