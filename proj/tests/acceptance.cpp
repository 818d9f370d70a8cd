// One PASS/FAIL line per acceptance criterion, derived from report-all.

#include "towerlab/suites.hpp"

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace towerlab;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        passed = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

/// Every check under a command prefix whose identity is in `identities`
/// must pass, and at least one must exist.
void require_checks(const Report& all, const std::string& prefix, const std::set<std::string>& identities,
                    Outcome& out) {
    std::set<std::string> seen;
    for (const Check& c : all.checks) {
        if (!starts_with(c.name, prefix) || !identities.count(c.identity)) {
            continue;
        }
        seen.insert(c.identity);
        if (!c.passed) {
            out.fail(c.name + " [" + c.identity + "]" + (c.detail.empty() ? "" : ": " + c.detail));
        }
    }
    for (const std::string& id : identities) {
        if (!seen.count(id)) {
            out.fail(prefix + " has no " + id + " check");
        }
    }
}

void print(const char* id, const char* title, const Outcome& o) {
    std::printf("%s %s: %s%s%s\n", id, o.passed ? "PASS" : "FAIL", title, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
}

} // namespace

int main() {
    const Report all = report_all();
    const std::string first = serialize(all, Format::Json);
    const std::string second = serialize(report_all(), Format::Json);
    const TowerParams small[] = {make_params(2, 1, 2, 1, 1), make_params(2, 1, 3, 1, 2), make_params(3, 1, 2, 1, 1)};

    std::vector<std::pair<std::string, Outcome>> results;

    {
        Outcome o;
        for (const TowerParams& t : small) {
            const std::string key = "count" + t.label();
            require_checks(all, key + "/", {"split-count"}, o);
            const Json& counts = all.data[key]["data"]["counts"];
            for (unsigned i = 1; i <= 3; ++i) {
                const std::uint64_t want = (t.ell() - 1) * detail::upow(t.qpow(t.n - 1), i - 1);
                if (counts.size() < i || counts[i - 1] != want) {
                    o.fail(t.label() + " level " + std::to_string(i));
                }
            }
        }
        results.emplace_back("AC1 splitting counts", o);
    }
    {
        Outcome o;
        for (const TowerParams& t : small) {
            require_checks(all, "verify" + t.label() + "/", {"unique-u", "kummer-x-y", "w-z-identity"}, o);
        }
        results.emplace_back("AC2 unique u, Kummer and w/z", o);
    }
    {
        Outcome o;
        for (const TowerParams& t : small) {
            require_checks(all, "verify" + t.label() + "/",
                           {"separated-x-form", "separated-z-form", "separated-x-reducible", "separated-z-reducible",
                            "u-subtower-recursion"},
                           o);
        }
        results.emplace_back("AC3 separated-variable forms", o);
    }
    {
        Outcome o;
        require_checks(all, "ramcheck/",
                       {"transitivity-square", "divisor-degree-w", "different-degree-u-over-w", "fiber-degree-sum",
                        "hurwitz-genus"},
                       o);
        if (genus_F2(make_params(2, 1, 3, 1, 2)) != 6) {
            o.fail("g(F_2) at (2,3,1,2) is not 6");
        }
        results.emplace_back("AC4 ramification calculus on the grid", o);
    }
    {
        Outcome o;
        require_checks(all, "main-claim/", {"main-claim-single-step", "main-claim-general", "b0-bound"}, o);
        results.emplace_back("AC5 main-claim identities", o);
    }
    {
        Outcome o;
        require_checks(all, "odd-power/", {"odd-power-vs-harmonic-mean", "below-drinfeld-vladut", "dv-ratio-limit"},
                       o);
        if (limit_bounds(make_params(2, 1, 3, 1, 2)).dv_ratio_limit != "0.9428") {
            o.fail("ratio limit is not 0.9428");
        }
        results.emplace_back("AC6 bounds", o);
    }
    {
        Outcome o;
        require_checks(all, "gv-scan/", {"gv-exceptions", "gv-square-boundary"}, o);
        if (all.data["gv-scan"]["data"]["exceptions"] != Json::array({8, 27, 32, 125})) {
            o.fail("exception set " + all.data["gv-scan"]["data"]["exceptions"].dump());
        }
        results.emplace_back("AC7 GV exception set", o);
    }
    {
        Outcome o;
        const std::set<std::string> ids = {"isogeny-condition", "isogenous-h", "intertwine", "torsion-point",
                                           "kernel-line", "pk-annihilation", "pk-product", "j-closed-form",
                                           "j-z-tower-link"};
        require_checks(all, "drinfeld(q=2,n=3,j=1)/", ids, o);
        require_checks(all, "drinfeld(q=3,n=3,j=1)/", ids, o);
        results.emplace_back("AC8 Drinfeld suite over GF(2^6) and GF(3^6)", o);
    }
    {
        Outcome o;
        if (first != second) {
            o.fail("report-all artifacts differ");
        }
        results.emplace_back("AC9 report-all is byte-identical across runs", o);
    }

    int failed = 0;
    for (const auto& [title, o] : results) {
        const std::string id = title.substr(0, 3);
        print(id.c_str(), title.substr(4).c_str(), o);
        failed += !o.passed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
