#pragma once

#include "towerlab/error.hpp"
#include "towerlab/finite_field.hpp"
#include "towerlab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace towerlab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "tower-lab/1";
inline constexpr std::string_view kVersion = "0.1.0";

enum class Format { Json, Csv, Text };

inline Format parse_format(std::string_view s) {
    if (s == "json") {
        return Format::Json;
    }
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "text") {
        return Format::Text;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown format '" + std::string(s) + "' (json, csv, text)");
}

/// Integers that fit in int64 become JSON numbers, larger ones strings.
inline Json json_int(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
    }
    return v.str();
}

inline Json json_rational(const Rational& r) {
    Json j;
    j["num"] = json_int(boost::multiprecision::numerator(r));
    j["den"] = json_int(boost::multiprecision::denominator(r));
    j["display"] = to_string(r);
    return j;
}

inline bool is_rational_json(const Json& j) {
    return j.is_object() && j.size() == 3 && j.contains("num") && j.contains("den") && j.contains("display");
}

inline Json json_felt(const Felt& x) { return encode(x); }

/// One asserted identity, evaluated over `cases` instances.
struct Check {
    std::string name;
    std::string identity;
    bool passed = true;
    std::uint64_t cases = 0;
    std::string detail;
};

/// Tabular part of a report; rows are objects keyed by the column names.
struct Table {
    std::vector<std::string> columns;
    std::vector<Json> rows;
};

struct Report {
    std::string command;
    Json params = Json::object();
    Json data = Json::object();
    std::vector<Check> checks;
    std::optional<Table> table;

    bool empty() const { return command.empty() && data.empty() && checks.empty() && !table; }

    bool passed() const {
        for (const Check& c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }

    /// Records a check; `failures` counts the failing cases among `cases`.
    Check& check(std::string name, std::string identity, std::uint64_t cases, std::uint64_t failures,
                 std::string detail = {}) {
        checks.push_back({std::move(name), std::move(identity), failures == 0, cases, std::move(detail)});
        if (failures != 0 && checks.back().detail.empty()) {
            checks.back().detail = std::to_string(failures) + " of " + std::to_string(cases) + " cases failed";
        }
        return checks.back();
    }

    /// Appends another report's checks with a name prefix and nests its data.
    void absorb(const Report& sub) {
        Json entry;
        entry["params"] = sub.params;
        entry["data"] = sub.data;
        data[sub.command] = std::move(entry);
        for (const Check& c : sub.checks) {
            Check copy = c;
            copy.name = sub.command + "/" + c.name;
            checks.push_back(std::move(copy));
        }
    }
};

inline Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const Check& c : checks) {
        Json j;
        j["name"] = c.name;
        j["identity"] = c.identity;
        j["passed"] = c.passed;
        j["cases"] = c.cases;
        if (!c.detail.empty()) {
            j["detail"] = c.detail;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

inline Json to_json(const Report& r) {
    Json out;
    out["meta"] = {{"schema", kSchema}, {"version", kVersion}};
    Json body = Json::object();
    if (!r.empty()) {
        body["command"] = r.command;
        body["params"] = r.params;
        body["passed"] = r.passed();
        body["data"] = r.data;
        if (r.table) {
            Json rows = Json::array();
            for (const Json& row : r.table->rows) {
                rows.push_back(row);
            }
            body["table"] = {{"columns", r.table->columns}, {"rows", std::move(rows)}};
        }
        body["checks"] = checks_json(r.checks);
        std::vector<Check> failed;
        for (const Check& c : r.checks) {
            if (!c.passed) {
                failed.push_back(c);
            }
        }
        body["failures"] = checks_json(failed);
    }
    out["report"] = std::move(body);
    return out;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string scalar_text(const Json& v) {
    if (is_rational_json(v)) {
        return v["display"].get<std::string>();
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

/// Exact display plus a tagged decimal companion for non-integral rationals.
inline std::string rational_text(const Json& v) {
    const std::string display = v["display"].get<std::string>();
    if (display.find('/') == std::string::npos) {
        return display;
    }
    const auto as_big = [](const Json& x) { return x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<std::int64_t>()); };
    const Rational r(as_big(v["num"]), as_big(v["den"]));
    return display + " (approx " + to_decimal(r, 6) + ")";
}

inline void text_walk(std::ostringstream& os, const Json& v, const std::string& indent) {
    for (const auto& [key, value] : v.items()) {
        if (is_rational_json(value)) {
            os << indent << key << ": " << rational_text(value) << "\n";
        } else if (value.is_object()) {
            os << indent << key << ":\n";
            text_walk(os, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && (value.front().is_object() || value.front().is_array())) {
            os << indent << key << ": [" << value.size() << " entries]\n";
            std::size_t i = 0;
            for (const Json& item : value) {
                if (item.is_object()) {
                    os << indent << "  - #" << i++ << "\n";
                    text_walk(os, item, indent + "    ");
                } else {
                    os << indent << "  - " << item.dump() << "\n";
                }
            }
        } else {
            os << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

} // namespace detail

inline std::string to_csv(const Report& r) {
    std::ostringstream os;
    if (r.table) {
        for (std::size_t i = 0; i < r.table->columns.size(); ++i) {
            os << (i ? "," : "") << detail::csv_escape(r.table->columns[i]);
        }
        os << "\n";
        for (const Json& row : r.table->rows) {
            for (std::size_t i = 0; i < r.table->columns.size(); ++i) {
                const std::string& col = r.table->columns[i];
                os << (i ? "," : "") << detail::csv_escape(row.contains(col) ? detail::scalar_text(row[col]) : "");
            }
            os << "\n";
        }
        return os.str();
    }
    os << "name,identity,passed,cases,detail\n";
    for (const Check& c : r.checks) {
        os << detail::csv_escape(c.name) << "," << detail::csv_escape(c.identity) << ","
           << (c.passed ? "true" : "false") << "," << c.cases << "," << detail::csv_escape(c.detail) << "\n";
    }
    return os.str();
}

inline std::string to_text(const Report& r) {
    std::ostringstream os;
    os << "# " << kSchema << " " << kVersion << "\n";
    if (r.empty()) {
        return os.str();
    }
    os << "command: " << r.command << "\n";
    if (!r.params.empty()) {
        os << "params:\n";
        detail::text_walk(os, r.params, "  ");
    }
    if (!r.data.empty()) {
        os << "data:\n";
        detail::text_walk(os, r.data, "  ");
    }
    if (r.table) {
        os << "table:\n";
        for (const Json& row : r.table->rows) {
            os << " ";
            for (const std::string& col : r.table->columns) {
                if (!row.contains(col)) {
                    continue;
                }
                const Json& v = row[col];
                os << " " << col << "=" << (is_rational_json(v) ? detail::rational_text(v) : detail::scalar_text(v));
            }
            os << "\n";
        }
    }
    os << "checks:\n";
    for (const Check& c : r.checks) {
        os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << " (" << c.identity << ", " << c.cases
           << " cases)";
        if (!c.detail.empty()) {
            os << ": " << c.detail;
        }
        os << "\n";
    }
    os << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline std::string serialize(const Report& r, Format f) {
    switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
    }
    return {};
}

} // namespace towerlab
