#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "csdict/error.hpp"
#include "csdict/strheap.hpp"

namespace csdict {

enum class ColumnKind {
    INT64,
    DECIMAL_CENTS, // 64-bit integer of hundredths
    DATE_DAYS,     // 64-bit integer of days since 1970-01-01
    DICT_STRING,
};

struct TupleId {
    uint64_t ordinal = 0;

    friend auto operator<=>(TupleId, TupleId) = default;
};

// Typed cell: int64 payload for the fixed kinds, string for DICT_STRING.
using CellValue = std::variant<int64_t, std::string>;

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::INT64;
    std::vector<int64_t> values; // raw values, or ElemRef indices for DICT_STRING
    std::unique_ptr<StringHeap> dict;

    // AK for the cost model: every kind is stored 8 bytes wide.
    static constexpr int64_t kAttrBytes = 8;
};

// ---------------------------------------------------------------------------
// Date and decimal text codecs (strict TPC-H .tbl forms).
// ---------------------------------------------------------------------------

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
inline int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

inline void civil_from_days(int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

inline std::optional<int64_t> parse_int(std::string_view s) {
    int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || s.empty()) return std::nullopt;
    return v;
}

} // namespace detail

inline std::optional<int64_t> parse_date_days(std::string_view s) {
    // strict YYYY-MM-DD
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = detail::parse_int(s.substr(0, 4));
    auto m = detail::parse_int(s.substr(5, 2));
    auto d = detail::parse_int(s.substr(8, 2));
    if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > 31) return std::nullopt;
    return detail::days_from_civil(static_cast<int>(*y), static_cast<unsigned>(*m),
                                   static_cast<unsigned>(*d));
}

inline std::string format_date_days(int64_t days) {
    int y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

// "d+.dd" (optional leading '-') to integer hundredths.
inline std::optional<int64_t> parse_decimal_cents(std::string_view s) {
    bool neg = false;
    if (!s.empty() && s[0] == '-') { neg = true; s.remove_prefix(1); }
    const size_t dot = s.find('.');
    if (dot == std::string_view::npos || dot == 0 || s.size() - dot - 1 != 2)
        return std::nullopt;
    auto units = detail::parse_int(s.substr(0, dot));
    auto cents = detail::parse_int(s.substr(dot + 1));
    if (!units || !cents || *units < 0 || *cents < 0) return std::nullopt;
    const int64_t v = *units * 100 + *cents;
    return neg ? -v : v;
}

inline std::string format_decimal_cents(int64_t cents) {
    const bool neg = cents < 0;
    const uint64_t abs = neg ? -static_cast<uint64_t>(cents) : cents;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%llu.%02llu", neg ? "-" : "",
                  static_cast<unsigned long long>(abs / 100),
                  static_cast<unsigned long long>(abs % 100));
    return buf;
}

// ---------------------------------------------------------------------------
// Relation
// ---------------------------------------------------------------------------

class Relation {
public:
    Relation(std::string name, std::vector<std::pair<std::string, ColumnKind>> schema,
             HashFunctionId hash_fn)
        : name_(std::move(name)), hash_fn_(hash_fn) {
        if (schema.empty())
            throw ContractViolation("relation_create: empty schema");
        for (auto& [col_name, kind] : schema) {
            for (const Column& c : columns_)
                if (c.name == col_name)
                    throw ContractViolation("relation_create: duplicate column " + col_name);
            Column c;
            c.name = col_name;
            c.kind = kind;
            if (kind == ColumnKind::DICT_STRING)
                c.dict = std::make_unique<StringHeap>(hash_fn);
            columns_.push_back(std::move(c));
        }
    }

    const std::string& name() const { return name_; }
    HashFunctionId hash_fn() const { return hash_fn_; }
    uint64_t row_count() const { return row_count_; }
    const std::vector<Column>& columns() const { return columns_; }

    const Column& column(std::string_view col_name) const {
        for (const Column& c : columns_)
            if (c.name == col_name) return c;
        throw ContractViolation("unknown column " + std::string(col_name) +
                                " in relation " + name_);
    }

    TupleId append_row(const std::vector<CellValue>& values) {
        if (values.size() != columns_.size())
            throw ContractViolation("append_row: arity mismatch");
        for (size_t i = 0; i < values.size(); ++i) {
            const bool want_str = columns_[i].kind == ColumnKind::DICT_STRING;
            if (want_str != std::holds_alternative<std::string>(values[i]))
                throw ContractViolation("append_row: kind mismatch at column " +
                                        columns_[i].name);
        }
        for (size_t i = 0; i < values.size(); ++i) {
            Column& c = columns_[i];
            if (c.kind == ColumnKind::DICT_STRING) {
                const ElemRef r = c.dict->insert(std::get<std::string>(values[i]));
                c.values.push_back(static_cast<int64_t>(r.index));
            } else {
                c.values.push_back(std::get<int64_t>(values[i]));
            }
        }
        return TupleId{row_count_++};
    }

    CellValue get_value(std::string_view col_name, TupleId t) const {
        const Column& c = column(col_name);
        if (t.ordinal >= row_count_)
            throw ContractViolation("get_value: tuple id out of range");
        if (c.kind == ColumnKind::DICT_STRING)
            return std::string(
                c.dict->deref(ElemRef{static_cast<uint64_t>(c.values[t.ordinal])}));
        return c.values[t.ordinal];
    }

    uint64_t distinct_count(std::string_view col_name) const {
        const Column& c = column(col_name);
        std::unordered_set<int64_t> seen(c.values.begin(), c.values.end());
        return seen.size();
    }

    // One .tbl line per row: '|'-separated fields with a trailing '|'.
    std::string format_row_tbl(TupleId t) const {
        std::string line;
        for (const Column& c : columns_) {
            const int64_t raw = c.values[t.ordinal];
            switch (c.kind) {
                case ColumnKind::INT64: line += std::to_string(raw); break;
                case ColumnKind::DECIMAL_CENTS: line += format_decimal_cents(raw); break;
                case ColumnKind::DATE_DAYS: line += format_date_days(raw); break;
                case ColumnKind::DICT_STRING:
                    line += c.dict->deref(ElemRef{static_cast<uint64_t>(raw)});
                    break;
            }
            line += '|';
        }
        return line;
    }

private:
    std::string name_;
    std::vector<Column> columns_;
    uint64_t row_count_ = 0;
    HashFunctionId hash_fn_;
};

inline Relation relation_create(std::string name,
                                std::vector<std::pair<std::string, ColumnKind>> schema,
                                HashFunctionId hash_fn) {
    return Relation(std::move(name), std::move(schema), hash_fn);
}

// ---------------------------------------------------------------------------
// TPC-H .tbl ingestion: '|'-separated fields, every line ends with '|'.
// ---------------------------------------------------------------------------

inline uint64_t load_tbl_line(Relation& rel, std::string_view line, uint64_t line_no) {
    if (line.empty() || line.back() != '|')
        throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                         ": missing trailing '|'");
    line.remove_suffix(1);

    std::vector<CellValue> row;
    row.reserve(rel.columns().size());
    size_t field = 0;
    size_t pos = 0;
    while (true) {
        const size_t bar = line.find('|', pos);
        const std::string_view cell =
            bar == std::string_view::npos ? line.substr(pos) : line.substr(pos, bar - pos);
        if (field >= rel.columns().size())
            throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                             ": too many fields");
        const ColumnKind kind = rel.columns()[field].kind;
        switch (kind) {
            case ColumnKind::INT64: {
                auto v = detail::parse_int(cell);
                if (!v)
                    throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                                     ": bad integer '" + std::string(cell) + "'");
                row.emplace_back(*v);
                break;
            }
            case ColumnKind::DECIMAL_CENTS: {
                auto v = parse_decimal_cents(cell);
                if (!v)
                    throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                                     ": bad decimal '" + std::string(cell) + "'");
                row.emplace_back(*v);
                break;
            }
            case ColumnKind::DATE_DAYS: {
                auto v = parse_date_days(cell);
                if (!v)
                    throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                                     ": bad date '" + std::string(cell) + "'");
                row.emplace_back(*v);
                break;
            }
            case ColumnKind::DICT_STRING:
                row.emplace_back(std::string(cell));
                break;
        }
        ++field;
        if (bar == std::string_view::npos) break;
        pos = bar + 1;
    }
    if (field != rel.columns().size())
        throw ParseError(rel.name() + ".tbl line " + std::to_string(line_no) +
                         ": expected " + std::to_string(rel.columns().size()) +
                         " fields, got " + std::to_string(field));
    rel.append_row(row);
    return 1;
}

inline uint64_t load_tbl(const std::string& path, Relation& rel) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("load_tbl: cannot open " + path);
    std::string line;
    uint64_t line_no = 0;
    uint64_t loaded = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue; // tolerate a final blank line
        loaded += load_tbl_line(rel, line, line_no);
    }
    return loaded;
}

} // namespace csdict
