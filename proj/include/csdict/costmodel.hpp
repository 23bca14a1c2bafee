#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "csdict/error.hpp"

namespace csdict {

// Exact rational, stored reduced with a positive denominator.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d) {
        if (d == 0) throw ContractViolation("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const int64_t g = std::gcd(n < 0 ? -n : n, d);
        num = g == 0 ? 0 : n / g;
        den = g == 0 ? 1 : d / g;
    }

    friend bool operator==(Rational, Rational) = default;

    Rational reciprocal() const {
        if (num == 0) throw ContractViolation("Rational: reciprocal of zero");
        return Rational(den, num);
    }

    Rational operator*(Rational o) const { return Rational(num * o.num, den * o.den); }

    std::string str() const {
        return den == 1 ? std::to_string(num)
                        : std::to_string(num) + "/" + std::to_string(den);
    }
};

struct SelectivityStats {
    uint64_t n = 0;        // row count
    uint64_t distinct = 0; // distinct value count
};

struct SeekParams {
    int64_t number_of_rows = 0;
    int64_t attr_bytes = 0;   // AK
    int64_t tid_bytes = 0;    // LID
    int64_t matched_rows = 0; // MROW
    int64_t blocksize = 1;
};

inline Rational selectivity(SelectivityStats s) {
    if (s.distinct == 0) throw ContractViolation("selectivity: distinct must be >= 1");
    return Rational(static_cast<int64_t>(s.n), static_cast<int64_t>(s.distinct));
}

inline Rational pdf(Rational sel) {
    if (sel.num <= 0) throw ContractViolation("pdf: selectivity must be positive");
    return sel.reciprocal();
}

namespace detail {

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticError("seek formula: multiplication overflow");
    return r;
}

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticError("seek formula: addition overflow");
    return r;
}

inline void check_params(const SeekParams& p) {
    if (p.number_of_rows < 0 || p.attr_bytes < 0 || p.tid_bytes < 0 ||
        p.matched_rows < 0 || p.blocksize < 1)
        throw ContractViolation("SeekParams: fields must be >= 0 and blocksize >= 1");
}

} // namespace detail

// Both readings of the blocksize factor are available. Literal multiplies as
// printed; DivideByBlock computes ceil((rows*AK + LID) / blocksize) instead,
// for sensitivity analysis. Literal is the default.
enum class SeekInterpretation { Literal, DivideByBlock };

// Seeks to retrieve tuples from the scanned segment:
//   (numberOfRows * AK + LID) * blocksize
inline int64_t seeks_scanned_segment(const SeekParams& p,
                                     SeekInterpretation mode = SeekInterpretation::Literal) {
    detail::check_params(p);
    const int64_t bytes = detail::checked_add(
        detail::checked_mul(p.number_of_rows, p.attr_bytes), p.tid_bytes);
    if (mode == SeekInterpretation::DivideByBlock)
        return (bytes + p.blocksize - 1) / p.blocksize;
    return detail::checked_mul(bytes, p.blocksize);
}

// Scanned-segment seeks plus the remainder fetch:
//   ... + (MROW * AK + LID) * blocksize
inline int64_t seeks_with_remainder(const SeekParams& p,
                                    SeekInterpretation mode = SeekInterpretation::Literal) {
    detail::check_params(p);
    const int64_t bytes = detail::checked_add(
        detail::checked_mul(p.matched_rows, p.attr_bytes), p.tid_bytes);
    const int64_t second = mode == SeekInterpretation::DivideByBlock
                               ? (bytes + p.blocksize - 1) / p.blocksize
                               : detail::checked_mul(bytes, p.blocksize);
    return detail::checked_add(seeks_scanned_segment(p, mode), second);
}

} // namespace csdict
