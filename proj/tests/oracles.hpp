// Test-only oracles, kept independent of the implementation paths they
// check. Nothing here includes csdict/hash.hpp machinery beyond the types
// needed to express expectations.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Straight-line shift-XOR fold, written before csdict::mmh_hash and kept
// separate from it. Step 1 hand trace: h=0 -> 0 ^ ((0<<10)+(0>>7)+v) = v.
// ---------------------------------------------------------------------------
inline uint64_t mmh_fold(std::string_view s) {
    uint64_t h = 0;
    for (char ch : s) {
        uint64_t v = static_cast<uint8_t>(ch);
        uint64_t shifted_up = h << 10;
        uint64_t shifted_down = h >> 7;
        h = h ^ (shifted_up + shifted_down + v);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Jenkins lookup3 hashlittle(), transcribed from the public-domain
// reference with its original macro structure. Self-test vectors (from the
// reference's driver) are asserted by jenkins_selftest() below before the
// oracle is trusted.
// ---------------------------------------------------------------------------
namespace lookup3 {

#define ORACLE_ROT(x, k) (((x) << (k)) | ((x) >> (32 - (k))))

#define ORACLE_MIX(a, b, c) \
    {                              \
        a -= c; a ^= ORACLE_ROT(c, 4);  c += b; \
        b -= a; b ^= ORACLE_ROT(a, 6);  a += c; \
        c -= b; c ^= ORACLE_ROT(b, 8);  b += a; \
        a -= c; a ^= ORACLE_ROT(c, 16); c += b; \
        b -= a; b ^= ORACLE_ROT(a, 19); a += c; \
        c -= b; c ^= ORACLE_ROT(b, 4);  b += a; \
    }

#define ORACLE_FINAL(a, b, c) \
    {                              \
        c ^= b; c -= ORACLE_ROT(b, 14); \
        a ^= c; a -= ORACLE_ROT(c, 11); \
        b ^= a; b -= ORACLE_ROT(a, 25); \
        c ^= b; c -= ORACLE_ROT(b, 16); \
        a ^= c; a -= ORACLE_ROT(c, 4);  \
        b ^= a; b -= ORACLE_ROT(a, 14); \
        c ^= b; c -= ORACLE_ROT(b, 24); \
    }

inline uint32_t hashlittle(const void* key, size_t length, uint32_t initval) {
    uint32_t a, b, c;
    a = b = c = 0xdeadbeef + static_cast<uint32_t>(length) + initval;

    const uint8_t* k = static_cast<const uint8_t*>(key);
    while (length > 12) {
        a += k[0];
        a += static_cast<uint32_t>(k[1]) << 8;
        a += static_cast<uint32_t>(k[2]) << 16;
        a += static_cast<uint32_t>(k[3]) << 24;
        b += k[4];
        b += static_cast<uint32_t>(k[5]) << 8;
        b += static_cast<uint32_t>(k[6]) << 16;
        b += static_cast<uint32_t>(k[7]) << 24;
        c += k[8];
        c += static_cast<uint32_t>(k[9]) << 8;
        c += static_cast<uint32_t>(k[10]) << 16;
        c += static_cast<uint32_t>(k[11]) << 24;
        ORACLE_MIX(a, b, c);
        length -= 12;
        k += 12;
    }

    switch (length) { // all case statements fall through
        case 12: c += static_cast<uint32_t>(k[11]) << 24; [[fallthrough]];
        case 11: c += static_cast<uint32_t>(k[10]) << 16; [[fallthrough]];
        case 10: c += static_cast<uint32_t>(k[9]) << 8; [[fallthrough]];
        case 9:  c += k[8]; [[fallthrough]];
        case 8:  b += static_cast<uint32_t>(k[7]) << 24; [[fallthrough]];
        case 7:  b += static_cast<uint32_t>(k[6]) << 16; [[fallthrough]];
        case 6:  b += static_cast<uint32_t>(k[5]) << 8; [[fallthrough]];
        case 5:  b += k[4]; [[fallthrough]];
        case 4:  a += static_cast<uint32_t>(k[3]) << 24; [[fallthrough]];
        case 3:  a += static_cast<uint32_t>(k[2]) << 16; [[fallthrough]];
        case 2:  a += static_cast<uint32_t>(k[1]) << 8; [[fallthrough]];
        case 1:  a += k[0]; break;
        case 0:  return c;
    }
    ORACLE_FINAL(a, b, c);
    return c;
}

#undef ORACLE_ROT
#undef ORACLE_MIX
#undef ORACLE_FINAL

// Published values from the reference driver.
inline bool selftest() {
    const char* four = "Four score and seven years ago";
    return hashlittle("", 0, 0) == 0xdeadbeef &&
           hashlittle("", 0, 0xdeadbeef) == 0xbd5b7dde &&
           hashlittle(four, std::strlen(four), 0) == 0x17770551 &&
           hashlittle(four, std::strlen(four), 1) == 0xcd628161;
}

} // namespace lookup3

// ---------------------------------------------------------------------------
// Chi-square survival function via the regularized incomplete gamma
// function (series + continued fraction), for pinning p-value bounds.
// ---------------------------------------------------------------------------
namespace chisq {

inline double gamma_series_p(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_cf_q(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Q(a, x) = 1 - P(a, x)
inline double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series_p(a, x);
    return gamma_cf_q(a, x);
}

// P(Chi2 >= value) with `dof` degrees of freedom.
inline double survival(double value, double dof) {
    return gamma_q(dof / 2.0, value / 2.0);
}

} // namespace chisq

} // namespace oracle
