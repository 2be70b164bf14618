#include "dcurve/exact.hpp"

#include "dcurve/core_metrics.hpp"
#include "dcurve/errors.hpp"

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <system_error>

namespace dcurve::exact {
namespace {

constexpr int max_fraction_digits = 18;

struct Decimal {
    std::int64_t digits = 0;
    int exponent = 0;  // value = digits * 10^exponent
};

// Parses the output of std::to_chars: [digits][.digits][e[+-]digits].
Decimal parse_decimal(std::string_view text) {
    Decimal d;
    std::size_t i = 0;
    int fraction = 0;
    bool in_fraction = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            in_fraction = true;
        } else if (c >= '0' && c <= '9') {
            d.digits = d.digits * 10 + (c - '0');
            if (in_fraction) ++fraction;
        } else {
            break;
        }
    }
    int exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && text[i] == '+') ++i;
        std::from_chars(text.data() + i, text.data() + text.size(), exp10);
    }
    d.exponent = exp10 - fraction;
    return d;
}

std::int64_t pow10(int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= 10;
    return r;
}

} // namespace

Threshold threshold(double t) {
    require_threshold(t);

    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, t);
    Decimal d = parse_decimal(std::string_view(buf, res.ptr));
    if (-d.exponent > max_fraction_digits) {
        res = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::fixed, max_fraction_digits);
        d = parse_decimal(std::string_view(buf, res.ptr));
    }
    if (d.digits == 0) {
        throw DomainError("threshold " + std::string(buf, res.ptr) +
                          " is below the exact-arithmetic resolution of 1e-18");
    }
    // t < 1 and to_chars never emits trailing zeros in shortest form, so the
    // exponent is negative here.
    Threshold out{d.digits, pow10(-d.exponent)};
    const std::int64_t g = std::gcd(out.num, out.den);
    out.num /= g;
    out.den /= g;
    return out;
}

} // namespace dcurve::exact
