// Copyright 2026 The stabkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabkit/errors.hpp"

namespace stabkit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Every coordinate and every cost in the library is a Scalar.
using Scalar = boost::multiprecision::cpp_rational;

inline BigInt num(const Scalar& s) { return boost::multiprecision::numerator(s); }
inline BigInt den(const Scalar& s) { return boost::multiprecision::denominator(s); }

/// Largest integer not above `s`.
inline BigInt floor_int(const Scalar& s) {
    BigInt n = num(s);
    BigInt d = den(s);
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) {
        --q;
    }
    return q;
}

/// Smallest integer not below `s`.
inline BigInt ceil_int(const Scalar& s) { return -floor_int(-s); }

/// 2^t for any integer t (negative allowed).
inline Scalar pow2(int t) {
    BigInt one = 1;
    if (t >= 0) {
        return Scalar(BigInt(one << t));
    }
    return Scalar(one, BigInt(one << -t));
}

/// The unique integer t with 2^(t-1) < w <= 2^t. Requires w > 0.
inline int ceil_log2(const Scalar& w) {
    if (w <= 0) {
        throw ParameterError("ceil_log2 of a non-positive value");
    }
    int t = static_cast<int>(boost::multiprecision::msb(num(w))) -
            static_cast<int>(boost::multiprecision::msb(den(w)));
    while (pow2(t) < w) {
        ++t;
    }
    while (pow2(t - 1) >= w) {
        --t;
    }
    return t;
}

/// Parses "7", "-3", "1.25", ".5" or "p/q" exactly.
inline Scalar parse_scalar(std::string_view text) {
    auto fail = [&] { return ParameterError("invalid scalar literal '" + std::string(text) + "'"); };
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Scalar value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto p = body.substr(0, slash);
        auto q = body.substr(slash + 1);
        if (!is_digits(p) || !is_digits(q)) throw fail();
        BigInt qi(std::string{q});
        if (qi == 0) throw fail();
        value = Scalar(BigInt(std::string{p}), qi);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot);
        auto fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !is_digits(ip)) ||
            (!fp.empty() && !is_digits(fp))) {
            throw fail();
        }
        BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string{ip});
        BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string{fp});
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
        value = Scalar(whole * scale + frac, scale);
    } else {
        if (!is_digits(body)) throw fail();
        value = Scalar(BigInt(std::string{body}));
    }
    return negative ? Scalar(-value) : value;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Scalar& s) {
    if (den(s) == 1) {
        return num(s).str();
    }
    return num(s).str() + "/" + den(s).str();
}

/// Decimal rendering with `places` digits, rounded half away from zero.
inline std::string to_decimal(const Scalar& s, int places = 6) {
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
    Scalar scaled = (s < 0 ? Scalar(-s) : s) * Scalar(scale);
    BigInt r = floor_int(scaled + Scalar(1, 2));
    std::string digits = r.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    if (s < 0 && r != 0) {
        digits.insert(0, "-");
    }
    return digits;
}

}  // namespace stabkit
