#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "pzeta/errors.hpp"

namespace pzeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// q^e as an exact rational; e may be negative.
inline Rat q_pow(long q, long e) {
    Int num = 1, den = 1;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i)
        (e >= 0 ? num : den) *= q;
    return Rat(num, den);
}

// Canonical decimal-free rendering: "num" when the denominator is 1, else "num/den".
inline std::string rat_str(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline Rat parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw invalid_params_error("bad rational literal: " + s);
    }
}

// p-adic valuation of a nonzero integer.
inline long valuation(Int x, long p) {
    if (x == 0)
        throw degenerate_error("valuation of zero");
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline long valuation(const Rat& x, long p) {
    return valuation(boost::multiprecision::numerator(x), p) -
           valuation(boost::multiprecision::denominator(x), p);
}

} // namespace pzeta
