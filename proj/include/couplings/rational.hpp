#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "couplings/errors.hpp"

namespace couplings {

// All arithmetic in this library is exact: big integers and reduced
// rationals from GMP. No floating point anywhere on a decision path.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Serialized form is "p" or "p/q" with q > 0; always gcd-reduced.
inline std::string to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Parses "p" or "p/q". The denominator must be a positive integer literal.
inline Rat parse_rational(std::string_view text) {
    const std::string s(text);
    const auto fail = [&]() -> Rat {
        throw ParseError("invalid rational literal: \"" + s + "\"");
    };
    if (s.empty()) fail();
    const std::size_t slash = s.find('/');
    const std::string num = s.substr(0, slash);
    if (num.empty() || (!isdigit(static_cast<unsigned char>(num[0])) && num[0] != '-' && num[0] != '+') ||
        (num.size() == 1 && !isdigit(static_cast<unsigned char>(num[0]))))
        fail();
    for (std::size_t i = 1; i < num.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(num[i]))) fail();
    Int p, q = 1;
    if (p.set_str(num, 10) != 0) fail();
    if (slash != std::string::npos) {
        const std::string den = s.substr(slash + 1);
        if (den.empty()) fail();
        for (char ch : den)
            if (!isdigit(static_cast<unsigned char>(ch))) fail();
        if (q.set_str(den, 10) != 0) fail();
        if (q == 0) fail();
    }
    Rat r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace couplings
