#pragma once

#include <string>
#include <vector>

#include "couplings/errors.hpp"
#include "couplings/good_sets.hpp"
#include "couplings/rational.hpp"

namespace couplings {

/// Exact decimal rendering of a rational to `sig_digits` significant
/// digits (half-up), printf %g style. Display only; never used in
/// comparisons.
inline std::string decimal_string(const Rat& value, int sig_digits = 6) {
    if (sig_digits < 1) throw ValidationError("precision must be >= 1");
    if (value == 0) return "0";
    const bool negative = value < 0;
    const Int p = negative ? Int(-value.get_num()) : Int(value.get_num());
    const Int q = value.get_den();

    // Decimal exponent e with 10^e <= p/q < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 10)) + 1;
    const auto pow10 = [](unsigned long k) { return int_pow(10, k); };
    while (e >= 0 ? p < q * pow10(e) : p * pow10(-e) < q) --e;
    while (e + 1 >= 0 ? p >= q * pow10(e + 1) : p * pow10(-(e + 1)) >= q) ++e;

    // First sig_digits digits, rounded half-up: N = round(p/q * 10^(D-1-e)).
    const long shift = sig_digits - 1 - e;
    Int num = p, den = q;
    if (shift >= 0)
        num *= pow10(shift);
    else
        den *= pow10(-shift);
    Int scaled = (2 * num + den) / (2 * den);
    if (scaled >= pow10(sig_digits)) {  // rounding carried into a new digit
        scaled /= 10;
        ++e;
    }
    std::string digits = scaled.get_str();

    std::string out = negative ? "-" : "";
    const auto strip = [](std::string s) {
        while (!s.empty() && s.back() == '0') s.pop_back();
        return s;
    };
    if (e >= 0 && e < sig_digits) {
        out += digits.substr(0, e + 1);
        const std::string frac = strip(digits.substr(e + 1));
        if (!frac.empty()) out += "." + frac;
    } else if (e < 0 && e >= -4) {
        out += "0." + std::string(-e - 1, '0') + strip(digits);
    } else {
        out += digits.substr(0, 1);
        const std::string frac = strip(digits.substr(1));
        if (!frac.empty()) out += "." + frac;
        out += "e";
        out += (e < 0 ? "-" : "+");
        const std::string mag = std::to_string(e < 0 ? -e : e);
        out += (mag.size() < 2 ? "0" + mag : mag);
    }
    return out;
}

/// One row of the decay table: the maximal-good-set count against the
/// binomial it is measured against.
struct RatioRecord {
    int m = 0;
    int n = 0;
    Int tree_count;
    Int binom;
    Rat ratio;
    std::string ratio_decimal;
};

inline RatioRecord ratio_exact(int m, int n, int precision = 6) {
    RatioRecord rec;
    rec.m = m;
    rec.n = n;
    rec.tree_count = count_maximal_good(m, n);
    rec.binom = binomial(static_cast<unsigned long>(m) * n, static_cast<unsigned long>(m + n - 1));
    rec.ratio = Rat(rec.tree_count, rec.binom);
    rec.ratio.canonicalize();
    rec.ratio_decimal = decimal_string(rec.ratio, precision);
    return rec;
}

/// Constant-alpha variant: a^(m1+n1-1) m1^(n1-1) n1^(m1-1) maximal G-good
/// sets against binomial(a*m1*n1, m1+n1-1). Reduces to ratio_exact at a=1.
inline Rat ratio_constant_alpha(int m1, int n1, int a) {
    if (m1 < 1 || n1 < 1 || a < 1)
        throw ValidationError("ratio_constant_alpha needs m1, n1, a >= 1");
    const Int num = int_pow(a, static_cast<unsigned long>(m1 + n1 - 1)) *
                    int_pow(m1, static_cast<unsigned long>(n1 - 1)) *
                    int_pow(n1, static_cast<unsigned long>(m1 - 1));
    const Int den = binomial(static_cast<unsigned long>(a) * m1 * n1,
                             static_cast<unsigned long>(m1 + n1 - 1));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::vector<RatioRecord> ratio_table(int m_lo, int m_hi, int n_lo, int n_hi,
                                            int precision = 6) {
    if (m_lo < 1 || n_lo < 1 || m_hi < m_lo || n_hi < n_lo)
        throw ValidationError("empty or invalid ratio table range");
    std::vector<RatioRecord> rows;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int n = n_lo; n <= n_hi; ++n) rows.push_back(ratio_exact(m, n, precision));
    return rows;
}

inline std::vector<RatioRecord> ratio_table_diagonal(int lo, int hi, int precision = 6) {
    if (lo < 1 || hi < lo) throw ValidationError("empty or invalid ratio table range");
    std::vector<RatioRecord> rows;
    for (int m = lo; m <= hi; ++m) rows.push_back(ratio_exact(m, m, precision));
    return rows;
}

}  // namespace couplings
