#ifndef SAW_NUMERIC_HPP
#define SAW_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace saw {

/// Exact walk counts. Enumeration hot loops accumulate in uint64_t work
/// buffers (one increment per enumerated walk, so they cannot wrap) and are
/// merged into BigInt, which carries all public series arithmetic.
using BigInt = boost::multiprecision::cpp_int;

/// High-precision real (~100 decimal digits) for fixed-point iteration,
/// root solving, and exponent regressions.
using Real = boost::multiprecision::cpp_bin_float_100;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt bigint_from_decimal(const std::string& s) { return BigInt(s); }

inline std::string real_to_string(const Real& x, int digits = 50) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

/// C(n, k) with exact integer arithmetic.
inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt pow2(int n) {
    BigInt r = 1;
    return r << n;
}

/// phi = (1 + sqrt 5) / 2, the golden mean.
inline Real golden_mean() {
    return (1 + sqrt(Real(5))) / 2;
}

inline Real golden_mean_inverse() {
    return (sqrt(Real(5)) - 1) / 2;
}

/// Convolution of integer coefficient sequences, truncated to out_len terms.
inline std::vector<BigInt> poly_mul(const std::vector<BigInt>& a,
                                    const std::vector<BigInt>& b,
                                    std::size_t out_len) {
    std::vector<BigInt> out(out_len, BigInt(0));
    for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

} // namespace saw

#endif // SAW_NUMERIC_HPP
