#ifndef TROPCANON_RATIONAL_HPP
#define TROPCANON_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "tropcanon/errors.hpp"

namespace tropcanon {

/// Exact rational scalar used for every length, offset and function value.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Converts an integral rational to a machine integer. Throws if it is not integral.
inline std::int64_t to_int(const Rational& r) {
    if (!is_integer(r)) throw Error(ErrorKind::InvalidArgument, "rational value is not an integer");
    return numerator(r).convert_to<std::int64_t>();
}

/// Always "p/q" with q > 0 and gcd(p, q) = 1, integers included ("3/1").
inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view part) {
        if (part.empty()) throw Error(ErrorKind::Schema, "malformed rational '" + std::string(text) + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw Error(ErrorKind::Schema, "malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9')
                throw Error(ErrorKind::Schema, "malformed rational '" + std::string(text) + "'");
        }
        return BigInt(std::string(part[0] == '+' ? part.substr(1) : part));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw Error(ErrorKind::Schema, "rational denominator must be positive in '" + std::string(text) + "'");
    return Rational(num, den);
}

}  // namespace tropcanon

#endif  // TROPCANON_RATIONAL_HPP
