#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace undom {

using rational = boost::multiprecision::cpp_rational;
using big_int = boost::multiprecision::cpp_int;

inline rational make_rational(std::int64_t num, std::int64_t den) {
    return rational(big_int(num), big_int(den));
}

inline double to_double(const rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// "p/q" (or "p" for integers).
inline std::string to_string(const rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// A committee-domination threshold alpha in (0, 1], kept as a reduced integer pair so
/// that the strict "< alpha" test is an integer cross-multiplication.
class rational_threshold {
public:
    rational_threshold(std::int64_t numerator, std::int64_t denominator);

    /// Parses "P/Q" (or "1"). Throws input_error on anything else.
    static rational_threshold parse(std::string_view text);

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }
    rational value() const { return make_rational(num_, den_); }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// floor(alpha * n): the largest voter subset the confined attacker may pick.
    std::int64_t floor_times(std::int64_t n) const noexcept { return (num_ * n) / den_; }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const rational_threshold&, const rational_threshold&) = default;

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace undom
