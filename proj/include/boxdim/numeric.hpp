#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace boxdim {

using BigInt = mpz_class;
using ExactRational = mpq_class;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

/// Accepts "n", "n/d", or a plain decimal such as "0.9" / "-1.25e-3".
/// The result is the exact rational denoted by the text.
ExactRational parse_rational(std::string_view text);

std::string to_decimal(const BigInt& value);
std::string to_fraction(const ExactRational& value);

/// Number of bits in |value|; 0 for zero.
std::size_t bit_length(const BigInt& value);

BigInt pow_ui(unsigned long base, unsigned long exponent);

/// A comparison whose outcome could not be certified at the available
/// precision.
class IndeterminateComparison : public std::runtime_error {
public:
    IndeterminateComparison(const std::string& what, std::size_t required_bits)
        : std::runtime_error(what), required_bits_(required_bits) {}
    std::size_t required_bits() const noexcept { return required_bits_; }

private:
    std::size_t required_bits_;
};

/// Owning wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

private:
    mpfr_t value_;
};

/// Closed interval [lo, hi] of reals with MPFR endpoints produced by
/// outward rounding. Every arithmetic helper below keeps the true value
/// inside the interval.
class Enclosure {
public:
    explicit Enclosure(mpfr_prec_t precision);

    static Enclosure exact(double value, mpfr_prec_t precision);
    static Enclosure of(const BigInt& value, mpfr_prec_t precision);
    static Enclosure of(const ExactRational& value, mpfr_prec_t precision);

    BigFloat& lo() noexcept { return lo_; }
    BigFloat& hi() noexcept { return hi_; }
    const BigFloat& lo() const noexcept { return lo_; }
    const BigFloat& hi() const noexcept { return hi_; }
    mpfr_prec_t precision() const noexcept { return lo_.precision(); }

    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
    double midpoint() const;
    /// Relative width (hi - lo) / |mid| as a double, or absolute width near 0.
    double relative_width() const;

    /// Shortest decimal for the midpoint with `digits` significant digits.
    std::string to_string(int digits = 20) const;

    /// -1 if certainly below, +1 if certainly above, 0 if the intervals
    /// overlap.
    friend int certain_order(const Enclosure& a, const Enclosure& b);
    bool certainly_below(double bound) const;
    bool certainly_above(double bound) const;

private:
    BigFloat lo_;
    BigFloat hi_;
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
/// Product with a non-negative integer.
Enclosure operator*(const Enclosure& a, const BigInt& k);
/// Product of two enclosures with non-negative lower endpoints.
Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b);
/// Quotient by an enclosure that is strictly positive.
Enclosure div_pos(const Enclosure& a, const Enclosure& b);

/// log(n) enclosure for a positive integer.
Enclosure log_enclosure(const BigInt& n, mpfr_prec_t precision);

/// log 2, log 3, log 5, log 7 at the requested precision, cached per thread.
struct LogConstants {
    Enclosure log2;
    Enclosure log3;
    Enclosure log5;
    Enclosure log7;
};
const LogConstants& log_constants(mpfr_prec_t precision);

/// Precision schedule used by every certified comparison: start at
/// `start_bits`, double on indeterminacy, give up beyond `max_bits`.
struct PrecisionPolicy {
    std::size_t start_bits = 256;
    std::size_t max_bits = std::size_t{1} << 21;

    /// Reads BOXDIM_PRECISION_BITS when set.
    static PrecisionPolicy from_environment();
};

}  // namespace boxdim
