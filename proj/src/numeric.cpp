#include "boxdim/numeric.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

namespace boxdim {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) {
        throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
    BigInt value(std::string(body), 10);
    return negative ? BigInt(-value) : value;
}

ExactRational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_bigint(text.substr(0, slash));
        BigInt den = parse_bigint(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        ExactRational q(num, den);
        q.canonicalize();
        return q;
    }

    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = body.substr(e + 1);
        BigInt exp_value = parse_bigint(exp_text);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 100000) {
            throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
        }
        exponent = exp_value.get_si();
        body = body.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
        }
        digits = std::string(whole) + std::string(frac);
        fraction_digits = static_cast<long>(frac.size());
    } else {
        if (!all_digits(body)) {
            throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
        }
        digits = std::string(body);
    }
    BigInt num(digits, 10);
    long scale = exponent - fraction_digits;
    ExactRational q;
    if (scale >= 0) {
        q = ExactRational(num * pow_ui(10, static_cast<unsigned long>(scale)));
    } else {
        q = ExactRational(num, pow_ui(10, static_cast<unsigned long>(-scale)));
        q.canonicalize();
    }
    return negative ? ExactRational(-q) : q;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

std::string to_fraction(const ExactRational& value) {
    if (value.get_den() == 1) {
        return value.get_num().get_str(10);
    }
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

std::size_t bit_length(const BigInt& value) {
    if (value == 0) {
        return 0;
    }
    return mpz_sizeinbase(value.get_mpz_t(), 2);
}

BigInt pow_ui(unsigned long base, unsigned long exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
    return result;
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

// --------------------------------------------------------------- Enclosure

Enclosure::Enclosure(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Enclosure Enclosure::exact(double value, mpfr_prec_t precision) {
    Enclosure e(std::max<mpfr_prec_t>(precision, 53));
    mpfr_set_d(e.lo_.get(), value, MPFR_RNDD);
    mpfr_set_d(e.hi_.get(), value, MPFR_RNDU);
    return e;
}

Enclosure Enclosure::of(const BigInt& value, mpfr_prec_t precision) {
    Enclosure e(precision);
    mpfr_set_z(e.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(e.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::of(const ExactRational& value, mpfr_prec_t precision) {
    Enclosure e(precision);
    mpfr_set_q(e.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
    return e;
}

double Enclosure::midpoint() const {
    BigFloat mid(precision() + 1);
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mid.to_double();
}

double Enclosure::relative_width() const {
    BigFloat diff(precision());
    mpfr_sub(diff.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_zero_p(lo_.get()) != 0) {
        return diff.to_double();
    }
    BigFloat mag(precision());
    mpfr_abs(mag.get(), lo_.get(), MPFR_RNDD);
    mpfr_div(diff.get(), diff.get(), mag.get(), MPFR_RNDU);
    return diff.to_double();
}

std::string Enclosure::to_string(int digits) const {
    BigFloat mid(precision() + 1);
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    char* text = nullptr;
    mpfr_asprintf(&text, "%.*Rg", digits, mid.get());
    std::string out(text);
    mpfr_free_str(text);
    return out;
}

int certain_order(const Enclosure& a, const Enclosure& b) {
    if (mpfr_less_p(a.hi_.get(), b.lo_.get()) != 0) {
        return -1;
    }
    if (mpfr_greater_p(a.lo_.get(), b.hi_.get()) != 0) {
        return 1;
    }
    return 0;
}

bool Enclosure::certainly_below(double bound) const { return mpfr_cmp_d(hi_.get(), bound) < 0; }
bool Enclosure::certainly_above(double bound) const { return mpfr_cmp_d(lo_.get(), bound) > 0; }

namespace {

mpfr_prec_t joint_precision(const Enclosure& a, const Enclosure& b) {
    return std::max(a.precision(), b.precision());
}

}  // namespace

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure r(joint_precision(a, b));
    mpfr_add(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_add(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    Enclosure r(joint_precision(a, b));
    mpfr_sub(r.lo().get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
    mpfr_sub(r.hi().get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
    return r;
}

Enclosure operator*(const Enclosure& a, const BigInt& k) {
    if (k < 0) {
        throw std::invalid_argument("enclosure scaling requires a non-negative integer");
    }
    Enclosure r(a.precision());
    mpfr_mul_z(r.lo().get(), a.lo().get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi().get(), a.hi().get(), k.get_mpz_t(), MPFR_RNDU);
    return r;
}

Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b) {
    if (mpfr_sgn(a.lo().get()) < 0 || mpfr_sgn(b.lo().get()) < 0) {
        throw std::invalid_argument("mul_nonneg requires non-negative operands");
    }
    Enclosure r(joint_precision(a, b));
    mpfr_mul(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_mul(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Enclosure div_pos(const Enclosure& a, const Enclosure& b) {
    if (mpfr_sgn(b.lo().get()) <= 0) {
        throw std::invalid_argument("div_pos requires a strictly positive divisor");
    }
    Enclosure r(joint_precision(a, b));
    const bool lo_nonneg = mpfr_sgn(a.lo().get()) >= 0;
    const bool hi_nonneg = mpfr_sgn(a.hi().get()) >= 0;
    mpfr_div(r.lo().get(), a.lo().get(), lo_nonneg ? b.hi().get() : b.lo().get(), MPFR_RNDD);
    mpfr_div(r.hi().get(), a.hi().get(), hi_nonneg ? b.lo().get() : b.hi().get(), MPFR_RNDU);
    return r;
}

Enclosure log_enclosure(const BigInt& n, mpfr_prec_t precision) {
    if (n <= 0) {
        throw std::domain_error("log of a non-positive integer");
    }
    Enclosure r(precision);
    BigFloat tmp(precision);
    mpfr_set_z(tmp.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(r.lo().get(), tmp.get(), MPFR_RNDD);
    mpfr_set_z(tmp.get(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(r.hi().get(), tmp.get(), MPFR_RNDU);
    return r;
}

const LogConstants& log_constants(mpfr_prec_t precision) {
    thread_local std::map<mpfr_prec_t, LogConstants> cache;
    auto it = cache.find(precision);
    if (it == cache.end()) {
        auto make = [precision](unsigned long n) {
            Enclosure e(precision);
            mpfr_log_ui(e.lo().get(), n, MPFR_RNDD);
            mpfr_log_ui(e.hi().get(), n, MPFR_RNDU);
            return e;
        };
        it = cache.emplace(precision, LogConstants{make(2), make(3), make(5), make(7)}).first;
    }
    return it->second;
}

PrecisionPolicy PrecisionPolicy::from_environment() {
    PrecisionPolicy policy;
    if (const char* env = std::getenv("BOXDIM_PRECISION_BITS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long bits = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && bits >= 64 && bits <= policy.max_bits) {
            policy.start_bits = bits;
        }
    }
    return policy;
}

}  // namespace boxdim
