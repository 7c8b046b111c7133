#include "reebmin/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace reebmin {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InfeasibleSystem: return "InfeasibleSystem";
        case ErrorCode::NotFullDimensional: return "NotFullDimensional";
        case ErrorCode::NotInReebCone: return "NotInReebCone";
        case ErrorCode::UnboundedCoefficient: return "UnboundedCoefficient";
        case ErrorCode::TorsionCokernel: return "TorsionCokernel";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::EmptyFiber: return "EmptyFiber";
        case ErrorCode::TorsionQuotient: return "TorsionQuotient";
        case ErrorCode::NotStrictlyConvex: return "NotStrictlyConvex";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::NonInvariant: return "NonInvariant";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Real dot(const RatVec& a, const RealVec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dot: dimension mismatch");
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) s += to_real(a[i]) * b[i];
    }
    return s;
}

bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

IntVec primitive_int(const RatVec& v) {
    Int lcm_den = 1;
    for (const auto& x : v) lcm_den = mp::lcm(lcm_den, mp::denominator(x));
    IntVec out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(lcm_den);
        out[i] = mp::numerator(scaled);
        g = mp::gcd(g, out[i]);
    }
    if (g != 0 && g != 1)
        for (auto& x : out) x /= g;
    return out;
}

RatVec primitive(const RatVec& v) { return to_rat(primitive_int(v)); }

RatVec to_rat(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

IntVec to_int(const RatVec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (mp::denominator(x) != 1) throw Error(ErrorCode::InvalidArgument, "expected an integral vector");
        out.push_back(mp::numerator(x));
    }
    return out;
}

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
    return out;
}

IntMatrix to_int(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (mp::denominator(m(i, j)) != 1)
                throw Error(ErrorCode::InvalidArgument, "expected an integral matrix");
            out(i, j) = mp::numerator(m(i, j));
        }
    return out;
}

Real to_real(const Rat& q) {
    Real r;
    r.backend() = q.backend();
    return r;
}

RealVec to_real(const RatVec& v) {
    RealVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_real(x));
    return out;
}

Rat to_rat(const Real& x) {
    if (!mp::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot convert a non-finite value to a rational");
    if (x == 0) return Rat(0);
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x.backend().data());
    Rat out(q);
    mpq_clear(q);
    return out;
}

Rat parse_rat(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> Rat { throw Error(ErrorCode::ParseError, "not a rational number: '" + s + "'"); };
    if (s.empty()) return fail();
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) return fail();
            return Rat(num, den);
        }
        std::size_t pos = 0;
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
        std::string digits;
        long long exponent = 0;
        bool seen_digit = false;
        bool in_fraction = false;
        for (; pos < s.size(); ++pos) {
            char c = s[pos];
            if (c >= '0' && c <= '9') {
                digits.push_back(c);
                seen_digit = true;
                if (in_fraction) --exponent;
            } else if (c == '.' && !in_fraction) {
                in_fraction = true;
            } else if (c == 'e' || c == 'E') {
                exponent += std::stoll(s.substr(pos + 1));
                pos = s.size();
                break;
            } else {
                return fail();
            }
        }
        if (!seen_digit) return fail();
        Int mant(digits);
        Rat value(mant);
        Int ten_pow = mp::pow(Int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
        value = exponent < 0 ? value / Rat(ten_pow) : value * Rat(ten_pow);
        return negative ? Rat(-value) : value;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        return fail();
    }
}

std::string to_string(const Rat& q) {
    if (mp::denominator(q) == 1) return mp::numerator(q).str();
    return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

std::string format_real(const Real& x, int digits) {
    if (mp::isnan(x)) return "nan";
    if (mp::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

Rat rationalize(const Real& x, const Int& max_den) {
    Rat target = to_rat(x);
    // Convergents h/k of the continued fraction of target.
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Rat rest = target;
    for (;;) {
        Int a = mp::numerator(rest) / mp::denominator(rest);
        if (mp::numerator(rest) < 0 && a * mp::denominator(rest) != mp::numerator(rest)) a -= 1;
        Int h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Rat frac = rest - Rat(a);
        if (frac == 0) break;
        rest = 1 / frac;
    }
    return Rat(h1, k1);
}

Real real_max_norm(const RealVec& v) {
    Real m = 0;
    for (const auto& x : v) {
        Real a = mp::abs(x);
        if (a > m) m = a;
    }
    return m;
}

Real real_norm2(const RealVec& v) {
    Real s = 0;
    for (const auto& x : v) s += x * x;
    return mp::sqrt(s);
}

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : previous_digits_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(previous_digits_); }

unsigned current_precision_bits() {
    return static_cast<unsigned>(std::floor(Real::default_precision() / 0.30102999566398120));
}

}  // namespace reebmin
