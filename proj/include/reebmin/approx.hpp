#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reebmin/numeric.hpp"

namespace reebmin {

/// A real number known only through the closed interval [center - radius, center + radius].
struct RealEnclosure {
    Rat center;
    Rat radius;

    /// Parses a decimal or p/q string; without a radius the value is exact.
    static RealEnclosure parse(std::string_view value, std::optional<std::string_view> radius = std::nullopt);
    static RealEnclosure exact(const Rat& q) { return {q, Rat(0)}; }
    static RealEnclosure from_real(const Real& x, const Rat& radius) { return {to_rat(x), radius}; }

    Rat lo() const { return center - radius; }
    Rat hi() const { return center + radius; }
    bool is_exact() const { return radius == 0; }
};

/// 0 < signs_i (p_i / q - alpha_i) <= epsilon / q for every i.
struct SignedApprox {
    IntVec p;
    Int q;
    std::vector<RealEnclosure> target;
    std::vector<int> signs;
    Rat epsilon;
};

struct ConeApprox {
    std::vector<RatVec> vectors;
    std::vector<Int> denominators;  // q_i with q_i v_i integral
    std::vector<std::vector<int>> signs;  // sign pattern that produced each vector; empty on the rational fast path
    std::vector<RealEnclosure> target;
    Rat epsilon;
    RatVec hull_coefficients;  // target center = sum a_i v_i, all a_i > 0
};

inline constexpr std::int64_t default_q_max = 1'000'000;

/// Smallest q <= q_max satisfying the signed inequalities for every point of
/// the enclosures. Throws SearchExhausted or InvalidArgument.
SignedApprox dirichlet_signed(const std::vector<RealEnclosure>& alpha, const std::vector<int>& signs,
                              const Rat& epsilon, std::int64_t q_max = default_q_max);

/// r rational vectors near v whose positive hull contains the whole enclosure box of v.
/// If every coordinate is exact, returns v itself with its common denominator.
/// Throws SearchExhausted or InvalidArgument.
ConeApprox cone_rational_approx(const std::vector<RealEnclosure>& v, const Rat& epsilon,
                                std::int64_t q_max = default_q_max);

/// Exact re-checks against the enclosures.
bool verify_signed(const SignedApprox& a);
bool verify_cone(const ConeApprox& a);

/// Nonzero c with c_0 + sum c_i alpha_i enclosing 0 and |c_j| <= max_height, if any.
/// A heuristic test of Q-linear dependence of (1, alpha).
std::optional<IntVec> small_integer_relation(const std::vector<RealEnclosure>& alpha, long max_height);

}  // namespace reebmin
