#include "reebmin/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "reebmin/linalg.hpp"

namespace reebmin {
namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero; b > 0
    if (q * b > a) --q;
    return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

// Integer form of one coordinate's enclosure, so the q-scan avoids rational normalization.
struct Coordinate {
    Int lo_num, lo_den, hi_num, hi_den;
    explicit Coordinate(const RealEnclosure& e) {
        const Rat lo = e.lo(), hi = e.hi();
        lo_num = mp::numerator(lo);
        lo_den = mp::denominator(lo);
        hi_num = mp::numerator(hi);
        hi_den = mp::denominator(hi);
    }
};

struct Epsilon {
    Int num, den;
    explicit Epsilon(const Rat& e) : num(mp::numerator(e)), den(mp::denominator(e)) {}
};

// For sign +1: p = floor(q hi) + 1, the least p with p / q > every point of the
// enclosure; it qualifies when p - q lo <= eps. Sign -1 mirrors this.
bool try_coordinate(const Coordinate& c, const Epsilon& eps, int sign, const Int& q, bool strict, Int& p) {
    Int gap_num, gap_den;
    if (sign > 0) {
        p = floor_div(q * c.hi_num, c.hi_den) + 1;
        gap_num = p * c.lo_den - q * c.lo_num;
        gap_den = c.lo_den;
    } else {
        p = ceil_div(q * c.lo_num, c.lo_den) - 1;
        gap_num = q * c.hi_num - p * c.hi_den;
        gap_den = c.hi_den;
    }
    // gap_num / gap_den compared with eps.num / eps.den.
    const Int lhs = gap_num * eps.den, rhs = eps.num * gap_den;
    return strict ? lhs < rhs : lhs <= rhs;
}

void check_inputs(const std::vector<RealEnclosure>& alpha, const Rat& epsilon, std::int64_t q_max) {
    if (alpha.empty()) throw Error(ErrorCode::InvalidArgument, "empty target vector");
    if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    if (q_max < 1) throw Error(ErrorCode::InvalidArgument, "q_max must be at least 1");
    for (const auto& a : alpha)
        if (a.radius < 0) throw Error(ErrorCode::InvalidArgument, "negative enclosure radius");
}

// |x - alpha| < bound for every alpha in the enclosure.
bool strictly_within(const Rat& x, const RealEnclosure& e, const Rat& bound) {
    return x - e.lo() < bound && e.hi() - x < bound;
}

// Each row of M^-1 must stay positive over the whole enclosure box.
bool box_in_open_cone(const RatMatrix& inv, const std::vector<RealEnclosure>& v) {
    for (std::size_t i = 0; i < inv.rows(); ++i) {
        Rat at_center(0), spread(0);
        for (std::size_t j = 0; j < inv.cols(); ++j) {
            at_center += inv(i, j) * v[j].center;
            spread += mp::abs(inv(i, j)) * v[j].radius;
        }
        if (at_center - spread <= 0) return false;
    }
    return true;
}

RatMatrix columns(const std::vector<RatVec>& vs) { return RatMatrix::from_cols(vs); }

std::string sign_string(const std::vector<int>& signs) {
    std::string s;
    for (int x : signs) s += x > 0 ? '+' : '-';
    return s;
}

}  // namespace

RealEnclosure RealEnclosure::parse(std::string_view value, std::optional<std::string_view> radius) {
    RealEnclosure e{parse_rat(value), Rat(0)};
    if (radius) {
        e.radius = parse_rat(*radius);
        if (e.radius < 0) throw Error(ErrorCode::ParseError, "negative enclosure radius");
    }
    return e;
}

SignedApprox dirichlet_signed(const std::vector<RealEnclosure>& alpha, const std::vector<int>& signs,
                              const Rat& epsilon, std::int64_t q_max) {
    check_inputs(alpha, epsilon, q_max);
    if (signs.size() != alpha.size()) throw Error(ErrorCode::InvalidArgument, "signs and alpha differ in length");
    for (int s : signs)
        if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "signs must be +1 or -1");
    std::vector<Coordinate> coords(alpha.begin(), alpha.end());
    const Epsilon eps(epsilon);
    IntVec p(alpha.size());
    for (std::int64_t qi = 1; qi <= q_max; ++qi) {
        const Int q(qi);
        bool ok = true;
        for (std::size_t i = 0; ok && i < coords.size(); ++i) ok = try_coordinate(coords[i], eps, signs[i], q, false, p[i]);
        if (ok) return SignedApprox{p, q, alpha, signs, epsilon};
    }
    std::string msg = "no q <= " + std::to_string(q_max) + " for sign pattern " + sign_string(signs);
    if (auto rel = small_integer_relation(alpha, 20)) {
        msg += "; the target satisfies the integer relation (";
        for (std::size_t i = 0; i < rel->size(); ++i) msg += (i ? "," : "") + (*rel)[i].str();
        msg += ") with 1";
    }
    throw Error(ErrorCode::SearchExhausted, msg);
}

ConeApprox cone_rational_approx(const std::vector<RealEnclosure>& v, const Rat& epsilon, std::int64_t q_max) {
    check_inputs(v, epsilon, q_max);
    const std::size_t r = v.size();
    if (r > 12) throw Error(ErrorCode::InvalidArgument, "cone approximation supports at most 12 coordinates");

    if (std::all_of(v.begin(), v.end(), [](const RealEnclosure& e) { return e.is_exact(); })) {
        Int den(1);
        RatVec center;
        for (const auto& e : v) {
            den = mp::lcm(den, mp::denominator(e.center));
            center.push_back(e.center);
        }
        return ConeApprox{{center}, {den}, {}, v, epsilon, {Rat(1)}};
    }

    // One scan over q records the first hit of every sign pattern; after each new
    // hit, the r-subsets containing it are tested for a simplicial cone around v.
    std::vector<Coordinate> coords(v.begin(), v.end());
    const Epsilon eps(epsilon);
    const std::size_t patterns = std::size_t(1) << r;
    std::vector<bool> seen(patterns, false);
    std::vector<RatVec> found;
    std::vector<Int> found_q;
    std::vector<std::vector<int>> found_signs;
    std::vector<Int> p_plus(r), p_minus(r);
    std::vector<bool> ok_plus(r), ok_minus(r);

    auto try_subsets_with_last = [&]() -> std::optional<ConeApprox> {
        const std::size_t m = found.size();
        if (m < r) return std::nullopt;
        std::vector<std::size_t> idx(r - 1);
        std::function<std::optional<ConeApprox>(std::size_t, std::size_t)> rec =
            [&](std::size_t depth, std::size_t start) -> std::optional<ConeApprox> {
            if (depth == r - 1) {
                std::vector<std::size_t> pick = idx;
                pick.push_back(m - 1);
                std::vector<RatVec> vs;
                for (std::size_t k : pick) vs.push_back(found[k]);
                const RatMatrix mat = columns(vs);
                if (linalg::rank(mat) != r) return std::nullopt;
                const RatMatrix inv = linalg::inverse(mat);
                if (!box_in_open_cone(inv, v)) return std::nullopt;
                RatVec center;
                for (const auto& e : v) center.push_back(e.center);
                ConeApprox out{vs, {}, {}, v, epsilon, inv * center};
                for (std::size_t k : pick) {
                    out.denominators.push_back(found_q[k]);
                    out.signs.push_back(found_signs[k]);
                }
                return out;
            }
            for (std::size_t k = start; k + (r - 1 - depth) <= m - 1; ++k) {
                idx[depth] = k;
                if (auto res = rec(depth + 1, k + 1)) return res;
            }
            return std::nullopt;
        };
        return rec(0, 0);
    };

    for (std::int64_t qi = 1; qi <= q_max; ++qi) {
        const Int q(qi);
        bool any_plus_or_minus = true;
        for (std::size_t i = 0; i < r; ++i) {
            ok_plus[i] = try_coordinate(coords[i], eps, 1, q, true, p_plus[i]);
            ok_minus[i] = try_coordinate(coords[i], eps, -1, q, true, p_minus[i]);
            if (!ok_plus[i] && !ok_minus[i]) any_plus_or_minus = false;
        }
        if (!any_plus_or_minus) continue;
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            if (seen[mask]) continue;
            bool ok = true;
            for (std::size_t i = 0; ok && i < r; ++i) ok = (mask >> i & 1) ? ok_minus[i] : ok_plus[i];
            if (!ok) continue;
            seen[mask] = true;
            RatVec vec(r);
            std::vector<int> sg(r);
            for (std::size_t i = 0; i < r; ++i) {
                sg[i] = (mask >> i & 1) ? -1 : 1;
                vec[i] = Rat(sg[i] > 0 ? p_plus[i] : p_minus[i], q);
            }
            found.push_back(std::move(vec));
            found_q.push_back(q);
            found_signs.push_back(std::move(sg));
            if (auto res = try_subsets_with_last()) return *res;
        }
    }
    throw Error(ErrorCode::SearchExhausted, "no " + std::to_string(r) + " approximants with q <= " +
                                                std::to_string(q_max) + " have the target in their positive hull (" +
                                                std::to_string(found.size()) + " sign patterns realized)");
}

bool verify_signed(const SignedApprox& a) {
    if (a.q <= 0 || a.p.size() != a.target.size() || a.signs.size() != a.target.size()) return false;
    const Rat bound = a.epsilon / Rat(a.q);
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        const Rat x(a.p[i], a.q);
        const RealEnclosure& e = a.target[i];
        if (a.signs[i] > 0) {
            if (!(x > e.hi() && x - e.lo() <= bound)) return false;
        } else if (a.signs[i] < 0) {
            if (!(x < e.lo() && e.hi() - x <= bound)) return false;
        } else {
            return false;
        }
    }
    return true;
}

bool verify_cone(const ConeApprox& a) {
    const std::size_t r = a.target.size();
    const std::size_t k = a.vectors.size();
    if (r == 0 || k == 0 || a.denominators.size() != k || a.hull_coefficients.size() != k) return false;
    RatVec center, sum(r, Rat(0));
    for (const auto& e : a.target) center.push_back(e.center);
    for (std::size_t i = 0; i < k; ++i) {
        const RatVec& vi = a.vectors[i];
        if (vi.size() != r || a.denominators[i] <= 0 || a.hull_coefficients[i] <= 0) return false;
        const Rat qi(a.denominators[i]);
        for (std::size_t j = 0; j < r; ++j) {
            if (mp::denominator(Rat(vi[j] * qi)) != 1) return false;
            if (!strictly_within(vi[j], a.target[j], a.epsilon / qi)) return false;
            sum[j] += a.hull_coefficients[i] * vi[j];
        }
    }
    if (sum != center) return false;
    if (k == 1 && a.vectors[0] == center) {
        return std::all_of(a.target.begin(), a.target.end(), [](const RealEnclosure& e) { return e.is_exact(); });
    }
    if (k != r) return false;
    const RatMatrix mat = columns(a.vectors);
    if (linalg::rank(mat) != r) return false;
    return box_in_open_cone(linalg::inverse(mat), a.target);
}

std::optional<IntVec> small_integer_relation(const std::vector<RealEnclosure>& alpha, long max_height) {
    const std::size_t m = alpha.size() + 1;
    // Keep the enumeration near 2e5 candidates.
    long h = max_height;
    while (h > 1 && std::pow(2.0 * h + 1, double(m)) > 2e5) --h;
    std::vector<long> c(m, -h);
    std::optional<IntVec> best;
    long best_height = h + 1;
    while (true) {
        long height = 0;
        bool nonzero = false;
        for (long x : c) {
            height = std::max(height, std::labs(x));
            nonzero = nonzero || x != 0;
        }
        // Normalize sign: the first nonzero entry is positive.
        auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
        if (nonzero && *first > 0 && height < best_height) {
            Rat lo(c[0]), hi(c[0]);
            for (std::size_t i = 1; i < m; ++i) {
                const Rat a = alpha[i - 1].lo() * c[i], b = alpha[i - 1].hi() * c[i];
                lo += std::min(a, b);
                hi += std::max(a, b);
            }
            if (lo <= 0 && hi >= 0) {
                best = IntVec(c.begin(), c.end());
                best_height = height;
            }
        }
        std::size_t i = 0;
        while (i < m && c[i] == h) c[i++] = -h;
        if (i == m) break;
        ++c[i];
    }
    return best;
}

}  // namespace reebmin
