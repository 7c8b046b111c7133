#include "reebmin/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <limits>

namespace reebmin {
namespace {

using i64 = long long;
using i128 = __int128;

// <u, xi> lies within center . u +- radius . |u|.
struct XiEnclosure {
    RatVec center;
    RatVec radius;
};

XiEnclosure enclose(const RatVec& xi) { return {xi, RatVec(xi.size(), Rat(0))}; }

XiEnclosure enclose(const RealVec& xi) {
    XiEnclosure e;
    for (const auto& x : xi) {
        const Rat c = to_rat(x);
        const long bits = static_cast<long>(mpfr_get_prec(x.backend().data()));
        // One unit in the last place of the stored value, doubled.
        Rat r = mp::abs(c) / Rat(Int(1) << std::max(bits - 2, 1L));
        e.center.push_back(c);
        e.radius.push_back(r);
    }
    return e;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}
Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

i64 to_i64(const Int& x) {
    if (x > std::numeric_limits<i64>::max() / 4 || x < std::numeric_limits<i64>::min() / 4)
        throw Error(ErrorCode::TooLarge, "lattice coordinate out of range");
    return x.convert_to<i64>();
}

struct Slabs {
    std::size_t n = 0;
    std::vector<std::vector<i64>> normals;  // sigma rays, primitive integral
    std::vector<i64> lo, hi;                 // bounding box
    // Integer form of the truncation: sum C_i u_i + R_i |u_i| < M.
    std::vector<Int> c, r;
    Int m;
};

Slabs make_slabs(const VCone& sigma, const VCone& dual, const XiEnclosure& xi, const Rat& m,
                 const CountOptions& options) {
    const std::size_t n = sigma.ambient_dim();
    if (xi.center.size() != n) throw Error(ErrorCode::InvalidArgument, "xi has the wrong dimension");
    if (m <= 0) throw Error(ErrorCode::InvalidArgument, "truncation level must be positive");
    Slabs s;
    s.n = n;
    for (const auto& ray : sigma.rays()) {
        std::vector<i64> a;
        for (const auto& x : primitive_int(ray)) a.push_back(to_i64(x));
        s.normals.push_back(std::move(a));
    }
    // The truncated cone is the hull of 0 and m r / <r, xi> over the dual rays.
    std::vector<Rat> bmin(n, Rat(0)), bmax(n, Rat(0));
    for (const auto& ray : dual.rays()) {
        Rat lower(0);
        for (std::size_t i = 0; i < n; ++i) lower += ray[i] * xi.center[i] - mp::abs(ray[i]) * xi.radius[i];
        if (lower <= 0) throw Error(ErrorCode::NotInReebCone, "xi is not strictly positive on the dual cone");
        for (std::size_t i = 0; i < n; ++i) {
            const Rat v = m * ray[i] / lower;
            bmin[i] = std::min(bmin[i], v);
            bmax[i] = std::max(bmax[i], v);
        }
    }
    // Slabs along the last axis are solved in closed form, so only the base box
    // of the first n - 1 coordinates is walked cell by cell.
    Int cells(1);
    for (std::size_t i = 0; i < n; ++i) {
        const Int lo = floor_div(mp::numerator(bmin[i]), mp::denominator(bmin[i]));
        const Int hi = ceil_div(mp::numerator(bmax[i]), mp::denominator(bmax[i]));
        if (i + 1 < n) cells *= hi - lo + 1;
        if (cells > Int(options.cell_budget))
            throw Error(ErrorCode::TooLarge, "enumeration box exceeds the cell budget of " + std::to_string(options.cell_budget));
        s.lo.push_back(to_i64(lo));
        s.hi.push_back(to_i64(hi));
    }
    Int den(mp::denominator(m));
    for (std::size_t i = 0; i < n; ++i) {
        den = mp::lcm(den, mp::denominator(xi.center[i]));
        den = mp::lcm(den, mp::denominator(xi.radius[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        s.c.push_back(mp::numerator(xi.center[i]) * (den / mp::denominator(xi.center[i])));
        s.r.push_back(mp::numerator(xi.radius[i]) * (den / mp::denominator(xi.radius[i])));
    }
    s.m = mp::numerator(m) * (den / mp::denominator(m));
    return s;
}

using IntervalFn = std::function<Int(const std::vector<i64>& base, i64 lo, i64 hi)>;

// Integer u_last with k u_last < rhs, intersected with [lo, hi].
void clip_linear(const Int& k, const Int& rhs, i64& lo, i64& hi) {
    if (k > 0) {
        hi = std::min(hi, to_i64(floor_div(rhs - 1, k)));
    } else if (k < 0) {
        lo = std::max(lo, to_i64(ceil_div(rhs - 1, k)));
    } else if (rhs <= 0) {
        hi = lo - 1;
    }
}

Int run_slab(const Slabs& s, const std::vector<i64>& base, const IntervalFn& fn) {
    const std::size_t last = s.n - 1;
    i64 lo = s.lo[last], hi = s.hi[last];
    for (const auto& a : s.normals) {
        i128 acc = 0;
        for (std::size_t i = 0; i < last; ++i) acc += i128(a[i]) * base[i];
        const i64 an = a[last];
        if (an > 0)
            lo = std::max<i64>(lo, i64(ceil_div(-acc, an)));
        else if (an < 0)
            hi = std::min<i64>(hi, i64(floor_div(acc, -an)));
        else if (acc < 0)
            return Int(0);
        if (lo > hi) return Int(0);
    }
    Int rest(s.m);
    for (std::size_t i = 0; i < last; ++i) {
        rest -= s.c[i] * base[i];
        rest -= s.r[i] * (base[i] < 0 ? -base[i] : base[i]);
    }
    Int total(0);
    // u_last >= 0 uses C + R, u_last < 0 uses C - R.
    i64 plo = std::max<i64>(lo, 0), phi = hi;
    clip_linear(s.c[last] + s.r[last], rest, plo, phi);
    if (plo <= phi) total += fn(base, plo, phi);
    i64 nlo = lo, nhi = std::min<i64>(hi, -1);
    clip_linear(s.c[last] - s.r[last], rest, nlo, nhi);
    if (nlo <= nhi) total += fn(base, nlo, nhi);
    return total;
}

Int enumerate(const Slabs& s, const CountOptions& options, const IntervalFn& fn) {
    const std::size_t last = s.n - 1;
    auto run_range = [&](i64 first_lo, i64 first_hi) {
        Int total(0);
        std::vector<i64> base(last);
        if (last == 0) return run_slab(s, base, fn);
        for (std::size_t i = 0; i < last; ++i) base[i] = s.lo[i];
        base[0] = first_lo;
        while (true) {
            total += run_slab(s, base, fn);
            std::size_t i = last;
            while (i-- > 0) {
                const i64 top = i == 0 ? first_hi : s.hi[i];
                if (base[i] < top) {
                    ++base[i];
                    break;
                }
                base[i] = i == 0 ? first_lo : s.lo[i];
                if (i == 0) return total;
            }
        }
    };
    if (last == 0 || options.threads <= 1) return last == 0 ? run_range(0, 0) : run_range(s.lo[0], s.hi[0]);
    const i64 span = s.hi[0] - s.lo[0] + 1;
    const i64 parts = std::min<i64>(options.threads, span);
    std::vector<std::future<Int>> futures;
    for (i64 k = 0; k < parts; ++k) {
        const i64 a = s.lo[0] + span * k / parts, b = s.lo[0] + span * (k + 1) / parts - 1;
        futures.push_back(std::async(std::launch::async, run_range, a, b));
    }
    Int total(0);
    for (auto& f : futures) total += f.get();
    return total;
}

// Vertices of each coefficient scaled to a common integer denominator.
struct ScaledPoint {
    i64 den;
    std::vector<std::vector<i64>> vertices;
};

std::vector<ScaledPoint> scale_points(const PolyhedralDivisor& d) {
    std::vector<ScaledPoint> out;
    for (const auto& pt : d.points()) {
        ScaledPoint sp;
        Int den(1);
        for (const auto& v : pt.coefficient.vertices())
            for (const auto& x : v) den = mp::lcm(den, mp::denominator(x));
        sp.den = to_i64(den);
        for (const auto& v : pt.coefficient.vertices()) {
            std::vector<i64> w;
            for (const auto& x : v) w.push_back(to_i64(mp::numerator(x) * (den / mp::denominator(x))));
            sp.vertices.push_back(std::move(w));
        }
        out.push_back(std::move(sp));
    }
    return out;
}

template <class Vec>
Int count_toric_impl(const ToricData& t, const Vec& xi, const Rat& m, const CountOptions& options) {
    if (xi.size() != t.n()) throw Error(ErrorCode::InvalidArgument, "xi has the wrong dimension");
    if (!t.in_reeb_cone(xi)) throw Error(ErrorCode::NotInReebCone, "xi is outside the Reeb cone");
    const Slabs s = make_slabs(t.sigma(), t.sigma_dual(), enclose(xi), m, options);
    return enumerate(s, options, [](const std::vector<i64>&, i64 lo, i64 hi) { return Int(hi - lo + 1); });
}

template <class Vec>
Int count_cxone_impl(const PolyhedralDivisor& d, const Vec& xi, const Rat& m, const CountOptions& options) {
    if (xi.size() != d.rank()) throw Error(ErrorCode::InvalidArgument, "xi has the wrong dimension");
    for (const auto& ray : d.sigma_dual().rays())
        if (!(dot(ray, xi) > 0)) throw Error(ErrorCode::NotInReebCone, "xi is outside the Reeb cone");
    const Slabs s = make_slabs(d.sigma(), d.sigma_dual(), enclose(xi), m, options);
    const std::vector<ScaledPoint> pts = scale_points(d);
    const std::size_t last = s.n - 1;
    // Each lattice point in a slab is visited; those visits count against the budget too.
    std::atomic<std::uint64_t> visited{0};
    return enumerate(s, options, [&](const std::vector<i64>& base, i64 lo, i64 hi) {
        if (visited.fetch_add(std::uint64_t(hi - lo + 1)) + std::uint64_t(hi - lo + 1) > options.cell_budget)
            throw Error(ErrorCode::TooLarge, "visited lattice points exceed the cell budget of " + std::to_string(options.cell_budget));
        // <u, v> = <base, v'> + u_last v_last, so keep the base part per vertex.
        std::vector<std::vector<i128>> partial(pts.size());
        for (std::size_t p = 0; p < pts.size(); ++p)
            for (const auto& v : pts[p].vertices) {
                i128 acc = 0;
                for (std::size_t i = 0; i < last; ++i) acc += i128(v[i]) * base[i];
                partial[p].push_back(acc);
            }
        Int total(0);
        i64 sum = 0;
        for (i64 u = lo; u <= hi; ++u) {
            i128 deg = 0;
            for (std::size_t p = 0; p < pts.size(); ++p) {
                i128 best = std::numeric_limits<i64>::max();
                for (std::size_t k = 0; k < pts[p].vertices.size(); ++k)
                    best = std::min(best, partial[p][k] + i128(pts[p].vertices[k][last]) * u);
                deg += floor_div(best, pts[p].den);
            }
            if (deg >= 0) sum += i64(deg) + 1;
            if (sum > (i64(1) << 60)) {
                total += sum;
                sum = 0;
            }
        }
        total += sum;
        return total;
    });
}

template <class Vec>
CountSeries make_series(std::size_t n, const std::vector<Rat>& ms, const std::function<Int(const Rat&)>& count) {
    if (ms.empty()) throw Error(ErrorCode::InvalidArgument, "no truncation levels");
    std::vector<Rat> sorted = ms;
    std::sort(sorted.begin(), sorted.end());
    CountSeries out;
    out.n = n;
    Real nfact(1);
    for (std::size_t i = 2; i <= n; ++i) nfact *= Real(static_cast<long>(i));
    for (const auto& m : sorted) {
        const Int c = count(m);
        out.truncations.emplace_back(m, c);
        out.estimates.push_back(nfact * to_real(Rat(c)) / mp::pow(to_real(m), static_cast<long>(n)));
    }
    return out;
}

}  // namespace

Int count_toric(const ToricData& t, const RatVec& xi, const Rat& m, const CountOptions& options) {
    return count_toric_impl(t, xi, m, options);
}
Int count_toric(const ToricData& t, const RealVec& xi, const Rat& m, const CountOptions& options) {
    return count_toric_impl(t, xi, m, options);
}
Int count_cxone(const PolyhedralDivisor& d, const RatVec& xi, const Rat& m, const CountOptions& options) {
    return count_cxone_impl(d, xi, m, options);
}
Int count_cxone(const PolyhedralDivisor& d, const RealVec& xi, const Rat& m, const CountOptions& options) {
    return count_cxone_impl(d, xi, m, options);
}

Int h0_cxone(const PolyhedralDivisor& d, const IntVec& u) {
    const RatVec ur = to_rat(u);
    Int deg(0);
    for (const auto& pt : d.points()) {
        const std::optional<Rat> v = polyhedron_min(pt.coefficient, ur);
        if (!v) throw Error(ErrorCode::UnboundedCoefficient, "u is not in the dual cone");
        deg += floor_div(mp::numerator(*v), mp::denominator(*v));
    }
    return deg >= 0 ? Int(deg + 1) : Int(0);
}

CountSeries count_series_toric(const ToricData& t, const RealVec& xi, const std::vector<Rat>& ms,
                               const CountOptions& options) {
    return make_series<RealVec>(t.n(), ms, [&](const Rat& m) { return count_toric(t, xi, m, options); });
}

CountSeries count_series_cxone(const ComplexityOneData& c, const RealVec& xi, const std::vector<Rat>& ms,
                               const CountOptions& options) {
    return make_series<RealVec>(c.divisor().n(), ms,
                                [&](const Rat& m) { return count_cxone(c.divisor(), xi, m, options); });
}

VolEstimate vol_estimate(const CountSeries& series) {
    const std::size_t k = series.estimates.size();
    if (k < 3 || series.truncations.size() != k)
        throw Error(ErrorCode::InvalidArgument, "volume extrapolation needs at least three truncations");
    VolEstimate out;
    out.last_raw = series.estimates.back();
    // Solve V + c1 x + c2 x^2 = e at x = 1/m for the last three points.
    Real x[3], e[3];
    for (std::size_t i = 0; i < 3; ++i) {
        x[i] = 1 / to_real(series.truncations[k - 3 + i].first);
        e[i] = series.estimates[k - 3 + i];
    }
    // Lagrange interpolation evaluated at x = 0.
    Real v(0);
    for (std::size_t i = 0; i < 3; ++i) {
        Real w(1);
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i) w *= x[j] / (x[j] - x[i]);
        v += w * e[i];
    }
    out.value = v;
    bool up = true, down = true;
    for (std::size_t i = 1; i < k; ++i) {
        if (series.estimates[i] < series.estimates[i - 1]) up = false;
        if (series.estimates[i] > series.estimates[i - 1]) down = false;
    }
    out.monotone = up || down;
    out.settling = true;
    for (std::size_t i = 2; i < k; ++i)
        if (mp::abs(series.estimates[i] - series.estimates[i - 1]) > mp::abs(series.estimates[i - 1] - series.estimates[i - 2]))
            out.settling = false;
    out.diagnostic = std::string(out.monotone ? "monotone" : "non-monotone") + ", " +
                     (out.settling ? "settling" : "not settling") + ", raw " + format_real(out.last_raw) +
                     ", extrapolated " + format_real(out.value);
    return out;
}

}  // namespace reebmin
