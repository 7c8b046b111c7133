#include "reebmin/problem.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "reebmin/futaki.hpp"
#include "reebmin/oracle.hpp"

namespace reebmin {
namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
    return j.at(key);
}

Rat rat_of(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(Int(v.get<long long>()));
    if (v.is_string()) {
        try {
            return parse_rat(v.get<std::string>());
        } catch (const Error&) {
            parse_fail(where + ": not a rational number");
        }
    }
    parse_fail(where + ": expected an integer or a \"p/q\" / decimal string");
}

Int int_of(const Json& v, const std::string& where) {
    const Rat q = rat_of(v, where);
    if (mp::denominator(q) != 1) parse_fail(where + ": expected an integer");
    return mp::numerator(q);
}

Real real_of(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Real(v.get<long long>());
    if (v.is_number_float()) return Real(v.get<double>());
    if (v.is_string()) return to_real(rat_of(v, where));
    parse_fail(where + ": expected a number");
}

const Json& array_of(const Json& v, const std::string& where) {
    if (!v.is_array()) parse_fail(where + ": expected an array");
    return v;
}

RatVec ratvec_of(const Json& v, const std::string& where) {
    RatVec out;
    for (const auto& x : array_of(v, where)) out.push_back(rat_of(x, where));
    return out;
}

IntVec intvec_of(const Json& v, const std::string& where) {
    IntVec out;
    for (const auto& x : array_of(v, where)) out.push_back(int_of(x, where));
    return out;
}

std::vector<RatVec> ratrows_of(const Json& v, const std::string& where, std::size_t& dim) {
    std::vector<RatVec> rows;
    for (const auto& r : array_of(v, where)) {
        rows.push_back(ratvec_of(r, where));
        if (rows.size() == 1) dim = rows.back().size();
        if (rows.back().size() != dim) parse_fail(where + ": rows have different lengths");
    }
    if (rows.empty()) parse_fail(where + ": empty");
    return rows;
}

IntMatrix intmatrix_of(const Json& v, const std::string& where) {
    std::vector<IntVec> rows;
    for (const auto& r : array_of(v, where)) rows.push_back(intvec_of(r, where));
    if (rows.empty()) parse_fail(where + ": empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) parse_fail(where + ": ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

VCone cone_of(const Json& v, const std::string& where) {
    std::size_t dim = 0;
    std::vector<RatVec> rays = ratrows_of(v, where, dim);
    return VCone(dim, rays);
}

// Entries given as integers or strings stay exact; JSON floats make the vector floating.
ReebVector reeb_of(const Json& v, const std::string& where) {
    bool exact = true;
    for (const auto& x : array_of(v, where))
        if (x.is_number_float()) exact = false;
    if (exact) return ReebVector::from_exact(ratvec_of(v, where));
    RealVec out;
    for (const auto& x : v) out.push_back(real_of(x, where));
    return ReebVector::from_real(out);
}

RealEnclosure enclosure_of(const Json& v, const std::string& where) {
    if (v.is_object()) {
        const Rat c = rat_of(require(v, "value", where), where);
        const Rat r = v.contains("radius") ? rat_of(v.at("radius"), where) : Rat(0);
        if (r < 0) parse_fail(where + ": negative radius");
        return {c, r};
    }
    return RealEnclosure::exact(rat_of(v, where));
}

Polyhedron coefficient_of(const Json& pt, const VCone& sigma, const std::string& where) {
    if (pt.contains("vertices")) {
        std::size_t dim = 0;
        std::vector<RatVec> verts = ratrows_of(pt.at("vertices"), where + ".vertices", dim);
        if (dim != sigma.ambient_dim()) parse_fail(where + ": vertex dimension differs from sigma");
        return Polyhedron(std::move(verts), sigma);
    }
    if (pt.contains("halfspaces")) {
        HRep h(sigma.ambient_dim());
        for (const auto& row : array_of(pt.at("halfspaces"), where + ".halfspaces")) {
            RatVec normal = ratvec_of(require(row, "normal", where), where + ".normal");
            if (normal.size() != sigma.ambient_dim()) parse_fail(where + ": halfspace dimension differs from sigma");
            h.add(std::move(normal), rat_of(require(row, "offset", where), where + ".offset"));
        }
        return vertex_enumeration(h);
    }
    parse_fail(where + ": a point needs \"vertices\" or \"halfspaces\"");
}

std::string label_of(const Json& pt, std::size_t index) {
    if (pt.contains("label")) {
        if (!pt.at("label").is_string()) parse_fail("points: label must be a string");
        return pt.at("label").get<std::string>();
    }
    return std::to_string(index);
}

// --- output helpers ---

Json int_json(const Int& x) {
    if (x <= std::numeric_limits<long long>::max() && x >= std::numeric_limits<long long>::min())
        return x.convert_to<long long>();
    return x.str();
}

Json rat_json(const Rat& q) { return to_string(q); }
Json real_json(const Real& x) { return format_real(x, 12); }

Json json_of(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

Json json_of(const RealVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(real_json(x));
    return a;
}

Json json_of(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

Json json_of(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(json_of(m.row(i)));
    return a;
}

Json rays_json(const VCone& c) {
    Json a = Json::array();
    for (const auto& r : c.rays()) a.push_back(json_of(primitive_int(r)));
    return a;
}

Json number(const Real& value, const std::optional<Rat>& exact, const char* provenance) {
    Json j;
    j["value"] = real_json(value);
    if (exact) j["exact"] = rat_json(*exact);
    j["provenance"] = provenance;
    return j;
}

struct Resolved {
    MinimizeOptions minimize;
    unsigned threads = 1;
};

Resolved resolve(const ProblemSpec& spec, const RunOptions& options) {
    Resolved r;
    r.minimize.precision_bits = options.precision_bits.value_or(spec.precision_bits.value_or(128));
    if (r.minimize.precision_bits < 32) throw Error(ErrorCode::InvalidArgument, "precision must be at least 32 bits");
    r.minimize.max_iter = options.max_iter.value_or(spec.max_iter.value_or(200));
    if (r.minimize.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
    r.minimize.tolerance = options.tolerance.value_or(spec.tolerance.value_or(Real("1e-9")));
    if (!(r.minimize.tolerance > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    r.threads = std::max(1u, options.threads);
    return r;
}

std::optional<ToricData> toric_of(const ProblemSpec& spec) {
    if (spec.toric) return spec.toric;
    if (spec.binomial) return binomial_to_toric(*spec.binomial);
    return std::nullopt;
}

[[noreturn]] void not_applicable(Command c, const ProblemSpec& spec, const std::string& why = "") {
    throw Error(ErrorCode::InvalidArgument, "command '" + std::string(command_name(c)) + "' does not apply to kind '" +
                                                spec.kind + "'" + (why.empty() ? "" : " (" + why + ")"));
}

const ComplexityOneData& cxone_of(Command c, const ProblemSpec& spec) {
    if (!spec.cxone) not_applicable(c, spec, "no log-discrepancy functional: give \"u0\" or \"equation\"");
    return *spec.cxone;
}

Json minimize_json(const MinimizeResult& r, std::size_t n, bool toric, const std::optional<IntMatrix>& f) {
    Json j;
    j["model"] = toric ? "toric" : "complexity_one";
    j["n"] = n;
    j["xi_star"] = json_of(r.xi_star.xi);
    if (r.xi_star.exact) j["xi_star_exact"] = json_of(*r.xi_star.exact);
    j["normalization"] = "A(xi_star) = n";
    j["nvol"] = number(r.nvol_star, r.nvol_exact,
                       r.nvol_exact ? "exact: rational minimizer certified by an exact first-order condition"
                                    : (toric ? "closed form at the Newton minimizer" : "closed-form cell sum at the Newton minimizer"));
    j["grad_norm"] = real_json(r.grad_norm);
    j["barycenter_residual"] = real_json(r.barycenter_residual);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["derivatives"] = toric ? "analytic" : "central finite differences";
    if (f) {
        RealVec w(f->rows(), Real(0));
        for (std::size_t i = 0; i < f->rows(); ++i)
            for (std::size_t k = 0; k < f->cols(); ++k) w[i] += to_real(Rat((*f)(i, k))) * r.xi_star.xi[k];
        j["ambient_weights"] = json_of(w);
    }
    return j;
}

Json run_minimize(const ProblemSpec& spec, const Resolved& opt) {
    if (auto t = toric_of(spec)) return minimize_json(minimize(*t, opt.minimize), t->n(), true, std::nullopt);
    const ComplexityOneData& c = cxone_of(Command::Minimize, spec);
    std::optional<IntMatrix> f = spec.ambient_weights;
    if (!f && spec.downgrade) f = spec.downgrade->f;
    return minimize_json(minimize_c1(c, opt.minimize), c.n(), false, f);
}

const ReebVector& require_xi(Command c, const ProblemSpec& spec) {
    if (!spec.xi) throw Error(ErrorCode::InvalidArgument, "command '" + std::string(command_name(c)) + "' needs \"xi\" in the spec");
    return *spec.xi;
}

Json run_eval(const ProblemSpec& spec) {
    const ReebVector& xi = require_xi(Command::Eval, spec);
    Json j;
    j["xi"] = xi.exact ? json_of(*xi.exact) : json_of(xi.xi);
    if (auto t = toric_of(spec)) {
        j["model"] = "toric";
        if (xi.exact && xi.exact->size() != t->n()) throw Error(ErrorCode::InvalidArgument, "xi has the wrong dimension");
        if (xi.exact) {
            const RatVec& x = *xi.exact;
            j["log_discrepancy"] = number(to_real(log_discrepancy(*t, x)), log_discrepancy(*t, x), "exact");
            const Rat v = vol_xi(*t, x);
            j["vol"] = number(to_real(v), v, "exact closed form");
            const Rat nv = nvol(*t, x);
            j["nvol"] = number(to_real(nv), nv, "exact closed form");
            j["grad_vol"] = json_of(grad_vol(*t, x));
        } else {
            j["log_discrepancy"] = number(log_discrepancy(*t, xi.xi), std::nullopt, "closed form");
            j["vol"] = number(vol_xi(*t, xi.xi), std::nullopt, "closed form");
            j["nvol"] = number(nvol(*t, xi.xi), std::nullopt, "closed form");
            j["grad_vol"] = json_of(grad_vol(*t, xi.xi));
        }
        j["grad_provenance"] = "analytic";
        j["barycenter_residual"] = real_json(certify_barycenter(*t, xi.xi));
        return j;
    }
    const ComplexityOneData& c = cxone_of(Command::Eval, spec);
    j["model"] = "complexity_one";
    if (!c.in_reeb_cone(xi.xi)) throw Error(ErrorCode::NotInReebCone, "xi is outside the Reeb cone");
    const Real a = dot(c.u0(), xi.xi);
    if (xi.exact) {
        const Rat v = vol_xi_c1(c, *xi.exact);
        const Rat nv = nvol_c1(c, *xi.exact);
        j["log_discrepancy"] = number(a, dot(c.u0(), *xi.exact), "exact");
        j["vol"] = number(to_real(v), v, "exact closed-form cell sum");
        j["nvol"] = number(to_real(nv), nv, "exact closed-form cell sum");
    } else {
        j["log_discrepancy"] = number(a, std::nullopt, "closed form");
        j["vol"] = number(vol_xi_c1(c, xi.xi), std::nullopt, "closed-form cell sum");
        j["nvol"] = number(nvol_c1(c, xi.xi), std::nullopt, "closed-form cell sum");
    }
    const RealVec g = fd_grad_vol_c1(c, xi.xi);
    j["grad_vol"] = json_of(g);
    j["grad_provenance"] = "central finite differences";
    const Real v = vol_xi_c1(c, xi.xi);
    const std::size_t n = c.n();
    Real res2(0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Real d = -g[i] / (Real(static_cast<long>(n)) * v) - to_real(c.u0()[i]) / a;
        res2 += d * d;
    }
    // Reported at A(xi) = n, matching the minimizer's normalization.
    j["barycenter_residual"] = real_json(mp::sqrt(res2) * a / Real(static_cast<long>(n)));
    return j;
}

std::vector<RealVec> default_etas(std::size_t dim) {
    std::vector<RealVec> out;
    for (std::size_t i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
            RealVec e(dim, Real(0));
            e[i] = s;
            out.push_back(e);
        }
    return out;
}

Json report_json(const FutakiReport& r) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json x;
        x["eta"] = json_of(e.eta);
        x["fut"] = real_json(e.fut);
        x["normalized_eta"] = json_of(e.normalized_eta);
        entries.push_back(x);
    }
    j["entries"] = entries;
    j["min_fut"] = real_json(r.min_fut);
    j["all_nonnegative"] = r.all_nonnegative;
    j["tolerance"] = real_json(r.tolerance);
    j["scope"] = "only the listed directions were tested; a nonnegative verdict is not a proof of K-semistability";
    return j;
}

Json run_futaki(const ProblemSpec& spec, const Resolved& opt) {
    Json j;
    if (auto t = toric_of(spec)) {
        RealVec xi0;
        if (spec.xi) {
            xi0 = spec.xi->xi;
            j["xi0_source"] = "spec";
        } else {
            xi0 = minimize(*t, opt.minimize).xi_star.xi;
            j["xi0_source"] = "minimize";
        }
        const auto etas = spec.etas ? *spec.etas : default_etas(t->n());
        if (!t->in_reeb_cone(xi0)) throw Error(ErrorCode::NotInReebCone, "xi0 is outside the Reeb cone");
        j["model"] = "toric";
        j["xi0"] = json_of(xi0);
        j["derivative"] = "analytic";
        j["report"] = report_json(semistable_scan(*t, xi0, etas));
        return j;
    }
    const ComplexityOneData& c = cxone_of(Command::Futaki, spec);
    RealVec xi0;
    if (spec.xi) {
        xi0 = spec.xi->xi;
        j["xi0_source"] = "spec";
    } else {
        xi0 = minimize_c1(c, opt.minimize).xi_star.xi;
        j["xi0_source"] = "minimize";
    }
    const auto etas = spec.etas ? *spec.etas : default_etas(c.divisor().rank());
    j["model"] = "complexity_one";
    j["xi0"] = json_of(xi0);
    j["derivative"] = "central finite differences";
    j["report"] = report_json(semistable_scan(c, xi0, etas));
    return j;
}

Json run_downgrade(const ProblemSpec& spec) {
    if (!spec.downgrade) not_applicable(Command::Downgrade, spec);
    const DowngradeData& d = *spec.downgrade;
    Json j;
    j["F"] = json_of(d.f);
    j["P"] = json_of(d.p);
    j["s"] = json_of(d.s);
    const auto [sigma, dual] = downgrade_sigma(d);
    j["sigma"] = rays_json(sigma);
    j["sigma_dual"] = rays_json(dual);
    Json fan = Json::array();
    for (const auto& r : base_fan_rays(d)) fan.push_back(json_of(r));
    j["base_fan_rays"] = fan;
    Json coeffs = Json::array();
    for (std::size_t k = 0; k < spec.downgrade_points.size(); ++k) {
        Json c;
        c["label"] = spec.downgrade_points[k].first;
        c["p"] = json_of(spec.downgrade_points[k].second);
        const Polyhedron& poly = spec.divisor->points()[k].coefficient;
        Json verts = Json::array();
        for (const auto& v : poly.vertices()) verts.push_back(json_of(v));
        c["vertices"] = verts;
        c["tail"] = "sigma";
        coeffs.push_back(c);
    }
    j["coefficients"] = coeffs;
    if (spec.equation_weight) j["equation_weight"] = json_of(*spec.equation_weight);
    if (spec.cxone) j["u0"] = json_of(spec.cxone->u0());
    j["provenance"] = "exact (Smith normal form and vertex enumeration)";
    return j;
}

Json run_binom2toric(const ProblemSpec& spec) {
    if (!spec.binomial) not_applicable(Command::Binom2Toric, spec);
    const ToricData t = binomial_to_toric(*spec.binomial);
    Json j;
    j["n"] = t.n();
    j["sigma"] = rays_json(t.sigma());
    j["sigma_dual"] = rays_json(t.sigma_dual());
    j["u0"] = json_of(t.u0());
    j["lattice"] = "Z^N / Z(a - b)";
    j["provenance"] = "exact (Smith normal form)";
    return j;
}

Json run_oracle(const ProblemSpec& spec, const Resolved& opt) {
    const std::vector<Rat> ms = spec.oracle_m.empty() ? std::vector<Rat>{Rat(50), Rat(100), Rat(200)} : spec.oracle_m;
    const CountOptions copts{CountOptions{}.cell_budget, opt.threads};
    Json j;
    CountSeries series;
    Real closed;
    std::optional<ToricData> t = toric_of(spec);
    const ComplexityOneData* c = t ? nullptr : &cxone_of(Command::Oracle, spec);
    ReebVector xi;
    if (spec.xi) {
        xi = *spec.xi;
        j["xi_source"] = "spec";
    } else {
        xi = t ? minimize(*t, opt.minimize).xi_star : minimize_c1(*c, opt.minimize).xi_star;
        j["xi_source"] = "minimize";
    }
    series.n = t ? t->n() : c->n();
    Real nfact(1);
    for (std::size_t i = 2; i <= series.n; ++i) nfact *= Real(static_cast<long>(i));
    std::vector<Rat> sorted = ms;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& m : sorted) {
        Int count;
        if (t)
            count = xi.exact ? count_toric(*t, *xi.exact, m, copts) : count_toric(*t, xi.xi, m, copts);
        else
            count = xi.exact ? count_cxone(c->divisor(), *xi.exact, m, copts) : count_cxone(c->divisor(), xi.xi, m, copts);
        series.truncations.emplace_back(m, count);
        series.estimates.push_back(nfact * to_real(Rat(count)) / mp::pow(to_real(m), static_cast<long>(series.n)));
    }
    closed = t ? vol_xi(*t, xi.xi) : vol_xi_c1(*c, xi.xi);
    j["model"] = t ? "toric" : "complexity_one";
    j["xi"] = xi.exact ? json_of(*xi.exact) : json_of(xi.xi);
    j["n"] = series.n;
    Json rows = Json::array();
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        Json r;
        r["m"] = rat_json(series.truncations[k].first);
        r["count"] = int_json(series.truncations[k].second);
        r["estimate"] = real_json(series.estimates[k]);
        r["relative_error"] = real_json(mp::abs(series.estimates[k] - closed) / closed);
        rows.push_back(r);
    }
    j["truncations"] = rows;
    j["closed_form_vol"] = number(closed, std::nullopt, t ? "closed form" : "closed-form cell sum");
    if (series.estimates.size() >= 3) {
        const VolEstimate e = vol_estimate(series);
        Json x;
        x["value"] = real_json(e.value);
        x["relative_error"] = real_json(mp::abs(e.value - closed) / closed);
        x["diagnostic"] = e.diagnostic;
        x["provenance"] = "lattice-point count, extrapolated in 1/m";
        j["extrapolated"] = x;
    } else {
        j["extrapolated"] = nullptr;
    }
    return j;
}

Json run_approx(const ProblemSpec& spec) {
    if (!spec.approx) not_applicable(Command::Approx, spec);
    const ApproxPayload& a = *spec.approx;
    Json j;
    j["epsilon"] = rat_json(a.epsilon);
    j["q_max"] = a.q_max;
    if (a.signs) {
        const SignedApprox s = dirichlet_signed(a.target, *a.signs, a.epsilon, a.q_max);
        j["mode"] = "signed";
        j["q"] = int_json(s.q);
        j["p"] = json_of(s.p);
        j["signs"] = s.signs;
        RatVec approx;
        for (const auto& p : s.p) approx.push_back(Rat(p, s.q));
        j["approximant"] = json_of(approx);
        j["verified"] = verify_signed(s);
    } else {
        const ConeApprox c = cone_rational_approx(a.target, a.epsilon, a.q_max);
        j["mode"] = "cone";
        Json vs = Json::array();
        for (std::size_t i = 0; i < c.vectors.size(); ++i) {
            Json v;
            v["vector"] = json_of(c.vectors[i]);
            v["q"] = int_json(c.denominators[i]);
            if (!c.signs.empty()) v["signs"] = c.signs[i];
            v["hull_coefficient"] = rat_json(c.hull_coefficients[i]);
            vs.push_back(v);
        }
        j["vectors"] = vs;
        j["verified"] = verify_cone(c);
    }
    j["provenance"] = "exact rational checks against the input enclosures";
    return j;
}

void render(std::ostringstream& os, const Json& j, const std::string& indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            os << indent << it.key() << ":\n";
            render(os, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << indent << it.key() << ":\n";
            for (std::size_t k = 0; k < v.size(); ++k) {
                os << indent << "  [" << k << "]\n";
                render(os, v[k], indent + "    ");
            }
        } else {
            os << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

}  // namespace

Command parse_command(std::string_view name) {
    if (name == "minimize") return Command::Minimize;
    if (name == "eval") return Command::Eval;
    if (name == "futaki") return Command::Futaki;
    if (name == "downgrade") return Command::Downgrade;
    if (name == "binom2toric") return Command::Binom2Toric;
    if (name == "oracle") return Command::Oracle;
    if (name == "approx") return Command::Approx;
    parse_fail("unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Minimize: return "minimize";
        case Command::Eval: return "eval";
        case Command::Futaki: return "futaki";
        case Command::Downgrade: return "downgrade";
        case Command::Binom2Toric: return "binom2toric";
        case Command::Oracle: return "oracle";
        case Command::Approx: return "approx";
    }
    return "?";
}

ProblemSpec parse_spec(const Json& doc) {
    if (!doc.is_object()) parse_fail("spec must be a JSON object");
    const Json& schema = require(doc, "schema", "spec");
    if (!schema.is_string() || schema.get<std::string>() != kSchema)
        parse_fail(std::string("spec: schema must be \"") + kSchema + "\"");
    const Json& kind = require(doc, "kind", "spec");
    if (!kind.is_string()) parse_fail("spec: kind must be a string");
    ProblemSpec s;
    s.kind = kind.get<std::string>();
    s.doc = doc;
    if (doc.contains("name")) s.name = doc.at("name").is_string() ? doc.at("name").get<std::string>() : doc.at("name").dump();

    if (s.kind == "toric") {
        const RatVec u0 = ratvec_of(require(doc, "u0", "toric"), "toric.u0");
        if (doc.contains("sigma"))
            s.toric = ToricData::from_sigma(cone_of(doc.at("sigma"), "toric.sigma"), u0);
        else if (doc.contains("sigma_dual"))
            s.toric = ToricData::from_sigma_dual(cone_of(doc.at("sigma_dual"), "toric.sigma_dual"), u0);
        else
            parse_fail("toric: needs \"sigma\" or \"sigma_dual\"");
    } else if (s.kind == "complexity_one") {
        const VCone sigma = cone_of(require(doc, "sigma", "complexity_one"), "complexity_one.sigma");
        std::vector<DivisorPoint> pts;
        const Json& jp = array_of(require(doc, "points", "complexity_one"), "complexity_one.points");
        for (std::size_t k = 0; k < jp.size(); ++k)
            pts.push_back({label_of(jp[k], k), coefficient_of(jp[k], sigma, "complexity_one.points[" + std::to_string(k) + "]")});
        s.divisor = PolyhedralDivisor(sigma, std::move(pts));
        if (doc.contains("u0")) s.cxone = ComplexityOneData(*s.divisor, ratvec_of(doc.at("u0"), "complexity_one.u0"));
        if (doc.contains("F")) {
            s.ambient_weights = intmatrix_of(doc.at("F"), "complexity_one.F");
            if (s.ambient_weights->cols() != sigma.ambient_dim()) parse_fail("complexity_one.F: column count must equal the rank");
        }
    } else if (s.kind == "binomial") {
        BinomialHypersurface h{intvec_of(require(doc, "a", "binomial"), "binomial.a"),
                               intvec_of(require(doc, "b", "binomial"), "binomial.b"), std::nullopt};
        if (doc.contains("ambient_weight")) h.ambient_weight = ratvec_of(doc.at("ambient_weight"), "binomial.ambient_weight");
        (void)binomial_to_toric(h);  // validate at load time
        s.binomial = std::move(h);
    } else if (s.kind == "downgrade") {
        const IntMatrix f = intmatrix_of(require(doc, "F", "downgrade"), "downgrade.F");
        if (doc.contains("P") != doc.contains("s")) parse_fail("downgrade: give both \"P\" and \"s\" or neither");
        s.downgrade = doc.contains("P") ? validate_sequence(f, intmatrix_of(doc.at("P"), "downgrade.P"),
                                                            intmatrix_of(doc.at("s"), "downgrade.s"))
                                        : complete_sequence(f);
        const Json& jp = array_of(require(doc, "points", "downgrade"), "downgrade.points");
        for (std::size_t k = 0; k < jp.size(); ++k)
            s.downgrade_points.emplace_back(label_of(jp[k], k), intvec_of(require(jp[k], "p", "downgrade.points"), "downgrade.points.p"));
        s.divisor = downgrade_divisor(*s.downgrade, s.downgrade_points);
        if (doc.contains("equation")) {
            std::vector<IntVec> monomials;
            for (const auto& m : array_of(doc.at("equation"), "downgrade.equation")) monomials.push_back(intvec_of(m, "downgrade.equation"));
            s.equation_weight = equation_weight(f, monomials);
        }
        if (doc.contains("u0"))
            s.cxone = ComplexityOneData(*s.divisor, ratvec_of(doc.at("u0"), "downgrade.u0"));
        else if (s.equation_weight)
            s.cxone = ComplexityOneData(*s.divisor, hypersurface_u0(f, *s.equation_weight));
    } else if (s.kind == "approx") {
        ApproxPayload a;
        for (const auto& x : array_of(require(doc, "target", "approx"), "approx.target")) a.target.push_back(enclosure_of(x, "approx.target"));
        a.epsilon = rat_of(require(doc, "epsilon", "approx"), "approx.epsilon");
        if (doc.contains("signs")) {
            std::vector<int> signs;
            for (const auto& x : array_of(doc.at("signs"), "approx.signs")) {
                if (!x.is_number_integer()) parse_fail("approx.signs: expected +1 or -1");
                signs.push_back(x.get<int>());
            }
            a.signs = std::move(signs);
        }
        if (doc.contains("q_max")) {
            if (!doc.at("q_max").is_number_integer()) parse_fail("approx.q_max: expected an integer");
            a.q_max = doc.at("q_max").get<std::int64_t>();
        }
        s.approx = std::move(a);
    } else {
        parse_fail("spec: unknown kind '" + s.kind + "'");
    }

    if (doc.contains("xi")) s.xi = reeb_of(doc.at("xi"), "xi");
    if (doc.contains("etas")) {
        std::vector<RealVec> etas;
        for (const auto& e : array_of(doc.at("etas"), "etas")) etas.push_back(reeb_of(e, "etas").xi);
        s.etas = std::move(etas);
    }
    if (doc.contains("oracle")) {
        const Json& o = doc.at("oracle");
        if (o.contains("m"))
            for (const auto& m : array_of(o.at("m"), "oracle.m")) s.oracle_m.push_back(rat_of(m, "oracle.m"));
    }
    if (doc.contains("options")) {
        const Json& o = doc.at("options");
        if (!o.is_object()) parse_fail("options must be an object");
        if (o.contains("tolerance")) s.tolerance = real_of(o.at("tolerance"), "options.tolerance");
        if (o.contains("max_iter")) s.max_iter = static_cast<int>(int_of(o.at("max_iter"), "options.max_iter").convert_to<long>());
        if (o.contains("precision"))
            s.precision_bits = static_cast<unsigned>(int_of(o.at("precision"), "options.precision").convert_to<long>());
    }
    return s;
}

ProblemSpec parse_spec_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    return parse_spec(doc);
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot read spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

Json run(Command command, const ProblemSpec& spec, const RunOptions& options) {
    const Resolved opt = resolve(spec, options);
    PrecisionGuard guard(opt.minimize.precision_bits);
    Json report;
    report["schema"] = kSchema;
    report["command"] = std::string(command_name(command));
    report["input"] = spec.doc;
    Json o;
    o["tolerance"] = real_json(opt.minimize.tolerance);
    o["max_iter"] = opt.minimize.max_iter;
    o["precision_bits"] = opt.minimize.precision_bits;
    o["threads"] = opt.threads;
    report["options"] = o;
    switch (command) {
        case Command::Minimize: report["result"] = run_minimize(spec, opt); break;
        case Command::Eval: report["result"] = run_eval(spec); break;
        case Command::Futaki: report["result"] = run_futaki(spec, opt); break;
        case Command::Downgrade: report["result"] = run_downgrade(spec); break;
        case Command::Binom2Toric: report["result"] = run_binom2toric(spec); break;
        case Command::Oracle: report["result"] = run_oracle(spec, opt); break;
        case Command::Approx: report["result"] = run_approx(spec); break;
    }
    return report;
}

Json error_report(const Error& e) {
    Json j;
    j["error"]["code"] = std::string(to_string(e.code()));
    j["error"]["message"] = e.what();
    return j;
}

int exit_code_for(const Error& e) { return e.code() == ErrorCode::ParseError ? 2 : 1; }

std::string render_table(const Json& report) {
    std::ostringstream os;
    os << "reebmin " << report.value("command", std::string()) << "\n";
    if (report.contains("input") && report["input"].contains("name")) os << "spec: " << report["input"]["name"].get<std::string>() << "\n";
    if (report.contains("result")) render(os, report["result"], "  ");
    return os.str();
}

}  // namespace reebmin
