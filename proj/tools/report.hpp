#pragma once

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmvol/catalog.hpp"
#include "hmvol/numeric.hpp"
#include "hmvol/volume.hpp"

namespace hmvol::report {

using json = nlohmann::ordered_json;

inline constexpr int kMaxPrecision = 100;

inline json rational(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline json symbolic(const SymbolicReal& x) {
    return {{"coeff_num", x.coefficient().get_num().get_str()},
            {"coeff_den", x.coefficient().get_den().get_str()},
            {"pi_half_exp", x.pi_half_exponent()},
            {"radicand", x.radicand().get_str()}};
}

inline json lattice_json(const Lattice& l) {
    json gram = json::array();
    for (std::size_t i = 0; i < l.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < l.rank(); ++j) row.push_back(l.entry(i, j).get_str());
        gram.push_back(std::move(row));
    }
    const Signature s = l.signature();
    return {{"gram", gram},
            {"rank", l.rank()},
            {"signature", {s.positive, s.negative}},
            {"det", l.det().get_str()},
            {"even", l.is_even()},
            {"hyperbolic_summand", l.has_hyperbolic_summand()}};
}

inline json density_json(const LocalDensity& d) {
    const DensityBreakdown& b = d.breakdown;
    json levels = json::array();
    for (const LevelFactor& f : b.levels) levels.push_back({{"level", f.level}, {"factor", rational(f.value)}});
    json breakdown = {{"s", b.s}, {"w", b.w}};
    if (d.prime == 2) breakdown["q"] = b.q;
    breakdown["power_of_two"] = b.power_of_two;
    breakdown["p_factor"] = rational(b.p_factor);
    breakdown["e_factor"] = rational(b.e_factor);
    breakdown["levels"] = levels;
    return {{"p", d.prime.get_str()},
            {"value_num", d.value.get_num().get_str()},
            {"value_den", d.value.get_den().get_str()},
            {"breakdown", breakdown}};
}

inline json oracle_json(const Integer& p, const OracleRun& run) {
    json values = json::array();
    for (const auto& [r, v] : run.values) values.push_back({{"r", r}, {"value", rational(v)}});
    json out = {{"p", p.get_str()}, {"values", values}, {"stable", run.stable}};
    if (run.stable) out["stable_r"] = run.stable_r;
    return out;
}

struct Echo {
    int digits = 30;
    bool clamped = false;
};

inline Echo echo_digits(int requested) {
    Echo e;
    e.digits = std::clamp(requested, 1, kMaxPrecision);
    e.clamped = e.digits != requested;
    return e;
}

inline json analyze_json(const VolumeReport& rep, const Echo& echo) {
    json out;
    out["expression"] = rep.expression;
    out["lattice"] = lattice_json(rep.lattice);
    out["g_sp_plus"] = rep.g_sp_plus.get_str();
    json primes = json::array();
    for (const Integer& p : rep.primes) primes.push_back(p.get_str());
    out["bad_primes"] = primes;
    json densities = json::array();
    for (const LocalDensity& d : rep.euler.densities) densities.push_back(density_json(d));
    out["densities"] = densities;
    out["euler_product"] = symbolic(rep.euler.value);
    out["euler_product"]["character_discriminant"] = rep.euler.character_discriminant.get_str();
    out["vol_o"] = symbolic(rep.vol_o);

    json volumes = json::object(), indices = json::object(), cusp = json::object(), numeric = json::object();
    std::vector<std::string> assumptions = rep.assumptions;
    for (const GroupRow& g : rep.groups) {
        const std::string tag = tag_name(g.index.tag);
        volumes[tag] = rational(g.volume);
        indices[tag] = {{"group_index", g.index.group_index.get_str()},
                        {"projective_index", g.index.projective_index.get_str()},
                        {"contains_minus_id", g.index.contains_minus_id}};
        cusp[tag] = rational(g.cusp_leading);
        numeric[tag] = numeric::format(numeric::to_real(g.volume), echo.digits);
        assumptions.push_back(g.parity_note);
    }
    out["volumes"] = volumes;
    out["indices"] = indices;
    out["cusp_leading"] = cusp;
    if (echo.clamped)
        assumptions.push_back("numeric echo clamped to " + std::to_string(echo.digits) + " digits");
    out["assumptions"] = assumptions;
    out["numeric"] = {{"digits", echo.digits},
                      {"vol_o", numeric::format(numeric::evaluate(rep.vol_o), echo.digits)},
                      {"volumes", numeric}};
    if (!rep.oracle_checks.empty()) {
        json checks = json::array();
        for (const auto& [p, run] : rep.oracle_checks) checks.push_back(oracle_json(p, run));
        out["oracle_checks"] = checks;
    }
    return out;
}

inline std::string analyze_text(const VolumeReport& rep, const Echo& echo) {
    std::ostringstream os;
    const Lattice& l = rep.lattice;
    const Signature s = l.signature();
    if (!rep.expression.empty()) os << "lattice      " << rep.expression << "\n";
    os << "rank         " << l.rank() << "\n";
    os << "signature    (" << s.positive << "," << s.negative << ")\n";
    os << "det          " << l.det() << "\n";
    os << "even         " << (l.is_even() ? "yes" : "no") << "\n";
    os << "g_sp^+       " << rep.g_sp_plus << "\n";
    os << "bad primes  ";
    for (const Integer& p : rep.primes) os << " " << p;
    os << "\n\nlocal densities\n";
    for (const LocalDensity& d : rep.euler.densities)
        os << "  alpha_" << std::left << std::setw(4) << d.prime.get_str() << " = " << d.value << "\n";
    os << "\nprod alpha_p^-1 = " << rep.euler.value << "\n";
    if (rep.euler.character_discriminant != 1) os << "character       chi_" << rep.euler.character_discriminant << "\n";
    os << "vol_HM(O)       = " << rep.vol_o << "  ~ " << numeric::format(numeric::evaluate(rep.vol_o), echo.digits)
       << "\n";
    if (!rep.groups.empty()) {
        std::size_t wv = 6;
        for (const GroupRow& g : rep.groups) wv = std::max(wv, g.volume.get_str().size());
        const int wvol = static_cast<int>(wv + 2);
        os << "\n" << std::left << std::setw(6) << "group" << std::setw(8) << "[O:G]" << std::setw(9) << "[PO:PG]"
           << std::setw(5) << "-id" << std::setw(wvol) << "vol_HM" << "cusp leading coeff\n";
        for (const GroupRow& g : rep.groups)
            os << std::setw(6) << tag_name(g.index.tag) << std::setw(8) << g.index.group_index.get_str()
               << std::setw(9) << g.index.projective_index.get_str() << std::setw(5)
               << (g.index.contains_minus_id ? "yes" : "no") << std::setw(wvol) << g.volume.get_str()
               << g.cusp_leading.get_str() << "\n";
    }
    if (!rep.oracle_checks.empty()) {
        os << "\noracle checks\n";
        for (const auto& [p, run] : rep.oracle_checks) {
            os << "  p=" << p << ":";
            for (const auto& [r, v] : run.values) os << " r=" << r << " -> " << v << ";";
            os << (run.stable ? " stable" : " not stable") << "\n";
        }
    }
    os << "\nassumptions\n";
    for (const std::string& a : rep.assumptions) os << "  - " << a << "\n";
    for (const GroupRow& g : rep.groups) os << "  - " << g.parity_note << "\n";
    if (echo.clamped) os << "  - numeric echo clamped to " << echo.digits << " digits\n";
    return os.str();
}

inline json catalog_json(const std::vector<CatalogRow>& rows) {
    json out = json::array();
    for (const CatalogRow& r : rows)
        out.push_back({{"family", r.family},
                       {"label", r.label},
                       {"quantity", r.quantity},
                       {"engine", rational(r.engine)},
                       {"fixture", rational(r.fixture)},
                       {"match", r.match()}});
    return out;
}

inline std::string catalog_text(const std::vector<CatalogRow>& rows) {
    std::size_t wl = 5, we = 6, wf = 7;
    for (const CatalogRow& r : rows) {
        wl = std::max(wl, r.label.size());
        we = std::max(we, r.engine.get_str().size());
        wf = std::max(wf, r.fixture.get_str().size());
    }
    const auto col = [](std::size_t w) { return std::setw(static_cast<int>(w + 2)); };
    std::ostringstream os;
    os << std::left << col(wl) << "entry" << col(we) << "engine" << col(wf) << "fixture" << "match\n";
    for (const CatalogRow& r : rows)
        os << col(wl) << r.label << col(we) << r.engine.get_str() << col(wf) << r.fixture.get_str()
           << (r.match() ? "yes" : "NO") << "\n";
    return os.str();
}

}  // namespace hmvol::report
