#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmvol/density.hpp"
#include "hmvol/discriminant.hpp"
#include "hmvol/error.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"
#include "hmvol/padic.hpp"
#include "hmvol/special_values.hpp"
#include "hmvol/symbolic.hpp"

namespace hmvol {

inline void require_volume_hypotheses(const Lattice& lattice) {
    if (lattice.rank() < 3)
        throw PreconditionError("volume formula needs rank >= 3, lattice has rank " + std::to_string(lattice.rank()));
    if (!lattice.signature().is_indefinite()) throw PreconditionError("volume formula needs an indefinite lattice");
}

struct EulerProduct {
    std::vector<LocalDensity> densities;  // bad primes, increasing
    Integer character_discriminant = 1;   // D of chi_D for even rank, 1 for odd rank
    SymbolicReal value;                   // prod_p alpha_p^{-1}
};

namespace detail {

// chi_D(p) must match the genus character read off the Jordan block at a
// good prime; checked on the first few good primes.
inline void check_genus_character(const Lattice& lattice, const Integer& D, int sample = 5) {
    const Integer twice_det = 2 * lattice.det();
    Integer p = 2;
    for (int seen = 0; seen < sample;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (mpz_divisible_p(twice_det.get_mpz_t(), p.get_mpz_t())) continue;
        const JordanDecomposition d = jordan_decompose(lattice, p);
        if (d.blocks.size() != 1 || d.blocks[0].level != 0)
            throw InternalError("good prime " + p.get_str() + " has a non-unimodular Jordan form");
        const int chi = block_chi(d.blocks[0], p);
        if (chi != kronecker(D, p))
            throw InternalError("genus character mismatch at p=" + p.get_str() + ": block gives " +
                                std::to_string(chi) + ", chi_" + D.get_str() + " gives " +
                                std::to_string(kronecker(D, p)));
        ++seen;
    }
}

}  // namespace detail

/// prod_p alpha_p(L)^{-1}: exact densities at the primes dividing 2 det,
/// zeta and L values for the unimodular tail.
inline EulerProduct euler_alpha_product(const Lattice& lattice) {
    require_volume_hypotheses(lattice);
    EulerProduct out;
    const unsigned rho = static_cast<unsigned>(lattice.rank());
    const unsigned t = rho / 2;
    Rational bad = 1;
    for (const Integer& p : bad_primes(lattice)) {
        out.densities.push_back(local_density(lattice, p));
        bad /= out.densities.back().value;
    }
    SymbolicReal tail = 1;
    if (rho % 2) {
        for (unsigned i = 1; i <= t; ++i) tail *= zeta_closed(2 * i);
        for (const auto& d : out.densities) bad *= p_series(d.prime, static_cast<int>(t));
    } else {
        const Integer m = (t % 2 ? Integer(-lattice.det()) : lattice.det());
        const Integer D = fundamental_discriminant(m).discriminant;
        out.character_discriminant = D;
        detail::check_genus_character(lattice, D);
        for (unsigned i = 1; i < t; ++i) tail *= zeta_closed(2 * i);
        tail *= l_closed(t, D);
        for (const auto& d : out.densities) {
            const Rational euler = 1 - Rational(kronecker(D, d.prime)) / Rational(ipow(d.prime, t));
            bad *= p_series(d.prime, static_cast<int>(t) - 1) * euler;
        }
    }
    bad.canonicalize();
    out.value = SymbolicReal(bad) * tail;
    return out;
}

/// (2/g) |det|^{(rho+1)/2} prod_{k<=rho} pi^{-k/2} Gamma(k/2) prod_p alpha_p^{-1}.
inline SymbolicReal vol_hm(const Lattice& lattice, const Integer& g_sp_plus, const EulerProduct& euler) {
    if (g_sp_plus < 1) throw PreconditionError("g_sp^+ must be a positive integer");
    const long rho = static_cast<long>(lattice.rank());
    return SymbolicReal(make_rational(2, g_sp_plus)) * SymbolicReal::half_power(Rational(lattice.det()), rho + 1) *
           gamma_factor(static_cast<unsigned>(rho)) * euler.value;
}

inline SymbolicReal vol_hm(const Lattice& lattice, const Integer& g_sp_plus = 1) {
    return vol_hm(lattice, g_sp_plus, euler_alpha_product(lattice));
}

struct SiegelIdentities {
    SymbolicReal gamma_r, gamma_s, gamma_rs;
    SymbolicReal alpha_infinity;  // (2/g) prod_p alpha_p^{-1}
    SymbolicReal vol_siegel;      // vol_S(O(L) \ D)
    SymbolicReal vol_dual;        // vol_S(compact dual)
    SymbolicReal ratio;           // vol_siegel / vol_dual
};

/// vol_S(SO(m)) = 2^{m-1} gamma_m.
inline SymbolicReal vol_siegel_so(unsigned m) {
    return SymbolicReal(Rational(ipow(Integer(2), m - 1))) * gamma_m(m);
}

inline SiegelIdentities siegel_identities(const Lattice& lattice, const Integer& g_sp_plus, const EulerProduct& euler) {
    const Signature sig = lattice.signature();
    const auto r = static_cast<unsigned>(sig.positive), s = static_cast<unsigned>(sig.negative);
    SiegelIdentities id;
    id.gamma_r = gamma_m(r);
    id.gamma_s = gamma_m(s);
    id.gamma_rs = gamma_m(r + s);
    id.alpha_infinity = SymbolicReal(make_rational(2, g_sp_plus)) * euler.value;
    id.vol_siegel = SymbolicReal(2) * id.alpha_infinity *
                    SymbolicReal::half_power(Rational(lattice.det()), static_cast<long>(r + s + 1)) /
                    (id.gamma_r * id.gamma_s);
    id.vol_dual = SymbolicReal(2) * id.gamma_rs / (id.gamma_r * id.gamma_s);
    id.ratio = id.vol_siegel / id.vol_dual;
    const SymbolicReal direct = vol_hm(lattice, g_sp_plus, euler);
    if (!(id.ratio == direct))
        throw InternalError("Siegel volume ratio " + id.ratio.str() + " differs from the main formula " + direct.str());
    return id;
}

inline SiegelIdentities siegel_identities(const Lattice& lattice, const Integer& g_sp_plus = 1) {
    return siegel_identities(lattice, g_sp_plus, euler_alpha_product(lattice));
}

/// vol_HM(Gamma) = [PO(L) : P Gamma] vol_HM(O(L)); for signature (2,n) the result is rational.
inline Rational group_volume(const Lattice& lattice, GroupTag tag, const Integer& g_sp_plus,
                             const EulerProduct& euler) {
    const Integer index = projective_index(lattice, tag);
    const SymbolicReal v = SymbolicReal(Rational(index)) * vol_hm(lattice, g_sp_plus, euler);
    if (!v.is_rational())
        throw InternalError("pi/surd cancellation failed for " + tag_name(tag) + ": " + v.str());
    return v.to_rational();
}

inline Rational group_volume(const Lattice& lattice, GroupTag tag, const Integer& g_sp_plus = 1) {
    return group_volume(lattice, tag, g_sp_plus, euler_alpha_product(lattice));
}

/// Coefficient of k^n in dim S_k(Gamma): (2/n!) vol_HM(Gamma).
inline Rational cusp_leading_from_volume(const Rational& volume, int n) {
    return make_rational(2, factorial(static_cast<unsigned long>(n))) * volume;
}

inline Rational cusp_dim_leading(const Lattice& lattice, GroupTag tag, const Integer& g_sp_plus = 1) {
    return cusp_leading_from_volume(group_volume(lattice, tag, g_sp_plus), lattice.signature().negative);
}

struct GroupRow {
    GroupIndex index;
    Rational volume;
    Rational cusp_leading;
    std::string parity_note;
};

struct VolumeReport {
    std::string expression;
    Lattice lattice;
    Integer g_sp_plus = 1;
    std::vector<Integer> primes{};
    EulerProduct euler{};
    SymbolicReal vol_o{};  // vol_HM(O(L)) in general signature
    std::vector<GroupRow> groups{};
    std::vector<std::string> assumptions{};
    std::vector<std::pair<Integer, OracleRun>> oracle_checks{};
};

struct AnalyzeOptions {
    std::vector<GroupTag> groups;  // empty: every tag that applies
    std::optional<Integer> g_sp_plus;
    bool oracle_check = false;
};

inline VolumeReport analyze(const Lattice& lattice, const AnalyzeOptions& opt = {}, std::string expression = {}) {
    require_volume_hypotheses(lattice);
    VolumeReport rep{.expression = std::move(expression), .lattice = lattice};
    rep.g_sp_plus = opt.g_sp_plus.value_or(Integer(1));
    if (opt.g_sp_plus)
        rep.assumptions.push_back("g_sp^+ = " + rep.g_sp_plus.get_str() + " supplied by the caller");
    else if (lattice.has_hyperbolic_summand())
        rep.assumptions.push_back("g_sp^+ = 1: the lattice has a hyperbolic plane summand, so its genus has one class");
    else
        rep.assumptions.push_back("g_sp^+ = 1 assumed without justification: no hyperbolic plane summand is recorded");

    rep.primes = bad_primes(lattice);
    rep.euler = euler_alpha_product(lattice);
    rep.vol_o = vol_hm(lattice, rep.g_sp_plus, rep.euler);
    siegel_identities(lattice, rep.g_sp_plus, rep.euler);

    const Signature sig = lattice.signature();
    const bool two_n = sig.positive == 2;
    if (!opt.groups.empty() && !two_n) throw PreconditionError("group volumes need signature (2,n)");
    if (two_n) {
        std::vector<GroupTag> tags = opt.groups;
        const bool explicit_tags = !tags.empty();
        if (!explicit_tags) {
            for (GroupTag t : all_group_tags()) {
                if (t != GroupTag::O && !lattice.has_hyperbolic_summand()) continue;
                if (needs_discriminant(t) && !lattice.is_even()) continue;
                if (needs_discriminant(t) && abs(lattice.det()) > kIsometryGuard) continue;
                tags.push_back(t);
            }
            if (tags.size() < all_group_tags().size())
                rep.assumptions.push_back("some groups omitted: their index needs a hyperbolic plane summand, an even "
                                          "lattice or a small discriminant group");
        }
        for (GroupTag t : tags) {
            GroupRow row;
            row.index = group_index(lattice, t);
            row.volume = group_volume(lattice, t, rep.g_sp_plus, rep.euler);
            row.cusp_leading = cusp_leading_from_volume(row.volume, sig.negative);
            row.parity_note = row.index.contains_minus_id
                                  ? "-id in " + tag_name(t) + ": leading term holds for weights k with (-1)^k = chi(-id)"
                                  : "-id not in " + tag_name(t) + ": no parity restriction on k";
            rep.groups.push_back(std::move(row));
        }
    }
    if (opt.oracle_check && lattice.rank() > 3) {
        rep.assumptions.push_back("oracle check skipped: the counting oracle is limited to rank <= 3");
    } else if (opt.oracle_check) {
        for (const auto& d : rep.euler.densities) {
            OracleRun run = stabilized_oracle(lattice, d.prime);
            if (run.stable && run.value != d.value)
                throw InternalError("density at p=" + d.prime.get_str() + " is " + d.value.get_str() +
                                    " but the counting oracle gives " + run.value.get_str());
            rep.oracle_checks.emplace_back(d.prime, std::move(run));
        }
    }
    return rep;
}

}  // namespace hmvol
