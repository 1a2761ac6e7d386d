// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hmvol/hmvol.hpp"

using namespace hmvol;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Checker {
public:
    void expect(bool cond, const std::string& what) {
        if (cond || !out_.ok) {
            if (!cond) ++failures_;
            return;
        }
        out_.ok = false;
        out_.detail = what;
        ++failures_;
    }
    template <typename A, typename B>
    void expect_eq(const A& a, const B& b, const std::string& what) {
        if (a == b) return;
        std::ostringstream os;
        os << what << ": got " << a << ", expected " << b;
        expect(false, os.str());
    }
    Outcome result() const {
        Outcome o = out_;
        if (failures_ > 1) o.detail += " (+" + std::to_string(failures_ - 1) + " more)";
        return o;
    }

private:
    Outcome out_;
    int failures_ = 0;
};

int run(int id, const std::string& title, double budget_s, const std::function<void(Checker&)>& body) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o = c.result();
    if (o.ok && s > budget_s) {
        o.ok = false;
        o.detail = "runtime " + std::to_string(s) + " s over the " + std::to_string(budget_s) + " s budget";
    }
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), s,
                o.ok ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    return o.ok ? 0 : 1;
}

Lattice lat(const char* text) { return expr::parse_lattice(text); }

std::string label(const std::string& what, long m, long d) {
    return what + " m=" + std::to_string(m) + " d=" + std::to_string(d);
}

// rank <= 3: unimodular, p-scaled, odd and even 2-adic constituents
const std::vector<const char*> kOracleCorpus = {
    "U",         "gram[2,1;1,2]", "<1> + <1> + <1>", "<1> + <-1>",     "U(2)",      "U(3) + <1>",
    "U + <-2>",  "U + <5>",       "<2> + <-6>",      "<1> + <2> + <12>", "gram[2,1;1,-2] + <-3>", "<1> + <3> + <5>",
};

// signature (2,n) with a hyperbolic plane summand
const std::vector<const char*> kVolumeCorpus = {
    "2*U + <-2>",     "2*U + <-4>",        "2*U + <-6>",           "2*U + <-24>",          "2*U",
    "U + U(2)",       "U + U(3) + <-2>",   "U + <2> + <-2>",       "U + <2> + <-6>",       "2*U + <-2> + <-2>",
    "2*U + E8(-1)",   "U + U(2) + E8(-1)", "2*U + E8(-1) + <-10>", "U + gram[2,1;1,-2] + <-2>",
    "2*U + <-1>",     "U + <1> + <-3>",    "2*U + <-12> + <-2>",   "2*U + 2*E8(-1) + <-50>",
};

Lattice random_composition(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 4), count(1, 4), scale(1, 12), sign(0, 1);
    Lattice acc = hyperbolic_plane(scale(rng) % 3 + 1);
    const int pieces = count(rng);
    for (int k = 0; k < pieces; ++k) {
        const int c = scale(rng) * (sign(rng) ? 1 : -1);
        switch (pick(rng)) {
            case 0: acc = direct_sum(acc, hyperbolic_plane(c)); break;
            case 1: acc = direct_sum(acc, rank_one(c)); break;
            case 2: acc = direct_sum(acc, e8(sign(rng) ? 1 : -1)); break;
            case 3: acc = direct_sum(acc, rescale(from_rows({{2, 1}, {1, -2}}), c)); break;
            default: acc = direct_sum(acc, from_rows({{2 * c, 1}, {1, 2}})); break;
        }
    }
    return acc;
}

Integer two_to(int e) { return ipow(Integer(2), static_cast<unsigned long>(e)); }

}  // namespace

int main() {
    int failed = 0;

    failed += run(1, "Sp(2,Z) anchor: SO~+(2U + <-2>) volume 1/2880, cusp coefficient 1/8640", 1.0, [](Checker& c) {
        AnalyzeOptions opt;
        opt.groups = {GroupTag::SOTildePlus};
        const VolumeReport r = analyze(lat("2*U + <-2>"), opt);
        c.expect_eq(r.groups.at(0).volume, Rational(1, 2880), "volume");
        c.expect_eq(r.groups.at(0).cusp_leading, Rational(1, 8640), "cusp leading coefficient");
    });

    failed += run(2, "even unimodular II_{2,8m+2}: vol O+ closed form, m = 0,1,2", 5.0, [](Checker& c) {
        for (unsigned m = 0; m <= 2; ++m)
            c.expect_eq(group_volume(families::even_unimodular(static_cast<int>(m)), GroupTag::OPlus),
                        fixtures::ii_volume(m), "m=" + std::to_string(m));
    });

    failed += run(3, "T/II volume ratio (2^{4m+1}+1)(2^{4m+2}-1), m = 1,2,3", 5.0, [](Checker& c) {
        for (unsigned m = 1; m <= 3; ++m) {
            const int mi = static_cast<int>(m);
            const Rational ratio = group_volume(families::t_lattice(mi), GroupTag::OTildePlus) /
                                   group_volume(families::even_unimodular(mi), GroupTag::OTildePlus);
            c.expect_eq(ratio, fixtures::t_ratio(m), "m=" + std::to_string(m));
        }
    });

    failed += run(4, "L_{2d} sweep m = 0,2, d = 1..20; K3 cusp coefficient d = 2..10", 30.0, [](Checker& c) {
        for (unsigned m : {0u, 2u})
            for (long d = 1; d <= 20; ++d)
                c.expect_eq(group_volume(families::l_lattice(static_cast<int>(m), d), GroupTag::OTildePlus),
                            fixtures::l_volume(m, d), label("L", m, d));
        for (long d = 2; d <= 10; ++d)
            c.expect_eq(cusp_dim_leading(families::l_lattice(2, d), GroupTag::OTildePlus),
                        fixtures::k3_cusp_leading(d), label("K3", 2, d));
    });

    failed += run(5, "paramodular cusp coefficient d = 2..6, (d^2+1)/8640 at prime d", 5.0, [](Checker& c) {
        for (long d = 2; d <= 6; ++d) {
            const Rational v = cusp_dim_leading(families::l_lattice(0, d), GroupTag::SOTildePlus);
            c.expect_eq(v, fixtures::paramodular_cusp_leading(d), "d=" + std::to_string(d));
            if (is_prime(Integer(d)))
                c.expect_eq(v, fixtures::paramodular_cusp_leading_prime(d), "prime d=" + std::to_string(d));
        }
    });

    failed += run(6, "K_{2d} and N_{2d} Euler products against closed forms, m = 0", 30.0, [](Checker& c) {
        for (long d : {1L, 2L, 3L, 5L, 6L, 7L, 12L})
            c.expect_eq(group_volume(families::k_lattice(0, d), GroupTag::OTildePlus), fixtures::k_volume(0, d),
                        label("K", 0, d));
        for (long d : {1L, 5L, 13L})
            c.expect_eq(group_volume(families::n_lattice(0, d), GroupTag::OTildePlus), fixtures::n_volume(0, d),
                        label("N", 0, d));
    });

    failed += run(7, "local densities equal the stabilized counting oracle, 12 lattices, p in {2,3,5}", 600.0,
                  [](Checker& c) {
                      for (const char* text : kOracleCorpus) {
                          const Lattice l = lat(text);
                          const Integer twice_det = 2 * l.det();
                          for (long p : {2L, 3L, 5L}) {
                              if (twice_det % p != 0) continue;
                              const OracleRun o = stabilized_oracle(l, p);
                              const std::string what = std::string(text) + " p=" + std::to_string(p);
                              c.expect(o.stable, what + ": oracle did not stabilize");
                              c.expect_eq(local_density(l, p).value, o.value, what);
                          }
                      }
                  });

    failed += run(8, "discriminant-form isometry orders by brute force, d <= 30", 60.0, [](Checker& c) {
        for (long d = 1; d <= 30; ++d) {
            const int rho = fixtures::rho(d);
            c.expect_eq(finite_isometry_order(discriminant_form(rank_one(-2 * d))), two_to(rho),
                        "<-2d> d=" + std::to_string(d));
            const int e = rho + ((d % 4 == 3 || d % 8 == 0) ? 1 : 0);
            c.expect_eq(finite_isometry_order(discriminant_form(direct_sum(rank_one(2), rank_one(-2 * d)))),
                        two_to(e), "<2> + <-2d> d=" + std::to_string(d));
            if (d % 4 == 1)
                c.expect_eq(
                    finite_isometry_order(discriminant_form(from_rows({{2, 1}, {1, (1 - d) / 2}}))), two_to(rho),
                    "binary form of discriminant d=" + std::to_string(d));
        }
    });

    failed += run(9, "structural invariants: pi cancellation, O+ = 2 O, Siegel ratio, Jordan conservation", 120.0,
                  [](Checker& c) {
                      for (const char* text : kVolumeCorpus) {
                          const Lattice l = lat(text);
                          const SymbolicReal v = vol_hm(l);
                          c.expect(v.is_rational(), std::string(text) + ": pi does not cancel");
                          c.expect_eq(group_volume(l, GroupTag::OPlus), 2 * group_volume(l, GroupTag::O), text);
                          const SiegelIdentities id = siegel_identities(l);
                          c.expect(id.vol_siegel / id.vol_dual == v, std::string(text) + ": Siegel ratio");
                      }
                      std::mt19937 rng(20240611);
                      for (int trial = 0; trial < 1000; ++trial) {
                          const Lattice l = random_composition(rng);
                          for (long p : {2L, 3L, 5L, 7L}) {
                              const JordanDecomposition d = jordan_decompose(l, p);
                              const std::string what = "trial " + std::to_string(trial) + " p=" + std::to_string(p);
                              c.expect_eq(d.rank(), static_cast<int>(l.rank()), what + " rank");
                              c.expect_eq(d.det_valuation(), valuation(l.det(), Integer(p)), what + " valuation");
                          }
                      }
                  });

    std::printf("%d of 9 criteria failed\n", failed);
    return failed ? 1 : 0;
}
