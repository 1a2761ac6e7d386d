#pragma once

#include <string>
#include <vector>

#include "hmvol/discriminant.hpp"
#include "hmvol/error.hpp"
#include "hmvol/fixtures.hpp"
#include "hmvol/lattice.hpp"
#include "hmvol/volume.hpp"

namespace hmvol {

/// One family member: the engine's value next to the independent closed form.
struct CatalogRow {
    std::string family;
    std::string label;
    std::string quantity;
    Rational engine;
    Rational fixture;
    bool match() const { return engine == fixture; }
};

enum class Family { II, T, L, K, N };

inline Family parse_family(const std::string& s) {
    if (s == "II") return Family::II;
    if (s == "T") return Family::T;
    if (s == "L") return Family::L;
    if (s == "K") return Family::K;
    if (s == "N") return Family::N;
    throw PreconditionError("unknown family '" + s + "' (expected II, T, L, K or N)");
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::II: return "II";
        case Family::T: return "T";
        case Family::L: return "L";
        case Family::K: return "K";
        case Family::N: return "N";
    }
    throw InternalError("unknown family");
}

inline bool family_uses_d(Family f) { return f == Family::L || f == Family::K || f == Family::N; }

inline CatalogRow catalog_row(Family f, unsigned m, long d = 1) {
    const std::string ms = "m=" + std::to_string(m);
    const std::string ds = ", d=" + std::to_string(d);
    switch (f) {
        case Family::II:
            return {"II", "II_{2," + std::to_string(8 * m + 2) + "} " + ms, "vol O+",
                    group_volume(families::even_unimodular(static_cast<int>(m)), GroupTag::OPlus),
                    fixtures::ii_volume(m)};
        case Family::T: {
            const Rational t = group_volume(families::t_lattice(static_cast<int>(m)), GroupTag::OTildePlus);
            const Rational ii = group_volume(families::even_unimodular(static_cast<int>(m)), GroupTag::OTildePlus);
            return {"T", "T_{2," + std::to_string(8 * m + 2) + "} " + ms, "vol O~+(T) / vol O~+(II)", t / ii,
                    fixtures::t_ratio(m)};
        }
        case Family::L:
            if (d < 1) throw PreconditionError("L family needs d >= 1");
            return {"L", "L_{2d}^{(m)} " + ms + ds, "vol O~+",
                    group_volume(families::l_lattice(static_cast<int>(m), d), GroupTag::OTildePlus),
                    fixtures::l_volume(m, d)};
        case Family::K:
            if (d < 1) throw PreconditionError("K family needs d >= 1");
            return {"K", "K_{2d}^{(m)} " + ms + ds, "vol O~+",
                    group_volume(families::k_lattice(static_cast<int>(m), d), GroupTag::OTildePlus),
                    fixtures::k_volume(m, d)};
        case Family::N:
            if (d < 1 || d % 4 != 1) throw PreconditionError("N family needs d = 1 mod 4");
            return {"N", "N_{2d}^{(m)} " + ms + ds, "vol O~+",
                    group_volume(families::n_lattice(static_cast<int>(m), d), GroupTag::OTildePlus),
                    fixtures::n_volume(m, d)};
    }
    throw InternalError("unknown family");
}

inline std::vector<CatalogRow> catalog(Family f, const std::vector<unsigned>& ms, const std::vector<long>& ds) {
    std::vector<CatalogRow> rows;
    for (unsigned m : ms) {
        if (!family_uses_d(f)) {
            rows.push_back(catalog_row(f, m));
            continue;
        }
        for (long d : ds) rows.push_back(catalog_row(f, m, d));
    }
    return rows;
}

}  // namespace hmvol
