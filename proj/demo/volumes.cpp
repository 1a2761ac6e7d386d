// Volumes and cusp-form growth for a few classical lattices.
#include <iostream>

#include "hmvol/hmvol.hpp"

int main() {
    using namespace hmvol;

    // Siegel modular group: SO~+(2U + <-2>)
    const Lattice sp2 = expr::parse_lattice("2*U + <-2>");
    for (const GroupRow& g : analyze(sp2).groups)
        std::cout << tag_name(g.index.tag) << "\tvol " << g.volume << "\tk^3 coefficient " << g.cusp_leading << "\n";

    // paramodular levels
    for (long t = 2; t <= 7; ++t) {
        const Lattice l = families::l_lattice(0, t);
        std::cout << "paramodular t=" << t << "\t" << cusp_dim_leading(l, GroupTag::SOTildePlus) << "\n";
    }

    // polarized K3 surfaces of degree 2d
    for (long d = 1; d <= 4; ++d) {
        const Lattice l = families::l_lattice(2, d);
        std::cout << "K3 2d=" << 2 * d << "\tvol " << group_volume(l, GroupTag::OTildePlus) << "\n";
    }

    // the densities behind one of them
    for (const Integer& p : bad_primes(families::l_lattice(2, 3)))
        std::cout << "alpha_" << p << " = " << local_density(families::l_lattice(2, 3), p).value << "\n";
}
