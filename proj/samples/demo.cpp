// Enumerates the Q-fundamental surfaces of a lens space and prints their topology.
//   demo [p q]

#include <cstdlib>
#include <iostream>

#include "qlens/qlens.hpp"

int main(int argc, char** argv) {
    const int p = argc > 2 ? std::atoi(argv[1]) : 6;
    const int q = argc > 2 ? std::atoi(argv[2]) : 1;
    try {
        const qlens::LensTriangulation tri({p, q});
        const auto surfaces = qlens::enumerate_q_fundamental(p, q);
        std::cout << "T(" << p << "," << q << ") has " << surfaces.size() << " Q-fundamental surfaces\n";
        for (const auto& [v, report] : surfaces)
            std::cout << "  " << v << "  chi=" << report.euler << "  " << qlens::surface_name(report) << '\n';
    } catch (const qlens::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
