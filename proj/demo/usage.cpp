// Small tour of the library: membership, partners, and a solver query.

#include "jetsec/text.hpp"
#include "jetsec/theorems.hpp"

#include <iostream>

int main() {
    using namespace jetsec;

    const auto rho = parse_poly("x2*x0 - 2*x1^2");
    std::cout << "expansion of " << format_poly(rho) << ": " << format_laurent(inversion_expansion(rho)) << "\n";

    const auto r = partner(rho, 3);
    if (const auto* w = std::get_if<CompatibilityWitness>(&r)) {
        std::cout << "partner at level 3: " << format_poly(w->rho2) << "\n";
    }

    const auto no = partner(parse_poly("x1^2"), 3);
    if (const auto* e = std::get_if<NotAMember>(&no)) {
        std::cout << "x1^2 is not in P_3; lowest x0 power " << e->min_x0_power << "\n";
    }

    const auto rep = solve_subspace({5, 2, {}});
    std::cout << "dim P_{5,2} = " << rep.dimension << " (binomial " << binomial(5, 2) << ")\n";
    for (const auto& b : rep.basis) {
        std::cout << "  " << format_poly(b) << "\n";
    }
}
