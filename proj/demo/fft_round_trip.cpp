// Demonstration: transform a random state with both fast backends at
// the same dimension, compare them against the direct summation, and
// undo the transform to recover the input.

#include <iostream>

#include "oddfft/oddfft.hpp"

int main() {
    using namespace oddfft;

    // D = 225 factors as 9 * 25 (coprime) and as 15^2 (balanced
    // radix), so both backends apply to the same state.
    const auto radix_plan = plan_radix(15, 2);
    const auto pfa_plan = plan_pfa({9, 25});
    const auto s = random_state(225, 42);

    TransformStats radix_stats, pfa_stats, direct_stats;
    const auto via_radix = fft_radix(s, radix_plan, &radix_stats);
    const auto via_pfa = fft_pfa(s, pfa_plan, &pfa_stats);
    const auto via_direct = dft_direct(s, &direct_stats);

    std::cout << "D = 225\n";
    std::cout << "  direct summation: " << direct_stats.total() << " multiplications\n";
    std::cout << "  balanced radix (15^2): " << radix_stats.total()
              << " multiplications, deviation " << distance(via_radix, via_direct) << "\n";
    std::cout << "  coprime factors (9, 25): " << pfa_stats.total()
              << " multiplications, deviation " << distance(via_pfa, via_direct) << "\n";

    const auto back = ifft_radix(via_radix, radix_plan);
    std::cout << "  round trip through the radix backend recovers the input to "
              << distance(back, s) << "\n";

    // A product state transforms factor by factor: the factorized
    // path touches d * D table entries instead of running full stages.
    const std::vector<std::vector<cplx>> factors{random_state(15, 1).amplitudes,
                                                 random_state(15, 2).amplitudes};
    const auto product = tensor_product_state(factors, 15);
    const auto full = fft_radix(product, radix_plan);
    const auto tables = fft_radix_factorized(factors, radix_plan);
    std::cout << "  factorized product-state path deviates by "
              << distance(tables.assemble(), full) << " from the full transform\n";
    return 0;
}
