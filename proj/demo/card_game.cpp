// Traces the card-game R(D) curve, then looks at the optimal scheme at D = 1/12.

#include <cstdio>

#include "lossycomp/lossycomp.hpp"

using namespace lossycomp;

int main() {
    const ProblemSpec spec = card_game_spec();

    std::printf("%10s %12s\n", "D", "R(D) bits");
    for (int i = 0; i <= 8; ++i) {
        const double D = (1.0 / 6.0) * i / 8.0;
        std::printf("%10.6f %12.9f\n", D, solve_at_distortion(spec, D, SolverConfig{}).rate);
    }

    const RDPoint pt = solve_at_distortion(spec, 1.0 / 12.0, SolverConfig{});
    const AuxChannel scheme = lift_to_multihyperedge(spec, pt.channel, pt.decoder);
    const auto pu = scheme.atom_marginal(spec);
    std::printf("\nscheme at D = 1/12:\n");
    for (std::size_t u = 0; u < scheme.num_atoms(); ++u) {
        if (pu[u] < 1e-9) continue;
        const auto& l = scheme.label(u);
        std::printf("  %s %s  p = %.4f\n", format_hyperedge(spec.x_alphabet(), *l.subset).c_str(),
                    format_recovery(spec.zhat_alphabet(), *l.recovery).c_str(), pu[u]);
    }

    const SimulationReport sim = simulate_scheme(spec, scheme, 200000);
    std::printf("\nsimulated distortion %.5f +/- %.5f (target %.5f)\n", sim.empirical_distortion, *sim.std_error,
                sim.target_distortion);
}
