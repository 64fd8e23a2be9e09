#pragma once

// Monte-Carlo run of the single-letter scheme: draw (x, y), encode x into an atom
// (subset, recovery) with probability p(atom|x), decode with y, score the distortion.
//
// Samples are cut into fixed chunks, each with its own derived seed, so the report does
// not depend on how many threads run the chunks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lossycomp/info.hpp"
#include "lossycomp/rng.hpp"

namespace lossycomp {

inline constexpr std::uint64_t kSimulationChunk = 65536;

struct SimulationReport {
    std::uint64_t n = 0;
    double empirical_distortion = 0.0;
    double target_distortion = 0.0;  // E[d] of the channel, computed exactly
    std::optional<double> std_error;  // undefined for n = 1
    std::vector<std::uint64_t> per_atom_count;
    std::vector<double> per_atom_frequency;
    std::vector<double> atom_marginal;  // p(atom), for comparison with the frequencies
    std::uint64_t rng_seed = 0;
    std::string note =
        "distortion side only: the rate is not demonstrated (that needs block binning, out of scope)";
};

namespace sim_detail {

inline std::size_t draw(const std::vector<double>& cdf, std::size_t last_positive, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto i = static_cast<std::size_t>(it - cdf.begin());
    return std::min(i, last_positive);
}

struct Table {
    std::vector<double> cdf;
    std::size_t last = 0;
};

inline Table make_table(std::span<const double> w) {
    Table t;
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        t.cdf.push_back(acc);
        if (w[i] > 0.0) t.last = i;
    }
    // Rescale so rounding never leaves u above the final entry.
    for (auto& c : t.cdf) c /= acc;
    return t;
}

struct ChunkResult {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::vector<std::uint64_t> atoms;
    std::optional<Error> failure;
};

}  // namespace sim_detail

inline SimulationReport simulate_scheme(const ProblemSpec& spec, const AuxChannel& ch, std::uint64_t n,
                                        std::uint64_t seed = kDefaultSeed, unsigned threads = 1,
                                        std::ostream* trace = nullptr) {
    if (n == 0) throw Error(Errc::DomainError, "sample count must be at least 1");
    detail::check_channel(spec, ch);
    for (std::size_t u = 0; u < ch.num_atoms(); ++u) {
        const auto& l = ch.label(u);
        if (!l.subset || !l.recovery)
            throw Error(Errc::UnannotatedChannel,
                        "atom " + std::to_string(u) + " lacks a subset or recovery; lift or attach the channel first");
        if (l.recovery->size() != spec.ny()) throw Error(Errc::DimensionMismatch, "recovery length differs from |Y|");
    }
    const DecoderMap dec = DecoderMap::from_recoveries(ch);
    detail::check_decoder(spec, ch, dec);

    const std::size_t nx = spec.nx(), ny = spec.ny(), na = ch.num_atoms();
    const sim_detail::Table source = sim_detail::make_table(spec.pmf().flat());
    std::vector<sim_detail::Table> encoder(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        std::vector<double> col(na);
        for (std::size_t u = 0; u < na; ++u) col[u] = ch(u, x);
        encoder[x] = sim_detail::make_table(col);
    }

    const std::uint64_t chunks = (n + kSimulationChunk - 1) / kSimulationChunk;
    std::vector<sim_detail::ChunkResult> results(chunks);

    auto run_chunk = [&](std::uint64_t c, std::ostream* out) {
        auto& r = results[c];
        r.atoms.assign(na, 0);
        Rng rng(derive_seed(seed, c));
        const std::uint64_t begin = c * kSimulationChunk;
        const std::uint64_t end = std::min(n, begin + kSimulationChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::size_t cell = sim_detail::draw(source.cdf, source.last, rng.uniform());
            const std::size_t x = cell / ny, y = cell % ny;
            const std::size_t u = sim_detail::draw(encoder[x].cdf, encoder[x].last, rng.uniform());
            if (!ch.label(u).subset->contains(x)) {
                std::ostringstream os;
                os << "sample " << i << ": x=" << spec.x_alphabet().label(x) << " encoded into atom " << u
                   << " whose subset does not contain it";
                r.failure = Error(Errc::MembershipViolation, os.str());
                return;
            }
            const std::size_t zh = dec(u, y);
            const double d = spec.cell_distortion(x, y, zh);
            ++r.atoms[u];
            ++r.count;
            const double delta = d - r.mean;
            r.mean += delta / static_cast<double>(r.count);
            r.m2 += delta * (d - r.mean);
            if (out)
                *out << spec.x_alphabet().label(x) << ',' << spec.y_alphabet().label(y) << ',' << u << ','
                     << spec.zhat_alphabet().label(zh) << ',' << d << '\n';
        }
    };

    const unsigned workers = trace ? 1u : std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            run_chunk(c, trace);
            if (results[c].failure) throw *results[c].failure;
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += workers) run_chunk(c, nullptr);
            });
        for (auto& th : pool) th.join();
        for (const auto& r : results)
            if (r.failure) throw *r.failure;
    }

    // Chan et al. pairwise merge, always in chunk order.
    SimulationReport rep;
    rep.n = n;
    rep.rng_seed = seed;
    rep.per_atom_count.assign(na, 0);
    double count = 0.0, mean = 0.0, m2 = 0.0;
    for (const auto& r : results) {
        const double nb = static_cast<double>(r.count);
        const double tot = count + nb;
        const double delta = r.mean - mean;
        mean += delta * nb / tot;
        m2 += r.m2 + delta * delta * count * nb / tot;
        count = tot;
        for (std::size_t u = 0; u < na; ++u) rep.per_atom_count[u] += r.atoms[u];
    }
    rep.empirical_distortion = std::max(mean, 0.0);
    if (n > 1) rep.std_error = std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    rep.per_atom_frequency.resize(na);
    for (std::size_t u = 0; u < na; ++u)
        rep.per_atom_frequency[u] = static_cast<double>(rep.per_atom_count[u]) / static_cast<double>(n);
    rep.atom_marginal = ch.atom_marginal(spec);
    rep.target_distortion = expected_distortion(spec, ch, dec);
    return rep;
}

}  // namespace lossycomp
