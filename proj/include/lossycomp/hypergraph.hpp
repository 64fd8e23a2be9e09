#pragma once

// Building blocks of the characteristic multi-hypergraph: distortion balls, induced
// function values, the zero-distortion family Gamma_d, thresholded measures, and
// candidate-recovery enumeration.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

#include "lossycomp/hyperedge.hpp"
#include "lossycomp/model.hpp"

namespace lossycomp {

/// Caps on the exponential enumerations. Exceeding a cap is an error, never a truncation.
struct EnumerationLimits {
    std::size_t max_vertices = 20;      // Gamma_d walks 2^|X| - 1 subsets
    std::size_t max_recoveries = 4096;  // |Zhat|^|Y| candidate recoveries
};

/// B(zhat, delta) = { z : d(z, zhat) <= delta }, ascending z indices.
inline std::vector<std::size_t> distortion_ball(const ProblemSpec& spec, std::size_t zhat, double delta) {
    if (zhat >= spec.nzhat()) throw Error(Errc::IndexOutOfRange, "zhat index outside Zhat");
    if (!(delta >= 0.0)) throw Error(Errc::DomainError, "ball radius must be nonnegative");
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < spec.nz(); ++z)
        if (spec.d(z, zhat) <= delta) out.push_back(z);
    return out;
}

/// w_y = { f(x,y) : x in w, p(x,y) > 0 }, ascending; empty when no member of w co-occurs with y.
inline std::vector<std::size_t> induced_values(const ProblemSpec& spec, const Hyperedge& w, std::size_t y) {
    std::vector<std::size_t> out;
    for (std::size_t x : w.members()) {
        if (x >= spec.nx()) throw Error(Errc::IndexOutOfRange, "hyperedge member outside X");
        if (spec.p(x, y) > 0.0) out.push_back(spec.f(x, y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Smallest zhat whose zero-distortion ball holds every value in `values`, if any.
/// An empty set fits every ball, so zhat = 0 is returned for it.
inline std::optional<std::size_t> common_zero_reconstruction(const ProblemSpec& spec,
                                                             const std::vector<std::size_t>& values) {
    for (std::size_t zh = 0; zh < spec.nzhat(); ++zh) {
        bool fits = true;
        for (std::size_t z : values)
            if (spec.d(z, zh) != 0.0) {
                fits = false;
                break;
            }
        if (fits) return zh;
    }
    return std::nullopt;
}

/// Membership test for Gamma_d: for every y, w_y fits inside a single zero-distortion ball.
inline bool in_gamma_d(const ProblemSpec& spec, const Hyperedge& w) {
    for (std::size_t y = 0; y < spec.ny(); ++y)
        if (!common_zero_reconstruction(spec, induced_values(spec, w, y))) return false;
    return true;
}

inline HyperedgeFamily enumerate_gamma_d(const ProblemSpec& spec, const EnumerationLimits& limits = {}) {
    const std::size_t n = spec.nx();
    if (n > limits.max_vertices || n >= Hyperedge::kMaxVertices) {
        std::ostringstream os;
        os << "|X| = " << n << " exceeds the subset enumeration cap of " << limits.max_vertices;
        throw Error(Errc::AlphabetTooLarge, os.str());
    }
    // Per (x, y): bitmask of zhat values reconstructing f(x,y) at zero distortion.
    // A subset is admissible iff the AND of its members' masks is nonzero for each y.
    std::vector<std::uint64_t> zero_mask(n * spec.ny(), 0);
    const bool wide = spec.nzhat() > 64;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < spec.ny(); ++y) {
            std::uint64_t m = 0;
            if (!(spec.p(x, y) > 0.0)) {
                m = ~std::uint64_t{0};
            } else if (!wide) {
                for (std::size_t zh = 0; zh < spec.nzhat(); ++zh)
                    if (spec.cell_distortion(x, y, zh) == 0.0) m |= std::uint64_t{1} << zh;
            }
            zero_mask[x * spec.ny() + y] = m;
        }

    HyperedgeFamily fam;
    const std::uint64_t count = (std::uint64_t{1} << n);
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        const Hyperedge w(mask);
        bool ok = true;
        if (wide) {
            ok = in_gamma_d(spec, w);
        } else {
            for (std::size_t y = 0; y < spec.ny() && ok; ++y) {
                std::uint64_t acc = ~std::uint64_t{0};
                for (std::uint64_t m = mask; m != 0; m &= m - 1)
                    acc &= zero_mask[static_cast<std::size_t>(std::countr_zero(m)) * spec.ny() + y];
                ok = acc != 0;
            }
        }
        if (ok) fam.insert(w);
    }
    return fam;
}

/// d_eps(z, zhat) = 1{ d(z, zhat) > eps }
inline Matrix<double> epsilon_distortion(const ProblemSpec& spec, double eps) {
    if (!(eps >= 0.0)) throw Error(Errc::DomainError, "epsilon must be nonnegative");
    Matrix<double> out(spec.nz(), spec.nzhat(), 0.0);
    for (std::size_t z = 0; z < spec.nz(); ++z)
        for (std::size_t zh = 0; zh < spec.nzhat(); ++zh) out(z, zh) = spec.d(z, zh) > eps ? 1.0 : 0.0;
    return out;
}

/// All |Zhat|^|Y| recoveries in lexicographic order (y = 0 is the most significant position).
inline std::vector<CandidateRecovery> enumerate_candidate_recoveries(const ProblemSpec& spec,
                                                                     const EnumerationLimits& limits = {}) {
    std::size_t total = 1;
    for (std::size_t y = 0; y < spec.ny(); ++y) {
        if (total > limits.max_recoveries / spec.nzhat()) {
            std::ostringstream os;
            os << "|Zhat|^|Y| = " << spec.nzhat() << "^" << spec.ny() << " exceeds the recovery cap of "
               << limits.max_recoveries;
            throw Error(Errc::RecoverySpaceTooLarge, os.str());
        }
        total *= spec.nzhat();
    }
    std::vector<CandidateRecovery> out;
    out.reserve(total);
    CandidateRecovery r{std::vector<std::size_t>(spec.ny(), 0)};
    for (std::size_t k = 0; k < total; ++k) {
        out.push_back(r);
        for (std::size_t y = spec.ny(); y-- > 0;) {
            if (++r.per_y[y] < spec.nzhat()) break;
            r.per_y[y] = 0;
        }
    }
    return out;
}

/// Members not strictly contained in another member.
inline HyperedgeFamily maximal_members(const HyperedgeFamily& fam) {
    HyperedgeFamily out;
    for (const auto& w : fam) {
        const bool dominated =
            std::any_of(fam.begin(), fam.end(), [&](const Hyperedge& v) { return w.is_strict_subset_of(v); });
        if (!dominated) out.insert(w);
    }
    return out;
}

}  // namespace lossycomp
