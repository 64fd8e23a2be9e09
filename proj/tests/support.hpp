#pragma once

// Reference computations for the tests. Written against the definitions directly, without
// going through the library's own helpers, so a shared bug cannot hide.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lossycomp/lossycomp.hpp"

namespace ref {

using namespace lossycomp;

/// Error code thrown by f, if any.
template <typename F>
std::optional<Errc> code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double card_game(double D) {
    if (D >= 1.0 / 6.0) return 0.0;
    return 2.0 / 3.0 * (h2((1.0 + 6.0 * D) / 4.0) - h2(3.0 * D));
}

inline double shannon_binary(double D) { return D >= 0.5 ? 0.0 : 1.0 - h2(D); }

/// Wyner-Ziv function of the doubly symmetric binary source with crossover p:
/// lower convex envelope of H(p*D) - H(D) and the point (p, 0).
inline double wyner_ziv_binary(double p, double D) {
    if (D >= p) return 0.0;
    auto g = [&](double b) { return h2(p * (1 - b) + b * (1 - p)) - h2(b); };
    // time-share between (b, g(b)) with weight a and (p, 0): a b + (1 - a) p = D
    double best = g(D);
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double b = D * i / n;
        best = std::min(best, (p - D) / (p - b) * g(b));
    }
    return best;
}

/// I(X;U|Y) in bits as H(U|Y) - H(U|X,Y), with H(U|X,Y) = H(U|X) by the chain U - X - Y.
inline double cmi(const ProblemSpec& s, const Matrix<double>& c) {
    double hy = 0.0, hx = 0.0;
    for (std::size_t u = 0; u < c.rows(); ++u) {
        for (std::size_t y = 0; y < s.ny(); ++y) {
            double puy = 0.0, py = 0.0;
            for (std::size_t x = 0; x < s.nx(); ++x) {
                puy += s.p(x, y) * c(u, x);
                py += s.p(x, y);
            }
            if (puy > 0.0) hy -= puy * std::log2(puy / py);
        }
        for (std::size_t x = 0; x < s.nx(); ++x) {
            double px = 0.0;
            for (std::size_t y = 0; y < s.ny(); ++y) px += s.p(x, y);
            if (c(u, x) > 0.0) hx -= px * c(u, x) * std::log2(c(u, x));
        }
    }
    return hy - hx;
}

/// Definition of the zero-distortion family, checked subset by subset.
inline std::set<std::vector<std::size_t>> gamma_d(const ProblemSpec& s) {
    std::set<std::vector<std::size_t>> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << s.nx()); ++m) {
        std::vector<std::size_t> w;
        for (std::size_t x = 0; x < s.nx(); ++x)
            if (m >> x & 1) w.push_back(x);
        bool ok = true;
        for (std::size_t y = 0; y < s.ny() && ok; ++y) {
            bool some = false;
            for (std::size_t zh = 0; zh < s.nzhat() && !some; ++zh) {
                bool fits = true;
                for (std::size_t x : w)
                    if (s.p(x, y) > 0.0 && s.d(s.f(x, y), zh) != 0.0) fits = false;
                some = fits;
            }
            ok = some;
        }
        if (ok) out.insert(w);
    }
    return out;
}

inline std::set<std::vector<std::size_t>> as_sets(const HyperedgeFamily& fam) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& w : fam) out.insert(w.members());
    return out;
}

/// Random desk-size instance; every d row holds a zero so the distortion floor is 0.
inline ProblemSpec random_spec(Rng& rng, std::size_t max_x = 3, std::size_t max_y = 2, std::size_t nzhat = 2) {
    const std::size_t nx = 1 + rng.next() % max_x, ny = 1 + rng.next() % max_y, nz = 2 + rng.next() % 2;
    RawSpec raw;
    raw.x_alphabet = Alphabet::numbered(nx).labels();
    raw.y_alphabet = Alphabet::numbered(ny).labels();
    raw.z_alphabet = Alphabet::numbered(nz).labels();
    raw.zhat_alphabet = Alphabet::numbered(nzhat).labels();
    raw.p_xy.assign(nx, std::vector<double>(ny));
    double tot = 0.0;
    for (auto& r : raw.p_xy)
        for (auto& v : r) tot += (v = 0.05 + rng.uniform());
    for (auto& r : raw.p_xy)
        for (auto& v : r) v /= tot;
    double s = 0.0;
    for (auto& r : raw.p_xy)
        for (auto v : r) s += v;
    raw.p_xy[0][0] += 1.0 - s;
    raw.f.assign(nx, std::vector<std::int64_t>(ny));
    for (auto& r : raw.f)
        for (auto& v : r) v = static_cast<std::int64_t>(rng.next() % nz);
    raw.d.assign(nz, std::vector<double>(nzhat));
    for (auto& r : raw.d) {
        for (auto& v : r) v = 0.1 + rng.uniform();
        r[rng.next() % nzhat] = 0.0;
    }
    return validate_spec(raw);
}

/// Random column-stochastic matrix; about a third of the entries are exact zeros.
inline Matrix<double> random_cond(Rng& rng, std::size_t atoms, std::size_t nx) {
    Matrix<double> c(atoms, nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        double z = 0.0;
        for (std::size_t u = 0; u < atoms; ++u) z += (c(u, x) = rng.uniform() < 0.33 ? 0.0 : rng.uniform());
        if (z == 0.0) {
            c(rng.next() % atoms, x) = 1.0;
            z = 1.0;
        }
        for (std::size_t u = 0; u < atoms; ++u) c(u, x) /= z;
    }
    return c;
}

/// The two-atom card-game channel with p(w0|x=i) = p_i, atoms (1,0,0) and (1,1,0).
inline AuxChannel card_game_family(double p1, double p2, double p3) {
    Matrix<double> c(2, 3);
    const double p[3] = {p1, p2, p3};
    for (std::size_t x = 0; x < 3; ++x) {
        c(0, x) = p[x];
        c(1, x) = 1.0 - p[x];
    }
    return AuxChannel(std::move(c), {AtomLabel{std::nullopt, CandidateRecovery{{1, 0, 0}}},
                                     AtomLabel{std::nullopt, CandidateRecovery{{1, 1, 0}}}});
}

}  // namespace ref
