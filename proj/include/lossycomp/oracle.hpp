#pragma once

// Brute-force cross-check for the solver on small instances.
//
// Minimizes I(X;W|Y) directly under the hard constraint E[d] <= D by projected gradient descent.
// The feasible set (one probability simplex per x, intersected with the distortion half-space)
// is projected onto exactly: simplex projections of v - nu * a, with the half-space multiplier
// nu found by bisection. The objective is evaluated as H(W|Y) - H(W|X). When few parameters are
// free, an exhaustive grid is searched as well. Nothing here shares code with the multiplicative
// solver iteration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "lossycomp/hypergraph.hpp"
#include "lossycomp/info.hpp"
#include "lossycomp/model.hpp"
#include "lossycomp/rng.hpp"
#include "lossycomp/solver.hpp"

namespace lossycomp {

struct OracleConfig {
    double grid_resolution = 1e-3;
    int random_restarts = 256;
    std::uint64_t rng_seed = kDefaultSeed;
    std::size_t max_alphabet_product = 64;  // cap on |X| * |recoveries|
    int threads = 1;
    long polish_iterations = 400;    // longer runs from the best few scouts
    long scout_iterations = 40;      // short runs from every random start

    void validate() const {
        if (!(grid_resolution > 0.0 && grid_resolution <= 0.5))
            throw Error(Errc::InvalidConfig, "grid_resolution must lie in (0, 0.5]");
        if (random_restarts < 1 || max_alphabet_product < 1 || threads < 1 || polish_iterations < 1 ||
            scout_iterations < 1)
            throw Error(Errc::InvalidConfig, "oracle caps must be positive");
    }
};

struct VerificationReport {
    double target_distortion = 0.0;   // distortion the point claims
    double achieved_distortion = 0.0; // recomputed from its channel and decoder
    double claimed_rate = 0.0;
    double solver_rate = 0.0;         // recomputed I(X;U|Y) of the channel
    double oracle_rate = 0.0;         // brute force at the achieved distortion
    double gap = 0.0;                 // solver_rate - oracle_rate
    double rate_residual = 0.0;       // |claimed - recomputed|
    double distortion_residual = 0.0; // |claimed - recomputed|
    double column_residual = 0.0;     // max |sum_u p(u|x) - 1|
    double tolerance = 1e-3;
    bool pass = false;
};

namespace oracle_detail {

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

/// Problem data over the recovery alphabet: weight(u, x) = p(x) E[d | x, recovery u].
struct Program {
    const ProblemSpec* spec;
    std::size_t atoms;
    std::vector<double> weight;  // atoms * nx, row-major by atom
    std::vector<char> usable;    // entries allowed by a hard D = D_min constraint
};

/// I(X;W|Y) = H(W|Y) - H(W|X), bits.
inline double objective(const Program& pr, const std::vector<double>& c) {
    const auto& s = *pr.spec;
    const std::size_t nx = s.nx();
    double h_given_x = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t u = 0; u < pr.atoms; ++u) h_given_x -= s.px(x) * plogp(c[u * nx + x]);
    double h_given_y = 0.0;
    for (std::size_t y = 0; y < s.ny(); ++y) {
        if (!(s.py(y) > 0.0)) continue;
        for (std::size_t u = 0; u < pr.atoms; ++u) {
            double joint = 0.0;  // p(u, y)
            for (std::size_t x = 0; x < nx; ++x) joint += s.p(x, y) * c[u * nx + x];
            h_given_y -= s.py(y) * plogp(joint / s.py(y));
        }
    }
    return h_given_y - h_given_x;
}

/// d I / d p(w|x) = sum_y p(x,y) log2( p(w|x) / p(w|y) ).
inline std::vector<double> gradient(const Program& pr, const std::vector<double>& c) {
    const auto& s = *pr.spec;
    const std::size_t nx = s.nx();
    std::vector<double> g(c.size(), 0.0);
    for (std::size_t u = 0; u < pr.atoms; ++u) {
        for (std::size_t y = 0; y < s.ny(); ++y) {
            if (!(s.py(y) > 0.0)) continue;
            double joint = 0.0;
            for (std::size_t x = 0; x < nx; ++x) joint += s.p(x, y) * c[u * nx + x];
            const double cond_y = joint / s.py(y);
            for (std::size_t x = 0; x < nx; ++x) {
                const double cux = c[u * nx + x];
                if (!(s.p(x, y) > 0.0) || !(cux > 0.0)) continue;  // unusable entries never move
                g[u * nx + x] += s.p(x, y) * std::log2(cux / cond_y);
            }
        }
    }
    return g;
}

inline double distortion(const Program& pr, const std::vector<double>& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) total += pr.weight[i] * c[i];
    return total;
}

/// Entries of a usable column never drop below this floor, which keeps the entropy gradient finite.
/// The induced bias on the rate is at most about |atoms| * kFloor * log2(1 / kFloor) bits.
inline constexpr double kFloor = 1e-10;

/// Euclidean projection of v onto { c : c_i >= kFloor on masked entries, c_i = 0 elsewhere, sum c = 1 }.
inline void project_simplex(std::vector<double>& v, const std::vector<char>& mask) {
    std::vector<double> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mask[i]) s.push_back(v[i] - kFloor);
    const double mass = 1.0 - kFloor * static_cast<double>(s.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        cum += s[k];
        const double t = (cum - mass) / static_cast<double>(k + 1);
        if (s[k] - t > 0.0) theta = t;
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask[i] ? kFloor + std::max(v[i] - kFloor - theta, 0.0) : 0.0;
}

/// Projects onto { every column a distribution on usable entries, sum weight * c <= D }.
inline std::vector<double> project(const Program& pr, const std::vector<double>& v, double D) {
    const std::size_t nx = pr.spec->nx();
    auto shifted = [&](double nu) {
        std::vector<double> out(v.size());
        std::vector<double> col(pr.atoms);
        std::vector<char> mask(pr.atoms);
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t u = 0; u < pr.atoms; ++u) {
                col[u] = v[u * nx + x] - nu * pr.weight[u * nx + x];
                mask[u] = pr.usable[u * nx + x];
            }
            project_simplex(col, mask);
            for (std::size_t u = 0; u < pr.atoms; ++u) out[u * nx + x] = col[u];
        }
        return out;
    };
    auto c = shifted(0.0);
    if (distortion(pr, c) <= D) return c;
    double lo = 0.0, hi = 1.0;
    auto c_hi = shifted(hi);
    while (distortion(pr, c_hi) > D) {
        lo = hi;
        hi *= 2.0;
        c_hi = shifted(hi);
        if (hi > 1e30) break;
    }
    for (int i = 0; i < 100 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        auto c_mid = shifted(mid);
        if (distortion(pr, c_mid) > D) {
            lo = mid;
        } else {
            hi = mid;
            c_hi = std::move(c_mid);
        }
    }
    return c_hi;
}

/// Projected gradient with backtracking; every iterate is feasible.
inline std::pair<std::vector<double>, double> descend(const Program& pr, std::vector<double> c, double D, long iters) {
    double f = objective(pr, c);
    double step = 1.0;
    for (long it = 0; it < iters; ++it) {
        const auto g = gradient(pr, c);
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> trial(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) trial[i] = c[i] - step * g[i];
            trial = project(pr, trial, D);
            double lin = 0.0, sq = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const double dlt = trial[i] - c[i];
                lin += g[i] * dlt;
                sq += dlt * dlt;
            }
            if (sq < 1e-30) break;
            const double ft = objective(pr, trial);
            if (ft <= f + lin + sq / (2.0 * step)) {
                moved = ft < f;
                c = std::move(trial);
                f = std::min(f, ft);
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return {std::move(c), f};
}

inline std::vector<double> random_start(const Program& pr, Rng& rng, double D) {
    std::vector<double> c(pr.weight.size(), 0.0);
    const std::size_t nx = pr.spec->nx();
    // exponential spacings give a uniform point on each simplex
    for (std::size_t x = 0; x < nx; ++x) {
        double z = 0.0;
        for (std::size_t u = 0; u < pr.atoms; ++u) {
            if (!pr.usable[u * nx + x]) continue;
            const double e = -std::log(1.0 - rng.uniform());
            c[u * nx + x] = e;
            z += e;
        }
        for (std::size_t u = 0; u < pr.atoms; ++u) c[u * nx + x] /= z;
    }
    return project(pr, c, D);
}

/// Solves the dense system m * sol = rhs in place (Gaussian elimination, partial pivoting).
inline bool solve_dense(std::vector<double>& m, std::vector<double>& rhs, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
        if (!(std::abs(m[piv * n + k]) > 0.0)) return false;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i * n + k] / m[k * n + k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double acc = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= m[k * n + j] * rhs[j];
        rhs[k] = acc / m[k * n + k];
    }
    return true;
}

/// Log-barrier interior-point method:
///   minimize  t * I_nats(c) - sum_usable ln c - ln(D - weight . c)   s.t. every column sums to 1,
/// by equality-constrained Newton steps, raising t tenfold until the barrier gap m / t is below
/// 1e-12 nats. The Hessian of I is block diagonal over atoms:
///   d2 I / dc(u,x) dc(u,x') = [x = x'] p(x) / c(u,x) - sum_y p(x,y) p(x',y) / (p(y) q(u|y)).
/// Returns nullopt if no strictly feasible start exists.
inline std::optional<std::vector<double>> interior_point(const Program& pr, double D) {
    const auto& s = *pr.spec;
    const std::size_t nx = s.nx(), na = pr.atoms;
    const bool capped = std::isfinite(D);

    std::vector<std::size_t> vars;  // flat indices of free entries
    for (std::size_t i = 0; i < pr.usable.size(); ++i)
        if (pr.usable[i]) vars.push_back(i);
    const std::size_t n = vars.size();

    // strictly feasible start: cheapest atoms blended with a little uniform mass
    std::vector<double> cheap(na * nx, 0.0), flat(na * nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        double lo = std::numeric_limits<double>::infinity();
        std::size_t k_usable = 0, k_cheap = 0;
        for (std::size_t u = 0; u < na; ++u)
            if (pr.usable[u * nx + x]) {
                lo = std::min(lo, pr.weight[u * nx + x]);
                ++k_usable;
            }
        for (std::size_t u = 0; u < na; ++u)
            if (pr.usable[u * nx + x] && pr.weight[u * nx + x] <= lo) ++k_cheap;
        for (std::size_t u = 0; u < na; ++u) {
            if (!pr.usable[u * nx + x]) continue;
            flat[u * nx + x] = 1.0 / static_cast<double>(k_usable);
            if (pr.weight[u * nx + x] <= lo) cheap[u * nx + x] = 1.0 / static_cast<double>(k_cheap);
        }
    }
    double mix = 0.5;
    if (capped) {
        const double d_cheap = distortion(pr, cheap), d_flat = distortion(pr, flat);
        if (!(d_cheap < D)) return std::nullopt;
        if (d_flat >= D) mix = 0.5 * (D - d_cheap) / (d_flat - d_cheap);
    }
    std::vector<double> c(na * nx);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (1.0 - mix) * cheap[i] + mix * flat[i];

    auto barrier_value = [&](const std::vector<double>& v, double t) {
        double val = t * objective(pr, v) * std::log(2.0);
        for (std::size_t i : vars) {
            if (!(v[i] > 0.0)) return std::numeric_limits<double>::infinity();
            val -= std::log(v[i]);
        }
        if (capped) {
            const double slack = D - distortion(pr, v);
            if (!(slack > 0.0)) return std::numeric_limits<double>::infinity();
            val -= std::log(slack);
        }
        return val;
    };

    const double m_terms = static_cast<double>(n) + (capped ? 1.0 : 0.0);
    const std::size_t dim = n + nx;
    std::vector<std::size_t> pos(na * nx, n);  // flat index -> variable slot
    for (std::size_t k = 0; k < n; ++k) pos[vars[k]] = k;

    for (double t = 1.0; m_terms / t > 1e-12; t *= 10.0) {
        for (int newton = 0; newton < 200; ++newton) {
            // gradient and Hessian of the barrier objective over free entries
            const auto gi = gradient(pr, c);  // bits
            std::vector<double> grad(n), hess(n * n, 0.0);
            const double slack = capped ? D - distortion(pr, c) : 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t i = vars[k];
                grad[k] = t * gi[i] * std::log(2.0) - 1.0 / c[i] + (capped ? pr.weight[i] / slack : 0.0);
                hess[k * n + k] += 1.0 / (c[i] * c[i]);
            }
            if (capped)
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        hess[a * n + b] += pr.weight[vars[a]] * pr.weight[vars[b]] / (slack * slack);
            for (std::size_t u = 0; u < na; ++u) {
                for (std::size_t x = 0; x < nx; ++x) {
                    const std::size_t ka = pos[u * nx + x];
                    if (ka == n) continue;
                    hess[ka * n + ka] += t * s.px(x) / c[u * nx + x];
                }
                for (std::size_t y = 0; y < s.ny(); ++y) {
                    if (!(s.py(y) > 0.0)) continue;
                    double joint = 0.0;
                    for (std::size_t x = 0; x < nx; ++x) joint += s.p(x, y) * c[u * nx + x];
                    if (!(joint > 0.0)) continue;
                    for (std::size_t x = 0; x < nx; ++x) {
                        const std::size_t ka = pos[u * nx + x];
                        if (ka == n || !(s.p(x, y) > 0.0)) continue;
                        for (std::size_t x2 = 0; x2 < nx; ++x2) {
                            const std::size_t kb = pos[u * nx + x2];
                            if (kb == n) continue;
                            hess[ka * n + kb] -= t * s.p(x, y) * s.p(x2, y) / joint;
                        }
                    }
                }
            }
            // KKT system [H A^T; A 0] [step; w] = [-grad; 0], A = column-sum constraints
            std::vector<double> kkt(dim * dim, 0.0), rhs(dim, 0.0);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) kkt[a * dim + b] = hess[a * n + b];
                const std::size_t x = vars[a] % nx;
                kkt[a * dim + n + x] = 1.0;
                kkt[(n + x) * dim + a] = 1.0;
                rhs[a] = -grad[a];
            }
            if (!solve_dense(kkt, rhs, dim)) break;
            double decrement = 0.0;
            for (std::size_t k = 0; k < n; ++k) decrement -= grad[k] * rhs[k];
            if (decrement / 2.0 < 1e-13) break;

            const double f0 = barrier_value(c, t);
            double alpha = 1.0;
            std::vector<double> trial = c;
            bool accepted = false;
            for (int bt = 0; bt < 80; ++bt, alpha *= 0.5) {
                for (std::size_t k = 0; k < n; ++k) trial[vars[k]] = c[vars[k]] + alpha * rhs[k];
                const double f1 = barrier_value(trial, t);
                if (f1 <= f0 - 0.25 * alpha * decrement) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            c = trial;
        }
    }
    // renormalize columns exactly, keeping zeros where forced
    for (std::size_t x = 0; x < nx; ++x) {
        double z = 0.0;
        for (std::size_t u = 0; u < na; ++u) z += c[u * nx + x];
        for (std::size_t u = 0; u < na; ++u) c[u * nx + x] /= z;
    }
    // rounding in the column renormalization may overshoot the budget by ~1e-10; pull back
    // toward the cheapest channel, which changes the rate negligibly
    if (capped) {
        const double over = distortion(pr, c) - D;
        if (over > 0.0) {
            const double d_cheap = distortion(pr, cheap);
            const double eps = std::min(1.0, 2.0 * over / (distortion(pr, c) - d_cheap));
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = (1.0 - eps) * c[i] + eps * cheap[i];
        }
        if (distortion(pr, c) > D) return std::nullopt;
    }
    return c;
}

/// Exhaustive grid when |atoms| = 2 leaves one free parameter per x. The resolution is coarsened
/// if the full grid would exceed `budget` points.
inline std::optional<std::vector<double>> grid_search(const Program& pr, double D, double resolution,
                                                      std::size_t budget = 20'000'000) {
    const std::size_t nx = pr.spec->nx();
    if (pr.atoms != 2 || nx > 3) return std::nullopt;
    std::size_t steps = static_cast<std::size_t>(std::ceil(1.0 / resolution));
    while (std::pow(static_cast<double>(steps + 1), static_cast<double>(nx)) > static_cast<double>(budget)) steps /= 2;
    std::vector<std::size_t> idx(nx, 0);
    std::vector<double> c(2 * nx), best;
    double best_f = std::numeric_limits<double>::infinity();
    for (;;) {
        for (std::size_t x = 0; x < nx; ++x) {
            double a = static_cast<double>(idx[x]) / static_cast<double>(steps);
            if (!pr.usable[x]) a = 0.0;
            if (!pr.usable[nx + x]) a = 1.0;
            c[x] = a;
            c[nx + x] = 1.0 - a;
        }
        if (distortion(pr, c) <= D + 1e-12) {
            const double f = objective(pr, c);
            if (f < best_f) {
                best_f = f;
                best = c;
            }
        }
        std::size_t k = 0;
        while (k < nx && ++idx[k] > steps) idx[k++] = 0;
        if (k == nx) break;
    }
    if (best.empty()) return std::nullopt;
    return best;
}

}  // namespace oracle_detail

/// Minimum of I(X;W|Y) over channels on the full recovery alphabet with E[d] <= D + 1e-9.
inline double brute_force_rd(const ProblemSpec& spec, double D, const OracleConfig& cfg = {}) {
    cfg.validate();
    if (!(D >= 0.0) || !std::isfinite(D)) throw Error(Errc::DomainError, "distortion must be finite and >= 0");
    EnumerationLimits limits;
    limits.max_recoveries = std::max<std::size_t>(cfg.max_alphabet_product, 1);
    std::vector<CandidateRecovery> recs;
    try {
        recs = enumerate_candidate_recoveries(spec, limits);
    } catch (const Error&) {
        throw Error(Errc::InstanceTooLarge, "recovery alphabet exceeds the oracle cap");
    }
    if (spec.nx() * recs.size() > cfg.max_alphabet_product) {
        std::ostringstream os;
        os << "|X| * |recoveries| = " << spec.nx() * recs.size() << " exceeds the oracle cap " << cfg.max_alphabet_product;
        throw Error(Errc::InstanceTooLarge, os.str());
    }
    if (D >= zero_rate_distortion(spec)) return 0.0;

    oracle_detail::Program pr{&spec, recs.size(), std::vector<double>(recs.size() * spec.nx(), 0.0),
                              std::vector<char>(recs.size() * spec.nx(), 1)};
    for (std::size_t u = 0; u < recs.size(); ++u)
        for (std::size_t x = 0; x < spec.nx(); ++x)
            for (std::size_t y = 0; y < spec.ny(); ++y)
                pr.weight[u * spec.nx() + x] += spec.p(x, y) * spec.cell_distortion(x, y, recs[u][y]);

    // Distortion floor: every x on its cheapest atoms. At (or below) the floor the half-space
    // degenerates, so restrict to the cheapest atoms outright.
    double floor_d = 0.0;
    std::vector<double> col_min(spec.nx(), std::numeric_limits<double>::infinity());
    for (std::size_t x = 0; x < spec.nx(); ++x) {
        for (std::size_t u = 0; u < recs.size(); ++u) col_min[x] = std::min(col_min[x], pr.weight[u * spec.nx() + x]);
        floor_d += col_min[x];
    }
    if (D < floor_d - 1e-12) throw Error(Errc::Infeasible, "distortion below the achievable floor");
    double target = D + 1e-9;
    if (D <= floor_d + 1e-12) {
        for (std::size_t u = 0; u < recs.size(); ++u)
            for (std::size_t x = 0; x < spec.nx(); ++x)
                pr.usable[u * spec.nx() + x] = pr.weight[u * spec.nx() + x] <= col_min[x] + 1e-15;
        target = std::numeric_limits<double>::infinity();
    }

    // Scout: short runs from every random start (parallel, merged by index).
    const int n = cfg.random_restarts;
    std::vector<std::pair<std::vector<double>, double>> scouts(static_cast<std::size_t>(n));
    auto job = [&](int i) {
        Rng rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(i)));
        scouts[static_cast<std::size_t>(i)] =
            oracle_detail::descend(pr, oracle_detail::random_start(pr, rng, target), target, cfg.scout_iterations);
    };
    const int workers = std::min(cfg.threads, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) job(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < n; i += workers) job(i);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<std::size_t> order(scouts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scouts[a].second < scouts[b].second; });

    double best = std::numeric_limits<double>::infinity();
    if (auto c = oracle_detail::interior_point(pr, target)) best = oracle_detail::objective(pr, *c);
    for (std::size_t k = 0; k < std::min<std::size_t>(4, order.size()); ++k) {
        auto [c, f] = oracle_detail::descend(pr, scouts[order[k]].first, target, cfg.polish_iterations);
        best = std::min(best, f);
    }
    if (auto g = oracle_detail::grid_search(pr, target, cfg.grid_resolution)) {
        auto [c, f] = oracle_detail::descend(pr, *g, target, cfg.polish_iterations);
        best = std::min(best, f);
    }
    return std::max(best, 0.0);
}

/// Recomputes a solver point's rate and distortion from its channel, then compares the rate
/// against the brute-force minimum at the achieved distortion.
inline VerificationReport verify_point(const ProblemSpec& spec, const RDPoint& pt, const OracleConfig& cfg = {}) {
    VerificationReport rep;
    rep.target_distortion = pt.distortion;
    rep.claimed_rate = pt.rate;
    rep.solver_rate = conditional_mutual_information(spec, pt.channel);
    rep.achieved_distortion = expected_distortion(spec, pt.channel, pt.decoder);
    rep.rate_residual = std::abs(rep.claimed_rate - rep.solver_rate);
    rep.distortion_residual = std::abs(rep.target_distortion - rep.achieved_distortion);
    for (std::size_t x = 0; x < pt.channel.num_inputs(); ++x) {
        double s = 0.0;
        for (std::size_t u = 0; u < pt.channel.num_atoms(); ++u) s += pt.channel(u, x);
        rep.column_residual = std::max(rep.column_residual, std::abs(s - 1.0));
    }
    rep.oracle_rate = brute_force_rd(spec, rep.achieved_distortion, cfg);
    rep.gap = rep.solver_rate - rep.oracle_rate;
    rep.pass = std::abs(rep.gap) <= rep.tolerance && rep.rate_residual <= 1e-6 && rep.distortion_residual <= 1e-6 &&
               rep.column_residual <= kColumnTolerance;
    return rep;
}

}  // namespace lossycomp
