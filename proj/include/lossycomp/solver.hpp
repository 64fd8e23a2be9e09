#pragma once

// Rate-distortion solver for lossy computing with decoder side information.
//
// R(D) = min I(X; W | Y) over auxiliaries W - X - Y with E[d(f(X,Y), Zhat_Y)] <= D, where W
// ranges over candidate recoveries (one reconstruction per y). The program is convex in p(w|x);
// it is solved in Lagrangian form, minimizing I + lambda * E[d], by alternating minimization:
//
//   p(w|x) <- exp( sum_y p(y|x) [ ln q(w|y) - lambda ln2 d(f(x,y), zhat^w_y) ] ) / normalizer
//   q(w|y) <- sum_x p(x|y) p(w|x)
//
// Each half-step minimizes the same bivariate functional, so the Lagrangian never increases.
// Zero distortion uses the smaller hypergraph Gamma_d with the support constraint x in w.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "lossycomp/hypergraph.hpp"
#include "lossycomp/info.hpp"
#include "lossycomp/model.hpp"
#include "lossycomp/rng.hpp"

namespace lossycomp {

struct SolverConfig {
    double lambda = 0.0;           // distortion multiplier
    double tol_objective = 1e-10;  // stop when one step lowers the Lagrangian by less (bits)
    long max_iters = 200000;
    double init_jitter = 1e-3;
    std::uint64_t rng_seed = kDefaultSeed;
    int restarts = 8;
    int threads = 1;
    EnumerationLimits limits{};

    void validate() const {
        if (!(tol_objective > 0.0)) throw Error(Errc::InvalidConfig, "tol_objective must be positive");
        if (max_iters < 1) throw Error(Errc::InvalidConfig, "max_iters must be at least 1");
        if (restarts < 1) throw Error(Errc::InvalidConfig, "restarts must be at least 1");
        if (!(lambda >= 0.0)) throw Error(Errc::InvalidConfig, "lambda must be nonnegative");
        if (!(init_jitter >= 0.0 && init_jitter < 1.0)) throw Error(Errc::InvalidConfig, "init_jitter must lie in [0, 1)");
        if (threads < 1) throw Error(Errc::InvalidConfig, "threads must be at least 1");
    }
};

/// Auxiliary alphabet to optimize over.
struct RecoveryAlphabet {};                 // all |Zhat|^|Y| candidate recoveries, penalized distortion
struct GammaDAlphabet {};                   // zero-distortion hypergraph, lambda ignored
struct GammaEpsAlphabet { double epsilon = 0.0; };  // Gamma_d of the thresholded measure 1{d > eps}
using AlphabetMode = std::variant<RecoveryAlphabet, GammaDAlphabet, GammaEpsAlphabet>;

struct RDPoint {
    double distortion = 0.0;
    double rate = 0.0;  // bits
    double lambda = 0.0;  // +inf marks a hard zero-distortion solve
    AuxChannel channel;
    DecoderMap decoder;
    bool converged = false;
    long iterations = 0;

    /// Atoms carrying any probability mass.
    std::size_t support_size() const {
        std::size_t n = 0;
        for (std::size_t u = 0; u < channel.num_atoms(); ++u) {
            double m = 0.0;
            for (std::size_t x = 0; x < channel.num_inputs(); ++x) m = std::max(m, channel(u, x));
            if (m > 1e-12) ++n;
        }
        return n;
    }
};

struct CurveFailure {
    double lambda = 0.0;
    Errc code = Errc::NotConverged;
    std::string message;
};

struct RDCurve {
    std::vector<RDPoint> points;  // ascending distortion
    std::vector<CurveFailure> failures;
};

/// Lagrangian I(X;U|Y) + lambda E[d] in bits.
inline double lagrangian(const ProblemSpec& spec, const AuxChannel& ch, const DecoderMap& dec, double lambda) {
    return conditional_mutual_information(spec, ch) + lambda * expected_distortion(spec, ch, dec);
}

/// For w in Gamma_d: per y, the smallest zhat reconstructing every value of w_y at zero distortion.
inline CandidateRecovery zero_distortion_recovery(const ProblemSpec& spec, const Hyperedge& w) {
    CandidateRecovery r{std::vector<std::size_t>(spec.ny(), 0)};
    for (std::size_t y = 0; y < spec.ny(); ++y) {
        const auto zh = common_zero_reconstruction(spec, induced_values(spec, w, y));
        if (!zh)
            throw Error(Errc::NotInGammaD, format_hyperedge(spec.x_alphabet(), w) +
                                               " has no zero-distortion reconstruction at y = " +
                                               spec.y_alphabet().label(y));
        r.per_y[y] = *zh;
    }
    return r;
}

namespace detail {

inline constexpr double kFreezeMass = 1e-12;

/// Per-atom data the iteration needs: expected distortion cost(u, x) = sum_y p(y|x) d(f(x,y), r_u(y))
/// and the support mask allowed(u, x) (x in subset when the atom carries one).
class Stepper {
  public:
    Stepper(const ProblemSpec& spec, const std::vector<AtomLabel>& labels, double lambda)
        : spec_(&spec), lambda_(lambda), cost_(labels.size(), spec.nx(), 0.0), allowed_(labels.size(), spec.nx(), 1) {
        for (std::size_t u = 0; u < labels.size(); ++u) {
            const auto& r = labels[u].recovery;
            if (!r) throw Error(Errc::UnannotatedChannel, "atom " + std::to_string(u) + " has no candidate recovery");
            if (r->size() != spec.ny()) throw Error(Errc::DimensionMismatch, "recovery length differs from |Y|");
            for (std::size_t x = 0; x < spec.nx(); ++x) {
                double c = 0.0;
                for (std::size_t y = 0; y < spec.ny(); ++y)
                    if (spec.p(x, y) > 0.0) c += spec.p(x, y) / spec.px(x) * spec.cell_distortion(x, y, (*r)[y]);
                cost_(u, x) = c;
                if (labels[u].subset) allowed_(u, x) = labels[u].subset->contains(x) ? 1 : 0;
            }
        }
        for (std::size_t x = 0; x < spec.nx(); ++x) {
            bool any = false;
            for (std::size_t u = 0; u < labels.size(); ++u) any = any || allowed_(u, x);
            if (!any) throw Error(Errc::Infeasible, "no atom may carry x = " + spec.x_alphabet().label(x));
        }
    }

    std::size_t atoms() const noexcept { return cost_.rows(); }
    const Matrix<unsigned char>& allowed() const noexcept { return allowed_; }

    /// Channel update against q, then q recomputed from the new channel.
    void step(Matrix<double>& cond, Matrix<double>& q, const std::vector<char>* frozen = nullptr) const {
        const auto& spec = *spec_;
        const double penalty = lambda_ * std::log(2.0);
        std::vector<double> expo(atoms());
        for (std::size_t x = 0; x < spec.nx(); ++x) {
            double top = -std::numeric_limits<double>::infinity();
            for (std::size_t u = 0; u < atoms(); ++u) {
                double e = -std::numeric_limits<double>::infinity();
                if (allowed_(u, x) && !(frozen && (*frozen)[u])) {
                    e = -penalty * cost_(u, x);
                    for (std::size_t y = 0; y < spec.ny() && std::isfinite(e); ++y) {
                        const double pxy = spec.p(x, y);
                        if (!(pxy > 0.0)) continue;
                        const double quy = q(u, y);
                        e = quy > 0.0 ? e + pxy / spec.px(x) * std::log(quy) : -std::numeric_limits<double>::infinity();
                    }
                }
                expo[u] = e;
                top = std::max(top, e);
            }
            if (!std::isfinite(top))
                throw Error(Errc::NumericalUnderflow,
                            "all atom weights vanished for x = " + spec.x_alphabet().label(x));
            double z = 0.0;
            for (std::size_t u = 0; u < atoms(); ++u) {
                const double w = std::isfinite(expo[u]) ? std::exp(expo[u] - top) : 0.0;
                cond(u, x) = w;
                z += w;
            }
            for (std::size_t u = 0; u < atoms(); ++u) cond(u, x) /= z;
        }
        q = side_conditional(spec, cond);
    }

    double expected_cost(const Matrix<double>& cond) const {
        double total = 0.0;
        for (std::size_t x = 0; x < spec_->nx(); ++x)
            for (std::size_t u = 0; u < atoms(); ++u) total += spec_->px(x) * cond(u, x) * cost_(u, x);
        return total;
    }

    double lagrangian(const Matrix<double>& cond) const {
        return cmi_bits(*spec_, cond) + (lambda_ > 0.0 ? lambda_ * expected_cost(cond) : 0.0);
    }

    /// Jittered uniform start on the allowed entries.
    Matrix<double> jittered_start(Rng& rng, double jitter) const {
        Matrix<double> c(atoms(), spec_->nx(), 0.0);
        for (std::size_t x = 0; x < spec_->nx(); ++x) {
            double z = 0.0;
            for (std::size_t u = 0; u < atoms(); ++u) {
                if (!allowed_(u, x)) continue;
                c(u, x) = 1.0 + jitter * rng.uniform(-1.0, 1.0);
                z += c(u, x);
            }
            for (std::size_t u = 0; u < atoms(); ++u) c(u, x) /= z;
        }
        return c;
    }

    /// (1 - jitter) * warm + jitter * uniform-on-allowed, so atoms at zero may re-enter.
    Matrix<double> blended_start(const Matrix<double>& warm, double jitter) const {
        Matrix<double> c(atoms(), spec_->nx(), 0.0);
        for (std::size_t x = 0; x < spec_->nx(); ++x) {
            double n_allowed = 0.0, z = 0.0;
            for (std::size_t u = 0; u < atoms(); ++u) n_allowed += allowed_(u, x);
            for (std::size_t u = 0; u < atoms(); ++u) {
                if (!allowed_(u, x)) continue;
                c(u, x) = (1.0 - jitter) * warm(u, x) + jitter / n_allowed;
                z += c(u, x);
            }
            for (std::size_t u = 0; u < atoms(); ++u) c(u, x) /= z;
        }
        return c;
    }

  private:
    const ProblemSpec* spec_;
    double lambda_;
    Matrix<double> cost_;
    Matrix<unsigned char> allowed_;
};

struct RunResult {
    Matrix<double> cond;
    double objective = std::numeric_limits<double>::infinity();
    long iterations = 0;
    bool converged = false;
};

/// Iterates to convergence. Atoms whose mass p(u) falls below kFreezeMass are frozen at zero.
inline RunResult run_to_convergence(const ProblemSpec& spec, const Stepper& stepper, Matrix<double> cond,
                                    const SolverConfig& cfg) {
    RunResult res;
    std::vector<char> frozen(stepper.atoms(), 0);
    Matrix<double> q = side_conditional(spec, cond);
    double objective = stepper.lagrangian(cond);
    for (long it = 1; it <= cfg.max_iters; ++it) {
        stepper.step(cond, q, &frozen);
        bool froze = false;
        for (std::size_t u = 0; u < stepper.atoms(); ++u) {
            if (frozen[u]) continue;
            double pu = 0.0;
            for (std::size_t x = 0; x < spec.nx(); ++x) pu += spec.px(x) * cond(u, x);
            if (pu < kFreezeMass) {
                frozen[u] = 1;
                froze = froze || pu > 0.0;
                for (std::size_t x = 0; x < spec.nx(); ++x) cond(u, x) = 0.0;
            }
        }
        if (froze) {
            for (std::size_t x = 0; x < spec.nx(); ++x) {
                double z = 0.0;
                for (std::size_t u = 0; u < stepper.atoms(); ++u) z += cond(u, x);
                if (!(z > 0.0)) throw Error(Errc::NumericalUnderflow, "every atom frozen for some x");
                for (std::size_t u = 0; u < stepper.atoms(); ++u) cond(u, x) /= z;
            }
            q = side_conditional(spec, cond);
        }
        const double next = stepper.lagrangian(cond);
        res.iterations = it;
        const double drop = objective - next;
        objective = next;
        if (drop < cfg.tol_objective && !froze) {
            res.converged = true;
            break;
        }
    }
    res.cond = std::move(cond);
    res.objective = objective;
    return res;
}

/// Re-chooses each atom's recovery as the distortion-minimizing one for the x-mass it carries
/// and merges it into the atom holding that recovery. Merging cannot raise I(X;U|Y) and the
/// re-chosen decoder cannot raise E[d]. Atoms without a counterpart in `labels` stay put.
inline Matrix<double> polish_recoveries(const ProblemSpec& spec, const std::vector<AtomLabel>& labels,
                                        const Matrix<double>& cond) {
    std::map<CandidateRecovery, std::size_t> index;
    for (std::size_t u = 0; u < labels.size(); ++u)
        if (labels[u].recovery && !labels[u].subset) index.emplace(*labels[u].recovery, u);
    Matrix<double> out(cond.rows(), cond.cols(), 0.0);
    for (std::size_t u = 0; u < cond.rows(); ++u) {
        std::size_t target = u;
        if (labels[u].recovery && !labels[u].subset) {
            CandidateRecovery best = *labels[u].recovery;
            for (std::size_t y = 0; y < spec.ny(); ++y) {
                auto cost = [&](std::size_t zh) {
                    double c = 0.0;
                    for (std::size_t x = 0; x < spec.nx(); ++x)
                        c += spec.p(x, y) * cond(u, x) * spec.cell_distortion(x, y, zh);
                    return c;
                };
                double best_cost = cost(best.per_y[y]);
                for (std::size_t zh = 0; zh < spec.nzhat(); ++zh) {
                    const double c = cost(zh);
                    if (c < best_cost) {
                        best_cost = c;
                        best.per_y[y] = zh;
                    }
                }
            }
            if (auto it = index.find(best); it != index.end()) target = it->second;
        }
        for (std::size_t x = 0; x < cond.cols(); ++x) out(target, x) += cond(u, x);
    }
    return out;
}

inline std::vector<AtomLabel> recovery_labels(const ProblemSpec& spec, const EnumerationLimits& limits) {
    std::vector<AtomLabel> labels;
    for (auto& r : enumerate_candidate_recoveries(spec, limits)) labels.push_back(AtomLabel{std::nullopt, std::move(r)});
    return labels;
}

inline std::vector<AtomLabel> gamma_labels(const ProblemSpec& spec, const EnumerationLimits& limits) {
    std::vector<AtomLabel> labels;
    for (const auto& w : enumerate_gamma_d(spec, limits)) labels.push_back(AtomLabel{w, zero_distortion_recovery(spec, w)});
    return labels;
}

/// Runs the restart schedule (optionally seeded with a warm start) and keeps the lowest Lagrangian.
/// Restart i uses seed derive_seed(cfg.rng_seed, i); results are merged by restart index.
inline RunResult best_of_restarts(const ProblemSpec& spec, const Stepper& stepper, const SolverConfig& cfg,
                                  const Matrix<double>* warm) {
    const int runs = cfg.restarts;
    std::vector<std::optional<RunResult>> results(static_cast<std::size_t>(runs));
    std::vector<std::optional<Error>> errors(static_cast<std::size_t>(runs));
    auto job = [&](int i) {
        try {
            Matrix<double> start;
            if (warm && i == 0) {
                start = stepper.blended_start(*warm, cfg.init_jitter);
            } else {
                Rng rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(i)));
                start = stepper.jittered_start(rng, cfg.init_jitter);
            }
            results[static_cast<std::size_t>(i)] = run_to_convergence(spec, stepper, std::move(start), cfg);
        } catch (const Error& e) {
            errors[static_cast<std::size_t>(i)] = e;
        }
    };
    const int workers = std::min(cfg.threads, runs);
    if (workers <= 1) {
        for (int i = 0; i < runs; ++i) job(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < runs; i += workers) job(i);
            });
        for (auto& th : pool) th.join();
    }
    std::optional<RunResult> best;
    for (auto& r : results)
        if (r && (!best || r->objective < best->objective)) best = std::move(r);
    if (!best) throw *errors.front();
    return std::move(*best);
}

inline RDPoint make_point(const ProblemSpec& eval_spec, const std::vector<AtomLabel>& labels, Matrix<double> cond,
                          double lambda, const RunResult& run) {
    // renormalize away accumulated rounding before the channel validates its columns
    for (std::size_t x = 0; x < cond.cols(); ++x) {
        double z = 0.0;
        for (std::size_t u = 0; u < cond.rows(); ++u) z += cond(u, x);
        for (std::size_t u = 0; u < cond.rows(); ++u) cond(u, x) /= z;
    }
    RDPoint pt;
    pt.channel = AuxChannel(std::move(cond), labels);
    pt.decoder = DecoderMap::from_recoveries(pt.channel);
    pt.rate = conditional_mutual_information(eval_spec, pt.channel);
    pt.distortion = expected_distortion(eval_spec, pt.channel, pt.decoder);
    pt.lambda = lambda;
    pt.converged = run.converged;
    pt.iterations = run.iterations;
    return pt;
}

/// The best constant recovery as a one-atom channel over `labels`, if that recovery is among them.
inline std::optional<RDPoint> constant_point(const ProblemSpec& spec, const std::vector<AtomLabel>& labels,
                                             double lambda) {
    const CandidateRecovery r{best_constant_recovery(spec)};
    const auto it = std::find_if(labels.begin(), labels.end(),
                                 [&](const AtomLabel& l) { return !l.subset && l.recovery && *l.recovery == r; });
    if (it == labels.end()) return std::nullopt;
    Matrix<double> cond(labels.size(), spec.nx(), 0.0);
    for (std::size_t x = 0; x < spec.nx(); ++x) cond(static_cast<std::size_t>(it - labels.begin()), x) = 1.0;
    RunResult trivial;
    trivial.converged = true;
    RDPoint pt = make_point(spec, labels, std::move(cond), lambda, trivial);
    pt.rate = 0.0;  // one atom: the entropy route leaves roundoff
    return pt;
}

// Small lambda leaves the iteration creeping toward rate zero; the exact point wins ties.
inline RDPoint prefer_constant(const ProblemSpec& spec, const std::vector<AtomLabel>& labels, RDPoint pt) {
    auto c = constant_point(spec, labels, pt.lambda);
    if (!c || c->rate + pt.lambda * c->distortion > pt.rate + pt.lambda * pt.distortion) return pt;
    c->converged = pt.converged;
    c->iterations = pt.iterations;
    return std::move(*c);
}

}  // namespace detail

/// One alternating-minimization step: channel update against q, then q recomputed.
/// Atoms must carry recoveries; atoms carrying a subset are confined to it.
inline std::pair<AuxChannel, Matrix<double>> am_step(const ProblemSpec& spec, const AuxChannel& ch,
                                                     const Matrix<double>& q, double lambda) {
    detail::check_channel(spec, ch);
    if (q.rows() != ch.num_atoms() || q.cols() != spec.ny())
        throw Error(Errc::DimensionMismatch, "q must be atoms x |Y|");
    const detail::Stepper stepper(spec, ch.labels(), lambda);
    Matrix<double> cond = ch.cond();
    Matrix<double> next_q = q;
    stepper.step(cond, next_q);
    return {AuxChannel(std::move(cond), ch.labels()), std::move(next_q)};
}

/// q(u|y) for a channel, the natural partner for am_step.
inline Matrix<double> side_conditional(const ProblemSpec& spec, const AuxChannel& ch) {
    detail::check_channel(spec, ch);
    return detail::side_conditional(spec, ch.cond());
}

/// Rate zero: a single atom carrying the best constant recovery.
inline RDPoint zero_rate_point(const ProblemSpec& spec) {
    const CandidateRecovery r{best_constant_recovery(spec)};
    RDPoint pt;
    pt.channel = AuxChannel(Matrix<double>(1, spec.nx(), 1.0), {AtomLabel{Hyperedge::all(spec.nx()), r}});
    pt.decoder = DecoderMap::from_recoveries(pt.channel);
    pt.rate = 0.0;
    pt.distortion = expected_distortion(spec, pt.channel, pt.decoder);
    pt.lambda = 0.0;
    pt.converged = true;
    return pt;
}

/// Minimizes the Lagrangian over the chosen auxiliary alphabet from `restarts` jittered starts.
inline RDPoint solve_lagrangian(const ProblemSpec& spec, const SolverConfig& cfg, const AlphabetMode& mode) {
    cfg.validate();
    return std::visit(
        [&](const auto& m) -> RDPoint {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, RecoveryAlphabet>) {
                const auto labels = detail::recovery_labels(spec, cfg.limits);
                const detail::Stepper stepper(spec, labels, cfg.lambda);
                const auto run = detail::best_of_restarts(spec, stepper, cfg, nullptr);
                return detail::prefer_constant(
                    spec, labels,
                    detail::make_point(spec, labels, detail::polish_recoveries(spec, labels, run.cond), cfg.lambda, run));
            } else {
                std::optional<ProblemSpec> thresholded;
                if constexpr (std::is_same_v<M, GammaEpsAlphabet>)
                    thresholded = with_distortion(spec, epsilon_distortion(spec, m.epsilon));
                const ProblemSpec& solve_spec = thresholded ? *thresholded : spec;
                const auto labels = detail::gamma_labels(solve_spec, cfg.limits);
                const detail::Stepper stepper(solve_spec, labels, 0.0);
                const auto run = detail::best_of_restarts(solve_spec, stepper, cfg, nullptr);
                return detail::make_point(spec, labels, run.cond, std::numeric_limits<double>::infinity(), run);
            }
        },
        mode);
}

/// Same minimization over the atoms of `init`, with restart 0 warm-started from it.
inline RDPoint solve_lagrangian_from(const ProblemSpec& spec, const SolverConfig& cfg, const AuxChannel& init) {
    cfg.validate();
    detail::check_channel(spec, init);
    const auto& labels = init.labels();
    const bool hard = std::all_of(labels.begin(), labels.end(), [](const AtomLabel& l) { return l.subset.has_value(); });
    const double lambda = hard ? 0.0 : cfg.lambda;
    const detail::Stepper stepper(spec, labels, lambda);
    const auto run = detail::best_of_restarts(spec, stepper, cfg, &init.cond());
    if (hard) return detail::make_point(spec, labels, run.cond, std::numeric_limits<double>::infinity(), run);
    return detail::prefer_constant(
        spec, labels, detail::make_point(spec, labels, detail::polish_recoveries(spec, labels, run.cond), cfg.lambda, run));
}

/// Smallest achievable E[d]: every cell (x, y) reconstructed by its best zhat.
inline double minimum_distortion(const ProblemSpec& spec) {
    double total = 0.0;
    for (std::size_t x = 0; x < spec.nx(); ++x)
        for (std::size_t y = 0; y < spec.ny(); ++y) {
            if (!(spec.p(x, y) > 0.0)) continue;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t zh = 0; zh < spec.nzhat(); ++zh) best = std::min(best, spec.cell_distortion(x, y, zh));
            total += spec.p(x, y) * best;
        }
    return total;
}

/// R at the distortion floor, solved over the recovery alphabet with each recovery confined to
/// the inputs it serves at minimum cost. With d vanishing on exact matches this is the
/// recovery-alphabet program at D = 0, an independent route to the Gamma_d answer.
inline RDPoint solve_minimum_distortion(const ProblemSpec& spec, const SolverConfig& cfg) {
    cfg.validate();
    std::vector<AtomLabel> labels;
    std::vector<double> best_cost(spec.nx(), std::numeric_limits<double>::infinity());
    const auto recs = enumerate_candidate_recoveries(spec, cfg.limits);
    auto cost = [&](const CandidateRecovery& r, std::size_t x) {
        double c = 0.0;
        for (std::size_t y = 0; y < spec.ny(); ++y) c += spec.p(x, y) * spec.cell_distortion(x, y, r[y]);
        return c;
    };
    for (const auto& r : recs)
        for (std::size_t x = 0; x < spec.nx(); ++x) best_cost[x] = std::min(best_cost[x], cost(r, x));
    for (const auto& r : recs) {
        std::uint64_t mask = 0;
        for (std::size_t x = 0; x < spec.nx(); ++x)
            if (cost(r, x) <= best_cost[x] + 1e-15) mask |= std::uint64_t{1} << x;
        if (mask) labels.push_back(AtomLabel{Hyperedge(mask), r});
    }
    const detail::Stepper stepper(spec, labels, 0.0);
    const auto run = detail::best_of_restarts(spec, stepper, cfg, nullptr);
    return detail::make_point(spec, labels, run.cond, std::numeric_limits<double>::infinity(), run);
}

/// R(D) at a prescribed distortion.
///
/// D >= zero_rate_distortion: the rate-zero point. D = 0: the Gamma_d program. D at a positive
/// distortion floor: solve_minimum_distortion; below it: Infeasible. Otherwise lambda is
/// bisected (geometrically) until a Lagrangian solution lands within 1e-6 of D; the final channel
/// mixes the two bracketing solutions so the constraint holds with equality, which convexity of
/// R(D) makes no worse than time-sharing between them.
inline RDPoint solve_at_distortion(const ProblemSpec& spec, double D, const SolverConfig& cfg) {
    cfg.validate();
    if (!(D >= 0.0) || !std::isfinite(D)) throw Error(Errc::DomainError, "target distortion must be finite and >= 0");
    const double d_max = zero_rate_distortion(spec);
    if (D >= d_max) return zero_rate_point(spec);
    if (D == 0.0) {
        if (!zero_distortion_feasible(spec))
            throw Error(Errc::Infeasible, "some positive-probability f(x,y) has no zero-distortion reconstruction");
        return solve_lagrangian(spec, cfg, GammaDAlphabet{});
    }

    const double floor_d = minimum_distortion(spec);
    if (D < floor_d - 1e-12) {
        std::ostringstream os;
        os << "target distortion " << D << " is below the achievable minimum " << floor_d;
        throw Error(Errc::Infeasible, os.str());
    }
    if (D <= floor_d + 1e-12) return solve_minimum_distortion(spec, cfg);

    const auto labels = detail::recovery_labels(spec, cfg.limits);
    // rate-zero point embedded in the recovery alphabet
    RDPoint lo = *detail::constant_point(spec, labels, 0.0);

    constexpr double kHit = 1e-6;
    const double lambda_max = std::max(spec.max_distortion(), 1.0) * 64.0 / cfg.tol_objective;
    auto solve_at = [&](double lambda, const RDPoint& warm) {
        SolverConfig c = cfg;
        c.lambda = lambda;
        return solve_lagrangian_from(spec, c, warm.channel);
    };

    std::optional<RDPoint> hi;
    long total_iters = 0;
    for (double lambda = 1.0 / std::max(spec.max_distortion(), 1e-300);; lambda *= 4.0) {
        if (lambda > lambda_max) throw Error(Errc::NotConverged, "distortion target not reached below lambda_max");
        RDPoint pt = solve_at(lambda, hi ? *hi : lo);
        total_iters += pt.iterations;
        if (pt.distortion <= D) {
            hi = std::move(pt);
            break;
        }
        lo = std::move(pt);
    }

    for (int round = 0; round < 200; ++round) {
        if (hi->distortion >= D - kHit || (lo.lambda > 0.0 && lo.distortion <= D + kHit)) break;
        if (lo.lambda > 0.0 && hi->lambda / lo.lambda - 1.0 < 1e-12) break;  // exposed-face jump: interpolate
        const double mid = lo.lambda > 0.0 ? std::sqrt(lo.lambda * hi->lambda) : hi->lambda / 2.0;
        const bool near_hi = (hi->distortion - D) * (hi->distortion - D) < (lo.distortion - D) * (lo.distortion - D);
        RDPoint pt = solve_at(mid, near_hi ? *hi : lo);
        total_iters += pt.iterations;
        if (pt.distortion > D)
            lo = std::move(pt);
        else
            hi = std::move(pt);
    }

    // Both brackets live on the same recovery alphabet, so a convex combination is a channel whose
    // distortion is the same combination of distortions.
    const double span = lo.distortion - hi->distortion;
    const double t = span > 0.0 ? std::clamp((D - hi->distortion) / span, 0.0, 1.0) : 0.0;
    Matrix<double> mix(labels.size(), spec.nx(), 0.0);
    for (std::size_t u = 0; u < labels.size(); ++u)
        for (std::size_t x = 0; x < spec.nx(); ++x)
            mix(u, x) = t * lo.channel(u, x) + (1.0 - t) * (*hi).channel(u, x);
    detail::RunResult run;
    run.converged = lo.converged && hi->converged;
    run.iterations = total_iters;
    const double lambda = lo.lambda > 0.0 ? std::sqrt(lo.lambda * hi->lambda) : hi->lambda;
    return detail::make_point(spec, labels, std::move(mix), lambda, run);
}

/// Traces R(D) through a list of multipliers, warm-starting each solve from the previous one.
/// Failed multipliers are reported, not fatal.
inline RDCurve sweep_curve(const ProblemSpec& spec, const std::vector<double>& lambdas, const SolverConfig& cfg) {
    RDCurve curve;
    std::optional<AuxChannel> prev;
    for (double lambda : lambdas) {
        try {
            if (!(lambda >= 0.0)) throw Error(Errc::DomainError, "lambda must be nonnegative");
            SolverConfig c = cfg;
            c.lambda = lambda;
            RDPoint pt = prev ? solve_lagrangian_from(spec, c, *prev) : solve_lagrangian(spec, c, RecoveryAlphabet{});
            prev = pt.channel;
            curve.points.push_back(std::move(pt));
        } catch (const Error& e) {
            curve.failures.push_back({lambda, e.code(), e.what()});
        }
    }
    std::stable_sort(curve.points.begin(), curve.points.end(), [](const RDPoint& a, const RDPoint& b) {
        return a.distortion < b.distortion || (a.distortion == b.distortion && a.rate > b.rate);
    });
    return curve;
}

/// Keeps the k atoms of largest mass p(u) (ties by lower index) and renormalizes every column.
inline AuxChannel prune_support(const ProblemSpec& spec, const AuxChannel& ch, std::size_t k) {
    detail::check_channel(spec, ch);
    if (k < 1) throw Error(Errc::DomainError, "prune_support needs k >= 1");
    if (k >= ch.num_atoms()) return ch;
    const auto pu = ch.atom_marginal(spec);
    std::vector<std::size_t> order(ch.num_atoms());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pu[a] > pu[b]; });
    order.resize(k);
    std::sort(order.begin(), order.end());

    Matrix<double> cond(k, ch.num_inputs(), 0.0);
    std::vector<AtomLabel> labels;
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back(ch.label(order[i]));
        for (std::size_t x = 0; x < ch.num_inputs(); ++x) cond(i, x) = ch(order[i], x);
    }
    for (std::size_t x = 0; x < ch.num_inputs(); ++x) {
        double z = 0.0;
        for (std::size_t i = 0; i < k; ++i) z += cond(i, x);
        if (!(z > 0.0))
            throw Error(Errc::EmptySupport, "kept atoms carry no mass for x = " + spec.x_alphabet().label(x));
        for (std::size_t i = 0; i < k; ++i) cond(i, x) /= z;
    }
    return AuxChannel(std::move(cond), std::move(labels));
}

/// Maps atom u to the multi-hyperedge (w(u), (g(u,y))_y) with w(u) = {x : p(u,x) > 0},
/// summing atoms that land on the same multi-hyperedge. Output atoms are canonically ordered.
inline AuxChannel lift_to_multihyperedge(const ProblemSpec& spec, const AuxChannel& ch, const DecoderMap& dec) {
    detail::check_decoder(spec, ch, dec);
    std::map<MultiHyperedge, std::vector<double>> merged;
    for (std::size_t u = 0; u < ch.num_atoms(); ++u) {
        std::uint64_t mask = 0;
        for (std::size_t x = 0; x < spec.nx(); ++x)
            if (ch(u, x) > 0.0) mask |= std::uint64_t{1} << x;
        if (mask == 0) continue;
        CandidateRecovery r{std::vector<std::size_t>(spec.ny())};
        for (std::size_t y = 0; y < spec.ny(); ++y) r.per_y[y] = dec(u, y);
        auto& col = merged.try_emplace(MultiHyperedge{Hyperedge(mask), std::move(r)}, spec.nx(), 0.0).first->second;
        for (std::size_t x = 0; x < spec.nx(); ++x) col[x] += ch(u, x);
    }
    Matrix<double> cond(merged.size(), spec.nx(), 0.0);
    std::vector<AtomLabel> labels;
    std::size_t i = 0;
    for (const auto& [edge, col] : merged) {
        labels.push_back(AtomLabel{edge.edge, edge.recovery});
        for (std::size_t x = 0; x < spec.nx(); ++x) cond(i, x) = col[x];
        ++i;
    }
    return AuxChannel(std::move(cond), std::move(labels));
}

/// Gives every positive-mass recovery atom its subset part {x : p(w,x) > 0}. A relabeling:
/// rate and distortion are unchanged. Zero-mass atoms are dropped.
inline AuxChannel attach_subset(const ProblemSpec& spec, const AuxChannel& ch) {
    detail::check_channel(spec, ch);
    std::vector<std::size_t> keep;
    std::vector<AtomLabel> labels;
    for (std::size_t u = 0; u < ch.num_atoms(); ++u) {
        if (!ch.label(u).recovery) throw Error(Errc::UnannotatedChannel, "atom " + std::to_string(u) + " has no recovery");
        std::uint64_t mask = 0;
        for (std::size_t x = 0; x < spec.nx(); ++x)
            if (ch(u, x) > 0.0) mask |= std::uint64_t{1} << x;
        if (mask == 0) continue;
        keep.push_back(u);
        labels.push_back(AtomLabel{Hyperedge(mask), ch.label(u).recovery});
    }
    Matrix<double> cond(keep.size(), spec.nx(), 0.0);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t x = 0; x < spec.nx(); ++x) cond(i, x) = ch(keep[i], x);
    return AuxChannel(std::move(cond), std::move(labels));
}

}  // namespace lossycomp
