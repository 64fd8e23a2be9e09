#pragma once

// Information measures in bits, and the auxiliary channel p(u|x) they are evaluated on.
// The joint law is always p(x,y) p(u|x), so U - X - Y holds by construction.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

#include "lossycomp/hyperedge.hpp"
#include "lossycomp/matrix.hpp"
#include "lossycomp/model.hpp"

namespace lossycomp {

inline constexpr double kColumnTolerance = 1e-9;

inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "binary entropy argument " << p << " outside [0, 1]";
        throw Error(Errc::DomainError, os.str());
    }
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

/// Metadata carried by an auxiliary atom. Recovery-alphabet atoms carry only a recovery;
/// zero-distortion atoms carry a subset and its zero-distortion recovery; lifted atoms carry both.
struct AtomLabel {
    std::optional<Hyperedge> subset;
    std::optional<CandidateRecovery> recovery;

    bool operator==(const AtomLabel&) const = default;
};

/// Conditional distribution p(u|x), stored atoms x |X|; every column is a distribution.
class AuxChannel {
  public:
    AuxChannel() = default;

    AuxChannel(Matrix<double> cond, std::vector<AtomLabel> labels)
        : cond_(std::move(cond)), labels_(std::move(labels)) {
        if (cond_.rows() == 0 || cond_.cols() == 0)
            throw Error(Errc::InvalidChannel, "channel needs at least one atom and one input");
        if (labels_.empty()) labels_.resize(cond_.rows());
        if (labels_.size() != cond_.rows())
            throw Error(Errc::DimensionMismatch, "channel atom labels do not match atom count");
        for (std::size_t x = 0; x < cond_.cols(); ++x) {
            double sum = 0.0;
            for (std::size_t u = 0; u < cond_.rows(); ++u) {
                const double v = cond_(u, x);
                if (!(v >= 0.0 && v <= 1.0 + kColumnTolerance)) {
                    std::ostringstream os;
                    os << "p(u=" << u << "|x=" << x << ") = " << v << " is not a probability";
                    throw Error(Errc::InvalidChannel, os.str());
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > kColumnTolerance) {
                std::ostringstream os;
                os.precision(17);
                os << "column x=" << x << " sums to " << sum;
                throw Error(Errc::InvalidChannel, os.str());
            }
        }
    }

    std::size_t num_atoms() const noexcept { return cond_.rows(); }
    std::size_t num_inputs() const noexcept { return cond_.cols(); }
    double operator()(std::size_t u, std::size_t x) const { return cond_(u, x); }
    const Matrix<double>& cond() const noexcept { return cond_; }
    const AtomLabel& label(std::size_t u) const { return labels_.at(u); }
    const std::vector<AtomLabel>& labels() const noexcept { return labels_; }

    /// Both subset and recovery present on every atom.
    bool fully_annotated() const {
        for (const auto& l : labels_)
            if (!l.subset || !l.recovery) return false;
        return true;
    }

    std::optional<MultiHyperedge> multi_hyperedge(std::size_t u) const {
        const auto& l = label(u);
        if (!l.subset || !l.recovery) return std::nullopt;
        return MultiHyperedge{*l.subset, *l.recovery};
    }

    /// p(u) = sum_x p(x) p(u|x)
    std::vector<double> atom_marginal(const ProblemSpec& spec) const {
        std::vector<double> pu(num_atoms(), 0.0);
        for (std::size_t u = 0; u < num_atoms(); ++u)
            for (std::size_t x = 0; x < num_inputs(); ++x) pu[u] += spec.px(x) * cond_(u, x);
        return pu;
    }

    bool operator==(const AuxChannel&) const = default;

  private:
    Matrix<double> cond_;
    std::vector<AtomLabel> labels_;
};

/// Decoder g(u, y) -> zhat index, total over atoms x Y.
class DecoderMap {
  public:
    DecoderMap() = default;
    explicit DecoderMap(Matrix<std::size_t> table) : table_(std::move(table)) {}

    /// Lookup decoder: atom u decodes to entry y of its candidate recovery.
    static DecoderMap from_recoveries(const AuxChannel& ch) {
        if (ch.num_atoms() == 0) return {};
        std::size_t ny = 0;
        for (const auto& l : ch.labels())
            if (l.recovery) ny = l.recovery->size();
        Matrix<std::size_t> t(ch.num_atoms(), ny);
        for (std::size_t u = 0; u < ch.num_atoms(); ++u) {
            const auto& r = ch.label(u).recovery;
            if (!r) throw Error(Errc::UnannotatedChannel, "atom " + std::to_string(u) + " has no candidate recovery");
            if (r->size() != ny) throw Error(Errc::DimensionMismatch, "recoveries of unequal length");
            for (std::size_t y = 0; y < ny; ++y) t(u, y) = (*r)[y];
        }
        return DecoderMap(std::move(t));
    }

    std::size_t operator()(std::size_t u, std::size_t y) const { return table_(u, y); }
    std::size_t num_atoms() const noexcept { return table_.rows(); }
    std::size_t num_side() const noexcept { return table_.cols(); }
    const Matrix<std::size_t>& table() const noexcept { return table_; }

    bool operator==(const DecoderMap&) const = default;

  private:
    Matrix<std::size_t> table_;
};

namespace detail {

inline void check_channel(const ProblemSpec& spec, const AuxChannel& ch) {
    if (ch.num_inputs() != spec.nx()) {
        std::ostringstream os;
        os << "channel has " << ch.num_inputs() << " input columns, spec has |X| = " << spec.nx();
        throw Error(Errc::DimensionMismatch, os.str());
    }
}

inline void check_decoder(const ProblemSpec& spec, const AuxChannel& ch, const DecoderMap& dec) {
    check_channel(spec, ch);
    if (dec.num_atoms() != ch.num_atoms() || dec.num_side() != spec.ny())
        throw Error(Errc::DimensionMismatch, "decoder table must be atoms x |Y|");
    for (std::size_t u = 0; u < dec.num_atoms(); ++u)
        for (std::size_t y = 0; y < dec.num_side(); ++y)
            if (dec(u, y) >= spec.nzhat()) throw Error(Errc::IndexOutOfRange, "decoder output outside Zhat");
}

/// q(u|y) = sum_x p(x|y) p(u|x); columns with p(y) = 0 are left at zero.
inline Matrix<double> side_conditional(const ProblemSpec& spec, const Matrix<double>& cond) {
    Matrix<double> q(cond.rows(), spec.ny(), 0.0);
    for (std::size_t y = 0; y < spec.ny(); ++y) {
        const double py = spec.py(y);
        if (!(py > 0.0)) continue;
        for (std::size_t x = 0; x < spec.nx(); ++x) {
            const double w = spec.p(x, y) / py;
            if (w == 0.0) continue;
            for (std::size_t u = 0; u < cond.rows(); ++u) q(u, y) += w * cond(u, x);
        }
    }
    return q;
}

/// I(X;U|Y) in bits for a raw conditional matrix (no validation).
inline double cmi_bits(const ProblemSpec& spec, const Matrix<double>& cond) {
    const Matrix<double> q = side_conditional(spec, cond);
    double total = 0.0;
    for (std::size_t x = 0; x < spec.nx(); ++x)
        for (std::size_t y = 0; y < spec.ny(); ++y) {
            const double pxy = spec.p(x, y);
            if (!(pxy > 0.0)) continue;
            for (std::size_t u = 0; u < cond.rows(); ++u) {
                const double c = cond(u, x);
                // c > 0 and p(x,y) > 0 imply q(u|y) >= p(x|y) c > 0 in exact arithmetic.
                if (!(c > 0.0) || !(q(u, y) > 0.0)) continue;
                total += pxy * c * std::log2(c / q(u, y));
            }
        }
    return std::max(total, 0.0);
}

}  // namespace detail

/// I(X;U|Y) = sum p(x,y) p(u|x) log2( p(u|x) / p(u|y) ), in bits.
inline double conditional_mutual_information(const ProblemSpec& spec, const AuxChannel& ch) {
    detail::check_channel(spec, ch);
    return detail::cmi_bits(spec, ch.cond());
}

/// E[d(f(X,Y), g(U,Y))]
inline double expected_distortion(const ProblemSpec& spec, const AuxChannel& ch, const DecoderMap& dec) {
    detail::check_decoder(spec, ch, dec);
    double total = 0.0;
    for (std::size_t x = 0; x < spec.nx(); ++x)
        for (std::size_t y = 0; y < spec.ny(); ++y) {
            const double pxy = spec.p(x, y);
            if (!(pxy > 0.0)) continue;
            for (std::size_t u = 0; u < ch.num_atoms(); ++u)
                total += pxy * ch(u, x) * spec.cell_distortion(x, y, dec(u, y));
        }
    return total;
}

}  // namespace lossycomp
