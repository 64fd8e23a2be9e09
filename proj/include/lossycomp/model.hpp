#pragma once

// Problem instances for lossy computing with decoder side information:
// the encoder sees X, the decoder sees Y and must estimate Z = f(X, Y)
// under a distortion measure d(z, zhat).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "lossycomp/error.hpp"
#include "lossycomp/matrix.hpp"

namespace lossycomp {

inline constexpr double kPmfTolerance = 1e-12;

/// Ordered list of distinct display labels. Symbols are always addressed by index.
class Alphabet {
  public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) throw Error(Errc::InvalidAlphabet, "alphabet must be nonempty");
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty())
                throw Error(Errc::InvalidAlphabet, "label " + std::to_string(i) + " is empty");
            if (!seen.insert(labels_[i]).second)
                throw Error(Errc::InvalidAlphabet, "duplicate label '" + labels_[i] + "'");
        }
    }

    /// Labels "first", "first+1", ... as decimal strings.
    static Alphabet numbered(std::size_t n, int first = 0) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(first + static_cast<int>(i)));
        return Alphabet(std::move(labels));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw Error(Errc::IndexOutOfRange, "no symbol labelled '" + label + "'");
    }

    bool operator==(const Alphabet&) const = default;

  private:
    std::vector<std::string> labels_;
};

/// Unvalidated problem description, as read from a file or assembled by hand.
/// Nested vectors so ragged input can be reported rather than silently reshaped.
struct RawSpec {
    std::vector<std::string> x_alphabet;
    std::vector<std::string> y_alphabet;
    std::vector<std::string> z_alphabet;
    std::vector<std::string> zhat_alphabet;
    std::vector<std::vector<double>> p_xy;       // |X| rows, |Y| columns
    std::vector<std::vector<std::int64_t>> f;    // |X| rows, |Y| columns, entries index Z
    std::vector<std::vector<double>> d;          // |Z| rows, |Zhat| columns

    bool operator==(const RawSpec&) const = default;
};

class ProblemSpec;
ProblemSpec validate_spec(const RawSpec& raw);

/// A validated instance. Immutable; only validate_spec constructs one.
class ProblemSpec {
  public:
    const Alphabet& x_alphabet() const noexcept { return x_; }
    const Alphabet& y_alphabet() const noexcept { return y_; }
    const Alphabet& z_alphabet() const noexcept { return z_; }
    const Alphabet& zhat_alphabet() const noexcept { return zhat_; }

    std::size_t nx() const noexcept { return x_.size(); }
    std::size_t ny() const noexcept { return y_.size(); }
    std::size_t nz() const noexcept { return z_.size(); }
    std::size_t nzhat() const noexcept { return zhat_.size(); }

    double p(std::size_t x, std::size_t y) const { return pmf_(x, y); }
    double px(std::size_t x) const { return px_.at(x); }
    double py(std::size_t y) const { return py_.at(y); }
    std::size_t f(std::size_t x, std::size_t y) const { return func_(x, y); }
    double d(std::size_t z, std::size_t zhat) const { return dist_(z, zhat); }

    /// d(f(x, y), zhat)
    double cell_distortion(std::size_t x, std::size_t y, std::size_t zhat) const {
        return dist_(func_(x, y), zhat);
    }

    const Matrix<double>& pmf() const noexcept { return pmf_; }
    const Matrix<std::size_t>& func() const noexcept { return func_; }
    const Matrix<double>& dist() const noexcept { return dist_; }

    double max_distortion() const {
        double m = 0.0;
        for (double v : dist_.flat()) m = std::max(m, v);
        return m;
    }

    RawSpec to_raw() const {
        RawSpec raw{x_.labels(), y_.labels(), z_.labels(), zhat_.labels(), {}, {}, {}};
        for (std::size_t x = 0; x < nx(); ++x) {
            raw.p_xy.emplace_back(pmf_.row(x).begin(), pmf_.row(x).end());
            auto& frow = raw.f.emplace_back();
            for (std::size_t z : func_.row(x)) frow.push_back(static_cast<std::int64_t>(z));
        }
        for (std::size_t z = 0; z < nz(); ++z) raw.d.emplace_back(dist_.row(z).begin(), dist_.row(z).end());
        return raw;
    }

    bool operator==(const ProblemSpec& o) const {
        return x_ == o.x_ && y_ == o.y_ && z_ == o.z_ && zhat_ == o.zhat_ && pmf_ == o.pmf_ &&
               func_ == o.func_ && dist_ == o.dist_;
    }

  private:
    friend ProblemSpec validate_spec(const RawSpec& raw);
    ProblemSpec() = default;

    Alphabet x_, y_, z_, zhat_;
    Matrix<double> pmf_;
    Matrix<std::size_t> func_;
    Matrix<double> dist_;
    std::vector<double> px_, py_;
};

namespace detail {

inline std::string cell(const char* name, std::size_t r, std::size_t c) {
    std::ostringstream os;
    os << name << "[" << r << "][" << c << "]";
    return os.str();
}

template <typename T>
void check_shape(const std::vector<std::vector<T>>& m, std::size_t rows, std::size_t cols, const char* name) {
    if (m.size() != rows) {
        std::ostringstream os;
        os << name << " has " << m.size() << " rows, expected " << rows;
        throw Error(Errc::DimensionMismatch, os.str());
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (m[r].size() != cols) {
            std::ostringstream os;
            os << name << " row " << r << " has " << m[r].size() << " entries, expected " << cols;
            throw Error(Errc::DimensionMismatch, os.str());
        }
    }
}

}  // namespace detail

/// Checks every structural and probabilistic invariant; each error names the offending entry.
inline ProblemSpec validate_spec(const RawSpec& raw) {
    ProblemSpec s;
    s.x_ = Alphabet(raw.x_alphabet);
    s.y_ = Alphabet(raw.y_alphabet);
    s.z_ = Alphabet(raw.z_alphabet);
    s.zhat_ = Alphabet(raw.zhat_alphabet);
    const std::size_t nx = s.x_.size(), ny = s.y_.size(), nz = s.z_.size(), nzh = s.zhat_.size();

    detail::check_shape(raw.p_xy, nx, ny, "p_xy");
    detail::check_shape(raw.f, nx, ny, "f");
    detail::check_shape(raw.d, nz, nzh, "d");

    s.pmf_ = Matrix<double>(nx, ny);
    double total = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            const double v = raw.p_xy[x][y];
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                std::ostringstream os;
                os << detail::cell("p_xy", x, y) << " = " << v << " is not a probability";
                throw Error(Errc::NegativeProbability, os.str());
            }
            s.pmf_(x, y) = v;
            total += v;
        }
    }
    if (std::abs(total - 1.0) > kPmfTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "p_xy sums to " << total;
        throw Error(Errc::PMFNotNormalized, os.str());
    }
    s.px_.assign(nx, 0.0);
    s.py_.assign(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            s.px_[x] += s.pmf_(x, y);
            s.py_[y] += s.pmf_(x, y);
        }
    for (std::size_t x = 0; x < nx; ++x)
        if (!(s.px_[x] > 0.0))
            throw Error(Errc::ZeroMarginalRow,
                        "p(x) = 0 for x index " + std::to_string(x) + " ('" + s.x_.label(x) + "')");

    s.func_ = Matrix<std::size_t>(nx, ny);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            const std::int64_t z = raw.f[x][y];
            if (z < 0 || static_cast<std::uint64_t>(z) >= nz) {
                std::ostringstream os;
                os << detail::cell("f", x, y) << " = " << z << " is not a valid z index (|Z| = " << nz << ")";
                throw Error(Errc::IndexOutOfRange, os.str());
            }
            s.func_(x, y) = static_cast<std::size_t>(z);
        }

    s.dist_ = Matrix<double>(nz, nzh);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t zh = 0; zh < nzh; ++zh) {
            const double v = raw.d[z][zh];
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream os;
                os << detail::cell("d", z, zh) << " = " << v << " must be finite and nonnegative";
                throw Error(Errc::InvalidDistortion, os.str());
            }
            s.dist_(z, zh) = v;
        }
    return s;
}

/// Same instance with the distortion matrix replaced (e.g. by a thresholded measure).
inline ProblemSpec with_distortion(const ProblemSpec& spec, const Matrix<double>& d) {
    RawSpec raw = spec.to_raw();
    raw.d.clear();
    for (std::size_t z = 0; z < d.rows(); ++z) raw.d.emplace_back(d.row(z).begin(), d.row(z).end());
    return validate_spec(raw);
}

/// Best zero-rate decoder: for every y the reconstruction minimizing sum_x p(x,y) d(f(x,y), zhat).
/// Ties resolve to the smallest zhat index.
inline std::vector<std::size_t> best_constant_recovery(const ProblemSpec& spec) {
    std::vector<std::size_t> out(spec.ny(), 0);
    for (std::size_t y = 0; y < spec.ny(); ++y) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t zh = 0; zh < spec.nzhat(); ++zh) {
            double cost = 0.0;
            for (std::size_t x = 0; x < spec.nx(); ++x) cost += spec.p(x, y) * spec.cell_distortion(x, y, zh);
            if (cost < best) {
                best = cost;
                out[y] = zh;
            }
        }
    }
    return out;
}

/// Smallest distortion reachable at rate zero; R(D) = 0 for every D at or above it.
inline double zero_rate_distortion(const ProblemSpec& spec) {
    const auto rec = best_constant_recovery(spec);
    double total = 0.0;
    for (std::size_t y = 0; y < spec.ny(); ++y)
        for (std::size_t x = 0; x < spec.nx(); ++x) total += spec.p(x, y) * spec.cell_distortion(x, y, rec[y]);
    return total;
}

/// True when every positive-probability cell (x, y) has some zhat with d(f(x,y), zhat) = 0,
/// i.e. D = 0 is achievable at all.
inline bool zero_distortion_feasible(const ProblemSpec& spec) {
    for (std::size_t x = 0; x < spec.nx(); ++x)
        for (std::size_t y = 0; y < spec.ny(); ++y) {
            if (!(spec.p(x, y) > 0.0)) continue;
            bool ok = false;
            for (std::size_t zh = 0; zh < spec.nzhat() && !ok; ++zh) ok = spec.cell_distortion(x, y, zh) == 0.0;
            if (!ok) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Built-in instances

inline std::vector<std::vector<double>> hamming_matrix(std::size_t n) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    return d;
}

/// Two players draw distinct cards from {1,2,3}; the decoder (holding Y) wants 1{X > Y}.
inline ProblemSpec card_game_spec() {
    RawSpec raw;
    raw.x_alphabet = raw.y_alphabet = {"1", "2", "3"};
    raw.z_alphabet = raw.zhat_alphabet = {"0", "1"};
    for (int i = 1; i <= 3; ++i) {
        auto& prow = raw.p_xy.emplace_back();
        auto& frow = raw.f.emplace_back();
        for (int j = 1; j <= 3; ++j) {
            prow.push_back(i == j ? 0.0 : 1.0 / 6.0);
            frow.push_back(i > j ? 1 : 0);
        }
    }
    raw.d = hamming_matrix(2);
    return validate_spec(raw);
}

/// Binary source with P(X=1) = p1, constant side information, f(x,y) = x, Hamming distortion.
/// This is ordinary rate-distortion for a Bernoulli source.
inline ProblemSpec shannon_binary_spec(double p1 = 0.5) {
    RawSpec raw;
    raw.x_alphabet = raw.z_alphabet = raw.zhat_alphabet = {"0", "1"};
    raw.y_alphabet = {"*"};
    raw.p_xy = {{1.0 - p1}, {p1}};
    raw.f = {{0}, {1}};
    raw.d = hamming_matrix(2);
    return validate_spec(raw);
}

/// Doubly symmetric binary source: X uniform, Y = X flipped with probability `crossover`;
/// the decoder reconstructs X itself under Hamming distortion.
inline ProblemSpec wyner_ziv_identity_spec(double crossover = 0.25) {
    RawSpec raw;
    raw.x_alphabet = raw.y_alphabet = raw.z_alphabet = raw.zhat_alphabet = {"0", "1"};
    raw.p_xy = {{(1.0 - crossover) / 2.0, crossover / 2.0}, {crossover / 2.0, (1.0 - crossover) / 2.0}};
    raw.f = {{0, 0}, {1, 1}};
    raw.d = hamming_matrix(2);
    return validate_spec(raw);
}

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"card-game", "shannon-binary", "wyner-ziv-identity"};
    return names;
}

inline ProblemSpec builtin_spec(const std::string& name) {
    if (name == "card-game") return card_game_spec();
    if (name == "shannon-binary") return shannon_binary_spec();
    if (name == "wyner-ziv-identity") return wyner_ziv_identity_spec();
    throw Error(Errc::UnknownBuiltin, "no builtin named '" + name + "'");
}

}  // namespace lossycomp
