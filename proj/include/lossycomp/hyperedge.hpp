#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "lossycomp/error.hpp"
#include "lossycomp/model.hpp"

namespace lossycomp {

/// Nonempty subset of X, stored as a bitmask over x indices.
/// Ordered by size, then lexicographically by sorted member list.
class Hyperedge {
  public:
    static constexpr std::size_t kMaxVertices = 64;

    explicit Hyperedge(std::uint64_t mask) : mask_(mask) {
        if (mask_ == 0) throw Error(Errc::DomainError, "hyperedge must be nonempty");
    }

    Hyperedge(std::initializer_list<std::size_t> members) : Hyperedge(std::vector<std::size_t>(members)) {}

    explicit Hyperedge(const std::vector<std::size_t>& members) : mask_(0) {
        for (std::size_t x : members) {
            if (x >= kMaxVertices) throw Error(Errc::IndexOutOfRange, "hyperedge vertex index too large");
            mask_ |= std::uint64_t{1} << x;
        }
        if (mask_ == 0) throw Error(Errc::DomainError, "hyperedge must be nonempty");
    }

    /// The full vertex set {0, ..., n-1}.
    static Hyperedge all(std::size_t n) {
        return Hyperedge(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    std::uint64_t mask() const noexcept { return mask_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool contains(std::size_t x) const noexcept { return x < kMaxVertices && ((mask_ >> x) & 1u); }
    bool is_subset_of(const Hyperedge& o) const noexcept { return (mask_ & ~o.mask_) == 0; }
    bool is_strict_subset_of(const Hyperedge& o) const noexcept { return is_subset_of(o) && mask_ != o.mask_; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    bool operator==(const Hyperedge&) const = default;

    std::strong_ordering operator<=>(const Hyperedge& o) const {
        if (auto c = size() <=> o.size(); c != 0) return c;
        const auto a = members(), b = o.members();
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

  private:
    std::uint64_t mask_;
};

/// One reconstruction per side-information value: the decoder reads entry y.
struct CandidateRecovery {
    std::vector<std::size_t> per_y;

    std::size_t operator[](std::size_t y) const { return per_y.at(y); }
    std::size_t size() const noexcept { return per_y.size(); }
    auto operator<=>(const CandidateRecovery&) const = default;
};

/// A hyperedge of the characteristic multi-hypergraph: a vertex subset paired with a recovery.
struct MultiHyperedge {
    Hyperedge edge;
    CandidateRecovery recovery;

    auto operator<=>(const MultiHyperedge&) const = default;
};

/// Duplicate-free, canonically ordered family of hyperedges.
class HyperedgeFamily {
  public:
    HyperedgeFamily() = default;
    HyperedgeFamily(std::initializer_list<Hyperedge> edges) {
        for (const auto& e : edges) insert(e);
    }

    bool insert(const Hyperedge& e) {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e) return false;
        edges_.insert(it, e);
        return true;
    }

    bool contains(const Hyperedge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }
    const Hyperedge& operator[](std::size_t i) const { return edges_.at(i); }
    auto begin() const noexcept { return edges_.begin(); }
    auto end() const noexcept { return edges_.end(); }

    bool operator==(const HyperedgeFamily&) const = default;

  private:
    std::vector<Hyperedge> edges_;
};

inline std::string format_hyperedge(const Alphabet& xs, const Hyperedge& w) {
    std::string out = "{";
    bool first = true;
    for (std::size_t x : w.members()) {
        if (!first) out += ", ";
        out += x < xs.size() ? xs.label(x) : std::to_string(x);
        first = false;
    }
    return out + "}";
}

inline std::string format_recovery(const Alphabet& zhats, const CandidateRecovery& r) {
    std::string out = "(";
    for (std::size_t y = 0; y < r.size(); ++y) {
        if (y) out += ",";
        out += zhats.label(r[y]);
    }
    return out + ")";
}

}  // namespace lossycomp
