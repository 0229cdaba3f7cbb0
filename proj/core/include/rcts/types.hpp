#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace rcts {

struct ProcessId {
    std::int32_t v = -1;
    auto operator<=>(const ProcessId&) const = default;
};

struct Letter {
    std::int32_t v = -1;
    auto operator<=>(const Letter&) const = default;
};

// In channeled transition systems the letter id doubles as the channel id.
using Channel = Letter;

using LocalState = std::int32_t;

// One local state per process, indexed by process id.
using GlobalConfig = std::vector<LocalState>;

using Word = std::vector<Letter>;
using WordSet = std::set<Word>;

// Bitmask set over small integer ids. Everything in this library is
// desk-scale; 64 processes/letters/channels is plenty and keeps set
// algebra branch-free.
template <typename IdT>
class IdSet {
public:
    static constexpr int max_elements = 64;

    constexpr IdSet() = default;

    static constexpr IdSet of_raw(std::uint64_t bits) {
        IdSet s;
        s.bits_ = bits;
        return s;
    }

    // {0, 1, ..., count-1}
    static constexpr IdSet first(int count) {
        return of_raw(count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1));
    }

    constexpr bool contains(IdT x) const {
        return x.v >= 0 && x.v < max_elements && ((bits_ >> x.v) & 1u) != 0;
    }
    constexpr void insert(IdT x) { bits_ |= std::uint64_t{1} << x.v; }
    constexpr void erase(IdT x) { bits_ &= ~(std::uint64_t{1} << x.v); }

    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }

    constexpr IdSet operator|(IdSet o) const { return of_raw(bits_ | o.bits_); }
    constexpr IdSet operator&(IdSet o) const { return of_raw(bits_ & o.bits_); }
    constexpr IdSet minus(IdSet o) const { return of_raw(bits_ & ~o.bits_); }
    constexpr bool intersects(IdSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr bool subset_of(IdSet o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr bool operator==(const IdSet&) const = default;

    // Ascending-id traversal of the members.
    class iterator {
    public:
        explicit constexpr iterator(std::uint64_t bits) : bits_(bits) {}
        constexpr IdT operator*() const { return IdT{static_cast<std::int32_t>(std::countr_zero(bits_))}; }
        constexpr iterator& operator++() {
            bits_ &= bits_ - 1;
            return *this;
        }
        constexpr bool operator!=(const iterator& o) const { return bits_ != o.bits_; }

    private:
        std::uint64_t bits_;
    };
    constexpr iterator begin() const { return iterator{bits_}; }
    constexpr iterator end() const { return iterator{0}; }

    // Smallest/largest member; undefined on the empty set.
    constexpr IdT min() const { return IdT{static_cast<std::int32_t>(std::countr_zero(bits_))}; }
    constexpr IdT max() const { return IdT{static_cast<std::int32_t>(63 - std::countl_zero(bits_))}; }

    constexpr std::uint64_t raw() const { return bits_; }

private:
    std::uint64_t bits_ = 0;
};

using ProcessSet = IdSet<ProcessId>;
using LetterSet = IdSet<Letter>;
using ChannelSet = LetterSet;

// Cap on explored nodes for reachability/enumeration procedures.
struct Limits {
    std::size_t max_explored = 1'000'000;
};

struct ConfigHash {
    std::size_t operator()(const GlobalConfig& c) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (LocalState s : c) {
            h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Reachable fragment of a global transition graph, in BFS discovery order.
// `content` is -1 on edges of machines that have no message contents.
struct ReachGraph {
    struct Edge {
        std::int32_t from;
        std::int32_t content;
        Letter label;
        std::int32_t to;
    };
    std::vector<GlobalConfig> configs;
    std::vector<ReachGraph::Edge> edges;
    std::unordered_map<GlobalConfig, std::int32_t, ConfigHash> index;
    // Index of the edge that first discovered each config; -1 for the root.
    std::vector<std::int32_t> parent_edge;

    std::int32_t index_of(const GlobalConfig& c) const {
        auto it = index.find(c);
        return it == index.end() ? -1 : it->second;
    }

    // Letters along the discovery path from the root to config `i`.
    Word access_word(std::int32_t i) const {
        Word w;
        while (parent_edge[i] >= 0) {
            const Edge& e = edges[parent_edge[i]];
            w.push_back(e.label);
            i = e.from;
        }
        std::reverse(w.begin(), w.end());
        return w;
    }
};

} // namespace rcts

template <>
struct std::hash<rcts::ProcessId> {
    std::size_t operator()(rcts::ProcessId p) const { return std::hash<std::int32_t>{}(p.v); }
};
template <>
struct std::hash<rcts::Letter> {
    std::size_t operator()(rcts::Letter a) const { return std::hash<std::int32_t>{}(a.v); }
};
