#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bdn {

using AtomId = std::uint32_t;

/// Fixed-universe bitset over the atom ids of one program.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    template <class Range>
    static AtomSet of(std::size_t universe, const Range& ids) {
        AtomSet s(universe);
        for (AtomId a : ids) s.insert(a);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    bool contains(AtomId a) const noexcept {
        return a < universe_ && ((words_[a >> 6] >> (a & 63)) & 1u) != 0;
    }
    void insert(AtomId a) { words_[a >> 6] |= std::uint64_t{1} << (a & 63); }
    void erase(AtomId a) { words_[a >> 6] &= ~(std::uint64_t{1} << (a & 63)); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const noexcept {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_subset_of(const AtomSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~o.word(i)) != 0) return false;
        return true;
    }
    bool is_proper_subset_of(const AtomSet& o) const noexcept { return is_subset_of(o) && !(*this == o); }
    bool intersects(const AtomSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & o.word(i)) != 0) return true;
        return false;
    }

    AtomSet& operator|=(const AtomSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.word(i);
        return *this;
    }
    AtomSet& operator&=(const AtomSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.word(i);
        return *this;
    }
    AtomSet& operator-=(const AtomSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.word(i);
        return *this;
    }
    friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
    friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
    friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

    /// Equality ignores trailing zero words so sets over the same ids compare equal.
    friend bool operator==(const AtomSet& a, const AtomSet& b) noexcept {
        const std::size_t n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.word(i) != b.word(i)) return false;
        return true;
    }
    friend bool operator<(const AtomSet& a, const AtomSet& b) noexcept {
        const std::size_t n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = n; i-- > 0;)
            if (a.word(i) != b.word(i)) return a.word(i) < b.word(i);
        return false;
    }

    /// Members in ascending id order.
    std::vector<AtomId> ids() const {
        std::vector<AtomId> out;
        for_each([&](AtomId a) { out.push_back(a); });
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                f(static_cast<AtomId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    std::size_t hash() const noexcept {
        std::size_t n = words_.size();
        while (n > 0 && words_[n - 1] == 0) --n;
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::size_t i = 0; i < n; ++i) h = (h ^ std::hash<std::uint64_t>{}(words_[i])) * 0x100000001b3ull;
        return h;
    }

private:
    std::uint64_t word(std::size_t i) const noexcept { return i < words_.size() ? words_[i] : 0; }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct AtomSetHash {
    std::size_t operator()(const AtomSet& s) const noexcept { return s.hash(); }
};

} // namespace bdn
