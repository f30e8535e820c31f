#pragma once

#include "../graph.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace acsd::detail {

// Dense adjacency rows, one bitset per vertex. Scratch structure for the
// elimination game and clique machinery; not part of the public surface.
class BitRows {
public:
    explicit BitRows(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    explicit BitRows(const Graph& g) : BitRows(g.vertex_count()) {
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : g.neighbors(u)) set(u, v);
    }

    int size() const { return n_; }
    int words() const { return words_; }

    void set(int r, int c) { row(r)[c >> 6] |= (std::uint64_t{1} << (c & 63)); }
    void clear(int r, int c) { row(r)[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }
    bool test(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }

    std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }
    const std::uint64_t* row(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }

    // |row(a) ∧ row(b) ∧ mask|
    int count_common(int a, int b, const std::uint64_t* mask) const {
        const std::uint64_t* ra = row(a);
        const std::uint64_t* rb = row(b);
        int total = 0;
        for (int w = 0; w < words_; ++w) total += std::popcount(ra[w] & rb[w] & mask[w]);
        return total;
    }

    int count_masked(int r, const std::uint64_t* mask) const {
        const std::uint64_t* rr = row(r);
        int total = 0;
        for (int w = 0; w < words_; ++w) total += std::popcount(rr[w] & mask[w]);
        return total;
    }

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

// Single bitset over vertex ids with iteration support.
class BitMask {
public:
    explicit BitMask(int n, bool filled = false)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(words_), filled ? ~std::uint64_t{0} : 0) {
        if (filled && n_ % 64 != 0) bits_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
        if (filled && n_ == 0) bits_.assign(bits_.size(), 0);
    }

    void set(int i) { bits_[static_cast<std::size_t>(i >> 6)] |= (std::uint64_t{1} << (i & 63)); }
    void clear(int i) { bits_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (bits_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }

    const std::uint64_t* data() const { return bits_.data(); }
    std::uint64_t* data() { return bits_.data(); }
    int words() const { return words_; }

    template <typename F>
    void for_each(F&& f) const {
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = bits_[static_cast<std::size_t>(w)];
            while (bits) {
                int i = (w << 6) + std::countr_zero(bits);
                f(i);
                bits &= bits - 1;
            }
        }
    }

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

} // namespace acsd::detail
