#pragma once

#include <cstdint>
#include <vector>

namespace sched {

// Dense n x n bit matrix; row r holds the set of columns reachable/related to r.
// Small n (task counts), so rows are a handful of 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}

    int size() const { return n_; }
    int rowWords() const { return words_; }

    bool test(int r, int c) const {
        return (bits_[static_cast<size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(int r, int c) {
        bits_[static_cast<size_t>(r) * words_ + (c >> 6)] |= uint64_t{1} << (c & 63);
    }

    const uint64_t* row(int r) const { return bits_.data() + static_cast<size_t>(r) * words_; }
    uint64_t* row(int r) { return bits_.data() + static_cast<size_t>(r) * words_; }

    void orRowFrom(int dst, const uint64_t* src) {
        uint64_t* d = row(dst);
        for (int i = 0; i < words_; ++i) d[i] |= src[i];
    }

    bool operator==(const BitMatrix& o) const {
        return n_ == o.n_ && bits_ == o.bits_;
    }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;
};

} // namespace sched
