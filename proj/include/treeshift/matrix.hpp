#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeshift/errors.hpp"

namespace treeshift {

// 0-1 transition matrix over the generator alphabet {g_1, ..., g_d}.
// Rows with no 1 are rejected: every vertex must have at least one child so
// rays extend forever and follower sets stay infinite.
class TransitionMatrix {
public:
    static constexpr int kMaxDim = 16;

    TransitionMatrix(int d, std::vector<std::uint8_t> bits);

    // Text format: line 1 holds d, lines 2..d+1 hold d characters from {0,1}.
    static TransitionMatrix parse(const std::string& text);

    int dim() const { return d_; }
    bool at(int i, int j) const { return bits_[static_cast<std::size_t>(i) * d_ + j] != 0; }

    // Bit j set iff generator g_{j+1} may follow g_{i+1}.
    std::uint32_t row_mask(int i) const { return row_masks_[static_cast<std::size_t>(i)]; }
    std::uint32_t full_mask() const { return (d_ >= 32) ? ~0u : ((1u << d_) - 1u); }
    bool is_full() const;

    // Some generator reaches some other generator via a positive-length path
    // for every ordered pair.
    bool irreducible() const;

    std::string to_text() const;

    bool operator==(const TransitionMatrix&) const = default;

private:
    int d_;
    std::vector<std::uint8_t> bits_;  // row-major d*d
    std::vector<std::uint32_t> row_masks_;
};

}  // namespace treeshift
