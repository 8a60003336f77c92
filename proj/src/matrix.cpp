#include "treeshift/matrix.hpp"

#include <sstream>

namespace treeshift {

TransitionMatrix::TransitionMatrix(int d, std::vector<std::uint8_t> bits)
    : d_(d), bits_(std::move(bits)) {
    if (d_ < 1 || d_ > kMaxDim) fail(errc::input, "matrix dimension out of range");
    if (bits_.size() != static_cast<std::size_t>(d_) * d_)
        fail(errc::input, "matrix entry count does not match dimension");
    row_masks_.assign(static_cast<std::size_t>(d_), 0u);
    for (int i = 0; i < d_; ++i) {
        std::uint32_t mask = 0;
        for (int j = 0; j < d_; ++j) {
            std::uint8_t b = bits_[static_cast<std::size_t>(i) * d_ + j];
            if (b != 0 && b != 1) fail(errc::input, "matrix entries must be 0 or 1");
            if (b) mask |= (1u << j);
        }
        if (mask == 0) fail(errc::input, "matrix row " + std::to_string(i + 1) + " is all zero");
        row_masks_[static_cast<std::size_t>(i)] = mask;
    }
}

TransitionMatrix TransitionMatrix::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(errc::input, "matrix file is empty");
    int d = 0;
    try {
        d = std::stoi(line);
    } catch (const std::exception&) {
        fail(errc::input, "matrix file: first line must be the dimension");
    }
    if (d < 1 || d > kMaxDim) fail(errc::input, "matrix dimension out of range");
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        if (!std::getline(in, line)) fail(errc::input, "matrix file: missing row");
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (static_cast<int>(line.size()) != d)
            fail(errc::input, "matrix file: row " + std::to_string(i + 1) + " has wrong length");
        for (char c : line) {
            if (c != '0' && c != '1') fail(errc::input, "matrix file: entries must be 0 or 1");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    }
    return TransitionMatrix(d, std::move(bits));
}

bool TransitionMatrix::is_full() const {
    for (int i = 0; i < d_; ++i)
        if (row_mask(i) != full_mask()) return false;
    return true;
}

bool TransitionMatrix::irreducible() const {
    // Reachability in at least one step, saturated by repeated squaring-free
    // relaxation; d is tiny so the cubic loop is fine.
    std::vector<std::uint32_t> reach = row_masks_;
    for (int round = 0; round < d_; ++round) {
        bool changed = false;
        for (int i = 0; i < d_; ++i) {
            std::uint32_t acc = reach[static_cast<std::size_t>(i)];
            for (int j = 0; j < d_; ++j)
                if (acc & (1u << j)) acc |= reach[static_cast<std::size_t>(j)];
            if (acc != reach[static_cast<std::size_t>(i)]) {
                reach[static_cast<std::size_t>(i)] = acc;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (int i = 0; i < d_; ++i)
        if (reach[static_cast<std::size_t>(i)] != full_mask()) return false;
    return true;
}

std::string TransitionMatrix::to_text() const {
    std::ostringstream out;
    out << d_ << '\n';
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) out << (at(i, j) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

}  // namespace treeshift
