#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "treeshift/matrix.hpp"

namespace treeshift {

// A word over generator indices (0-based). The empty word is the root.
using Word = std::vector<std::uint8_t>;

// A follower type: which generators may appear as the first letter. The
// family of follower types of a Markov-Cayley tree is the all-ones mask
// (the type of the root) plus one type per distinct matrix row.
struct FollowerType {
    std::uint32_t mask = 0;
    int canonical_id = 0;  // 1-based, stable across runs; used in file headers

    bool operator==(const FollowerType&) const = default;
};

// Vertex enumeration of the depth-<= m ball of a follower type, in canonical
// order (by length, then lexicographically by generator index). Full matrices
// get an implicit level-order d-ary layout with O(1) navigation and no
// per-vertex storage; other matrices get explicit BFS arrays.
class DeltaLayout {
public:
    static constexpr std::int64_t kMaxVertices = std::int64_t(1) << 28;

    DeltaLayout(const TransitionMatrix& m, std::uint32_t mask, int depth);

    int depth() const { return depth_; }
    std::int32_t size() const { return size_; }
    std::uint32_t mask() const { return mask_; }

    // First vertex index of layer k; layer k occupies [layer_begin(k), layer_begin(k+1)).
    std::int32_t layer_begin(int k) const { return layer_off_[static_cast<std::size_t>(k)]; }

    std::int32_t child_of(std::int32_t v, int g) const {
        if (full_) {
            std::int64_t c = static_cast<std::int64_t>(v) * d_ + 1 + g;
            return c < size_ ? static_cast<std::int32_t>(c) : -1;
        }
        if (!(allowed_mask(v) & (1u << g))) return -1;
        std::int32_t c = child_base_[static_cast<std::size_t>(v)];
        if (c < 0) return -1;
        std::uint32_t m = allowed_mask(v);
        for (int j = 0; j < g; ++j)
            if (m & (1u << j)) ++c;
        return c;
    }

    // Generator leading to v from its parent; -1 for the root.
    int letter_of(std::int32_t v) const {
        if (v == 0) return -1;
        if (full_) return static_cast<int>((v - 1) % d_);
        return letter_[static_cast<std::size_t>(v)];
    }

    std::int32_t parent_of(std::int32_t v) const {
        if (v == 0) return -1;
        if (full_) return static_cast<std::int32_t>((v - 1) / d_);
        return parent_[static_cast<std::size_t>(v)];
    }

    int depth_of(std::int32_t v) const {
        int k = 0;
        while (layer_off_[static_cast<std::size_t>(k + 1)] <= v) ++k;
        return k;
    }

    // Generators admissible below v (the row of v's letter; the type mask at the root).
    std::uint32_t allowed_mask(std::int32_t v) const {
        int l = letter_of(v);
        return l < 0 ? mask_ : row_masks_[static_cast<std::size_t>(l)];
    }

    std::int32_t find(const Word& w) const;
    Word word_of(std::int32_t v) const;

private:
    bool full_;
    int d_;
    int depth_;
    std::uint32_t mask_;
    std::int32_t size_ = 0;
    std::vector<std::uint32_t> row_masks_;
    std::vector<std::int32_t> layer_off_;
    // explicit mode only
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> child_base_;  // index of first child, -1 if none
    std::vector<std::uint8_t> letter_;
};

// The Markov-Cayley tree of a transition matrix together with its follower
// family and a cache of delta layouts. Immutable after construction; layout
// lookup is internally synchronized.
class Tree {
public:
    explicit Tree(TransitionMatrix m);

    const TransitionMatrix& matrix() const { return matrix_; }
    int generator_count() const { return matrix_.dim(); }

    int type_count() const { return static_cast<int>(types_.size()); }
    const FollowerType& type(int idx) const { return types_[static_cast<std::size_t>(idx)]; }
    int root_type() const { return 0; }

    // Type of the subtree below a generator (depends only on the last letter).
    int type_of_generator(int g) const { return gen_type_[static_cast<std::size_t>(g)]; }

    // Type of a word read inside a context type; the empty word keeps the context.
    int type_of_word(const Word& w, int context_type) const;

    int type_by_canonical_id(int id) const;

    bool word_admissible(const Word& w, int context_type) const;

    const DeltaLayout& layout(int type_idx, int depth) const;

    bool operator==(const Tree& o) const { return matrix_ == o.matrix_; }

private:
    TransitionMatrix matrix_;
    std::vector<FollowerType> types_;
    std::vector<int> gen_type_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<const DeltaLayout>> layout_cache_;
};

using TreePtr = std::shared_ptr<const Tree>;

inline TreePtr make_tree(TransitionMatrix m) { return std::make_shared<Tree>(std::move(m)); }

// All admissible words of length <= m readable inside the given type, in
// canonical order, as explicit words (the root is the empty word).
std::vector<Word> enumerate_delta(const Tree& tree, int type_idx, int m);

}  // namespace treeshift
