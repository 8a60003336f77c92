#include "treeshift/tree.hpp"

#include <algorithm>

namespace treeshift {

DeltaLayout::DeltaLayout(const TransitionMatrix& m, std::uint32_t mask, int depth)
    : d_(m.dim()), depth_(depth), mask_(mask) {
    if (depth < 0) fail(errc::input, "layout depth must be nonnegative");
    row_masks_.resize(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) row_masks_[static_cast<std::size_t>(i)] = m.row_mask(i);
    full_ = m.is_full() && mask == m.full_mask();

    layer_off_.assign(static_cast<std::size_t>(depth) + 2, 0);
    if (full_) {
        std::int64_t total = 0, layer = 1;
        for (int k = 0; k <= depth; ++k) {
            layer_off_[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(total);
            total += layer;
            if (total > kMaxVertices) fail(errc::budget, "layout exceeds vertex budget");
            layer *= d_;
        }
        layer_off_[static_cast<std::size_t>(depth) + 1] = static_cast<std::int32_t>(total);
        size_ = static_cast<std::int32_t>(total);
        return;
    }

    // Explicit BFS in canonical order: layer by layer, children in generator order.
    parent_.push_back(-1);
    letter_.push_back(0xFF);
    layer_off_[0] = 0;
    std::int64_t begin = 0, end = 1;
    for (int k = 0; k < depth; ++k) {
        layer_off_[static_cast<std::size_t>(k) + 1] = static_cast<std::int32_t>(end);
        for (std::int64_t v = begin; v < end; ++v) {
            std::uint32_t am = (v == 0) ? mask_ : row_masks_[letter_[static_cast<std::size_t>(v)]];
            for (int g = 0; g < d_; ++g) {
                if (!(am & (1u << g))) continue;
                parent_.push_back(static_cast<std::int32_t>(v));
                letter_.push_back(static_cast<std::uint8_t>(g));
                if (static_cast<std::int64_t>(parent_.size()) > kMaxVertices)
                    fail(errc::budget, "layout exceeds vertex budget");
            }
        }
        begin = end;
        end = static_cast<std::int64_t>(parent_.size());
    }
    layer_off_[static_cast<std::size_t>(depth) + 1] = static_cast<std::int32_t>(end);
    size_ = static_cast<std::int32_t>(end);

    // child_base: first child index per vertex (children of one layer are
    // contiguous and ordered by parent, then generator).
    child_base_.assign(static_cast<std::size_t>(size_), -1);
    for (std::int32_t v = 1; v < size_; ++v) {
        std::int32_t p = parent_[static_cast<std::size_t>(v)];
        if (child_base_[static_cast<std::size_t>(p)] < 0) child_base_[static_cast<std::size_t>(p)] = v;
    }
}

std::int32_t DeltaLayout::find(const Word& w) const {
    if (static_cast<int>(w.size()) > depth_) return -1;
    std::int32_t v = 0;
    for (std::uint8_t g : w) {
        if (g >= d_) return -1;
        v = child_of(v, g);
        if (v < 0) return -1;
    }
    return v;
}

Word DeltaLayout::word_of(std::int32_t v) const {
    Word w;
    while (v > 0) {
        w.push_back(static_cast<std::uint8_t>(letter_of(v)));
        v = parent_of(v);
    }
    std::reverse(w.begin(), w.end());
    return w;
}

Tree::Tree(TransitionMatrix m) : matrix_(std::move(m)) {
    const int d = matrix_.dim();
    types_.push_back(FollowerType{matrix_.full_mask(), 1});
    gen_type_.assign(static_cast<std::size_t>(d), -1);
    for (int g = 0; g < d; ++g) {
        std::uint32_t mask = matrix_.row_mask(g);
        int found = -1;
        for (std::size_t t = 0; t < types_.size(); ++t)
            if (types_[t].mask == mask) { found = static_cast<int>(t); break; }
        if (found < 0) {
            found = static_cast<int>(types_.size());
            types_.push_back(FollowerType{mask, found + 1});
        }
        gen_type_[static_cast<std::size_t>(g)] = found;
    }
}

int Tree::type_of_word(const Word& w, int context_type) const {
    if (!word_admissible(w, context_type))
        fail(errc::input, "word is not admissible in the given context");
    if (w.empty()) return context_type;
    return gen_type_[w.back()];
}

int Tree::type_by_canonical_id(int id) const {
    for (int t = 0; t < type_count(); ++t)
        if (types_[static_cast<std::size_t>(t)].canonical_id == id) return t;
    fail(errc::input, "unknown follower type id " + std::to_string(id));
}

bool Tree::word_admissible(const Word& w, int context_type) const {
    if (context_type < 0 || context_type >= type_count())
        fail(errc::input, "follower type index out of range");
    std::uint32_t allowed = types_[static_cast<std::size_t>(context_type)].mask;
    for (std::uint8_t g : w) {
        if (g >= matrix_.dim()) return false;
        if (!(allowed & (1u << g))) return false;
        allowed = matrix_.row_mask(g);
    }
    return true;
}

const DeltaLayout& Tree::layout(int type_idx, int depth) const {
    if (type_idx < 0 || type_idx >= type_count())
        fail(errc::input, "follower type index out of range");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto key = std::make_pair(type_idx, depth);
    auto it = layout_cache_.find(key);
    if (it == layout_cache_.end()) {
        auto lay = std::make_unique<const DeltaLayout>(
            matrix_, types_[static_cast<std::size_t>(type_idx)].mask, depth);
        it = layout_cache_.emplace(key, std::move(lay)).first;
    }
    return *it->second;
}

std::vector<Word> enumerate_delta(const Tree& tree, int type_idx, int m) {
    const DeltaLayout& lay = tree.layout(type_idx, m);
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(lay.size()));
    for (std::int32_t v = 0; v < lay.size(); ++v) out.push_back(lay.word_of(v));
    return out;
}

}  // namespace treeshift
