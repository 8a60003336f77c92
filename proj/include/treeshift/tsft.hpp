#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeshift/forbidden.hpp"
#include "treeshift/parallel.hpp"
#include "treeshift/rng.hpp"

namespace treeshift {

// Tree-shift of finite type. Construction enumerates, per follower type, the
// allowed step-depth blocks and trims them to the greatest fixpoint of
//   live(b)  <=>  for every admissible generator g there is a live block b'
//                 of the child type with b'|_(step-1) = shift_g(b),
// which is the finite certificate that a block sits inside an infinite
// configuration. Everything else (membership surrogate, enumeration,
// sampling, constrained completion) is driven by those tables.
class Tsft {
public:
    Tsft(TreePtr tree, ForbiddenSet forbidden, int budget_bits = kDefaultBudgetBits);

    static constexpr int kDefaultBudgetBits = 24;

    const Tree& tree() const { return *tree_; }
    TreePtr tree_ptr() const { return tree_; }
    const ForbiddenSet& forbidden() const { return forbidden_; }
    int step() const { return forbidden_.step; }
    int alphabet_size() const { return forbidden_.alphabet_size(); }
    int budget_bits() const { return budget_bits_; }

    // True when the root type has no live block: the shift contains no point.
    bool is_empty() const;

    // Local admissibility: no pattern occurs at any checkable position.
    bool window_allowed(const Window& w, Exec exec = default_exec()) const;

    // Serial scan reporting the first (position, pattern) violation.
    std::optional<std::pair<std::int32_t, int>> first_violation(const Window& w) const;

    // Membership surrogate on top of allowedness: every deepest block of w is
    // live (w extends to an infinite configuration).
    bool extendable(const Window& w) const;

    // All allowed-and-extendable depth-n windows of a type, canonical order.
    std::vector<Window> enumerate_windows(int eta, int n) const;

    // Root-down sampling through live-filtered choices; deterministic per seed.
    Window random_point(int eta, int depth, std::uint64_t seed) const;

    // Deterministic completion of an allowed+extendable window to target_depth
    // (first live choice everywhere).
    Window extend_window(const Window& w, int target_depth) const;

    // Constrained completion: build a depth-`depth` window of type eta whose
    // labels match `pins` (vertex index in the target layout -> symbol).
    // Backtracks over live-block choices while decisions can still touch a
    // pinned vertex; returns nullopt when the bounded search exhausts.
    struct FillRequest {
        int eta = 0;
        int depth = 0;
        std::vector<std::pair<std::int32_t, Symbol>> pins;
        bool seeded = false;
        std::uint64_t seed = 0;
        std::int64_t attempt_budget = std::int64_t(1) << 20;
    };
    std::optional<Window> fill(const FillRequest& req) const;

    // Live-table introspection (diagnostics, fault injection in the self-test
    // harness, idempotence checks).
    const std::vector<Window>& blocks_of(int eta) const;
    const std::vector<std::uint8_t>& live_flags_of(int eta) const;
    int live_count(int eta) const;
    void corrupt_live_flag_for_testing(int eta, int block);

    // One elimination round over the current live set; returns true when the
    // set is already a fixpoint (used by tests).
    bool live_table_stable() const;

    // Checks the budget guard |Delta_n(eta)| * log2|A| <= bits.
    void check_enumeration_budget(int eta, int n) const;

private:
    struct TypeBlocks {
        std::vector<Window> blocks;
        std::vector<std::uint8_t> live;
        std::unordered_map<std::string, std::int32_t> index;      // labels -> id
        std::vector<std::vector<std::vector<std::int32_t>>> next;  // [block][gen] -> live ids
    };

    void build_blocks(int budget_bits);
    void run_fixpoint();
    void build_transitions();
    std::int32_t block_at(const Window& w, std::int32_t anchor) const;
    bool position_matches(const Window& w, std::int32_t anchor, const Window& pattern) const;

    TreePtr tree_;
    ForbiddenSet forbidden_;
    int budget_bits_;
    std::vector<TypeBlocks> per_type_;
};

}  // namespace treeshift
