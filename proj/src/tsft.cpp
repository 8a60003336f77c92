#include "treeshift/tsft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

namespace treeshift {

namespace {

std::string key_of(const std::vector<Symbol>& labels) {
    return std::string(reinterpret_cast<const char*>(labels.data()), labels.size());
}

std::string key_of_prefix(const std::vector<Symbol>& labels, std::int32_t len) {
    return std::string(reinterpret_cast<const char*>(labels.data()),
                       static_cast<std::size_t>(len));
}

// Overlap labels a child block must reproduce: shift of the parent block, or
// nothing at all for a 0-step shift.
std::vector<Symbol> overlap_of(const Tree& tree, const Window& block, int g, int m) {
    if (m == 0) return {};
    return shift_window(tree, block, Word{static_cast<std::uint8_t>(g)}).labels;
}

void validate_window(const Tree& tree, const Window& w, int alphabet) {
    if (w.eta < 0 || w.eta >= tree.type_count())
        fail(errc::input, "window follower type out of range");
    const DeltaLayout& lay = tree.layout(w.eta, w.depth);
    if (static_cast<std::int32_t>(w.labels.size()) != lay.size())
        fail(errc::input, "window label count does not match its ball");
    for (Symbol s : w.labels)
        if (s >= alphabet) fail(errc::input, "window symbol outside the alphabet");
}

}  // namespace

Tsft::Tsft(TreePtr tree, ForbiddenSet forbidden, int budget_bits)
    : tree_(std::move(tree)), forbidden_(std::move(forbidden)), budget_bits_(budget_bits) {
    if (!tree_) fail(errc::input, "tree handle is null");
    if (budget_bits_ < 1) fail(errc::input, "budget must be positive");
    build_blocks(budget_bits_);
    run_fixpoint();
    build_transitions();
}

void Tsft::check_enumeration_budget(int eta, int n) const {
    const DeltaLayout& lay = tree_->layout(eta, n);
    const double bits = static_cast<double>(lay.size()) *
                        std::log2(static_cast<double>(std::max(1, alphabet_size())));
    if (bits > static_cast<double>(budget_bits_) + 1e-9)
        fail(errc::budget, "enumeration needs " + std::to_string(bits) + " bits, budget is " +
                               std::to_string(budget_bits_));
}

bool Tsft::position_matches(const Window& w, std::int32_t anchor, const Window& pattern) const {
    const DeltaLayout& lw = tree_->layout(w.eta, w.depth);
    const int anchor_type =
        anchor == 0 ? w.eta : tree_->type_of_generator(lw.letter_of(anchor));
    if (anchor_type != pattern.eta) return false;
    const int ad = lw.depth_of(anchor);
    if (ad + pattern.depth > w.depth) return false;
    const DeltaLayout& lp = tree_->layout(pattern.eta, pattern.depth);
    thread_local std::vector<std::int32_t> map;
    map.resize(static_cast<std::size_t>(lp.size()));
    map[0] = anchor;
    if (w.labels[static_cast<std::size_t>(anchor)] != pattern.labels[0]) return false;
    for (std::int32_t u = 1; u < lp.size(); ++u) {
        const std::int32_t src =
            lw.child_of(map[static_cast<std::size_t>(lp.parent_of(u))], lp.letter_of(u));
        map[static_cast<std::size_t>(u)] = src;
        if (w.labels[static_cast<std::size_t>(src)] != pattern.labels[static_cast<std::size_t>(u)])
            return false;
    }
    return true;
}

bool Tsft::window_allowed(const Window& w, Exec exec) const {
    validate_window(*tree_, w, alphabet_size());
    if (forbidden_.empty()) return true;
    const DeltaLayout& lw = tree_->layout(w.eta, w.depth);
    const auto& pats = forbidden_.patterns;

    if (exec == Exec::serial) {
        for (std::int32_t v = 0; v < lw.size(); ++v)
            for (const Window& p : pats)
                if (position_matches(w, v, p)) return false;
        return true;
    }

    std::atomic<bool> bad{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024)
#endif
    for (std::int32_t v = 0; v < lw.size(); ++v) {
        if (bad.load(std::memory_order_relaxed)) continue;
        for (const Window& p : pats)
            if (position_matches(w, v, p)) {
                bad.store(true, std::memory_order_relaxed);
                break;
            }
    }
    return !bad.load();
}

std::optional<std::pair<std::int32_t, int>> Tsft::first_violation(const Window& w) const {
    validate_window(*tree_, w, alphabet_size());
    const DeltaLayout& lw = tree_->layout(w.eta, w.depth);
    for (std::int32_t v = 0; v < lw.size(); ++v)
        for (std::size_t pi = 0; pi < forbidden_.patterns.size(); ++pi)
            if (position_matches(w, v, forbidden_.patterns[pi]))
                return std::make_pair(v, static_cast<int>(pi));
    return std::nullopt;
}

void Tsft::build_blocks(int budget_bits) {
    const int m = step();
    const int a = alphabet_size();
    per_type_.resize(static_cast<std::size_t>(tree_->type_count()));
    for (int t = 0; t < tree_->type_count(); ++t) {
        check_enumeration_budget(t, m);
        const DeltaLayout& lay = tree_->layout(t, m);
        TypeBlocks& tb = per_type_[static_cast<std::size_t>(t)];
        Window w{t, m, std::vector<Symbol>(static_cast<std::size_t>(lay.size()), 0)};
        // Odometer over all labelings in lexicographic (canonical) order.
        while (true) {
            if (window_allowed(w, Exec::serial)) {
                tb.index.emplace(key_of(w.labels), static_cast<std::int32_t>(tb.blocks.size()));
                tb.blocks.push_back(w);
            }
            std::int32_t i = lay.size() - 1;
            while (i >= 0 && w.labels[static_cast<std::size_t>(i)] == a - 1) {
                w.labels[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++w.labels[static_cast<std::size_t>(i)];
        }
        tb.live.assign(tb.blocks.size(), 1);
    }
}

void Tsft::run_fixpoint() {
    const int m = step();
    const int d = tree_->generator_count();
    // Per-type buckets: prefix at depth m-1 -> block ids (all blocks of the
    // child type when m == 0, where the overlap is empty).
    std::vector<std::unordered_map<std::string, std::vector<std::int32_t>>> buckets(
        per_type_.size());
    std::vector<std::int32_t> prefix_len(per_type_.size(), 0);
    for (std::size_t t = 0; t < per_type_.size(); ++t) {
        prefix_len[t] = (m == 0) ? 0 : tree_->layout(static_cast<int>(t), m - 1).size();
        for (std::size_t b = 0; b < per_type_[t].blocks.size(); ++b)
            buckets[t][key_of_prefix(per_type_[t].blocks[b].labels, prefix_len[t])].push_back(
                static_cast<std::int32_t>(b));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < tree_->type_count(); ++t) {
            TypeBlocks& tb = per_type_[static_cast<std::size_t>(t)];
            const std::uint32_t mask = tree_->type(t).mask;
            for (std::size_t b = 0; b < tb.blocks.size(); ++b) {
                if (!tb.live[b]) continue;
                bool ok = true;
                for (int g = 0; g < d && ok; ++g) {
                    if (!(mask & (1u << g))) continue;
                    const int ct = tree_->type_of_generator(g);
                    const auto overlap = overlap_of(*tree_, tb.blocks[b], g, m);
                    auto it = buckets[static_cast<std::size_t>(ct)].find(key_of(overlap));
                    bool found = false;
                    if (it != buckets[static_cast<std::size_t>(ct)].end())
                        for (std::int32_t c : it->second)
                            if (per_type_[static_cast<std::size_t>(ct)].live[static_cast<std::size_t>(c)]) {
                                found = true;
                                break;
                            }
                    ok = found;
                }
                if (!ok) {
                    tb.live[b] = 0;
                    changed = true;
                }
            }
        }
    }
}

void Tsft::build_transitions() {
    const int m = step();
    const int d = tree_->generator_count();
    for (int t = 0; t < tree_->type_count(); ++t) {
        TypeBlocks& tb = per_type_[static_cast<std::size_t>(t)];
        const std::uint32_t mask = tree_->type(t).mask;
        tb.next.assign(tb.blocks.size(), {});
        for (std::size_t b = 0; b < tb.blocks.size(); ++b) {
            if (!tb.live[b]) continue;
            tb.next[b].assign(static_cast<std::size_t>(d), {});
            for (int g = 0; g < d; ++g) {
                if (!(mask & (1u << g))) continue;
                const int ct = tree_->type_of_generator(g);
                const TypeBlocks& cb = per_type_[static_cast<std::size_t>(ct)];
                const auto overlap = overlap_of(*tree_, tb.blocks[b], g, m);
                for (std::size_t c = 0; c < cb.blocks.size(); ++c) {
                    if (!cb.live[c]) continue;
                    if (std::equal(overlap.begin(), overlap.end(), cb.blocks[c].labels.begin()))
                        tb.next[b][static_cast<std::size_t>(g)].push_back(
                            static_cast<std::int32_t>(c));
                }
            }
        }
    }
}

bool Tsft::is_empty() const { return live_count(tree_->root_type()) == 0; }

const std::vector<Window>& Tsft::blocks_of(int eta) const {
    return per_type_[static_cast<std::size_t>(eta)].blocks;
}

const std::vector<std::uint8_t>& Tsft::live_flags_of(int eta) const {
    return per_type_[static_cast<std::size_t>(eta)].live;
}

int Tsft::live_count(int eta) const {
    const auto& live = per_type_[static_cast<std::size_t>(eta)].live;
    int n = 0;
    for (std::uint8_t f : live) n += f;
    return n;
}

void Tsft::corrupt_live_flag_for_testing(int eta, int block) {
    auto& tb = per_type_[static_cast<std::size_t>(eta)];
    tb.live[static_cast<std::size_t>(block)] ^= 1;
}

bool Tsft::live_table_stable() const {
    const int m = step();
    const int d = tree_->generator_count();
    for (int t = 0; t < tree_->type_count(); ++t) {
        const TypeBlocks& tb = per_type_[static_cast<std::size_t>(t)];
        const std::uint32_t mask = tree_->type(t).mask;
        for (std::size_t b = 0; b < tb.blocks.size(); ++b) {
            if (!tb.live[b]) continue;
            for (int g = 0; g < d; ++g) {
                if (!(mask & (1u << g))) continue;
                const int ct = tree_->type_of_generator(g);
                const TypeBlocks& cb = per_type_[static_cast<std::size_t>(ct)];
                const auto overlap = overlap_of(*tree_, tb.blocks[b], g, m);
                bool found = false;
                for (std::size_t c = 0; c < cb.blocks.size() && !found; ++c)
                    if (cb.live[c] &&
                        std::equal(overlap.begin(), overlap.end(), cb.blocks[c].labels.begin()))
                        found = true;
                if (!found) return false;
            }
        }
    }
    return true;
}

std::int32_t Tsft::block_at(const Window& w, std::int32_t anchor) const {
    const int m = step();
    const DeltaLayout& lw = tree_->layout(w.eta, w.depth);
    const int anchor_type = anchor == 0 ? w.eta : tree_->type_of_generator(lw.letter_of(anchor));
    const DeltaLayout& lb = tree_->layout(anchor_type, m);
    thread_local std::vector<std::int32_t> map;
    thread_local std::vector<Symbol> labels;
    map.resize(static_cast<std::size_t>(lb.size()));
    labels.resize(static_cast<std::size_t>(lb.size()));
    map[0] = anchor;
    labels[0] = w.labels[static_cast<std::size_t>(anchor)];
    for (std::int32_t u = 1; u < lb.size(); ++u) {
        const std::int32_t src =
            lw.child_of(map[static_cast<std::size_t>(lb.parent_of(u))], lb.letter_of(u));
        map[static_cast<std::size_t>(u)] = src;
        labels[static_cast<std::size_t>(u)] = w.labels[static_cast<std::size_t>(src)];
    }
    const auto& tb = per_type_[static_cast<std::size_t>(anchor_type)];
    auto it = tb.index.find(std::string(reinterpret_cast<const char*>(labels.data()), labels.size()));
    return it == tb.index.end() ? -1 : it->second;
}

bool Tsft::extendable(const Window& w) const {
    validate_window(*tree_, w, alphabet_size());
    const int m = step();
    if (w.depth < m) {
        const auto& tb = per_type_[static_cast<std::size_t>(w.eta)];
        const DeltaLayout& lay = tree_->layout(w.eta, w.depth);
        for (std::size_t b = 0; b < tb.blocks.size(); ++b)
            if (tb.live[b] &&
                std::equal(w.labels.begin(), w.labels.end(), tb.blocks[b].labels.begin(),
                           tb.blocks[b].labels.begin() + lay.size()))
                return true;
        return false;
    }
    const DeltaLayout& lw = tree_->layout(w.eta, w.depth);
    const std::int32_t fb = lw.layer_begin(w.depth - m);
    const std::int32_t fe = lw.layer_begin(w.depth - m + 1);
    for (std::int32_t h = fb; h < fe; ++h) {
        const std::int32_t id = block_at(w, h);
        if (id < 0) return false;
        const int ht = h == 0 ? w.eta : tree_->type_of_generator(lw.letter_of(h));
        if (!per_type_[static_cast<std::size_t>(ht)].live[static_cast<std::size_t>(id)])
            return false;
    }
    return true;
}

std::vector<Window> Tsft::enumerate_windows(int eta, int n) const {
    check_enumeration_budget(eta, n);
    const DeltaLayout& lay = tree_->layout(eta, n);
    const int a = alphabet_size();
    const std::int32_t size = lay.size();

    // (anchor, pattern) pairs become checkable exactly when the layer holding
    // the pattern's deepest vertices is fully labeled.
    std::vector<std::vector<std::pair<std::int32_t, const Window*>>> checks(
        static_cast<std::size_t>(n) + 1);
    for (const Window& p : forbidden_.patterns) {
        for (int k = p.depth; k <= n; ++k) {
            const std::int32_t ab = lay.layer_begin(k - p.depth);
            const std::int32_t ae = lay.layer_begin(k - p.depth + 1);
            for (std::int32_t v = ab; v < ae; ++v)
                checks[static_cast<std::size_t>(k)].push_back({v, &p});
        }
    }

    std::vector<Window> out;
    Window w{eta, n, std::vector<Symbol>(static_cast<std::size_t>(size), 0)};
    std::int32_t v = 0;
    bool descending = true;
    while (true) {
        if (descending) {
            w.labels[static_cast<std::size_t>(v)] = 0;
        } else {
            if (w.labels[static_cast<std::size_t>(v)] == a - 1) {
                if (v == 0) break;
                --v;
                continue;
            }
            ++w.labels[static_cast<std::size_t>(v)];
        }
        // Prune when v closes a layer and some pattern occurrence completes.
        bool ok = true;
        const int layer = lay.depth_of(v);
        const std::int32_t layer_end =
            (layer == n) ? size : lay.layer_begin(layer + 1);
        if (v + 1 == layer_end) {
            // Labels through this layer are final, so any pattern whose span
            // bottoms out here is fully determined.
            for (const auto& [anchor, pat] : checks[static_cast<std::size_t>(layer)])
                if (position_matches(w, anchor, *pat)) {
                    ok = false;
                    break;
                }
        }
        if (!ok) {
            descending = false;
            continue;
        }
        if (v + 1 == size) {
            if (extendable(w)) out.push_back(w);
            descending = false;
            continue;
        }
        ++v;
        descending = true;
    }
    return out;
}

Window Tsft::random_point(int eta, int depth, std::uint64_t seed) const {
    if (live_count(eta) == 0) fail(errc::input, "tree-shift is empty for the requested type");
    FillRequest req;
    req.eta = eta;
    req.depth = depth;
    req.seeded = true;
    req.seed = seed;
    auto w = fill(req);
    if (!w) fail(errc::internal, "unconstrained fill failed on a nonempty shift");
    return *w;
}

Window Tsft::extend_window(const Window& w, int target_depth) const {
    if (target_depth < w.depth) fail(errc::input, "extension target shallower than window");
    FillRequest req;
    req.eta = w.eta;
    req.depth = target_depth;
    req.pins.reserve(w.labels.size());
    for (std::size_t i = 0; i < w.labels.size(); ++i)
        req.pins.push_back({static_cast<std::int32_t>(i), w.labels[i]});
    auto out = fill(req);
    if (!out) fail(errc::precondition, "window does not extend (not allowed+extendable?)");
    return *out;
}

std::optional<Window> Tsft::fill(const FillRequest& req) const {
    const int m = step();
    const int D = req.depth;
    if (D < 0) fail(errc::input, "fill depth must be nonnegative");
    const DeltaLayout& lay = tree_->layout(req.eta, D);

    std::vector<Symbol> pin(static_cast<std::size_t>(lay.size()), 0xFF);
    int max_pin_depth = -1;
    for (const auto& [v, s] : req.pins) {
        if (v < 0 || v >= lay.size()) fail(errc::input, "pin vertex outside the target ball");
        if (s >= alphabet_size()) fail(errc::input, "pin symbol outside the alphabet");
        if (pin[static_cast<std::size_t>(v)] != 0xFF && pin[static_cast<std::size_t>(v)] != s)
            return std::nullopt;  // contradictory pins
        pin[static_cast<std::size_t>(v)] = s;
        max_pin_depth = std::max(max_pin_depth, lay.depth_of(v));
    }

    Rng rng(mix_seed(req.seed));
    std::int64_t attempts = 0;

    const auto& root_tb = per_type_[static_cast<std::size_t>(req.eta)];

    // Shallow case: the whole window lives inside one block.
    if (D < m) {
        std::vector<std::int32_t> cands;
        for (std::size_t b = 0; b < root_tb.blocks.size(); ++b) {
            if (!root_tb.live[b]) continue;
            bool ok = true;
            for (std::int32_t v = 0; v < lay.size() && ok; ++v)
                if (pin[static_cast<std::size_t>(v)] != 0xFF &&
                    root_tb.blocks[b].labels[static_cast<std::size_t>(v)] !=
                        pin[static_cast<std::size_t>(v)])
                    ok = false;
            if (ok) cands.push_back(static_cast<std::int32_t>(b));
        }
        if (cands.empty()) return std::nullopt;
        const std::int32_t pick =
            req.seeded ? cands[static_cast<std::size_t>(rng.uniform_int(
                             static_cast<int>(cands.size())))]
                       : cands.front();
        return restrict_window(*tree_, root_tb.blocks[static_cast<std::size_t>(pick)], D);
    }

    Window out{req.eta, D, std::vector<Symbol>(static_cast<std::size_t>(lay.size()), 0)};

    // Block ids per vertex at depths <= D-m. With 0-step shifts the block of a
    // vertex is determined by its label, so no table is needed.
    std::vector<std::int32_t> block_id;
    if (m > 0) block_id.assign(static_cast<std::size_t>(lay.layer_begin(D - m + 1)), -1);
    const auto block_of_vertex = [&](std::int32_t h) -> std::int32_t {
        if (m > 0) return block_id[static_cast<std::size_t>(h)];
        const int t = h == 0 ? req.eta : tree_->type_of_generator(lay.letter_of(h));
        const auto& tb = per_type_[static_cast<std::size_t>(t)];
        auto it = tb.index.find(
            std::string(1, static_cast<char>(out.labels[static_cast<std::size_t>(h)])));
        return it == tb.index.end() ? -1 : it->second;
    };

    // Decision 0 places the root block (layers 0..m); decision i>0 places the
    // bottom layer of the block at one child position. Decisions are ordered
    // by the layer they write, so all pin-constrained ones form a prefix and
    // classic DFS backtracking over that prefix is enough: beyond the pins any
    // live choice extends forever.
    struct Decision {
        std::int32_t h;  // parent vertex (-1 for the root decision)
        int g;           // generator (unused for the root decision)
    };
    std::vector<Decision> decisions;
    decisions.push_back({-1, 0});
    for (int l = 0; l + m + 1 <= D; ++l) {
        const std::int32_t b = lay.layer_begin(l);
        const std::int32_t e = lay.layer_begin(l + 1);
        for (std::int32_t h = b; h < e; ++h) {
            const std::uint32_t mask = lay.allowed_mask(h);
            for (int g = 0; g < tree_->generator_count(); ++g)
                if (mask & (1u << g)) decisions.push_back({h, g});
        }
    }

    // Written positions of a decision, and the block-layout indices supplying
    // their labels.
    thread_local std::vector<std::int32_t> map;
    const auto candidates_of = [&](std::size_t di) {
        std::vector<std::int32_t> cands;
        if (decisions[di].h < 0) {
            for (std::size_t b = 0; b < root_tb.blocks.size(); ++b) {
                if (!root_tb.live[b]) continue;
                bool ok = true;
                const auto& bl = root_tb.blocks[b].labels;
                for (std::size_t v = 0; v < bl.size() && ok; ++v)
                    if (pin[v] != 0xFF && bl[v] != pin[v]) ok = false;
                if (ok) cands.push_back(static_cast<std::int32_t>(b));
            }
            return cands;
        }
        const auto [h, g] = decisions[di];
        const std::int32_t parent_block = block_of_vertex(h);
        const int pt = h == 0 ? req.eta : tree_->type_of_generator(lay.letter_of(h));
        const int ct = tree_->type_of_generator(g);
        const auto& options =
            per_type_[static_cast<std::size_t>(pt)].next[static_cast<std::size_t>(parent_block)]
                                                       [static_cast<std::size_t>(g)];
        const std::int32_t hg = lay.child_of(h, g);
        const DeltaLayout& lb = tree_->layout(ct, m);
        map.resize(static_cast<std::size_t>(lb.size()));
        map[0] = hg;
        for (std::int32_t u = 1; u < lb.size(); ++u)
            map[static_cast<std::size_t>(u)] =
                lay.child_of(map[static_cast<std::size_t>(lb.parent_of(u))], lb.letter_of(u));
        const auto& ctb = per_type_[static_cast<std::size_t>(ct)];
        for (std::int32_t c : options) {
            bool ok = true;
            for (std::int32_t u = lb.layer_begin(m); u < lb.size() && ok; ++u) {
                const Symbol want = pin[static_cast<std::size_t>(map[static_cast<std::size_t>(u)])];
                if (want != 0xFF &&
                    ctb.blocks[static_cast<std::size_t>(c)].labels[static_cast<std::size_t>(u)] !=
                        want)
                    ok = false;
            }
            if (ok) cands.push_back(c);
        }
        return cands;
    };

    const auto apply = [&](std::size_t di, std::int32_t chosen) {
        if (decisions[di].h < 0) {
            const auto& bl = root_tb.blocks[static_cast<std::size_t>(chosen)].labels;
            std::copy(bl.begin(), bl.end(), out.labels.begin());
            if (m > 0) block_id[0] = chosen;
            return;
        }
        const auto [h, g] = decisions[di];
        const int ct = tree_->type_of_generator(g);
        const std::int32_t hg = lay.child_of(h, g);
        const DeltaLayout& lb = tree_->layout(ct, m);
        map.resize(static_cast<std::size_t>(lb.size()));
        map[0] = hg;
        for (std::int32_t u = 1; u < lb.size(); ++u)
            map[static_cast<std::size_t>(u)] =
                lay.child_of(map[static_cast<std::size_t>(lb.parent_of(u))], lb.letter_of(u));
        const auto& bl = per_type_[static_cast<std::size_t>(ct)].blocks[static_cast<std::size_t>(chosen)].labels;
        for (std::int32_t u = (m > 0) ? lb.layer_begin(m) : 0; u < lb.size(); ++u)
            out.labels[static_cast<std::size_t>(map[static_cast<std::size_t>(u)])] =
                bl[static_cast<std::size_t>(u)];
        if (m > 0 && hg < static_cast<std::int32_t>(block_id.size())) block_id[static_cast<std::size_t>(hg)] = chosen;
    };

    // A decision still touches pins iff the deepest layer it writes does.
    const auto constrained = [&](std::size_t di) {
        if (max_pin_depth < 0) return false;
        if (decisions[di].h < 0) return true;
        return lay.depth_of(decisions[di].h) + m + 1 <= max_pin_depth;
    };

    struct Frame {
        std::size_t di;
        std::vector<std::int32_t> cands;
        std::size_t at;
    };
    std::vector<Frame> stack;
    std::size_t di = 0;
    while (di < decisions.size()) {
        if (!constrained(di)) {
            // Streaming region: one live pick, never fails.
            auto cands = candidates_of(di);
            if (cands.empty()) fail(errc::internal, "live transition table has a dead end");
            const std::int32_t pick =
                req.seeded
                    ? cands[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(cands.size())))]
                    : cands.front();
            apply(di, pick);
            ++di;
            continue;
        }
        auto cands = candidates_of(di);
        if (req.seeded && cands.size() > 1) {
            for (std::size_t i = cands.size(); i > 1; --i)
                std::swap(cands[i - 1],
                          cands[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)))]);
        }
        stack.push_back({di, std::move(cands), 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.at >= f.cands.size()) {
                stack.pop_back();
                if (stack.empty()) return std::nullopt;
                continue;
            }
            if (++attempts > req.attempt_budget)
                fail(errc::budget, "constrained fill exceeded its attempt budget");
            apply(f.di, f.cands[f.at]);
            ++f.at;
            const std::size_t ni = f.di + 1;
            if (ni >= decisions.size() || !constrained(ni)) {
                di = ni;
                break;  // constrained prefix solved
            }
            auto nc = candidates_of(ni);
            if (req.seeded && nc.size() > 1) {
                for (std::size_t i = nc.size(); i > 1; --i)
                    std::swap(nc[i - 1],
                              nc[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)))]);
            }
            stack.push_back({ni, std::move(nc), 0});
        }
        if (stack.empty()) return std::nullopt;
        stack.clear();
    }
    return out;
}

}  // namespace treeshift
