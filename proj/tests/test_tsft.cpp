#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "treeshift/rng.hpp"
#include "treeshift/tsft.hpp"

using namespace treeshift;

namespace {

TreePtr t2() { return make_tree(TransitionMatrix::parse("2\n11\n11\n")); }
TreePtr tg() { return make_tree(TransitionMatrix::parse("2\n11\n10\n")); }
TreePtr tu() { return make_tree(TransitionMatrix::parse("2\n11\n01\n")); }

std::vector<std::string> ab(int n) {
    std::vector<std::string> a;
    for (int i = 0; i < n; ++i) a.push_back(std::string(1, static_cast<char>('0' + i)));
    return a;
}

// Depth-1 patterns forbidding symbol 1 at a vertex with symbol 1 at any child
// on a branch selected by one_over_one_mask; the other children stay free, so
// each completion becomes one full pattern window.
std::vector<Window> golden_patterns(const Tree& tree, int eta, std::uint32_t one_over_one_mask,
                                    int alphabet) {
    const DeltaLayout& lay = tree.layout(eta, 1);
    std::vector<Window> out;
    std::vector<Symbol> labels(static_cast<std::size_t>(lay.size()), 0);
    const std::uint32_t mask = tree.type(eta).mask;
    std::int64_t total = 1;
    for (std::int32_t i = 0; i < lay.size(); ++i) total *= alphabet;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        for (std::int32_t i = 0; i < lay.size(); ++i) {
            labels[static_cast<std::size_t>(i)] = static_cast<Symbol>(c % alphabet);
            c /= alphabet;
        }
        if (labels[0] != 1) continue;
        bool hit = false;
        for (int g = 0; g < tree.generator_count(); ++g) {
            if (!(mask & (1u << g)) || !(one_over_one_mask & (1u << g))) continue;
            const std::int32_t ch = lay.child_of(0, g);
            if (labels[static_cast<std::size_t>(ch)] == 1) hit = true;
        }
        if (hit) out.push_back(Window{eta, 1, labels});
    }
    return out;
}

// Golden-mean style rule on every type: no 1 directly above a 1.
Tsft golden_tsft(TreePtr tree, int alphabet = 2) {
    std::vector<Window> pats;
    for (int t = 0; t < tree->type_count(); ++t) {
        auto p = golden_patterns(*tree, t, 0b11, alphabet);
        pats.insert(pats.end(), p.begin(), p.end());
    }
    return Tsft(tree, make_forbidden(*tree, ab(alphabet), std::move(pats)));
}

Tsft full_shift(TreePtr tree, int alphabet = 2) {
    return Tsft(tree, make_forbidden(*tree, ab(alphabet), {}));
}

// Independent allowedness oracle: materialize every shifted sub-window and
// compare against each pattern.
bool brute_allowed(const Tree& tree, const ForbiddenSet& f, const Window& w) {
    const DeltaLayout& lay = tree.layout(w.eta, w.depth);
    for (std::int32_t v = 0; v < lay.size(); ++v) {
        const Word g = lay.word_of(v);
        const int vt = v == 0 ? w.eta : tree.type_of_generator(g.back());
        const int room = w.depth - static_cast<int>(g.size());
        Window shifted = shift_window(tree, w, g);
        for (const Window& p : f.patterns) {
            if (p.eta != vt || p.depth > room) continue;
            if (restrict_window(tree, shifted, p.depth) == p) return false;
        }
    }
    return true;
}

// Extendability oracle: exhaustive search for an allowed completion `extra`
// levels deeper.
bool brute_extendable(const Tree& tree, const ForbiddenSet& f, const Window& w, int extra) {
    const int target = w.depth + extra;
    const DeltaLayout& lay = tree.layout(w.eta, target);
    Window big{w.eta, target, std::vector<Symbol>(static_cast<std::size_t>(lay.size()), 0)};
    std::copy(w.labels.begin(), w.labels.end(), big.labels.begin());
    const std::int32_t base = static_cast<std::int32_t>(w.labels.size());
    const std::int32_t free_count = lay.size() - base;
    const int a = f.alphabet_size();
    std::vector<Symbol> odo(static_cast<std::size_t>(free_count), 0);
    while (true) {
        for (std::int32_t i = 0; i < free_count; ++i)
            big.labels[static_cast<std::size_t>(base + i)] = odo[static_cast<std::size_t>(i)];
        if (brute_allowed(tree, f, big)) return true;
        std::int32_t i = free_count - 1;
        while (i >= 0 && odo[static_cast<std::size_t>(i)] == a - 1) odo[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return false;
        ++odo[static_cast<std::size_t>(i)];
    }
}

Window random_labels(const Tree& tree, int eta, int depth, int alphabet, Rng& rng) {
    const DeltaLayout& lay = tree.layout(eta, depth);
    Window w{eta, depth, {}};
    w.labels.resize(static_cast<std::size_t>(lay.size()));
    for (auto& s : w.labels) s = static_cast<Symbol>(rng.uniform_int(alphabet));
    return w;
}

}  // namespace

TEST_CASE("window_allowed: full shift allows everything") {
    auto T = full_shift(t2());
    Rng rng(1);
    for (int i = 0; i < 20; ++i) CHECK(T.window_allowed(random_labels(T.tree(), 0, 3, 2, rng)));
}

TEST_CASE("window_allowed: literal pattern hits") {
    auto tree = t2();
    // forbid 1 over 1 on the g1 branch only
    auto pats = golden_patterns(*tree, 0, 0b01, 2);
    REQUIRE(pats.size() == 2);  // g2-child label free
    Tsft T(tree, make_forbidden(*tree, ab(2), pats));

    Window w{0, 1, {1, 1, 1}};
    CHECK_FALSE(T.window_allowed(w));
    Window ok{0, 1, {1, 0, 1}};  // g1-child 0, g2-child 1
    CHECK(T.window_allowed(ok));
    CHECK(brute_allowed(*tree, T.forbidden(), ok));
}

TEST_CASE("window_allowed: agrees with sub-window scan oracle") {
    Rng rng(42);
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        for (int i = 0; i < 200; ++i) {
            Window w = random_labels(*tree, rng.uniform_int(tree->type_count()), 3, 2, rng);
            CHECK(T.window_allowed(w) == brute_allowed(*tree, T.forbidden(), w));
        }
    }
}

TEST_CASE("window_allowed is hereditary") {
    Rng rng(5);
    auto tree = tg();
    auto T = golden_tsft(tree);
    int found = 0;
    while (found < 40) {
        Window w = random_labels(*tree, 0, 3, 2, rng);
        if (!T.window_allowed(w)) continue;
        ++found;
        for (int m = 0; m <= w.depth; ++m) CHECK(T.window_allowed(restrict_window(*tree, w, m)));
        for (int g = 0; g < 2; ++g)
            CHECK(T.window_allowed(shift_window(*tree, w, Word{static_cast<std::uint8_t>(g)})));
    }
}

TEST_CASE("live blocks: full shift keeps every block") {
    auto T = full_shift(t2());
    CHECK(T.step() == 0);
    CHECK(T.live_count(0) == 2);
    CHECK_FALSE(T.is_empty());
    CHECK(T.live_table_stable());
}

TEST_CASE("live blocks: forbidding every symbol empties the shift") {
    auto tree = t2();
    std::vector<Window> pats;
    pats.push_back(Window{0, 0, {0}});
    pats.push_back(Window{0, 0, {1}});
    Tsft T(tree, make_forbidden(*tree, ab(2), pats));
    CHECK(T.is_empty());
    CHECK(T.live_count(0) == 0);
}

TEST_CASE("live blocks: golden rule live set matches deep-extension oracle") {
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        const int m = T.step();
        REQUIRE(m == 1);
        for (int t = 0; t < tree->type_count(); ++t) {
            const auto& blocks = T.blocks_of(t);
            const auto& live = T.live_flags_of(t);
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const bool deep = brute_extendable(*tree, T.forbidden(), blocks[b], m + 4);
                CHECK(static_cast<bool>(live[b]) == deep);
            }
        }
        CHECK(T.live_table_stable());
    }
}

TEST_CASE("corrupting a live flag is visible against a recomputed table") {
    auto T = golden_tsft(t2());
    auto fresh = golden_tsft(t2());
    REQUIRE(T.live_table_stable());
    REQUIRE(T.live_flags_of(0) == fresh.live_flags_of(0));
    T.corrupt_live_flag_for_testing(0, 0);
    CHECK(T.live_flags_of(0) != fresh.live_flags_of(0));
    // the uniform-0 window now wrongly reads as dead
    CHECK_FALSE(T.extendable(uniform_window(T.tree(), 0, 1, 0)));
    CHECK(fresh.extendable(uniform_window(T.tree(), 0, 1, 0)));
}

TEST_CASE("extendable: full shift and golden uniform-0") {
    auto tree = t2();
    auto F = full_shift(tree);
    Rng rng(9);
    for (int i = 0; i < 10; ++i) CHECK(F.extendable(random_labels(*tree, 0, 3, 2, rng)));
    auto G = golden_tsft(tree);
    CHECK(G.extendable(uniform_window(*tree, 0, 4, 0)));
}

TEST_CASE("extendable agrees with deep brute extension on random allowed windows") {
    Rng rng(1234);
    int checked = 0;
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        for (int i = 0; i < 50 && checked < 110; ++i) {
            // Sampled points are always extendable; a single flipped label
            // keeps most windows allowed while giving dead ones a chance.
            Window w = T.random_point(rng.uniform_int(tree->type_count()), 4, rng.next());
            w.labels[static_cast<std::size_t>(
                rng.uniform_int(static_cast<int>(w.labels.size())))] ^= 1;
            if (!T.window_allowed(w)) continue;
            ++checked;
            CHECK(T.extendable(w) == brute_extendable(*tree, T.forbidden(), w, 4));
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("enumerate_windows: counts") {
    CHECK(full_shift(t2()).enumerate_windows(0, 1).size() == 8);
    CHECK(golden_tsft(t2()).enumerate_windows(0, 1).size() == 5);
    CHECK(full_shift(tu()).enumerate_windows(1, 2).size() == 8);  // path ball, 2^3
}

TEST_CASE("enumerate_windows: language consistency across depths") {
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        for (int t = 0; t < tree->type_count(); ++t) {
            auto deeper = T.enumerate_windows(t, 3);
            auto shallower = T.enumerate_windows(t, 2);
            std::set<Window> restricted;
            for (const auto& w : deeper) restricted.insert(restrict_window(*tree, w, 2));
            std::set<Window> expect(shallower.begin(), shallower.end());
            CHECK(restricted == expect);
        }
    }
}

TEST_CASE("enumerate_windows: shift closure into the child language") {
    auto tree = tg();
    auto T = golden_tsft(tree);
    auto lang0 = T.enumerate_windows(0, 3);
    std::map<int, std::set<Window>> lang2;
    for (int t = 0; t < tree->type_count(); ++t) {
        auto l = T.enumerate_windows(t, 2);
        lang2[t] = std::set<Window>(l.begin(), l.end());
    }
    for (const auto& w : lang0) {
        const std::uint32_t mask = tree->type(w.eta).mask;
        for (int g = 0; g < tree->generator_count(); ++g) {
            if (!(mask & (1u << g))) continue;
            Window s = shift_window(*tree, w, Word{static_cast<std::uint8_t>(g)});
            CHECK(lang2[s.eta].count(s) == 1);
        }
    }
}

TEST_CASE("enumerate_windows: budget guard") {
    auto T = full_shift(t2());
    CHECK_THROWS_AS(T.enumerate_windows(0, 7), error);  // 255 vertices > 24 bits
    try {
        T.enumerate_windows(0, 7);
        FAIL("expected budget error");
    } catch (const error& e) {
        CHECK(e.code() == errc::budget);
    }
}

TEST_CASE("random_point: allowed, extendable, deterministic") {
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Window w = T.random_point(0, 5, seed);
            CHECK(T.window_allowed(w));
            CHECK(T.extendable(w));
            CHECK(T.random_point(0, 5, seed) == w);
        }
        CHECK_FALSE(T.random_point(0, 5, 1) == T.random_point(0, 5, 2));
    }
}

TEST_CASE("random_point: root marginal uniform on the full shift") {
    auto T = full_shift(t2());
    int count[2] = {0, 0};
    const int n = 10000;
    for (int seed = 0; seed < n; ++seed)
        ++count[T.random_point(0, 3, static_cast<std::uint64_t>(seed)).labels[0]];
    const double expect = n / 2.0;
    double chi = 0;
    for (int c : count) chi += (c - expect) * (c - expect) / expect;
    CHECK(chi < 10.83);  // 1 dof, p ~ 0.001
}

TEST_CASE("random_point on an empty shift fails loudly") {
    auto tree = t2();
    std::vector<Window> pats{Window{0, 0, {0}}, Window{0, 0, {1}}};
    Tsft T(tree, make_forbidden(*tree, ab(2), pats));
    CHECK_THROWS_AS(T.random_point(0, 3, 1), error);
}

TEST_CASE("extend_window keeps the prefix and stays in the language") {
    Rng rng(77);
    for (auto tree : {t2(), tg(), tu()}) {
        auto T = golden_tsft(tree);
        for (int i = 0; i < 10; ++i) {
            Window w = T.random_point(0, 3, rng.next());
            Window e = T.extend_window(w, 6);
            CHECK(e.depth == 6);
            CHECK(restrict_window(*tree, e, 3) == w);
            CHECK(T.window_allowed(e));
            CHECK(T.extendable(e));
        }
    }
}

TEST_CASE("fill with pins: satisfiable, unsatisfiable, contradictory") {
    auto tree = t2();
    auto T = golden_tsft(tree);
    Tsft::FillRequest req;
    req.eta = 0;
    req.depth = 2;
    req.pins = {{0, 1}, {1, 1}};  // 1 over 1: dead under the golden rule
    CHECK_FALSE(T.fill(req).has_value());
    req.pins = {{0, 1}, {0, 0}};  // contradictory pin pair
    CHECK_FALSE(T.fill(req).has_value());
    req.pins = {{0, 1}, {1, 0}, {2, 0}};
    auto w = T.fill(req);
    REQUIRE(w.has_value());
    CHECK(T.window_allowed(*w));
    CHECK(T.extendable(*w));
    CHECK(w->labels[0] == 1);

    // deep pin: forces backtracking through the constrained prefix
    req.pins = {{0, 1}, {static_cast<std::int32_t>(tree->layout(0, 2).layer_begin(2)), 1}};
    auto w2 = T.fill(req);
    REQUIRE(w2.has_value());
    CHECK(T.window_allowed(*w2));
}
