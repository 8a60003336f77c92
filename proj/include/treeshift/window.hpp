#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/tree.hpp"

namespace treeshift {

using Symbol = std::uint8_t;

// A finite configuration: a total labeling of the depth-<= n ball of a
// follower type. Labels are stored in canonical layout order, so the
// depth-m restriction of a window is a prefix of its label vector.
struct Window {
    int eta = 0;  // follower type index within the ambient tree
    int depth = 0;
    std::vector<Symbol> labels;

    bool operator==(const Window&) const = default;
    auto operator<=>(const Window&) const = default;
};

Window uniform_window(const Tree& tree, int eta, int depth, Symbol s);

// Depth-m restriction; m <= w.depth.
Window restrict_window(const Tree& tree, const Window& w, int m);

// View of w from vertex g: type of g inside w.eta, depth w.depth - |g|,
// labels (g g') -> w(g g'). g must be admissible and no longer than w.depth.
Window shift_window(const Tree& tree, const Window& w, const Word& g);

// Positive rational, used for chain/shadowing thresholds. Values stay tiny
// (c * 2^-k with small c), so plain 64-bit arithmetic suffices.
struct Rat {
    long long num = 0;
    long long den = 1;

    static Rat dyadic(int k) {  // 2^-k, k >= -1
        if (k < -1 || k > 60) fail(errc::input, "dyadic exponent out of range");
        return k < 0 ? Rat{2, 1} : Rat{1, 1ll << k};
    }
    Rat half() const { return Rat{num, den * 2}; }
    Rat sixth() const { return Rat{num, den * 6}; }
    Rat times(int c) const { return Rat{num * c, den}; }

    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num * b.den == b.num * a.den; }
    std::string to_string() const;
};

enum class Tri { yes, no, unresolved };

// Distance between two same-type windows compared at a common depth n.
//   exact:  value is exactly 2^-agree (agree = -1 encodes the value 2,
//           the convention when even the roots disagree).
//   marker: the windows agree on all of the compared depth; the true
//           distance is only known to be <= 2^-agree (agree = n).
// Finite windows can never certify distance 0, hence the marker.
struct Distance {
    int agree = 0;
    bool exact = true;

    static Distance exact_at(int a) { return Distance{a, true}; }
    static Distance bound_at(int n) { return Distance{n, false}; }

    Rat upper_bound() const { return Rat::dyadic(agree); }

    // d < eps. A marker resolves only when its upper bound is already below
    // eps; otherwise the caller did not supply enough depth.
    Tri less_than(const Rat& eps) const {
        if (upper_bound() < eps) return Tri::yes;
        return exact ? Tri::no : Tri::unresolved;
    }

    std::string to_string() const;
};

// Orders by upper bound; an exact value ranks above a marker with the same
// bound (the marker's true value may be anything smaller).
bool worse_than(const Distance& a, const Distance& b);

// Distance of s and t at their common depth min(s.depth, t.depth).
// Both windows must have the same follower type.
Distance metric(const Tree& tree, const Window& s, const Window& t);

// Throwing form of Distance::less_than for callers that must not silently
// pass an unresolved comparison.
bool require_less(const Distance& d, const Rat& eps, const char* what);

// Smallest depth c with 2^-c < eps; comparisons against eps are decided by
// agreement on the depth-c ball. Errors if eps needs more than max_depth.
int agreement_depth_for(const Rat& eps, int max_depth);

std::string format_word(const Word& w);          // "e" or "1.2.1" (1-based letters)
Word parse_word(const std::string& s);

}  // namespace treeshift
