#pragma once

#include <string>
#include <vector>

#include "treeshift/window.hpp"

namespace treeshift {

// A forbidden pattern is just a window; a labeling is in the tree-shift when
// no pattern occurs at any position of any shifted view.
struct ForbiddenSet {
    std::vector<std::string> alphabet;  // symbol tokens, index = Symbol value
    std::vector<Window> patterns;
    int step = 0;  // max pattern depth; 0 when empty

    int alphabet_size() const { return static_cast<int>(alphabet.size()); }
    bool empty() const { return patterns.empty(); }
};

// Validates types and labels against the tree/alphabet, dedups patterns and
// computes the step.
ForbiddenSet make_forbidden(const Tree& tree, std::vector<std::string> alphabet,
                            std::vector<Window> patterns);

}  // namespace treeshift
