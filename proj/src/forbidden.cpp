#include "treeshift/forbidden.hpp"

#include <algorithm>

namespace treeshift {

ForbiddenSet make_forbidden(const Tree& tree, std::vector<std::string> alphabet,
                            std::vector<Window> patterns) {
    if (alphabet.empty()) fail(errc::input, "alphabet must contain at least one symbol");
    if (alphabet.size() > 64) fail(errc::input, "alphabet too large");
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        for (std::size_t j = i + 1; j < alphabet.size(); ++j)
            if (alphabet[i] == alphabet[j]) fail(errc::input, "duplicate alphabet symbol");

    ForbiddenSet out;
    out.alphabet = std::move(alphabet);
    const int a = out.alphabet_size();
    for (Window& p : patterns) {
        if (p.eta < 0 || p.eta >= tree.type_count())
            fail(errc::input, "pattern follower type out of range");
        const DeltaLayout& lay = tree.layout(p.eta, p.depth);
        if (static_cast<std::int32_t>(p.labels.size()) != lay.size())
            fail(errc::input, "pattern label count does not match its ball");
        for (Symbol s : p.labels)
            if (s >= a) fail(errc::input, "pattern symbol outside the alphabet");
        out.step = std::max(out.step, p.depth);
    }
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    out.patterns = std::move(patterns);
    return out;
}

}  // namespace treeshift
