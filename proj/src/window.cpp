#include "treeshift/window.hpp"

#include <sstream>

namespace treeshift {

Window uniform_window(const Tree& tree, int eta, int depth, Symbol s) {
    const DeltaLayout& lay = tree.layout(eta, depth);
    return Window{eta, depth, std::vector<Symbol>(static_cast<std::size_t>(lay.size()), s)};
}

Window restrict_window(const Tree& tree, const Window& w, int m) {
    if (m < 0 || m > w.depth) fail(errc::input, "restriction depth out of range");
    const DeltaLayout& lay = tree.layout(w.eta, m);
    Window out{w.eta, m, {}};
    out.labels.assign(w.labels.begin(), w.labels.begin() + lay.size());
    return out;
}

Window shift_window(const Tree& tree, const Window& w, const Word& g) {
    if (!tree.word_admissible(g, w.eta))
        fail(errc::input, "shift word not admissible in the window's type");
    const int k = static_cast<int>(g.size());
    if (k > w.depth) fail(errc::input, "shift word longer than window depth");
    if (k == 0) return w;

    const DeltaLayout& src = tree.layout(w.eta, w.depth);
    const int target_type = tree.type_of_generator(g.back());
    const DeltaLayout& dst = tree.layout(target_type, w.depth - k);

    std::int32_t anchor = src.find(g);
    if (anchor < 0) fail(errc::internal, "admissible word missing from layout");

    Window out{target_type, w.depth - k, {}};
    out.labels.resize(static_cast<std::size_t>(dst.size()));
    // Map destination vertices onto the source subtree; parents come before
    // children in layout order, so one pass suffices.
    std::vector<std::int32_t> map(static_cast<std::size_t>(dst.size()));
    map[0] = anchor;
    out.labels[0] = w.labels[static_cast<std::size_t>(anchor)];
    for (std::int32_t v = 1; v < dst.size(); ++v) {
        std::int32_t p = dst.parent_of(v);
        std::int32_t s = src.child_of(map[static_cast<std::size_t>(p)], dst.letter_of(v));
        map[static_cast<std::size_t>(v)] = s;
        out.labels[static_cast<std::size_t>(v)] = w.labels[static_cast<std::size_t>(s)];
    }
    return out;
}

std::string Rat::to_string() const {
    std::ostringstream out;
    out << num;
    if (den != 1) out << '/' << den;
    return out.str();
}

std::string Distance::to_string() const {
    std::ostringstream out;
    if (!exact) out << "<=";
    if (agree <= 0) out << (agree == 0 ? "1" : "2");
    else out << "2^-" << agree;
    return out.str();
}

bool worse_than(const Distance& a, const Distance& b) {
    if (a.agree != b.agree) return a.agree < b.agree;
    return a.exact && !b.exact;
}

Distance metric(const Tree& tree, const Window& s, const Window& t) {
    if (s.eta != t.eta) fail(errc::input, "metric requires windows of the same follower type");
    const int n = std::min(s.depth, t.depth);
    const DeltaLayout& lay = tree.layout(s.eta, n);
    for (int k = 0; k <= n; ++k) {
        const std::int32_t b = lay.layer_begin(k);
        const std::int32_t e = (k == n) ? lay.size() : lay.layer_begin(k + 1);
        for (std::int32_t v = b; v < e; ++v) {
            if (s.labels[static_cast<std::size_t>(v)] != t.labels[static_cast<std::size_t>(v)])
                return Distance::exact_at(k - 1);
        }
    }
    return Distance::bound_at(n);
}

bool require_less(const Distance& d, const Rat& eps, const char* what) {
    switch (d.less_than(eps)) {
        case Tri::yes: return true;
        case Tri::no: return false;
        case Tri::unresolved:
            fail(errc::depth, std::string(what) +
                                  ": comparison unresolved at available depth (bound " +
                                  d.to_string() + " vs " + eps.to_string() + ")");
    }
    return false;
}

int agreement_depth_for(const Rat& eps, int max_depth) {
    for (int c = 0; c <= max_depth; ++c)
        if (Rat::dyadic(c) < eps) return c;
    fail(errc::depth, "threshold " + eps.to_string() + " needs more depth than available (" +
                          std::to_string(max_depth) + ")");
}

std::string format_word(const Word& w) {
    if (w.empty()) return "e";
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << '.';
        out << static_cast<int>(w[i]) + 1;
    }
    return out.str();
}

Word parse_word(const std::string& s) {
    if (s == "e" || s.empty()) return {};
    Word w;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find('.', i);
        if (j == std::string::npos) j = s.size();
        const std::string tok = s.substr(i, j - i);
        int v = 0;
        try {
            v = std::stoi(tok);
        } catch (const std::exception&) {
            fail(errc::input, "bad vertex word token '" + tok + "'");
        }
        if (v < 1 || v > TransitionMatrix::kMaxDim)
            fail(errc::input, "generator index out of range in word");
        w.push_back(static_cast<std::uint8_t>(v - 1));
        i = j + 1;
    }
    return w;
}

}  // namespace treeshift
