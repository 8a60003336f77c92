#pragma once

#include <string>
#include <vector>

#include "treeshift/parallel.hpp"
#include "treeshift/tsft.hpp"

namespace treeshift {

// Finite-scale limit-set approximation: the set of depth-n views seen from
// deep vertices of a finite configuration. Members are deduplicated and kept
// in canonical order; they are windows, so no claim about true limit
// membership is encoded beyond "seen at this resolution and horizon".
struct OmegaApprox {
    int resolution = 0;
    int horizon = 0;
    std::vector<Window> members;

    bool contains(const Window& w) const;
};

// Views from every vertex g with n < |g| <= N - n, N = t.depth. Requires
// N >= 2n + 1 so the index range is nonempty and every view has full depth n.
OmegaApprox approx_omega(const Tree& tree, const Window& t, int n, Exec exec = default_exec());

// Views along the proper prefixes of a ray: indices n < k <= min(|ray|, N-n).
// The ray prefix must be admissible, at least n+1 long and at most N-n long.
OmegaApprox approx_omega_ray(const Tree& tree, const Window& t, const Word& ray, int n);

// Views from every vertex that extends a ray prefix deeper than n, i.e. the
// whole subtree hanging at step n+1 of the ray, up to depth N - n.
OmegaApprox approx_omega_followers(const Tree& tree, const Window& t, const Word& ray, int n,
                                   Exec exec = default_exec());

// A complete prefix set: finite, prefix-free, and covering every admissible
// word at its own maximal depth. Exactly the results of repeatedly expanding
// a vertex into all of its children, starting from the root alone.
struct Cps {
    std::vector<Word> vertices;  // canonical order
    int min_depth = 0;
    int max_depth = 0;

    bool operator==(const Cps&) const = default;
    auto operator<=>(const Cps&) const = default;
};

// All complete prefix sets with vertex depths in (min_depth_gt, max_depth].
// Pass min_depth_gt = -1 for no floor. Guarded: max_depth <= 8 and at most
// `budget` sets overall.
std::vector<Cps> enumerate_cps(const Tree& tree, int max_depth, int min_depth_gt = -1,
                               std::int64_t budget = std::int64_t(1) << 20);

// Independent validity check used by tests: prefix-free + completeness by
// exhaustive word scan.
bool cps_valid(const Tree& tree, const Cps& c);

// A vector of depth-n views indexed by the distinct follower types of some
// witnessing complete prefix set.
struct CpsVector {
    std::vector<int> types;         // ascending type indices
    std::vector<Window> components; // component i has type types[i]

    bool operator==(const CpsVector&) const = default;
    auto operator<=>(const CpsVector&) const = default;
};

// All vectors witnessed by some CPS with min depth > n and max depth at most
// cps_max_depth (capped at N - n; default n + 2): for every CPS vertex g of
// type xi_i the view sigma_g(t)|_n must equal component i exactly.
std::vector<CpsVector> approx_omega_cps(const Tree& tree, const Window& t, int n,
                                        int cps_max_depth = -1,
                                        std::int64_t cps_budget = std::int64_t(1) << 20);

struct InvarianceReport {
    bool invariant = true;
    // (member, generator) pairs whose one-step shift leaves the set
    std::vector<std::pair<Window, int>> violations;
};

// A set of common-depth views is invariant when every one-step shift of every
// member matches some member of the child type at depth n-1.
InvarianceReport is_invariant(const Tree& tree, const OmegaApprox& s);

// The relation suite at matched resolution: the inclusion chain of the three
// omega approximations, membership of the full approximation in the shift's
// language, and containment of every CPS-vector coordinate.
struct RelationReport {
    bool ray_in_followers = false;
    bool followers_in_omega = false;
    bool omega_in_language = false;
    bool cps_coords_in_omega = false;
    std::vector<std::string> witnesses;

    bool all_pass() const {
        return ray_in_followers && followers_in_omega && omega_in_language && cps_coords_in_omega;
    }
};

RelationReport check_limit_relations(const Tsft& shift, const Window& t, const Word& ray, int n,
                                     Exec exec = default_exec());

}  // namespace treeshift
