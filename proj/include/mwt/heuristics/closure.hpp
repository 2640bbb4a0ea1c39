#pragma once

// Logical closure of the inclusion/exclusion rules into an edge-status
// ledger, and the faces of the resulting skeleton.
//
// Closure proceeds in rounds. Round 0 seeds hull edges and the static tests
// (beta-skeleton, YXY, diamond). Every later round evaluates maximality,
// independence and local minimality against the statuses frozen at the end
// of the previous round, then applies all conclusions at once. Only edges
// whose neighbourhood changed are re-evaluated. Because a round never reads
// its own writes, both the statuses and the recorded provenance are
// independent of the order in which edges are visited.

#include "mwt/error.hpp"
#include "mwt/geometry/faces.hpp"
#include "mwt/geometry/instance.hpp"
#include "mwt/heuristics/rules.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwt::heur {

enum class EdgeStatus : std::uint8_t { Unknown, ForcedIn, ForcedOut };

enum class Rule : std::uint8_t {
    None,
    Boundary,
    BetaSkeleton,
    Yxy,
    Diamond,
    Maximality,
    Independence,
    Lmt,
};

inline constexpr std::array<Rule, 6> kOptionalRules = {
    Rule::BetaSkeleton, Rule::Yxy, Rule::Diamond, Rule::Maximality, Rule::Independence, Rule::Lmt};

inline std::string_view to_string(EdgeStatus s) {
    switch (s) {
    case EdgeStatus::Unknown: return "unknown";
    case EdgeStatus::ForcedIn: return "in";
    case EdgeStatus::ForcedOut: return "out";
    }
    return "?";
}

inline std::string_view to_string(Rule r) {
    switch (r) {
    case Rule::None: return "none";
    case Rule::Boundary: return "boundary";
    case Rule::BetaSkeleton: return "beta";
    case Rule::Yxy: return "yxy";
    case Rule::Diamond: return "diamond";
    case Rule::Maximality: return "maximality";
    case Rule::Independence: return "independence";
    case Rule::Lmt: return "lmt";
    }
    return "?";
}

inline std::optional<Rule> parse_rule(std::string_view name) {
    for (Rule r : kOptionalRules)
        if (to_string(r) == name) return r;
    return std::nullopt;
}

class RuleSet {
public:
    static RuleSet all() {
        RuleSet s;
        for (Rule r : kOptionalRules) s.enable(r);
        return s;
    }
    static RuleSet none() { return RuleSet{}; }

    void enable(Rule r) { bits_ |= bit(r); }
    void disable(Rule r) { bits_ &= ~bit(r); }
    bool has(Rule r) const { return (bits_ & bit(r)) != 0; }

    friend bool operator==(RuleSet, RuleSet) = default;

private:
    static std::uint32_t bit(Rule r) { return 1u << static_cast<unsigned>(r); }
    std::uint32_t bits_ = 0;
};

struct HeuristicConfig {
    double beta = default_beta();
    double diamond_angle = default_diamond_angle();
    double margin = kDefaultMargin;
    RuleSet rules = RuleSet::all();

    void validate() const {
        if (!(beta >= min_sound_beta())) throw InputError("beta below 1/sin(pi/3.1)");
        if (!(diamond_angle > 0.0 && diamond_angle < std::numbers::pi / 2))
            throw InputError("diamond angle must lie in (0, pi/2)");
    }
};

struct Provenance {
    Rule rule = Rule::None;
    std::uint32_t iteration = 0;
};

class EdgeStatusLedger {
public:
    explicit EdgeStatusLedger(std::size_t edge_count)
        : status_(edge_count, EdgeStatus::Unknown), provenance_(edge_count) {}

    std::size_t size() const noexcept { return status_.size(); }
    EdgeStatus status(EdgeId e) const { return status_[e]; }
    Provenance provenance(EdgeId e) const { return provenance_[e]; }
    bool forced_in(EdgeId e) const { return status_[e] == EdgeStatus::ForcedIn; }
    bool forced_out(EdgeId e) const { return status_[e] == EdgeStatus::ForcedOut; }

    void force(EdgeId e, EdgeStatus s, Rule rule, std::uint32_t iteration) {
        if (status_[e] != EdgeStatus::Unknown && status_[e] != s)
            throw InvariantError("edge " + std::to_string(e) + " forced both ways (" +
                                 std::string(to_string(provenance_[e].rule)) + " vs " +
                                 std::string(to_string(rule)) + ")");
        status_[e] = s;
        provenance_[e] = {rule, iteration};
    }

    std::vector<EdgeId> edges_with(EdgeStatus s) const {
        std::vector<EdgeId> out;
        for (EdgeId e = 0; e < status_.size(); ++e)
            if (status_[e] == s) out.push_back(e);
        return out;
    }

    std::size_t count(EdgeStatus s) const {
        return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), s));
    }

    std::uint32_t rounds() const {
        std::uint32_t r = 0;
        for (const auto& p : provenance_) r = std::max(r, p.iteration);
        return r;
    }

    friend bool operator==(const EdgeStatusLedger& a, const EdgeStatusLedger& b) {
        if (a.status_ != b.status_) return false;
        for (std::size_t i = 0; i < a.provenance_.size(); ++i)
            if (a.provenance_[i].rule != b.provenance_[i].rule ||
                a.provenance_[i].iteration != b.provenance_[i].iteration)
                return false;
        return true;
    }

private:
    std::vector<EdgeStatus> status_;
    std::vector<Provenance> provenance_;
};

struct ClosureOptions {
    // Visiting order for edges within a round; empty means ascending ids.
    // The result does not depend on it.
    std::vector<EdgeId> visit_order;
};

namespace detail {

inline void check_no_crossing_forced_in(const Instance& inst, const EdgeStatusLedger& ledger,
                                        const std::vector<std::vector<EdgeId>>& crossers) {
    for (EdgeId e = 0; e < ledger.size(); ++e) {
        if (!ledger.forced_in(e)) continue;
        for (EdgeId c : crossers[e])
            if (ledger.forced_in(c))
                throw InvariantError("ForcedIn edges " + std::to_string(e) + " and " +
                                     std::to_string(c) + " cross");
    }
    (void)inst;
}

} // namespace detail

inline EdgeStatusLedger run_closure(const Instance& inst, const HeuristicConfig& config = {},
                                    const ClosureOptions& options = {}) {
    config.validate();
    const std::size_t m = inst.edges().size();
    EdgeStatusLedger ledger(m);
    const RuleSet& rules = config.rules;

    std::vector<EdgeId> order = options.visit_order;
    if (order.empty()) {
        order.resize(m);
        for (EdgeId e = 0; e < m; ++e) order[e] = e;
    }
    if (order.size() != m) throw InputError("visit order must list every edge once");

    // Round 0: seeds.
    for (EdgeId e : order) {
        const Edge& edge = inst.edge(e);
        if (edge.is_boundary) {
            ledger.force(e, EdgeStatus::ForcedIn, Rule::Boundary, 0);
            continue;
        }
        const bool out = rules.has(Rule::Diamond) && diamond_test(inst, e, config.diamond_angle, config.margin);
        std::optional<Rule> in;
        if (rules.has(Rule::BetaSkeleton) && beta_skeleton_test(inst, e, config.beta, config.margin))
            in = Rule::BetaSkeleton;
        else if (rules.has(Rule::Yxy) && yxy_test(inst, e))
            in = Rule::Yxy;
        if (out && in)
            throw InvariantError("edge " + std::to_string(e) + " passes both diamond and " +
                                 std::string(to_string(*in)));
        if (out) ledger.force(e, EdgeStatus::ForcedOut, Rule::Diamond, 0);
        if (in) ledger.force(e, EdgeStatus::ForcedIn, *in, 0);
    }

    // Crossing lists among edges still alive after seeding. Edges forced out
    // later stay in the lists; the rules only ever ask about alive crossers.
    std::vector<EdgeId> alive;
    for (EdgeId e = 0; e < m; ++e)
        if (!ledger.forced_out(e)) alive.push_back(e);
    std::vector<std::vector<EdgeId>> crossers(m);
    for (std::size_t i = 0; i < alive.size(); ++i)
        for (std::size_t j = i + 1; j < alive.size(); ++j)
            if (inst.edges_cross(alive[i], alive[j])) {
                crossers[alive[i]].push_back(alive[j]);
                crossers[alive[j]].push_back(alive[i]);
            }
    detail::check_no_crossing_forced_in(inst, ledger, crossers);

    std::vector<std::vector<std::pair<TriangleId, TriangleId>>> lm_pairs(m);
    std::vector<char> lm_ready(m, 0);
    auto triangle_alive = [&](TriangleId t, EdgeId except) {
        for (EdgeId f : inst.triangle(t).e)
            if (f != except && ledger.forced_out(f)) return false;
        return true;
    };

    std::vector<char> scheduled(m, 0);
    for (EdgeId e : alive) scheduled[e] = 1;

    struct Change {
        EdgeId edge;
        EdgeStatus status;
        Rule rule;
    };

    for (std::uint32_t round = 1;; ++round) {
        std::vector<Change> changes;
        for (EdgeId e : order) {
            if (!scheduled[e]) continue;
            scheduled[e] = 0;
            if (ledger.status(e) != EdgeStatus::Unknown) continue;

            std::optional<Rule> in_rule, out_rule;
            bool any_in = false, all_out = true;
            for (EdgeId c : crossers[e]) {
                any_in = any_in || ledger.forced_in(c);
                all_out = all_out && ledger.forced_out(c);
            }
            if (rules.has(Rule::Maximality) && all_out) in_rule = Rule::Maximality;
            if (rules.has(Rule::Independence) && any_in) out_rule = Rule::Independence;
            if (!out_rule && rules.has(Rule::Lmt) && !inst.edge(e).is_boundary) {
                if (!lm_ready[e]) {
                    lm_pairs[e] = locally_minimal_pairs(inst, e);
                    lm_ready[e] = 1;
                }
                bool survives = false;
                for (auto [t, s] : lm_pairs[e])
                    if (triangle_alive(t, e) && triangle_alive(s, e)) {
                        survives = true;
                        break;
                    }
                if (!survives) out_rule = Rule::Lmt;
            }
            if (in_rule && out_rule)
                throw InvariantError("edge " + std::to_string(e) + " forced in by " +
                                     std::string(to_string(*in_rule)) + " and out by " +
                                     std::string(to_string(*out_rule)));
            if (in_rule) changes.push_back({e, EdgeStatus::ForcedIn, *in_rule});
            if (out_rule) changes.push_back({e, EdgeStatus::ForcedOut, *out_rule});
        }
        if (changes.empty()) break;

        for (const auto& c : changes) ledger.force(c.edge, c.status, c.rule, round);
        for (const auto& c : changes) {
            for (EdgeId x : crossers[c.edge]) {
                if (c.status == EdgeStatus::ForcedIn && ledger.forced_in(x))
                    throw InvariantError("ForcedIn edges " + std::to_string(c.edge) + " and " +
                                         std::to_string(x) + " cross");
                scheduled[x] = 1;
            }
            if (c.status == EdgeStatus::ForcedOut) {
                auto touch = [&](std::span<const TriangleId> ts) {
                    for (TriangleId t : ts)
                        for (EdgeId f : inst.triangle(t).e) scheduled[f] = 1;
                };
                touch(inst.triangles_left(c.edge));
                touch(inst.triangles_right(c.edge));
            }
        }
    }
    return ledger;
}

struct Skeleton {
    std::vector<Face> faces;
    bool solvable = false;
};

// Faces of the ForcedIn edges. The instance is solvable by the heuristics
// when every face is an empty simple polygon.
inline Skeleton skeleton_faces(const EdgeStatusLedger& ledger, const Instance& inst) {
    Skeleton s;
    s.faces = geom::extract_faces(inst, ledger.edges_with(EdgeStatus::ForcedIn));
    s.solvable = std::all_of(s.faces.begin(), s.faces.end(),
                             [](const Face& f) { return f.is_empty && f.is_simple; });
    return s;
}

} // namespace mwt::heur
