#include "na_norm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nakt {

namespace {

struct SolveContext {
    UltraSpace sub;             // support space, zero point appended when needed
    std::vector<Scalar> coeff;  // aligned with sub.points
    Dendrogram dg;
    FieldSpec field;
    std::size_t n_real = 0;  // support points carrying normal-form coefficients
    std::optional<std::string> basepoint_used;
    std::vector<std::string> notes;
};

SolveContext build_context(const UltraSpace& space, const FreeVector& u,
                           const NaNormOptions& opts) {
    if (!u.field.is_na())
        throw input_error("archimedean field kind: use the classical solver");
    SolveContext ctx;
    ctx.field = u.field;

    std::vector<std::size_t> idx;
    for (const auto& [pt, c] : u.terms) idx.push_back(space.index_of(pt));
    ctx.sub = restrict_space(space, idx);
    ctx.n_real = idx.size();
    for (const auto& [pt, c] : u.terms) ctx.coeff.push_back(c);

    Scalar bal = balance(u);
    bool needs_zero = !scalar_is_zero(u.field, bal);
    if (opts.pointed) {
        if (needs_zero) throw input_error("pointed norm is defined on balanced vectors only");
    } else if (needs_zero) {
        std::vector<Rational> zero_row;
        if (opts.zero_distances) {
            if (opts.zero_distances->size() != space.size())
                throw input_error("zero_distances length does not match point count");
            for (auto i : idx) zero_row.push_back((*opts.zero_distances)[i]);
        } else {
            std::string bp = opts.basepoint.value_or(u.terms.front().first);
            std::size_t b = space.index_of(bp);
            for (auto i : idx) zero_row.push_back(std::max(space.d(i, b), Rational(1)));
            ctx.basepoint_used = bp;
            if (!opts.basepoint && ctx.sub.diameter() > 1)
                ctx.notes.push_back(
                    "support diameter exceeds 1: the norm of an unbalanced vector may depend "
                    "on the zero-extension basepoint; defaulted to '" + bp + "'");
        }
        ctx.sub = extend_with_zero_explicit(ctx.sub, zero_row);
        ctx.coeff.push_back(scalar_neg(u.field, bal));
    }
    ctx.dg = build_dendrogram(ctx.sub);
    return ctx;
}

Scalar cluster_sum(const SolveContext& ctx, const Dendrogram::Node& node) {
    Scalar s = scalar_zero(ctx.field);
    for (int leaf : node.leaves) s = scalar_add(ctx.field, s, ctx.coeff[leaf]);
    return s;
}

}  // namespace

NormCertificate na_norm(const UltraSpace& space, const FreeVector& u,
                        const NaNormOptions& opts) {
    NormCertificate cert;
    if (u.is_zero()) {
        cert.value = Cost::of_zero(u.field.base);
        return cert;
    }
    SolveContext ctx = build_context(space, u, opts);
    cert.extension_basepoint = ctx.basepoint_used;
    cert.notes = ctx.notes;
    cert.value = Cost::of_zero(ctx.field.base);

    for (std::size_t id = 0; id < ctx.dg.nodes.size(); ++id) {
        if (static_cast<int>(id) == ctx.dg.root) continue;
        const auto& node = ctx.dg.nodes[id];
        CutBound cb;
        for (int leaf : node.leaves) cb.cluster.push_back(ctx.sub.points[leaf]);
        cb.cluster_sum = cluster_sum(ctx, node);
        cb.separation = ctx.dg.nodes[node.parent].height;
        cb.bound = cost_from(scalar_abs(ctx.field, cb.cluster_sum), cb.separation, ctx.field.base);
        if (cost_compare(cb.bound, cert.value) > 0) {
            cert.value = cb.bound;
            cert.argmax_cluster = static_cast<int>(cert.cut_bounds.size());
        }
        cert.cut_bounds.push_back(std::move(cb));
    }

    // Bottom-up consolidation: each non-representative child moves its
    // aggregate to the node representative (smallest point index).
    for (std::size_t id = ctx.dg.leaf_count; id < ctx.dg.nodes.size(); ++id) {
        const auto& node = ctx.dg.nodes[id];
        int rep = node.leaves.front();
        for (int child : node.children) {
            int child_rep = ctx.dg.nodes[child].leaves.front();
            if (child_rep == rep) continue;
            Scalar s = cluster_sum(ctx, ctx.dg.nodes[child]);
            if (scalar_is_zero(ctx.field, s)) continue;
            cert.witness.entries.push_back(
                {ctx.sub.points[child_rep], ctx.sub.points[rep], std::move(s)});
        }
    }
    return cert;
}

std::pair<Cost, Cost> na_norm_bounds(const UltraSpace& space, const FreeVector& u,
                                     const NaNormOptions& opts) {
    if (u.is_zero())
        return {Cost::of_zero(u.field.base), Cost::of_zero(u.field.base)};
    SolveContext ctx = build_context(space, u, opts);
    Magnitude r = Magnitude::of_zero();
    for (std::size_t i = 0; i < ctx.n_real; ++i)
        r = mag_max(r, scalar_abs(ctx.field, ctx.coeff[i]));
    std::size_t m = ctx.sub.size();
    if (m < 2) return {Cost::of_zero(ctx.field.base), Cost::of_zero(ctx.field.base)};
    Rational l0 = ctx.sub.d(0, 1), l1 = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            l0 = std::min(l0, ctx.sub.d(i, j));
            l1 = std::max(l1, ctx.sub.d(i, j));
        }
    return {cost_from(r, l0, ctx.field.base), cost_from(r, l1, ctx.field.base)};
}

Cost decomposition_max_cost(const UltraSpace& space, const FieldSpec& field,
                            const Decomposition& dec) {
    Cost c = Cost::of_zero(field.base);
    for (const auto& t : dec.terms) {
        std::size_t i = space.index_of(t.x);
        std::size_t j = space.index_of(t.y);
        c = cost_max(c, cost_from(scalar_abs(field, t.coeff), space.d(i, j), field.base));
    }
    return c;
}

Cost na_norm_bruteforce(const UltraSpace& space, const FreeVector& u, int budget,
                        const NaNormOptions& opts) {
    if (budget < 1) throw input_error("oracle budget must be >= 1");
    if (u.is_zero()) return Cost::of_zero(u.field.base);
    SolveContext ctx = build_context(space, u, opts);
    const std::size_t m = ctx.sub.size();
    if (m > 5) throw input_error("oracle guard: support size exceeds 5");
    const FieldSpec& f = ctx.field;

    if (m == 1) return Cost::of_zero(f.base);

    // Upper-triangular parametrization: dependents c_{i,m-1} for rows
    // i < m-1; free variables are the pairs among the first m-1 points.
    struct Pair {
        std::size_t i, j;
    };
    std::vector<Pair> free_pairs;
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 1; j + 1 < m; ++j) free_pairs.push_back({i, j});

    std::vector<Scalar> candidates = gu_combinations(gu_description(u), budget);

    std::map<std::string, Magnitude> mag_cache;
    auto mag_of = [&](const Scalar& s) {
        auto key = scalar_key(f, s);
        auto it = mag_cache.find(key);
        if (it == mag_cache.end()) it = mag_cache.emplace(key, scalar_abs(f, s)).first;
        return it->second;
    };

    // Per free pair: candidates sorted ascending by entry cost, for pruning.
    struct FreeChoice {
        const Scalar* value;
        Cost cost;
    };
    std::vector<std::vector<FreeChoice>> choices(free_pairs.size());
    for (std::size_t k = 0; k < free_pairs.size(); ++k) {
        const Rational& d = ctx.sub.d(free_pairs[k].i, free_pairs[k].j);
        for (const auto& c : candidates)
            choices[k].push_back({&c, cost_from(mag_of(c), d, f.base)});
        std::stable_sort(choices[k].begin(), choices[k].end(),
                         [](const FreeChoice& a, const FreeChoice& b) {
                             return cost_compare(a.cost, b.cost) < 0;
                         });
    }

    // entry matrix holds the current free assignment
    std::vector<std::vector<const Scalar*>> entry(m, std::vector<const Scalar*>(m, nullptr));
    std::optional<Cost> best;

    // The dependent entry of row i is fixed as soon as every free pair that
    // touches row i is assigned; fold its cost into the bound at that depth
    // instead of waiting for the leaves.
    auto dep_cost_of_row = [&](std::size_t i) {
        Scalar dep = ctx.coeff[i];
        for (std::size_t j = i + 1; j + 1 < m; ++j)
            if (entry[i][j]) dep = scalar_sub(f, dep, *entry[i][j]);
        for (std::size_t j = 0; j < i; ++j)
            if (entry[j][i]) dep = scalar_add(f, dep, *entry[j][i]);
        return cost_from(mag_of(dep), ctx.sub.d(i, m - 1), f.base);
    };
    // rows_done_at[k]: dependent rows fully determined right after assigning
    // free pair k (rows untouched by any free pair are determined up front).
    std::vector<std::vector<std::size_t>> rows_done_at(free_pairs.size());
    std::vector<std::size_t> rows_done_upfront;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::size_t last = free_pairs.size();
        for (std::size_t k = 0; k < free_pairs.size(); ++k)
            if (free_pairs[k].i == i || free_pairs[k].j == i) last = k;
        if (last == free_pairs.size())
            rows_done_upfront.push_back(i);
        else
            rows_done_at[last].push_back(i);
    }
    Cost upfront = Cost::of_zero(f.base);
    for (std::size_t i : rows_done_upfront) upfront = cost_max(upfront, dep_cost_of_row(i));

    auto search = [&](auto&& self, std::size_t k, const Cost& partial) -> void {
        if (best && cost_compare(partial, *best) >= 0) return;
        if (k == free_pairs.size()) {
            best = partial;
            return;
        }
        for (const auto& choice : choices[k]) {
            if (best && cost_compare(choice.cost, *best) >= 0) break;  // sorted ascending
            entry[free_pairs[k].i][free_pairs[k].j] = choice.value;
            Cost bound = cost_max(partial, choice.cost);
            for (std::size_t i : rows_done_at[k]) {
                if (best && cost_compare(bound, *best) >= 0) break;
                bound = cost_max(bound, dep_cost_of_row(i));
            }
            self(self, k + 1, bound);
        }
        entry[free_pairs[k].i][free_pairs[k].j] = nullptr;
    };

    // seed with the all-zero free assignment (always feasible)
    Scalar zero = scalar_zero(f);
    for (const auto& p : free_pairs) entry[p.i][p.j] = &zero;
    Cost seed = upfront;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        bool touched = false;
        for (const auto& p : free_pairs) touched = touched || p.i == i || p.j == i;
        if (touched) seed = cost_max(seed, dep_cost_of_row(i));
    }
    best = seed;
    for (const auto& p : free_pairs) entry[p.i][p.j] = nullptr;

    search(search, 0, upfront);
    return *best;
}

namespace {

bool same_vector(const FieldSpec& f, const FreeVector& a, const FreeVector& b) {
    std::map<std::string, Scalar> ma, mb;
    for (const auto& [pt, c] : a.terms) ma.emplace(pt, c);
    for (const auto& [pt, c] : b.terms) mb.emplace(pt, c);
    if (ma.size() != mb.size()) return false;
    for (const auto& [pt, c] : ma) {
        auto it = mb.find(pt);
        if (it == mb.end() || !scalar_is_zero(f, scalar_sub(f, c, it->second))) return false;
    }
    return true;
}

}  // namespace

Decomposition reduce_decomposition(const Decomposition& dec, const UltraSpace& space,
                                   const FreeVector& u, ReductionLog* log) {
    const FieldSpec& f = u.field;
    if (!same_vector(f, evaluate_decomposition(f, dec), u))
        throw input_error("decomposition does not evaluate to the given vector");

    std::set<std::string> support;
    for (const auto& [pt, c] : u.terms) support.insert(pt);
    if (!is_balanced(u) || u.is_zero()) support.insert(kZeroLabel);

    auto say = [&](const std::string& s) {
        if (log) log->steps.push_back(s);
    };

    std::vector<Decomposition::Term> terms = dec.terms;

    auto prune = [&]() {
        std::vector<Decomposition::Term> out;
        for (auto& t : terms) {
            if (t.x == t.y) {
                say("delete self-loop term at '" + t.x + "'");
                continue;
            }
            if (scalar_is_zero(f, t.coeff)) {
                say("delete zero term (" + t.x + " - " + t.y + ")");
                continue;
            }
            out.push_back(std::move(t));
        }
        terms = std::move(out);
    };

    auto merge_duplicates = [&]() {
        std::map<std::pair<std::string, std::string>, Scalar> acc;
        std::vector<std::pair<std::string, std::string>> order;
        for (auto& t : terms) {
            auto key = std::make_pair(t.x, t.y);
            Scalar c = t.coeff;
            if (t.y < t.x) {  // orient canonically
                key = std::make_pair(t.y, t.x);
                c = scalar_neg(f, c);
            }
            auto it = acc.find(key);
            if (it == acc.end()) {
                order.push_back(key);
                acc.emplace(key, std::move(c));
            } else {
                it->second = scalar_add(f, it->second, c);
                say("merge duplicate terms on (" + key.first + ", " + key.second + ")");
            }
        }
        terms.clear();
        for (const auto& key : order) {
            const Scalar& c = acc.at(key);
            if (!scalar_is_zero(f, c)) terms.push_back({c, key.first, key.second});
        }
    };

    while (true) {
        prune();
        merge_duplicates();
        // find an off-support label
        std::string z;
        for (const auto& t : terms) {
            if (!support.contains(t.x)) { z = t.x; break; }
            if (!support.contains(t.y)) { z = t.y; break; }
        }
        if (z.empty()) break;

        // orient incident terms so z is the middle: in-terms (x - z), the sum
        // of z's coefficients is zero, so at least two incident terms exist
        std::vector<std::size_t> incident;
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (terms[k].x == z || terms[k].y == z) incident.push_back(k);
        if (incident.size() < 2)
            throw std::logic_error("off-support point with a single incident term");

        // pick the incident term with minimal coefficient magnitude as the
        // (x - z) side
        std::size_t k1 = incident[0];
        for (auto k : incident)
            if (mag_compare(scalar_abs(f, terms[k].coeff), scalar_abs(f, terms[k1].coeff)) < 0)
                k1 = k;
        std::size_t k2 = incident[0] == k1 ? incident[1] : incident[0];

        // t1 as lambda(x - z), t2 as mu(z - y), |lambda| <= |mu|
        Scalar lam = terms[k1].coeff;
        std::string x = terms[k1].x;
        if (x == z) {  // flip lambda(z - x) -> (-lambda)(x - z)
            x = terms[k1].y;
            lam = scalar_neg(f, lam);
        }
        Scalar mu = terms[k2].coeff;
        std::string y = terms[k2].y;
        if (y == z) {  // flip mu(y - z) -> (-mu)(z - y)
            y = terms[k2].x;
            mu = scalar_neg(f, mu);
        }
        say("route through off-support '" + z + "': " + scalar_str(f, lam) + "(" + x + " - " + z +
            ") + " + scalar_str(f, mu) + "(" + z + " - " + y + ")");

        std::vector<Decomposition::Term> next;
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (k != k1 && k != k2) next.push_back(terms[k]);
        next.push_back({lam, x, y});
        next.push_back({scalar_sub(f, mu, lam), z, y});
        terms = std::move(next);
    }

    Decomposition out;
    out.terms = std::move(terms);
    return out;
}

VerifyReport verify_certificate(const NormCertificate& cert, const UltraSpace& space,
                                const FreeVector& u, const NaNormOptions& opts) {
    VerifyReport rep;
    const FieldSpec& f = u.field;

    // reconstruct the support space the certificate lives on
    SolveContext ctx = [&] {
        if (u.is_zero()) {
            SolveContext c;
            c.field = f;
            return c;
        }
        NaNormOptions o = opts;
        if (cert.extension_basepoint && !o.basepoint && !o.zero_distances)
            o.basepoint = cert.extension_basepoint;
        return build_context(space, u, o);
    }();

    // (a) witness net flow equals the coefficients at every real support point
    rep.witness_feasible = true;
    std::map<std::string, Scalar> net;
    for (std::size_t i = 0; i < ctx.sub.size(); ++i) net.emplace(ctx.sub.points[i], scalar_zero(f));
    for (const auto& e : cert.witness.entries) {
        if (!net.contains(e.from) || !net.contains(e.to)) {
            rep.witness_feasible = false;
            rep.failures.push_back("witness entry touches a point outside the support");
            break;
        }
        net[e.from] = scalar_add(f, net[e.from], e.coeff);
        net[e.to] = scalar_sub(f, net[e.to], e.coeff);
    }
    if (rep.witness_feasible) {
        for (std::size_t i = 0; i < ctx.n_real; ++i) {
            const std::string& pt = ctx.sub.points[i];
            if (!scalar_is_zero(f, scalar_sub(f, net[pt], ctx.coeff[i]))) {
                rep.witness_feasible = false;
                rep.failures.push_back("witness net flow mismatch at '" + pt + "'");
            }
        }
    }

    // (b) cost of the witness equals the stated value
    Cost wcost = Cost::of_zero(f.base);
    for (const auto& e : cert.witness.entries) {
        std::size_t i = ctx.sub.index_of(e.from);
        std::size_t j = ctx.sub.index_of(e.to);
        wcost = cost_max(wcost, cost_from(scalar_abs(f, e.coeff), ctx.sub.d(i, j), f.base));
    }
    rep.cost_matches_value = cost_equal(wcost, cert.value);
    if (!rep.cost_matches_value) rep.failures.push_back("witness cost differs from stated value");

    // (c) value equals the maximum cut bound, and each bound is consistent
    Cost maxcut = Cost::of_zero(f.base);
    bool cuts_ok = true;
    for (const auto& cb : cert.cut_bounds) {
        Cost expect = cost_from(scalar_abs(f, cb.cluster_sum), cb.separation, f.base);
        if (!cost_equal(expect, cb.bound)) {
            cuts_ok = false;
            rep.failures.push_back("cut bound does not match |sum| * separation");
        }
        maxcut = cost_max(maxcut, cb.bound);
    }
    rep.value_is_max_cut = cuts_ok && cost_equal(maxcut, cert.value);
    if (cuts_ok && !cost_equal(maxcut, cert.value))
        rep.failures.push_back("stated value differs from the maximum cut bound");

    // (d) every witness entry is a dendrogram cluster sum
    rep.entries_are_cluster_sums = true;
    if (!u.is_zero()) {
        std::set<std::string> sums;
        for (std::size_t id = 0; id < ctx.dg.nodes.size(); ++id) {
            if (static_cast<int>(id) == ctx.dg.root) continue;
            sums.insert(scalar_key(f, cluster_sum(ctx, ctx.dg.nodes[id])));
        }
        for (const auto& e : cert.witness.entries)
            if (!sums.contains(scalar_key(f, e.coeff))) {
                rep.entries_are_cluster_sums = false;
                rep.failures.push_back("witness entry is not a cluster sum");
            }
    }

    // (e) r*l0 <= value <= r*l1
    auto [lo, hi] = na_norm_bounds(space, u, opts);
    rep.bounds_hold =
        cost_compare(lo, cert.value) <= 0 && cost_compare(cert.value, hi) <= 0;
    if (!rep.bounds_hold) rep.failures.push_back("value violates the r*l0 / r*l1 bounds");
    return rep;
}

NormCertificate na_norm_pointed(const UltraSpace& space, const FreeVector& u) {
    NaNormOptions opts;
    opts.pointed = true;
    return na_norm(space, u, opts);
}

std::vector<NormCertificate> seminorm_family(const std::vector<UltraSpace>& spaces,
                                             const FreeVector& u, const NaNormOptions& opts) {
    std::vector<NormCertificate> out;
    if (!spaces.empty()) {
        const auto& pts = spaces.front().points;
        for (const auto& s : spaces)
            if (s.points != pts) throw input_error("seminorm family over inconsistent point sets");
    }
    for (const auto& s : spaces) out.push_back(na_norm(s, u, opts));
    return out;
}

std::optional<Decomposition> kernel_witness(const UltraSpace& space, const FreeVector& u) {
    const FieldSpec& f = u.field;
    FreeVector cur = u;
    Decomposition wit;
    while (!cur.is_zero()) {
        bool reduced = false;
        for (std::size_t a = 0; a < cur.terms.size() && !reduced; ++a)
            for (std::size_t b = 0; b < cur.terms.size() && !reduced; ++b) {
                if (a == b) continue;
                std::size_t i = space.index_of(cur.terms[a].first);
                std::size_t j = space.index_of(cur.terms[b].first);
                if (space.d(i, j) != 0) continue;
                // move a's coefficient onto b through a zero-distance difference
                wit.terms.push_back({cur.terms[a].second, cur.terms[a].first, cur.terms[b].first});
                std::vector<std::pair<std::string, Scalar>> raw = cur.terms;
                raw[b].second = scalar_add(f, raw[b].second, raw[a].second);
                raw.erase(raw.begin() + static_cast<long>(a));
                cur = normalize(f, std::move(raw));
                reduced = true;
            }
        if (!reduced) return std::nullopt;  // d-irreducible and nonzero
    }
    if (!is_balanced(u)) return std::nullopt;
    return wit;
}

}  // namespace nakt
