#include "ultrametric.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace nakt {

std::size_t UltraSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == label) return i;
    throw input_error("unknown point label '" + label + "'");
}

Rational UltraSpace::diameter() const {
    Rational m = 0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) m = std::max(m, dist[i][j]);
    return m;
}

UltraSpace validate_ultrametric(std::vector<std::string> points,
                                std::vector<std::vector<Rational>> dist,
                                bool pseudometric_allowed) {
    std::size_t n = points.size();
    if (dist.size() != n) throw input_error("distance matrix row count does not match point count");
    std::set<std::string> seen;
    for (const auto& p : points) {
        if (p == kZeroLabel) throw input_error("reserved label '" + p + "' in point list");
        if (!seen.insert(p).second) throw input_error("duplicate point label '" + p + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) throw input_error("distance matrix is not square");
        if (dist[i][i] != 0) throw input_error("nonzero diagonal at point '" + points[i] + "'");
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[i][j] < 0)
                throw input_error("negative distance between '" + points[i] + "' and '" + points[j] + "'");
            if (dist[i][j] != dist[j][i])
                throw input_error("asymmetric distances between '" + points[i] + "' and '" + points[j] + "'");
            if (i != j && !pseudometric_allowed && dist[i][j] == 0)
                throw input_error("zero distance between distinct points '" + points[i] + "' and '" +
                                  points[j] + "' (pseudometric not allowed)");
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (dist[x][z] > std::max(dist[x][y], dist[y][z])) {
                    std::ostringstream os;
                    os << "strong triangle inequality violated: d(" << points[x] << "," << points[z]
                       << ")=" << rat_str(dist[x][z]) << " > max(d(" << points[x] << "," << points[y]
                       << ")=" << rat_str(dist[x][y]) << ", d(" << points[y] << "," << points[z]
                       << ")=" << rat_str(dist[y][z]) << ")";
                    throw input_error(os.str());
                }
    UltraSpace s;
    s.points = std::move(points);
    s.dist = std::move(dist);
    s.pseudometric_allowed = pseudometric_allowed;
    return s;
}

namespace {

UltraSpace append_zero(const UltraSpace& space, std::vector<Rational> zero_row) {
    std::size_t n = space.size();
    auto points = space.points;
    points.push_back(kZeroLabel);
    auto dist = space.dist;
    for (std::size_t i = 0; i < n; ++i) dist[i].push_back(zero_row[i]);
    zero_row.push_back(0);
    dist.push_back(std::move(zero_row));
    // bypass label validation (the reserved label is ours here)
    UltraSpace out;
    out.points = std::move(points);
    out.dist = std::move(dist);
    out.pseudometric_allowed = space.pseudometric_allowed;
    out.has_zero_point = true;
    // still enforce the strong triangle inequality on the result
    std::size_t m = out.size();
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            for (std::size_t z = 0; z < m; ++z)
                if (out.dist[x][z] > std::max(out.dist[x][y], out.dist[y][z]))
                    throw input_error("zero-point extension violates the strong triangle inequality at (" +
                                      out.points[x] + "," + out.points[y] + "," + out.points[z] + ")");
    return out;
}

}  // namespace

UltraSpace extend_with_zero(const UltraSpace& space, const std::string& basepoint) {
    if (space.has_zero_point) throw input_error("space already has a zero point");
    std::size_t b = space.index_of(basepoint);
    std::vector<Rational> row(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) row[i] = std::max(space.d(i, b), Rational(1));
    return append_zero(space, std::move(row));
}

UltraSpace extend_with_zero_explicit(const UltraSpace& space,
                                     const std::vector<Rational>& zero_distances) {
    if (space.has_zero_point) throw input_error("space already has a zero point");
    if (zero_distances.size() != space.size())
        throw input_error("zero_distances length does not match point count");
    for (const auto& v : zero_distances)
        if (v < 1) throw input_error("zero point must be isolated: all d(x,0) >= 1");
    return append_zero(space, zero_distances);
}

Rational Dendrogram::lca_height(int a, int b) const {
    if (a == b) return 0;
    // walk both up to the root, marking depths
    std::vector<int> path;
    for (int x = a; x != -1; x = nodes[x].parent) path.push_back(x);
    for (int y = b; y != -1; y = nodes[y].parent)
        if (std::find(path.begin(), path.end(), y) != path.end()) return nodes[y].height;
    throw std::logic_error("disconnected dendrogram");
}

Dendrogram build_dendrogram(const UltraSpace& space) {
    std::size_t n = space.size();
    Dendrogram dg;
    dg.leaf_count = n;
    dg.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) dg.nodes[i].leaves = {static_cast<int>(i)};
    if (n == 0) return dg;

    std::set<Rational> heights;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) heights.insert(space.d(i, j));

    // active clusters as dendrogram node ids, kept sorted by smallest leaf
    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    for (const auto& h : heights) {
        // group active clusters whose representatives are within h
        std::vector<int> group_of(active.size());
        std::iota(group_of.begin(), group_of.end(), 0);
        auto find = [&](int a) {
            while (group_of[a] != a) a = group_of[a] = group_of[group_of[a]];
            return a;
        };
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                int la = dg.nodes[active[a]].leaves.front();
                int lb = dg.nodes[active[b]].leaves.front();
                if (space.d(la, lb) <= h) group_of[find(a)] = find(b);
            }
        std::vector<std::vector<int>> groups(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) groups[find(a)].push_back(active[a]);

        std::vector<int> next_active;
        for (auto& g : groups) {
            if (g.empty()) continue;
            if (g.size() == 1) {
                next_active.push_back(g.front());
                continue;
            }
            std::sort(g.begin(), g.end(), [&](int x, int y) {
                return dg.nodes[x].leaves.front() < dg.nodes[y].leaves.front();
            });
            Dendrogram::Node node;
            node.height = h;
            node.children = g;
            for (int c : g)
                node.leaves.insert(node.leaves.end(), dg.nodes[c].leaves.begin(),
                                   dg.nodes[c].leaves.end());
            std::sort(node.leaves.begin(), node.leaves.end());
            int id = static_cast<int>(dg.nodes.size());
            dg.nodes.push_back(std::move(node));
            for (int c : g) dg.nodes[c].parent = id;
            next_active.push_back(id);
        }
        std::sort(next_active.begin(), next_active.end(), [&](int x, int y) {
            return dg.nodes[x].leaves.front() < dg.nodes[y].leaves.front();
        });
        active = std::move(next_active);
        if (active.size() == 1) break;
    }
    if (active.size() != 1) throw std::logic_error("dendrogram did not converge to a single root");
    dg.root = active.front();
    return dg;
}

UltraSpace restrict_space(const UltraSpace& space, const std::vector<std::size_t>& idx) {
    UltraSpace out;
    out.pseudometric_allowed = space.pseudometric_allowed;
    out.has_zero_point = false;
    for (auto i : idx) {
        out.points.push_back(space.points[i]);
        if (space.points[i] == kZeroLabel) out.has_zero_point = true;
    }
    out.dist.resize(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out.dist[a][b] = space.d(idx[a], idx[b]);
    return out;
}

}  // namespace nakt
