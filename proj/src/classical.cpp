#include "classical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nakt {

std::size_t MetricSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == label) return i;
    throw input_error("unknown point label '" + label + "'");
}

MetricSpace validate_metric(std::vector<std::string> points,
                            std::vector<std::vector<Rational>> dist) {
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
            if (dist[i][j] != dist[j][i])
                throw input_error("asymmetric distances between '" + points[i] + "' and '" + points[j] + "'");
            if (i != j && dist[i][j] <= 0)
                throw input_error("non-positive distance between distinct points '" + points[i] +
                                  "' and '" + points[j] + "'");
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (dist[x][z] > dist[x][y] + dist[y][z]) {
                    std::ostringstream os;
                    os << "triangle inequality violated at (" << points[x] << "," << points[y]
                       << "," << points[z] << ")";
                    throw input_error(os.str());
                }
    MetricSpace s;
    s.points = std::move(points);
    s.dist = std::move(dist);
    return s;
}

namespace {

Rational rational_coeff(const FreeVector& u, std::size_t k) {
    if (auto* q = std::get_if<Rational>(&u.terms[k].second.v)) return *q;
    throw input_error("classical solver needs rational coefficients");
}

// Exact successive-shortest-path min-cost flow; uncapacitated arcs get the
// total supply as capacity.
struct FlowNetwork {
    struct Arc {
        int to;
        Rational cap;
        Rational cost;
        std::size_t rev;  // index of the reverse arc in graph[to]
        bool forward;
    };
    std::vector<std::vector<Arc>> graph;

    explicit FlowNetwork(int n) : graph(n) {}

    void add_arc(int from, int to, Rational cap, Rational cost) {
        graph[from].push_back({to, std::move(cap), cost, graph[to].size(), true});
        graph[to].push_back({from, 0, -cost, graph[from].size() - 1, false});
    }

    // Sends as much of the supplies as possible; returns total cost.
    Rational solve(const std::vector<Rational>& supply) {
        int n = static_cast<int>(graph.size());
        // augment from every excess node to every deficit node via Bellman-Ford
        std::vector<Rational> excess = supply;
        while (true) {
            int s = -1;
            for (int i = 0; i < n; ++i)
                if (excess[i] > 0) { s = i; break; }
            if (s < 0) break;
            // shortest path from s to any deficit node
            std::vector<Rational> distv(n, 0);
            std::vector<char> reach(n, 0);
            std::vector<std::pair<int, int>> prev(n, {-1, -1});
            reach[s] = 1;
            for (int it = 0; it < n; ++it) {
                bool changed = false;
                for (int v = 0; v < n; ++v) {
                    if (!reach[v]) continue;
                    for (std::size_t a = 0; a < graph[v].size(); ++a) {
                        const Arc& arc = graph[v][a];
                        if (arc.cap <= 0) continue;
                        Rational nd = distv[v] + arc.cost;
                        if (!reach[arc.to] || nd < distv[arc.to]) {
                            reach[arc.to] = 1;
                            distv[arc.to] = nd;
                            prev[arc.to] = {v, static_cast<int>(a)};
                            changed = true;
                        }
                    }
                }
                if (!changed) break;
            }
            int t = -1;
            for (int i = 0; i < n; ++i)
                if (excess[i] < 0 && reach[i] && (t < 0 || distv[i] < distv[t])) t = i;
            if (t < 0) throw std::logic_error("min-cost flow: no augmenting path");
            Rational push = std::min(excess[s], Rational(-excess[t]));
            for (int v = t; v != s; v = prev[v].first)
                push = std::min(push, graph[prev[v].first][prev[v].second].cap);
            for (int v = t; v != s; v = prev[v].first) {
                Arc& arc = graph[prev[v].first][prev[v].second];
                arc.cap -= push;
                graph[arc.to][arc.rev].cap += push;
            }
            excess[s] -= push;
            excess[t] += push;
        }
        Rational total = 0;
        for (int v = 0; v < n; ++v)
            for (const Arc& arc : graph[v])
                if (!arc.forward && arc.cap > 0) total += arc.cap * (-arc.cost);
        return total;
    }

    RealPlan extract_plan(const std::vector<std::string>& labels) const {
        RealPlan plan;
        for (std::size_t v = 0; v < graph.size(); ++v)
            for (const Arc& arc : graph[v])
                if (!arc.forward && arc.cap > 0) {
                    // reverse arc with positive cap == flow on the forward arc
                    plan.entries.push_back({labels[arc.to], labels[v], arc.cap});
                    plan.sum_cost += arc.cap * (-arc.cost);
                }
        return plan;
    }
};

void require_balanced_rational(const FreeVector& u) {
    Rational s = 0;
    for (std::size_t k = 0; k < u.terms.size(); ++k) s += rational_coeff(u, k);
    if (s != 0) throw input_error("classical norm needs a balanced vector");
}

}  // namespace

std::pair<Rational, RealPlan> kantorovich_real(const MetricSpace& space, const FreeVector& u) {
    require_balanced_rational(u);
    if (u.is_zero()) return {0, {}};
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < u.terms.size(); ++k)
        (rational_coeff(u, k) > 0 ? pos : neg).push_back(k);

    int n = static_cast<int>(u.terms.size());
    FlowNetwork net(n);
    std::vector<std::string> labels;
    std::vector<std::size_t> sp;
    for (const auto& [pt, c] : u.terms) {
        labels.push_back(pt);
        sp.push_back(space.index_of(pt));
    }
    Rational total = 0;
    for (auto k : pos) total += rational_coeff(u, k);
    for (auto i : pos)
        for (auto j : neg)
            net.add_arc(static_cast<int>(i), static_cast<int>(j), total, space.d(sp[i], sp[j]));
    std::vector<Rational> supply(n);
    for (std::size_t k = 0; k < u.terms.size(); ++k) supply[k] = rational_coeff(u, k);
    Rational value = net.solve(supply);
    RealPlan plan = net.extract_plan(labels);
    return {value, plan};
}

std::pair<Rational, RealPlan> kantorovich_real_democratic(const MetricSpace& space,
                                                          const FreeVector& u) {
    require_balanced_rational(u);
    if (u.is_zero()) return {0, {}};
    int n = static_cast<int>(u.terms.size());
    FlowNetwork net(n);
    std::vector<std::string> labels;
    std::vector<std::size_t> sp;
    for (const auto& [pt, c] : u.terms) {
        labels.push_back(pt);
        sp.push_back(space.index_of(pt));
    }
    Rational total = 0;
    for (std::size_t k = 0; k < u.terms.size(); ++k) {
        Rational c = rational_coeff(u, k);
        if (c > 0) total += c;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) net.add_arc(i, j, total, space.d(sp[i], sp[j]));
    std::vector<Rational> supply(n);
    for (std::size_t k = 0; k < u.terms.size(); ++k) supply[k] = rational_coeff(u, k);
    Rational value = net.solve(supply);
    RealPlan plan = net.extract_plan(labels);
    return {value, plan};
}

Rational real_decomposition_cost(const MetricSpace& space, const RealDecomposition& dec) {
    Rational c = 0;
    for (const auto& t : dec.terms)
        c += abs(t.coeff) * space.d(space.index_of(t.x), space.index_of(t.y));
    return c;
}

RealDecomposition reduce_real_decomposition(const RealDecomposition& dec,
                                            const MetricSpace& space, const FreeVector& u,
                                            std::vector<std::string>* log) {
    // check that the decomposition evaluates to u
    std::map<std::string, Rational> want, have;
    for (std::size_t k = 0; k < u.terms.size(); ++k) want[u.terms[k].first] = rational_coeff(u, k);
    for (const auto& t : dec.terms) {
        have[t.x] += t.coeff;
        have[t.y] -= t.coeff;
    }
    for (auto& [pt, c] : have)
        if (c != (want.count(pt) ? want[pt] : Rational(0)))
            throw input_error("real decomposition does not evaluate to the given vector");
    for (auto& [pt, c] : want)
        if (c != (have.count(pt) ? have[pt] : Rational(0)))
            throw input_error("real decomposition does not evaluate to the given vector");

    auto say = [&](const std::string& s) {
        if (log) log->push_back(s);
    };

    std::set<std::string> support;
    for (const auto& [pt, c] : u.terms) support.insert(pt);

    // positive orientation throughout
    std::vector<RealDecomposition::Term> terms;
    for (const auto& t : dec.terms) {
        if (t.coeff == 0 || t.x == t.y) continue;
        if (t.coeff > 0)
            terms.push_back(t);
        else
            terms.push_back({-t.coeff, t.y, t.x});
    }

    while (true) {
        std::string z;
        for (const auto& t : terms) {
            if (!support.contains(t.x)) { z = t.x; break; }
            if (!support.contains(t.y)) { z = t.y; break; }
        }
        if (z.empty()) break;
        // z's in- and out-flows balance, so one term of each orientation exists
        std::size_t in_k = terms.size(), out_k = terms.size();
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if (terms[k].y == z && in_k == terms.size()) in_k = k;
            if (terms[k].x == z && out_k == terms.size()) out_k = k;
        }
        if (in_k == terms.size() || out_k == terms.size())
            throw std::logic_error("off-support point with one-sided incidence");
        Rational lam = terms[in_k].coeff;   // lam (x - z)
        Rational mu = terms[out_k].coeff;   // mu (z - y)
        std::string x = terms[in_k].x, y = terms[out_k].y;
        std::vector<RealDecomposition::Term> next;
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (k != in_k && k != out_k) next.push_back(terms[k]);
        if (lam == mu) {
            say("3a: merge through '" + z + "'");
            if (x != y) next.push_back({lam, x, y});
        } else if (lam < mu) {
            say("3b: split through '" + z + "'");
            if (x != y) next.push_back({lam, x, y});
            next.push_back({mu - lam, z, y});
        } else {
            say("3c: split through '" + z + "'");
            next.push_back({lam - mu, x, z});
            if (x != y) next.push_back({mu, x, y});
        }
        terms = std::move(next);
    }

    // rule (2): merge duplicate positive terms on the same ordered pair
    std::map<std::pair<std::string, std::string>, Rational> acc;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& t : terms) {
        auto key = std::make_pair(t.x, t.y);
        if (!acc.count(key)) order.push_back(key);
        else say("2: merge duplicates on (" + t.x + ", " + t.y + ")");
        acc[key] += t.coeff;
    }
    RealDecomposition out;
    for (const auto& key : order)
        if (acc[key] != 0) out.terms.push_back({acc[key], key.first, key.second});
    return out;
}

std::pair<std::complex<double>, double> weiszfeld(
    const std::vector<std::complex<double>>& points, const std::vector<double>& weights,
    double tol) {
    if (points.empty()) throw input_error("weiszfeld needs at least one point");
    if (points.size() != weights.size()) throw input_error("weights/points size mismatch");
    auto objective = [&](std::complex<double> t) {
        double v = 0;
        for (std::size_t i = 0; i < points.size(); ++i) v += weights[i] * std::abs(points[i] - t);
        return v;
    };
    if (points.size() == 1) return {points[0], 0.0};

    // weighted centroid start
    std::complex<double> t{0, 0};
    double wsum = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        t += weights[i] * points[i];
        wsum += weights[i];
    }
    t /= wsum;

    double scale = 0;
    for (const auto& p : points) scale = std::max(scale, std::abs(p - points[0]));
    if (scale == 0) return {points[0], 0.0};

    for (int iter = 0; iter < 100000; ++iter) {
        // vertex-stall safeguard
        std::size_t at = points.size();
        for (std::size_t i = 0; i < points.size(); ++i)
            if (std::abs(points[i] - t) < 1e-14 * scale) at = i;
        std::complex<double> num{0, 0};
        double den = 0;
        std::complex<double> pull{0, 0};
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i == at) continue;
            double dist = std::abs(points[i] - t);
            num += weights[i] * points[i] / dist;
            den += weights[i] / dist;
            pull += weights[i] * (points[i] - t) / dist;
        }
        if (at < points.size()) {
            double r = std::abs(pull);
            if (r <= weights[at]) break;  // the vertex is the minimizer
            t += ((r - weights[at]) / den) * (pull / r);
            continue;
        }
        std::complex<double> next = num / den;
        if (std::abs(next - t) < tol * 1e-3 * scale) {
            t = next;
            break;
        }
        t = next;
    }
    return {t, objective(t)};
}

namespace {

ComplexPlanResult complex_balance_minimize(const MetricSpace& space,
                                           const std::vector<std::complex<double>>& lambda,
                                           double tol, int max_iterations) {
    using Eigen::MatrixXd;
    using Eigen::VectorXcd;
    using Eigen::VectorXd;

    std::size_t n = space.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::size_t m = pairs.size();
    if (n < 2) return {};

    VectorXd d(m);
    for (std::size_t e = 0; e < m; ++e)
        d(static_cast<long>(e)) = rational_to_double(space.d(pairs[e].first, pairs[e].second));

    // node balance rows for points 0..n-2 (the last row is dependent)
    MatrixXd A = MatrixXd::Zero(static_cast<long>(n - 1), static_cast<long>(m));
    for (std::size_t e = 0; e < m; ++e) {
        if (pairs[e].first < n - 1) A(static_cast<long>(pairs[e].first), static_cast<long>(e)) = 1;
        if (pairs[e].second < n - 1) A(static_cast<long>(pairs[e].second), static_cast<long>(e)) = -1;
    }
    VectorXcd rhs(static_cast<long>(n - 1));
    for (std::size_t i = 0; i + 1 < n; ++i) rhs(static_cast<long>(i)) = lambda[i];

    double scale = 0;
    for (const auto& l : lambda) scale = std::max(scale, std::abs(l));
    if (scale == 0) return {};

    // IRLS for sum_e d_e |t_e| subject to A t = rhs
    VectorXcd t = VectorXcd::Constant(static_cast<long>(m), std::complex<double>(0, 0));
    double delta = 1e-2 * scale;
    double prev_value = -1;
    int stable = 0;
    for (int iter = 0; iter < max_iterations; ++iter) {
        VectorXd w(static_cast<long>(m));
        for (std::size_t e = 0; e < m; ++e) {
            double te = std::abs(t(static_cast<long>(e)));
            w(static_cast<long>(e)) = std::sqrt(te * te + delta * delta) / d(static_cast<long>(e));
        }
        MatrixXd AW = A * w.asDiagonal();
        MatrixXd G = AW * A.transpose();
        auto solver = G.ldlt();
        VectorXd yr = solver.solve(rhs.real());
        VectorXd yi = solver.solve(rhs.imag());
        VectorXcd y = yr.cast<std::complex<double>>() +
                      std::complex<double>(0, 1) * yi.cast<std::complex<double>>();
        t = w.asDiagonal() * (A.transpose() * y);

        double value = 0;
        for (std::size_t e = 0; e < m; ++e)
            value += d(static_cast<long>(e)) * std::abs(t(static_cast<long>(e)));
        if (prev_value >= 0 && std::abs(value - prev_value) < tol * 1e-3 && delta <= 1e-12 * scale) {
            if (++stable >= 5) {
                prev_value = value;
                break;
            }
        } else {
            stable = 0;
        }
        prev_value = value;
        delta = std::max(delta * 0.9, 1e-13 * scale);
        if (iter + 1 == max_iterations)
            throw input_error("complex solver did not reach the requested tolerance");
    }

    ComplexPlanResult out;
    out.value = prev_value;
    for (std::size_t e = 0; e < m; ++e) {
        std::complex<double> te = t(static_cast<long>(e));
        if (std::abs(te) > tol)
            out.plan.emplace_back(space.points[pairs[e].first], space.points[pairs[e].second], te);
    }
    return out;
}

std::vector<std::complex<double>> lambda_for(const std::vector<ComplexTerm>& u,
                                             const MetricSpace& space) {
    std::vector<std::complex<double>> lambda(space.size(), {0, 0});
    std::complex<double> sum{0, 0};
    for (const auto& t : u) {
        lambda[space.index_of(t.point)] += t.coeff;
        sum += t.coeff;
    }
    if (std::abs(sum) > 1e-9) throw input_error("complex norm needs a balanced vector");
    return lambda;
}

}  // namespace

double support_restricted_complex_inf(const std::vector<ComplexTerm>& u,
                                      const MetricSpace& space, double tol) {
    // restrict the space to the support
    std::vector<std::size_t> idx;
    for (const auto& t : u) idx.push_back(space.index_of(t.point));
    MetricSpace sub;
    for (auto i : idx) sub.points.push_back(space.points[i]);
    sub.dist.resize(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) sub.dist[a][b] = space.d(idx[a], idx[b]);

    if (u.size() == 3) {
        // one free complex variable; a weighted geometric median in disguise:
        // minimize |t - l1| d01 + |t + l2| d02 + |t| d12 over t
        std::vector<std::complex<double>> pts = {u[1].coeff, -u[2].coeff, {0, 0}};
        std::vector<double> w = {rational_to_double(sub.d(0, 1)), rational_to_double(sub.d(0, 2)),
                                 rational_to_double(sub.d(1, 2))};
        return weiszfeld(pts, w, tol).second;
    }
    return complex_balance_minimize(sub, lambda_for(u, sub), tol, 20000).value;
}

ComplexPlanResult complex_norm_small(const std::vector<ComplexTerm>& u,
                                     const MetricSpace& space, double tol,
                                     int max_iterations) {
    if (space.size() > 6) throw input_error("complex solver is limited to 6 points");
    return complex_balance_minimize(space, lambda_for(u, space), tol, max_iterations);
}

}  // namespace nakt
