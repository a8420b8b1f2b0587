#include "free_vector.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nakt {

FreeVector normalize(const FieldSpec& field,
                     std::vector<std::pair<std::string, Scalar>> raw_terms) {
    // merge by first occurrence of each point, then prune zeros
    std::vector<std::string> order;
    std::map<std::string, Scalar> acc;
    for (auto& [pt, sc] : raw_terms) {
        if (pt == kZeroLabel) throw input_error("reserved label in vector terms");
        auto it = acc.find(pt);
        if (it == acc.end()) {
            order.push_back(pt);
            acc.emplace(pt, sc);
        } else {
            it->second = scalar_add(field, it->second, sc);
        }
    }
    FreeVector u;
    u.field = field;
    for (const auto& pt : order) {
        const Scalar& s = acc.at(pt);
        if (!scalar_is_zero(field, s)) u.terms.emplace_back(pt, s);
    }
    return u;
}

bool FreeVector::operator==(const FreeVector& o) const {
    if (!(field == o.field) || terms.size() != o.terms.size()) return false;
    std::map<std::string, Scalar> other(o.terms.begin(), o.terms.end());
    for (const auto& [pt, c] : terms) {
        auto it = other.find(pt);
        if (it == other.end() || !scalar_is_zero(field, scalar_sub(field, c, it->second)))
            return false;
    }
    return true;
}

Scalar balance(const FreeVector& u) {
    Scalar s = scalar_zero(u.field);
    for (const auto& [pt, c] : u.terms) s = scalar_add(u.field, s, c);
    return s;
}

bool is_balanced(const FreeVector& u) { return scalar_is_zero(u.field, balance(u)); }

SupportInfo support_info(const FreeVector& u) {
    SupportInfo info;
    info.r = Magnitude::of_zero();
    for (const auto& [pt, c] : u.terms) {
        info.support.push_back(pt);
        info.r = mag_max(info.r, scalar_abs(u.field, c));
    }
    if (!is_balanced(u) || u.is_zero()) info.support.push_back(kZeroLabel);
    info.m = info.support.size();
    return info;
}

FreeVector evaluate_decomposition(const FieldSpec& field, const Decomposition& dec) {
    std::vector<std::pair<std::string, Scalar>> raw;
    for (const auto& t : dec.terms) {
        if (t.x != kZeroLabel) raw.emplace_back(t.x, t.coeff);
        if (t.y != kZeroLabel) raw.emplace_back(t.y, scalar_neg(field, t.coeff));
    }
    // normalize() rejects the zero marker, which we filtered above
    return normalize(field, std::move(raw));
}

GuDescription gu_description(const FreeVector& u) {
    GuDescription gu;
    gu.field = u.field;
    for (const auto& [pt, c] : u.terms) gu.generators.push_back(c);
    return gu;
}

std::vector<Scalar> gu_combinations(const GuDescription& gu, int budget) {
    if (budget < 1) throw input_error("membership budget must be >= 1");
    if (gu.generators.size() > 6) throw input_error("too many generators for exhaustive combination");
    const FieldSpec& f = gu.field;
    std::set<std::string> seen;
    std::vector<Scalar> out;
    auto push = [&](const Scalar& s) {
        if (seen.insert(scalar_key(f, s)).second) out.push_back(s);
    };
    push(scalar_zero(f));
    std::vector<int> m(gu.generators.size(), -budget);
    if (m.empty()) return out;
    while (true) {
        Scalar acc = scalar_zero(f);
        for (std::size_t i = 0; i < m.size(); ++i)
            acc = scalar_add(f, acc, scalar_mul(f, scalar_from_int(f, m[i]), gu.generators[i]));
        push(acc);
        std::size_t i = 0;
        while (i < m.size() && m[i] == budget) m[i++] = -budget;
        if (i == m.size()) break;
        ++m[i];
    }
    return out;
}

Membership gu_membership(const GuDescription& gu, const Scalar& c, int budget) {
    std::string key = scalar_key(gu.field, c);
    for (const auto& s : gu_combinations(gu, budget))
        if (scalar_key(gu.field, s) == key) return Membership::yes;
    return Membership::no_within_budget;
}

}  // namespace nakt
