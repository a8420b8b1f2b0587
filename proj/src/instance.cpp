#include "instance.hpp"

#include <algorithm>
#include <set>

namespace nakt {

namespace {

Rational rat_from_json(const Json& j, const char* what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw input_error(std::string("expected a rational string for ") + what);
}

Json scalar_to_json(const FieldSpec& spec, const Scalar& s) {
    switch (spec.kind) {
        case FieldKind::levi_civita: {
            Json arr = Json::array();
            for (const auto& [e, c] : std::get<Series>(s.v))
                arr.push_back(Json::array({rat_str(e), rat_str(c)}));
            return arr;
        }
        case FieldKind::complex_field: {
            const auto& c = std::get<ComplexRational>(s.v);
            return Json::array({rat_str(c.re), rat_str(c.im)});
        }
        default:
            return scalar_str(spec, s);
    }
}

Scalar scalar_from_json(const FieldSpec& spec, const Json& j) {
    if (j.is_string()) return parse_scalar(spec, j.get<std::string>());
    if (j.is_number_integer()) return scalar_from_int(spec, Int(j.get<long long>()));
    if (j.is_array()) {
        if (spec.kind == FieldKind::complex_field) {
            if (j.size() != 2) throw input_error("complex scalar needs [re, im]");
            return Scalar{ComplexRational{rat_from_json(j[0], "re"), rat_from_json(j[1], "im")}};
        }
        if (spec.kind == FieldKind::levi_civita) {
            Series s;
            for (const auto& pair : j) {
                if (!pair.is_array() || pair.size() != 2)
                    throw input_error("levi-civita scalar needs [exponent, coefficient] pairs");
                Rational e = rat_from_json(pair[0], "exponent");
                Rational c = rat_from_json(pair[1], "coefficient");
                if (c != 0) s[e] += c;
            }
            // re-prune in case of repeated exponents
            for (auto it = s.begin(); it != s.end();)
                it = (it->second == 0) ? s.erase(it) : std::next(it);
            return Scalar{std::move(s)};
        }
        throw input_error("array-valued scalar for a rational field kind");
    }
    throw input_error("unsupported scalar encoding");
}

std::vector<std::vector<Rational>> matrix_from_json(const Json& values,
                                                    std::size_t expect) {
    if (!values.is_array() || values.size() != expect)
        throw input_error("metric matrix must have one row per point");
    std::vector<std::vector<Rational>> m;
    for (const auto& row : values) {
        if (!row.is_array() || row.size() != expect)
            throw input_error("metric matrix is not square");
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rat_from_json(v, "distance"));
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<std::vector<Rational>> matrix_from_merges(const Json& merges,
                                                      const std::vector<std::string>& points) {
    std::size_t n = points.size();
    auto index_of = [&](const std::string& l) {
        for (std::size_t i = 0; i < n; ++i)
            if (points[i] == l) return i;
        throw input_error("merge references unknown point '" + l + "'");
    };
    std::vector<std::size_t> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = i;
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, 0));
    Rational last = 0;
    for (const auto& m : merges) {
        Rational h = rat_from_json(m.at("height"), "merge height");
        if (h < last) throw input_error("merge heights must be non-decreasing");
        last = h;
        std::vector<std::size_t> members;
        for (const auto& l : m.at("members")) members.push_back(index_of(l.get<std::string>()));
        if (members.size() < 2) throw input_error("a merge needs at least two members");
        std::size_t target = comp[members.front()];
        for (auto mem : members) {
            std::size_t from = comp[mem];
            if (from == target) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (comp[i] == target && comp[j] == from) d[i][j] = d[j][i] = h;
            for (std::size_t i = 0; i < n; ++i)
                if (comp[i] == from) comp[i] = target;
        }
    }
    for (std::size_t i = 1; i < n; ++i)
        if (comp[i] != comp[0]) throw input_error("merge list does not connect all points");
    return d;
}

}  // namespace

FieldSpec parse_field_spec(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    auto base_of = [&](const Rational& dflt) {
        return j.contains("base") ? rat_from_json(j.at("base"), "base") : dflt;
    };
    FieldSpec spec;
    if (kind == "trivial-rational") {
        spec = FieldSpec::trivial();
        spec.base = base_of(2);
    } else if (kind == "p-adic-rational") {
        spec = FieldSpec::padic(Int(j.at("p").get<long long>()));
        if (j.contains("base") && rat_from_json(j.at("base"), "base") != spec.base)
            throw input_error("p-adic magnitude base is forced to p");
    } else if (kind == "finite-field") {
        spec = FieldSpec::finite(Int(j.at("p").get<long long>()));
        spec.base = base_of(2);
    } else if (kind == "levi-civita") {
        spec = FieldSpec::levi_civita(base_of(2));
        if (j.contains("truncation")) spec.lc_truncation = j.at("truncation").get<int>();
    } else if (kind == "real") {
        spec = FieldSpec::real();
    } else if (kind == "complex") {
        spec = FieldSpec::complex();
    } else {
        throw input_error("unknown field kind '" + kind + "'");
    }
    if (spec.base <= 1) throw input_error("magnitude base must exceed 1");
    return spec;
}

Json field_spec_json(const FieldSpec& spec) {
    Json j;
    switch (spec.kind) {
        case FieldKind::trivial_rational: j["kind"] = "trivial-rational"; break;
        case FieldKind::p_adic: j["kind"] = "p-adic-rational"; break;
        case FieldKind::finite_field: j["kind"] = "finite-field"; break;
        case FieldKind::levi_civita: j["kind"] = "levi-civita"; break;
        case FieldKind::real: j["kind"] = "real"; break;
        case FieldKind::complex_field: j["kind"] = "complex"; break;
    }
    if (spec.p != 0) j["p"] = spec.p.convert_to<long long>();
    j["base"] = rat_str(spec.base);
    return j;
}

Instance parse_instance(const Json& j) {
    Instance inst;
    inst.field = parse_field_spec(j.at("field"));

    std::vector<std::string> points;
    for (const auto& p : j.at("points")) points.push_back(p.get<std::string>());

    const Json& metric = j.at("metric");
    std::string mtype = metric.value("type", "matrix");
    std::vector<std::vector<Rational>> dist;
    if (mtype == "matrix")
        dist = matrix_from_json(metric.at("values"), points.size());
    else if (mtype == "dendrogram")
        dist = matrix_from_merges(metric.at("merges"), points);
    else
        throw input_error("unknown metric type '" + mtype + "'");

    bool pseudo = false;
    if (j.contains("options")) {
        const Json& o = j.at("options");
        pseudo = o.value("pseudometric", false);
        if (o.contains("basepoint")) inst.options.basepoint = o.at("basepoint").get<std::string>();
        if (o.contains("zero_distances")) {
            std::vector<Rational> zd;
            for (const auto& v : o.at("zero_distances")) zd.push_back(rat_from_json(v, "zero distance"));
            inst.options.zero_distances = std::move(zd);
        }
        if (o.contains("pointed")) inst.options.pointed = o.at("pointed").get<bool>();
    }

    if (inst.field.is_na())
        inst.ultra = validate_ultrametric(points, std::move(dist), pseudo);
    else
        inst.metric = validate_metric(points, std::move(dist));

    std::vector<std::pair<std::string, Scalar>> raw;
    for (const auto& t : j.at("vector"))
        raw.emplace_back(t.at("point").get<std::string>(),
                         scalar_from_json(inst.field, t.at("coeff")));
    inst.vector = normalize(inst.field, std::move(raw));
    return inst;
}

Instance parse_instance_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_instance(j);
}

Json cost_json(const Cost& c) {
    Json j;
    if (c.zero) {
        j["zero"] = true;
        j["approx"] = 0.0;
        return j;
    }
    j["mantissa"] = rat_str(c.mantissa);
    j["exponent"] = rat_str(c.exponent);
    j["base"] = rat_str(c.base);
    j["approx"] = c.approx();
    return j;
}

namespace {

Cost cost_from_json(const Json& j, const FieldSpec& field) {
    if (j.value("zero", false)) return Cost::of_zero(field.base);
    return Cost::make(parse_rational(j.at("mantissa").get<std::string>()),
                      parse_rational(j.at("exponent").get<std::string>()),
                      parse_rational(j.at("base").get<std::string>()));
}

}  // namespace

Json certificate_json(const NormCertificate& cert, const FieldSpec& field) {
    Json j;
    j["value"] = cost_json(cert.value);
    Json witness = Json::array();
    for (const auto& e : cert.witness.entries) {
        Json w;
        w["from"] = e.from;
        w["to"] = e.to;
        w["coeff"] = scalar_to_json(field, e.coeff);
        witness.push_back(std::move(w));
    }
    j["witness"] = std::move(witness);
    Json cuts = Json::array();
    for (const auto& cb : cert.cut_bounds) {
        Json c;
        c["cluster"] = cb.cluster;
        c["sum"] = scalar_to_json(field, cb.cluster_sum);
        c["sep"] = rat_str(cb.separation);
        c["bound"] = cost_json(cb.bound);
        cuts.push_back(std::move(c));
    }
    j["cuts"] = std::move(cuts);
    j["argmax_cluster"] = cert.argmax_cluster;
    Json ext;
    if (cert.extension_basepoint) ext["basepoint"] = *cert.extension_basepoint;
    j["extension"] = std::move(ext);
    if (!cert.notes.empty()) j["notes"] = cert.notes;
    return j;
}

NormCertificate parse_certificate(const Json& j, const FieldSpec& field) {
    NormCertificate cert;
    cert.value = cost_from_json(j.at("value"), field);
    for (const auto& w : j.at("witness"))
        cert.witness.entries.push_back({w.at("from").get<std::string>(),
                                        w.at("to").get<std::string>(),
                                        scalar_from_json(field, w.at("coeff"))});
    for (const auto& c : j.at("cuts")) {
        CutBound cb;
        for (const auto& p : c.at("cluster")) cb.cluster.push_back(p.get<std::string>());
        cb.cluster_sum = scalar_from_json(field, c.at("sum"));
        cb.separation = parse_rational(c.at("sep").get<std::string>());
        cb.bound = cost_from_json(c.at("bound"), field);
        cert.cut_bounds.push_back(std::move(cb));
    }
    cert.argmax_cluster = j.value("argmax_cluster", -1);
    if (j.contains("extension") && j.at("extension").contains("basepoint"))
        cert.extension_basepoint = j.at("extension").at("basepoint").get<std::string>();
    return cert;
}

Json real_plan_json(const RealPlan& plan) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : plan.entries) {
        Json x;
        x["from"] = e.from;
        x["to"] = e.to;
        x["amount"] = rat_str(e.amount);
        entries.push_back(std::move(x));
    }
    j["plan"] = std::move(entries);
    j["sum_cost"] = rat_str(plan.sum_cost);
    j["approx"] = rational_to_double(plan.sum_cost);
    return j;
}

UltraSpace random_ultrametric(std::mt19937_64& rng, int points,
                              const std::vector<Rational>& scale_pool,
                              bool pseudometric_allowed) {
    if (points < 1) throw input_error("need at least one point");
    std::vector<std::string> labels;
    for (int i = 0; i < points; ++i) labels.push_back("p" + std::to_string(i));

    std::vector<Rational> scales = scale_pool;
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    if (scales.empty() || scales.back() <= 0) throw input_error("need a positive scale");

    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < points; ++i) clusters.push_back({i});
    std::vector<std::vector<Rational>> d(points, std::vector<Rational>(points, 0));

    auto merge_groups = [&](const std::vector<std::vector<int>>& groups, const Rational& h) {
        std::vector<std::vector<int>> next;
        for (const auto& g : groups) {
            std::vector<int> merged;
            for (int ci : g) {
                for (int a : clusters[ci])
                    for (int b : merged) d[a][b] = d[b][a] = h;
                merged.insert(merged.end(), clusters[ci].begin(), clusters[ci].end());
            }
            next.push_back(std::move(merged));
        }
        clusters = std::move(next);
    };

    for (std::size_t t = 0; t < scales.size() && clusters.size() > 1; ++t) {
        const Rational& h = scales[t];
        if (t + 1 == scales.size()) {
            std::vector<int> all(clusters.size());
            for (std::size_t i = 0; i < clusters.size(); ++i) all[i] = static_cast<int>(i);
            merge_groups({all}, h);
            break;
        }
        std::uniform_int_distribution<std::size_t> gcount(1, clusters.size());
        std::size_t g = gcount(rng);
        std::vector<std::vector<int>> groups(g);
        for (std::size_t c = 0; c < clusters.size(); ++c)
            groups[std::uniform_int_distribution<std::size_t>(0, g - 1)(rng)].push_back(
                static_cast<int>(c));
        std::vector<std::vector<int>> nonempty;
        for (auto& grp : groups)
            if (!grp.empty()) nonempty.push_back(std::move(grp));
        merge_groups(nonempty, h);
    }
    return validate_ultrametric(labels, std::move(d), pseudometric_allowed);
}

Json generate_instance(int points, int scales, std::uint64_t seed,
                       const std::string& field_kind) {
    if (points < 2) throw input_error("generator needs at least two points");
    if (scales < 1) throw input_error("generator needs at least one scale");
    std::mt19937_64 rng(seed);

    std::vector<Rational> pool;
    std::set<Rational> used;
    while (static_cast<int>(pool.size()) < scales) {
        int num = std::uniform_int_distribution<int>(1, 8)(rng);
        int den = std::uniform_int_distribution<int>(1, 4)(rng);
        Rational s(num, den);
        if (used.insert(s).second) pool.push_back(s);
    }
    UltraSpace space = random_ultrametric(rng, points, pool);

    Json field;
    field["kind"] = field_kind;
    if (field_kind == "p-adic-rational" || field_kind == "finite-field") field["p"] = 2;

    // random vector on a random nonempty subset of the points
    Json vec = Json::array();
    int terms = std::uniform_int_distribution<int>(1, points)(rng);
    std::vector<int> order(points);
    for (int i = 0; i < points; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < terms; ++k) {
        int c = 0;
        while (c == 0) c = std::uniform_int_distribution<int>(-6, 6)(rng);
        Json t;
        t["point"] = space.points[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        t["coeff"] = std::to_string(c);
        vec.push_back(std::move(t));
    }

    Json metric;
    metric["type"] = "matrix";
    Json rows = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < space.size(); ++j) row.push_back(rat_str(space.d(i, j)));
        rows.push_back(std::move(row));
    }
    metric["values"] = std::move(rows);

    Json inst;
    inst["field"] = std::move(field);
    inst["points"] = space.points;
    inst["metric"] = std::move(metric);
    inst["vector"] = std::move(vec);
    return inst;
}

}  // namespace nakt
