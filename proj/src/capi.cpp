#include "nakt/nakt.h"

#include <cmath>
#include <string>

#include "graev.hpp"
#include "instance.hpp"

using namespace nakt;

struct nakt_result {
    int status = NAKT_OK;
    std::string json;
    std::string error;
};

namespace {

template <typename F>
nakt_result* run(F&& body) {
    auto* r = new nakt_result;
    try {
        Json j = body(*r);
        r->json = j.dump(2) + "\n";
    } catch (const input_error& e) {
        r->status = NAKT_EINVAL;
        r->error = e.what();
    } catch (const std::exception& e) {
        r->status = NAKT_EINTERNAL;
        r->error = e.what();
    }
    return r;
}

std::string require(const char* s, const char* what) {
    if (!s) throw input_error(std::string("missing ") + what);
    return s;
}

std::vector<ComplexTerm> complex_terms(const Instance& inst) {
    std::vector<ComplexTerm> terms;
    for (const auto& [pt, c] : inst.vector.terms) {
        const auto& z = std::get<ComplexRational>(c.v);
        terms.push_back({{rational_to_double(z.re), rational_to_double(z.im)}, pt});
    }
    return terms;
}

Json na_norm_json(const Instance& inst, nakt_result& r) {
    if (!inst.field.is_na())
        throw input_error("the ultra-norm needs a non-archimedean field kind; "
                          "use the classical solver for real/complex instances");
    NormCertificate cert = na_norm(*inst.ultra, inst.vector, inst.options);
    VerifyReport rep = verify_certificate(cert, *inst.ultra, inst.vector, inst.options);
    Json j;
    j["field"] = field_spec_json(inst.field);
    j["certificate"] = certificate_json(cert, inst.field);
    j["verified"] = rep.ok();
    if (!rep.ok()) {
        r.status = NAKT_EVERIFY;
        std::string msg = "certificate self-check failed:";
        for (const auto& f : rep.failures) msg += " " + f + ";";
        r.error = msg;
        j["failures"] = rep.failures;
    }
    return j;
}

}  // namespace

extern "C" {

const char* nakt_version(void) { return "1.0.0"; }

nakt_result* nakt_norm(const char* instance_json) {
    return run([&](nakt_result& r) {
        Instance inst = parse_instance_text(require(instance_json, "instance JSON"));
        return na_norm_json(inst, r);
    });
}

nakt_result* nakt_oracle(const char* instance_json, int budget) {
    return run([&](nakt_result&) {
        Instance inst = parse_instance_text(require(instance_json, "instance JSON"));
        if (!inst.field.is_na())
            throw input_error("the oracle handles non-archimedean field kinds only");
        if (budget < 1) throw input_error("oracle budget must be at least 1");
        Cost value = na_norm_bruteforce(*inst.ultra, inst.vector, budget, inst.options);
        Json j;
        j["field"] = field_spec_json(inst.field);
        j["budget"] = budget;
        j["value"] = cost_json(value);
        return j;
    });
}

nakt_result* nakt_classical(const char* instance_json, int democratic) {
    return run([&](nakt_result&) {
        Instance inst = parse_instance_text(require(instance_json, "instance JSON"));
        Json j;
        j["field"] = field_spec_json(inst.field);
        if (inst.field.kind == FieldKind::real) {
            auto [value, plan] = democratic
                                     ? kantorovich_real_democratic(*inst.metric, inst.vector)
                                     : kantorovich_real(*inst.metric, inst.vector);
            j["value"] = rat_str(value);
            j["approx"] = rational_to_double(value);
            j["transport"] = real_plan_json(plan);
            j["formulation"] = democratic ? "democratic" : "bipartite";
        } else if (inst.field.kind == FieldKind::complex_field) {
            ComplexPlanResult res = complex_norm_small(complex_terms(inst), *inst.metric, 1e-9);
            j["approx"] = res.value;
            Json plan = Json::array();
            for (const auto& [x, y, c] : res.plan) {
                Json t;
                t["from"] = x;
                t["to"] = y;
                t["coeff"] = Json::array({c.real(), c.imag()});
                plan.push_back(std::move(t));
            }
            j["transport"] = std::move(plan);
            j["formulation"] = "complex-irls";
        } else {
            throw input_error("the classical solver needs field kind real or complex");
        }
        return j;
    });
}

nakt_result* nakt_graev(const char* instance_json) {
    return run([&](nakt_result&) {
        Instance inst = parse_instance_text(require(instance_json, "instance JSON"));
        if (!inst.field.is_na())
            throw input_error("the Graev norm needs a non-archimedean field kind");
        Json j;
        j["field"] = field_spec_json(inst.field);
        NormCertificate g = graev_norm(*inst.ultra, inst.vector, inst.options);
        FieldSpec triv = FieldSpec::trivial();
        triv.base = inst.field.base;
        j["graev"] = certificate_json(g, triv);
        if (inst.field.kind != FieldKind::finite_field) {
            TkUspReport rep = tk_usp_compare(*inst.ultra, inst.vector, inst.field, inst.options);
            Json cmp;
            cmp["field_norm"] = cost_json(rep.field_norm);
            cmp["graev_norm"] = cost_json(rep.graev);
            cmp["equal"] = rep.equal;
            cmp["valuation_trivial_on_q"] = rep.valuation_trivial_on_q;
            j["comparison"] = std::move(cmp);
        }
        return j;
    });
}

nakt_result* nakt_certify(const char* instance_json, const char* certificate_json_text) {
    return run([&](nakt_result& r) {
        Instance inst = parse_instance_text(require(instance_json, "instance JSON"));
        if (!inst.field.is_na())
            throw input_error("certificates exist for non-archimedean instances only");
        Json cj;
        try {
            cj = Json::parse(require(certificate_json_text, "certificate JSON"));
        } catch (const std::exception& e) {
            throw input_error(std::string("malformed certificate JSON: ") + e.what());
        }
        if (cj.contains("certificate")) cj = cj.at("certificate");  // accept nakt_norm output
        NormCertificate cert = parse_certificate(cj, inst.field);
        VerifyReport rep = verify_certificate(cert, *inst.ultra, inst.vector, inst.options);
        Json j;
        j["verified"] = rep.ok();
        if (!rep.ok()) {
            r.status = NAKT_EVERIFY;
            r.error = "certificate verification failed";
            j["failures"] = rep.failures;
        }
        return j;
    });
}

nakt_result* nakt_generate(int points, int scales, uint64_t seed, const char* field_kind) {
    return run([&](nakt_result&) {
        std::string kind = field_kind ? field_kind : "p-adic-rational";
        return generate_instance(points, scales, seed, kind);
    });
}

nakt_result* nakt_appendix(double tol) {
    return run([&](nakt_result&) {
        if (!(tol > 0)) throw input_error("tolerance must be positive");
        // X = {e, p, q, r}; unit distances among p,q,r and 1/2 from e.
        MetricSpace space = validate_metric(
            {"e", "p", "q", "r"},
            {{Rational(0), Rational(1, 2), Rational(1, 2), Rational(1, 2)},
             {Rational(1, 2), Rational(0), Rational(1), Rational(1)},
             {Rational(1, 2), Rational(1), Rational(0), Rational(1)},
             {Rational(1, 2), Rational(1), Rational(1), Rational(0)}});
        // Coefficients: the three complex cube roots of unity on p, q, r.
        const double s3 = std::sqrt(3.0) / 2.0;
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "p"},
                                      {{-0.5, s3}, "q"},
                                      {{-0.5, -s3}, "r"}};

        MetricSpace support{{"p", "q", "r"},
                            {{Rational(0), Rational(1), Rational(1)},
                             {Rational(1), Rational(0), Rational(1)},
                             {Rational(1), Rational(1), Rational(0)}}};
        double restricted = support_restricted_complex_inf(u, support, tol);
        ComplexPlanResult full = complex_norm_small(u, space, tol);

        auto [fermat, fermat_cost] =
            weiszfeld({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, tol);

        Json j;
        j["support_restricted"] = restricted;
        j["full"] = full.value;
        j["fermat_point"] = Json::array({fermat.real(), fermat.imag()});
        j["fermat_cost"] = fermat_cost;
        return j;
    });
}

int nakt_result_status(const nakt_result* r) { return r ? r->status : NAKT_EINTERNAL; }

const char* nakt_result_json(const nakt_result* r) { return r ? r->json.c_str() : ""; }

const char* nakt_result_error(const nakt_result* r) { return r ? r->error.c_str() : ""; }

void nakt_result_free(nakt_result* r) { delete r; }

}  // extern "C"
