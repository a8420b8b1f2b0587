// Command-line surface for the solver suite. All computation goes through the
// shared library's C API; this file only does argument plumbing and I/O.
// JSON results go to stdout, diagnostics to stderr. Exit codes: 0 success,
// 1 invalid input, 2 internal/verification failure.

#include <CLI11.hpp>
#include <json.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "nakt/nakt.h"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Overrides options.basepoint inside the instance text (CLI flag wins).
std::string apply_basepoint(const std::string& text, const std::string& basepoint) {
    if (basepoint.empty()) return text;
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        std::exit(1);
    }
    j["options"]["basepoint"] = basepoint;
    return j.dump();
}

int finish(nakt_result* r) {
    int status = nakt_result_status(r);
    const char* json = nakt_result_json(r);
    if (json && *json) std::cout << json;
    const char* err = nakt_result_error(r);
    if (err && *err) std::cerr << "error: " << err << "\n";
    nakt_result_free(r);
    switch (status) {
        case NAKT_OK: return 0;
        case NAKT_EINVAL: return 1;
        default: return 2;  // verification or internal failure
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact transportation-norm solvers over valued fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nakt_version()));

    std::string instance_path = "-";
    std::string certificate_path;
    std::string basepoint;
    std::string field_kind = "p-adic-rational";
    int budget = 3;
    bool democratic = false;
    double tol = 1e-9;
    int points = 4, scales = 3;
    std::uint64_t seed = 0;

    auto add_instance = [&](CLI::App* cmd) {
        cmd->add_option("--instance", instance_path,
                        "Instance JSON path ('-' for stdin)");
    };

    CLI::App* norm = app.add_subcommand("norm", "Kantorovich ultra-norm with certificate");
    add_instance(norm);
    norm->add_option("--basepoint", basepoint, "Basepoint for the zero-point extension");

    CLI::App* classical = app.add_subcommand("classical", "Classical Kantorovich norm");
    add_instance(classical);
    classical->add_flag("--democratic", democratic, "Solve the transshipment formulation");

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force oracle bound");
    add_instance(oracle);
    oracle->add_option("--budget", budget, "Combination budget M");

    CLI::App* graev = app.add_subcommand("graev", "Graev ultra-norm of an integer vector");
    add_instance(graev);
    graev->add_option("--basepoint", basepoint, "Basepoint for the zero-point extension");

    CLI::App* certify = app.add_subcommand("certify", "Re-verify a certificate");
    add_instance(certify);
    certify->add_option("--certificate", certificate_path, "Certificate JSON path")
        ->required();

    CLI::App* gen = app.add_subcommand("gen", "Generate a random valid instance");
    gen->add_option("--points", points, "Number of points");
    gen->add_option("--scales", scales, "Number of distinct dendrogram heights");
    gen->add_option("--seed", seed, "RNG seed (deterministic output)");
    gen->add_option("--field", field_kind, "Field kind for the instance");

    CLI::App* appendix =
        app.add_subcommand("appendix", "Reproduce the complex-plane example");
    appendix->add_option("--tol", tol, "Numerical tolerance");

    CLI11_PARSE(app, argc, argv);

    if (norm->parsed()) {
        std::string text = apply_basepoint(read_input(instance_path), basepoint);
        return finish(nakt_norm(text.c_str()));
    }
    if (classical->parsed()) {
        std::string text = read_input(instance_path);
        return finish(nakt_classical(text.c_str(), democratic ? 1 : 0));
    }
    if (oracle->parsed()) {
        std::string text = read_input(instance_path);
        return finish(nakt_oracle(text.c_str(), budget));
    }
    if (graev->parsed()) {
        std::string text = apply_basepoint(read_input(instance_path), basepoint);
        return finish(nakt_graev(text.c_str()));
    }
    if (certify->parsed()) {
        std::string text = read_input(instance_path);
        std::string cert = read_input(certificate_path);
        return finish(nakt_certify(text.c_str(), cert.c_str()));
    }
    if (gen->parsed()) return finish(nakt_generate(points, scales, seed, field_kind.c_str()));
    if (appendix->parsed()) return finish(nakt_appendix(tol));

    return 1;
}
