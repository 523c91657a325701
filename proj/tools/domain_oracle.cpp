// Command-line front end: dimension tables, product analysis, covering
// recovery from dimension pairs, and the verification suites. Output is a
// single JSON document on stdout; identical (command, config, seed) gives
// byte-identical output.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mok/charvar.hpp"
#include "mok/classify.hpp"
#include "mok/suites.hpp"

using json = nlohmann::ordered_json;
using namespace mok;

namespace {

json config_json(const Config& cfg, const std::string& convention, const std::string& offdiag) {
    return json{{"tol_rank", cfg.tol_rank}, {"tol_jac", cfg.tol_jac},   {"seed", cfg.seed},
                {"samples", cfg.samples},   {"convention", convention}, {"offdiag", offdiag}};
}

ProductSpec build_spec(const std::string& spec_text, const std::string& offdiag) {
    if (offdiag == "zero") return parse_product(spec_text, OffDiagMode::Zero);
    if (offdiag == "identity") return parse_product(spec_text, OffDiagMode::Identity);
    if (!offdiag.empty() && offdiag[0] == '[') {
        json m;
        try {
            m = json::parse(offdiag);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("offdiag JSON: ") + e.what());
        }
        ProductSpec probe = parse_product(spec_text, OffDiagMode::Zero);
        const int k = probe.blocks();
        if (!m.is_array() || static_cast<int>(m.size()) != k)
            throw ParseError("offdiag matrix must be k x k for k factors");
        MatrixXcd s(k, k);
        for (int i = 0; i < k; ++i) {
            if (!m[i].is_array() || static_cast<int>(m[i].size()) != k)
                throw ParseError("offdiag matrix must be k x k for k factors");
            for (int j = 0; j < k; ++j) s(i, j) = m[i][j].get<double>();
        }
        return parse_product(spec_text, s);
    }
    throw ParseError("offdiag must be zero, identity, or a JSON matrix");
}

json table_rows(int max_dim) {
    json rows = json::array();
    for (const auto& d : enumerate_domains(max_dim, true)) {
        EtaPair e = eta(d);
        json aliases = json::array();
        if (d == make_domain(Family::III, 2)) aliases.push_back("IV(3)");
        if (d == make_domain(Family::I, 2, 2)) aliases.push_back("IV(4)");
        if (d == make_domain(Family::II, 4)) aliases.push_back("IV(6)");
        rows.push_back(json{{"type", d.to_string()},
                            {"dim", e.dim_domain},
                            {"s1", e.dim_s1},
                            {"aliases", std::move(aliases)}});
    }
    std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
        if (a["dim"] != b["dim"]) return a["dim"] < b["dim"];
        return a["type"].get<std::string>() < b["type"].get<std::string>();
    });
    return rows;
}

int run_table(const Config& cfg, bool human) {
    json out;
    out["command"] = "table";
    out["max_dim"] = cfg.max_dim;
    out["rows"] = table_rows(cfg.max_dim);
    if (human) {
        std::printf("%-10s %5s %5s  %s\n", "type", "dim", "s1", "aliases");
        for (const auto& r : out["rows"]) {
            std::string al;
            for (const auto& a : r["aliases"]) al += a.get<std::string>() + " ";
            std::printf("%-10s %5d %5d  %s\n", r["type"].get<std::string>().c_str(),
                        r["dim"].get<int>(), r["s1"].get<int>(), al.c_str());
        }
    } else {
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int run_analyze(const std::string& spec_text, const std::string& offdiag, const Config& cfg,
                const std::string& convention, bool human, const std::string& dump_operator) {
    ProductSpec spec = build_spec(spec_text, offdiag);
    CurvatureTypeTensor sigma = assemble_product(spec, cfg.convention);
    if (!dump_operator.empty()) {
        std::ofstream f(dump_operator);
        f << serialize_operator(sigma) << "\n";
    }
    StructureReport rep = schur_structure(sigma, 1e-10);
    Rng rng(cfg.seed);
    auto comps = decompose_components(sigma, spec, rng,
                                      DecomposeOptions{1e-10, cfg.tol_rank, cfg.tol_jac, 5});

    BlockSpace space = spec.space();
    json components = json::array();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& c : comps) {
        json flags = json::array();
        for (auto f : c.flags)
            flags.push_back(f == BlockFlag::Full ? "FULL" : (f == BlockFlag::Zero ? "ZERO" : "CONE"));
        components.push_back(json{{"factor", c.component_index},
                                  {"flags", std::move(flags)},
                                  {"affine_dim", c.affine_dim},
                                  {"proj_dim", c.affine_dim - 1},
                                  {"witness_count", c.witnesses.size()}});
        int full_dim = 0;
        for (int i = 0; i < space.blocks(); ++i)
            if (i != c.component_index && c.flags[i] == BlockFlag::Full) full_dim += space.dim(i);
        pairs.push_back({c.affine_dim - full_dim, space.dim(c.component_index)});
    }
    ProductDomain recovered = recover_cover(pairs);
    std::vector<DomainType> input;
    for (const auto& f : spec.factors) input.push_back(parse_domain(f.name()));
    const bool match = recovered == make_product_domain(input);

    json out;
    out["command"] = "analyze";
    out["spec"] = spec.name();
    out["config"] = config_json(cfg, convention, offdiag);
    out["schur_ok"] = rep.lemma_ok;
    out["components"] = std::move(components);
    json jp = json::array();
    for (const auto& [c, d] : pairs) jp.push_back(json::array({c, d}));
    out["pairs"] = std::move(jp);
    out["recovered"] = recovered.to_string();
    out["match"] = match;
    if (human) {
        std::cout << "spec:      " << out["spec"].get<std::string>() << "\n";
        for (const auto& c : out["components"]) {
            std::cout << "component " << c["factor"] << ": flags [";
            for (const auto& f : c["flags"]) std::cout << " " << f.get<std::string>();
            std::cout << " ] affine dim " << c["affine_dim"] << "\n";
        }
        std::cout << "recovered: " << out["recovered"].get<std::string>() << "\n";
        std::cout << "match:     " << (match ? "yes" : "no") << "\n";
    } else {
        std::cout << out.dump() << "\n";
    }
    return match ? 0 : 1;
}

int run_classify(const std::string& pairs_text, bool human) {
    json parsed;
    try {
        parsed = json::parse(pairs_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pairs JSON: ") + e.what());
    }
    if (!parsed.is_array()) throw ParseError("pairs must be a JSON array [[cone_dim, block_dim], ...]");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : parsed) {
        if (!p.is_array() || p.size() != 2) throw ParseError("each pair must be [cone_dim, block_dim]");
        pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    ProductDomain rec = recover_cover(pairs);
    json out;
    out["command"] = "classify";
    out["pairs"] = parsed;
    out["recovered"] = rec.to_string();
    if (human)
        std::cout << rec.to_string() << "\n";
    else
        std::cout << out.dump() << "\n";
    return 0;
}

int run_verify(const std::string& suite, const Config& cfg, const std::string& convention,
               const std::string& offdiag, bool human) {
    json out;
    out["command"] = "verify";
    bool ok = true;
    json entries = json::array();
    if (suite == "all") {
        for (const auto& name : suite_names()) {
            SuiteResult r = run_suite(name, cfg);
            ok = ok && r.ok;
            entries.push_back(json{{"suite", r.name}, {"ok", r.ok}, {"details", r.details}});
        }
        out["suites"] = std::move(entries);
    } else {
        SuiteResult r = run_suite(suite, cfg);
        ok = r.ok;
        out["suite"] = r.name;
        out["details"] = r.details;
    }
    out["config"] = config_json(cfg, convention, offdiag);
    out["max_dim"] = cfg.max_dim;
    out["ok"] = ok;
    if (human) {
        if (out.contains("suites"))
            for (const auto& e : out["suites"])
                std::cout << (e["ok"].get<bool>() ? "[PASS] " : "[FAIL] ")
                          << e["suite"].get<std::string>() << "\n";
        else
            std::cout << (ok ? "[PASS] " : "[FAIL] ") << suite << "\n";
    } else {
        std::cout << out.dump() << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic cones of bounded symmetric domains: dimension tables, "
                 "product analysis, and covering recovery"};
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    Config cfg;
    bool human = false;
    bool json_flag = false;
    std::string convention = "dtype";
    std::string offdiag = "zero";

    app.add_option("--tol-rank", cfg.tol_rank, "relative numerical-rank threshold")
        ->capture_default_str();
    app.add_option("--tol-jac", cfg.tol_jac, "Jacobian / exact-rank threshold")->capture_default_str();
    app.add_option("--seed", cfg.seed,
                   "random seed; an explicit flag wins over the DOMAIN_ORACLE_SEED env var, "
                   "which overrides the built-in default")
        ->envname("DOMAIN_ORACLE_SEED")
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "sample count for randomized checks")
        ->capture_default_str();
    app.add_option("--convention", convention, "sigma convention")
        ->check(CLI::IsMember({"dtype", "form"}))
        ->capture_default_str();
    app.add_flag("--human", human, "human-readable output instead of JSON");
    app.add_flag("--json", json_flag, "JSON output (default)");

    auto* t = app.add_subcommand("table", "dimension table of the rank >= 2 domains");
    t->add_option("--max-dim", cfg.max_dim, "largest domain dimension listed")->capture_default_str();

    auto* a = app.add_subcommand("analyze", "build sigma for a product, decompose, and recover");
    std::string spec_text;
    std::string dump_operator;
    a->add_option("spec", spec_text, "product spec, e.g. I(2,3)xIV(5)xD")->required();
    a->add_option("--offdiag", offdiag, "off-diagonal scalars: zero, identity, or a JSON matrix")
        ->capture_default_str();
    a->add_option("--dump-operator", dump_operator, "write the assembled operator JSON to a file");

    auto* c = app.add_subcommand("classify", "recover the covering from JSON pairs [[cone,block],...]");
    std::string pairs_text;
    c->add_option("pairs", pairs_text, "JSON array of [cone_dim, block_dim] pairs")->required();

    auto* v = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    v->add_option("suite", suite,
                  "table|injectivity|recovery|decomposition|schur|membership|join|filtration|all")
        ->required();
    v->add_option("--max-dim", cfg.max_dim, "scan bound for the injectivity suite")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.convention = convention == "form" ? SigmaConvention::FormType : SigmaConvention::DType;
        if (offdiag == "identity") cfg.offdiag = OffDiagMode::Identity;
        if (t->parsed()) return run_table(cfg, human);
        if (a->parsed()) return run_analyze(spec_text, offdiag, cfg, convention, human, dump_operator);
        if (c->parsed()) return run_classify(pairs_text, human);
        if (v->parsed()) return run_verify(suite, cfg, convention, offdiag, human);
    } catch (const ParseError& e) {
        json err{{"error", "ParseError"}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        json err{{"error", "Error"}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 2;
}
