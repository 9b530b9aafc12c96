// Command-line front end: family constructors, polynomial computations,
// structural checks and the verification battery, all reporting as JSON.
//
// Exit codes: 0 success, 1 check failure, 2 input error, 3 resource limit.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chowkit/chow.hpp"
#include "chowkit/error.hpp"
#include "chowkit/families.hpp"
#include "chowkit/realroots.hpp"
#include "chowkit/supersolvable.hpp"
#include "chowkit/verify.hpp"

using json = nlohmann::ordered_json;
using namespace chowkit;

namespace {

// Error codes that describe malformed input rather than a negative verdict.
bool is_input_error(errc c) {
    switch (c) {
    case errc::SchemaError:
    case errc::UnknownFamily:
    case errc::NotACover:
    case errc::MissingCover:
    case errc::NotBounded:
    case errc::NotGraded:
    case errc::NotComparable:
    case errc::NotPalindromic:
    case errc::DegreeTooHigh:
    case errc::ZeroPolynomial:
        return true;
    default:
        return false;
    }
}

// FNV-1a fingerprint of raw input bytes, reported for reproducibility.
std::string digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw error(errc::SchemaError, "cannot open input file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw error(errc::SchemaError, "cannot open output file " + path);
    out << text << "\n";
}

// Coefficients serialize as JSON numbers when they are exactly representable
// there, and as decimal strings beyond 2^53; never as floating point.
json coeff_to_json(const Int& c) {
    static const Int lim = Int(1) << 53;
    if (c <= lim && c >= -lim && c.fits_slong_p()) return json(c.get_si());
    return json(c.get_str());
}

json poly_to_json(const IntPoly& f, const char* var) {
    json coeffs = json::array();
    for (const Int& c : f.coeffs()) coeffs.push_back(coeff_to_json(c));
    return json{{"var", var}, {"coeffs", coeffs}};
}

IntPoly poly_from_csv(const std::string& text) {
    std::vector<Int> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw error(errc::SchemaError, "empty coefficient in " + text);
        try {
            coeffs.emplace_back(item);
        } catch (const std::invalid_argument&) {
            throw error(errc::SchemaError, "bad coefficient '" + item + "'");
        }
    }
    if (coeffs.empty()) throw error(errc::SchemaError, "no coefficients given");
    return IntPoly(std::move(coeffs));
}

struct Options {
    std::string input = "-", output = "-", method;
    std::uint64_t seed = 20240901;
    std::uint64_t max_elements = 500000;
    std::uint64_t max_chains = 10000000;
};

ParsedPoset load_poset(const Options& opt, json* report = nullptr) {
    std::string text = read_input(opt.input);
    if (report) (*report)["inputs"]["digest"] = digest(text);
    ParsedPoset pp = from_json(text);
    if (std::uint64_t(pp.poset.n()) > opt.max_elements)
        throw error(errc::SizeLimitExceeded,
                    "input has " + std::to_string(pp.poset.n()) + " elements, limit " +
                        std::to_string(opt.max_elements));
    return pp;
}

json report_skeleton(const std::string& command) {
    return json{{"command", command}, {"inputs", json::object()},
                {"outputs", json::object()}, {"checks", json::array()}, {"ok", true}};
}

void describe_poset(json& report, const GradedPoset& p) {
    report["inputs"]["elements"] = p.n();
    report["inputs"]["covers"] = p.covers().size();
    report["inputs"]["rank"] = p.rank();
}

void add_check(json& report, const std::string& name, bool pass,
               const std::string& detail = "") {
    json c{{"name", name}, {"pass", pass}};
    if (!detail.empty()) c["detail"] = detail;
    report["checks"].push_back(c);
    if (!pass) report["ok"] = false;
}

// Wall-clock time goes to stderr only, so reports from identical
// invocations stay byte for byte identical.
const auto start_time = std::chrono::steady_clock::now();

int finish(const json& report, const Options& opt) {
    write_output(opt.output, report.dump(2));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_time)
                  .count();
    std::cerr << "elapsed_ms " << ms << "\n";
    return report["ok"].get<bool>() ? 0 : 1;
}

int run_family(const std::string& name, int n, int k, int m, int q, const Options& opt) {
    LabeledPoset lp;
    if (name == "boolean")
        lp = boolean_lattice(n);
    else if (name == "uniform")
        lp = uniform_lattice(k, n);
    else if (name == "partition")
        lp = partition_lattice(n);
    else if (name == "dowling")
        lp = dowling(n, m, opt.max_elements);
    else if (name == "projective")
        lp = projective(n, q, opt.max_elements);
    else if (name == "flats") {
        json doc = json::parse(read_input(opt.input));
        PointConfig cfg;
        try {
            cfg.q = doc.at("q").get<int>();
            cfg.d = doc.at("d").get<int>();
            for (const auto& row : doc.at("points"))
                cfg.points.push_back(row.get<std::vector<int>>());
        } catch (const json::exception& e) {
            throw error(errc::SchemaError, std::string("bad point configuration: ") + e.what());
        }
        lp = flats_from_points(cfg);
    } else
        throw error(errc::UnknownFamily, "no family named '" + name + "'");
    write_output(opt.output, to_json(lp.poset, &lp.labeling));
    return 0;
}

int run_compute(const std::string& what, const Options& opt) {
    json report = report_skeleton("compute " + what);
    ParsedPoset pp = load_poset(opt, &report);
    const GradedPoset& p = pp.poset;
    describe_poset(report, p);
    json& out = report["outputs"];

    if (what == "chow") {
        if (opt.method.empty()) {
            IntPoly flag = chow_poly(p, ChowMethod::flag);
            bool agree = chow_poly(p, ChowMethod::recursion) == flag;
            out["chow"] = poly_to_json(flag, "x");
            out["methods_agree"] = agree;
            add_check(report, "chow methods agree", agree);
        } else if (opt.method == "flag" || opt.method == "recursion") {
            out["chow"] = poly_to_json(
                chow_poly(p, opt.method == "flag" ? ChowMethod::flag : ChowMethod::recursion),
                "x");
        } else
            throw error(errc::SchemaError, "chow method must be flag or recursion");
    } else if (what == "aug-chow") {
        if (opt.method.empty()) {
            IntPoly flag = aug_chow_poly(p, AugChowMethod::flag);
            bool agree = aug_chow_poly(p, AugChowMethod::sum) == flag &&
                         aug_chow_poly(p, AugChowMethod::adjoin) == flag;
            out["aug_chow"] = poly_to_json(flag, "x");
            out["methods_agree"] = agree;
            add_check(report, "aug-chow methods agree", agree);
        } else {
            AugChowMethod m;
            if (opt.method == "flag")
                m = AugChowMethod::flag;
            else if (opt.method == "sum")
                m = AugChowMethod::sum;
            else if (opt.method == "adjoin")
                m = AugChowMethod::adjoin;
            else
                throw error(errc::SchemaError, "aug-chow method must be flag, sum or adjoin");
            out["aug_chow"] = poly_to_json(aug_chow_poly(p, m), "x");
        }
    } else if (what == "gamma") {
        out["gamma"] = poly_to_json(gamma_of(p, false), "y");
        out["gamma_augmented"] = poly_to_json(gamma_of(p, true), "y");
    } else if (what == "h") {
        out["h"] = poly_to_json(order_complex_polys(p).h, "y");
    } else if (what == "chain") {
        out["chain"] = poly_to_json(order_complex_polys(p).f, "x");
    } else if (what == "char") {
        out["char"] = poly_to_json(char_poly(p, p.bottom(), p.top()), "x");
    } else
        throw error(errc::SchemaError, "unknown computation '" + what + "'");
    return finish(report, opt);
}

std::vector<std::string> name_chain(const GradedPoset& p, const std::vector<int>& chain) {
    std::vector<std::string> out;
    for (int u : chain) out.push_back(p.name_of(u));
    return out;
}

int run_check(const std::string& what, const std::string& farg, const std::string& garg,
              const Options& opt) {
    json report = report_skeleton("check " + what);

    if (what == "realroot") {
        IntPoly f = poly_from_csv(farg);
        RootCertificate c = certify_real_rooted_nonpositive(f);
        report["inputs"]["f"] = poly_to_json(f, "x");
        report["outputs"]["distinct_real_roots"] = c.distinct_real_root_count;
        add_check(report, "all roots real and nonpositive", c.all_real && c.all_nonpositive);
        return finish(report, opt);
    }
    if (what == "interlace") {
        IntPoly f = poly_from_csv(farg), g = poly_from_csv(garg);
        report["inputs"]["f"] = poly_to_json(f, "x");
        report["inputs"]["g"] = poly_to_json(g, "x");
        bool pass = false;
        std::string detail;
        try {
            pass = certify_interlacing(f, g);
        } catch (const error& e) {
            if (e.code() != errc::DegreeGap) throw;
            detail = e.what();
        }
        add_check(report, "f interlaces g", pass, detail);
        return finish(report, opt);
    }

    ParsedPoset pp = load_poset(opt, &report);
    const GradedPoset& p = pp.poset;
    describe_poset(report, p);
    auto need_labels = [&]() -> const EdgeLabeling& {
        if (!pp.labeling) throw error(errc::SchemaError, "check requires a labeled poset");
        return *pp.labeling;
    };

    if (what == "el") {
        ELResult r = verify_el(p, need_labels());
        if (r.ok)
            add_check(report, "EL labeling", true);
        else {
            json witness{{"interval", {p.name_of(r.lo), p.name_of(r.hi)}},
                         {"chains", json::array()}};
            for (const auto& ch : r.chains) witness["chains"].push_back(name_chain(p, ch));
            report["outputs"]["witness"] = witness;
            add_check(report, "EL labeling", false, r.reason);
        }
    } else if (what == "umel") {
        UmelReport r = is_umel(p, need_labels());
        add_check(report, "UMEL labeling", r.ok,
                  r.ok ? "" : "failed at stage " + r.stage + ": " + r.detail);
    } else if (what == "rank-uniform") {
        RankUniformResult r = is_rank_uniform(p);
        add_check(report, "rank-uniform", r.uniform,
                  r.uniform ? ""
                            : "elements " + p.name_of(r.witness_a) + " and " +
                                  p.name_of(r.witness_b) + " differ");
    } else if (what == "supersolvable") {
        try {
            SupersolvableResult r = umel_from_supersolvable(p);
            report["outputs"]["modular_chain"] = name_chain(p, r.chain.elements);
            add_check(report, "supersolvable with UMEL labeling", true);
        } catch (const error& e) {
            if (is_input_error(e.code())) throw;
            add_check(report, "supersolvable with UMEL labeling", false, e.what());
        }
    } else if (what == "tn") {
        try {
            bool pass = tn_check(p);
            add_check(report, "lower Whitney matrix totally nonnegative", pass,
                      pass ? "" : "a square minor is negative");
        } catch (const error& e) {
            if (e.code() != errc::NotLowerRankUniform) throw;
            add_check(report, "lower Whitney matrix totally nonnegative", false, e.what());
        }
    } else if (what == "battery") {
        try {
            BatteryReport r = interlacing_battery(p, need_labels());
            for (const auto& chk : r.checks) add_check(report, chk.name, chk.pass);
        } catch (const error& e) {
            if (is_input_error(e.code())) throw;
            add_check(report, "interlacing battery", false, e.what());
        }
    } else
        throw error(errc::SchemaError, "unknown check '" + what + "'");
    return finish(report, opt);
}

GoldenTable golden_from_file(const std::string& path) {
    GoldenTable table;
    json doc = json::parse(read_input(path));
    try {
        for (const auto& [key, coeffs] : doc.items()) {
            std::vector<Int> row;
            for (const auto& c : coeffs)
                row.emplace_back(c.is_string() ? Int(c.get<std::string>())
                                               : Int(long(c.get<long long>())));
            table.push_back({std::stoi(key), std::move(row)});
        }
    } catch (const json::exception& e) {
        throw error(errc::SchemaError, std::string("bad golden table: ") + e.what());
    }
    return table;
}

int run_verify(const std::string& level, const std::string& golden_path, const Options& opt) {
    if (level != "quick" && level != "full")
        throw error(errc::SchemaError, "level must be quick or full");
    GoldenTable golden;
    if (!golden_path.empty()) golden = golden_from_file(golden_path);

    SuiteReport rep = run_acceptance_suite(level == "full", opt.seed,
                                           golden_path.empty() ? nullptr : &golden);
    json report = report_skeleton("verify " + level);
    report["inputs"]["seed"] = opt.seed;
    for (const auto& c : rep.criteria) add_check(report, c.name, c.pass, c.detail);
    return finish(report, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Chow polynomial and shellability toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--input", opt.input, "input file, - for stdin");
    app.add_option("--output", opt.output, "output file, - for stdout");
    app.add_option("--method", opt.method, "computation method override");
    app.add_option("--seed", opt.seed, "seed for randomized property checks");
    app.add_option("--max-elements", opt.max_elements, "poset size guard");
    app.add_option("--max-chains", opt.max_chains, "chain enumeration guard");

    std::string family_name, what, farg, garg, level = "quick", golden_path;
    int n = 3, k = 2, m = 1, q = 2;

    CLI::App* fam = app.add_subcommand("family", "construct a poset family instance");
    fam->add_option("name", family_name, "boolean|uniform|partition|dowling|projective|flats")
        ->required();
    fam->add_option("--n", n, "size parameter");
    fam->add_option("--k", k, "rank parameter (uniform)");
    fam->add_option("--m", m, "group order (dowling)");
    fam->add_option("--q", q, "field order (projective)");

    CLI::App* comp = app.add_subcommand("compute", "compute a polynomial invariant");
    comp->add_option("what", what, "chow|aug-chow|gamma|h|chain|char")->required();

    CLI::App* chk = app.add_subcommand("check", "run a structural check");
    chk->add_option("what", what, "el|umel|rank-uniform|supersolvable|tn|realroot|interlace|battery")
        ->required();
    chk->add_option("--f", farg, "polynomial coefficients, low to high, comma separated");
    chk->add_option("--g", garg, "second polynomial for interlace");

    CLI::App* ver = app.add_subcommand("verify", "run the acceptance battery");
    ver->add_option("--level", level, "quick|full");
    ver->add_option("--golden", golden_path, "replacement golden value table (JSON)");

    for (CLI::App* sub : {fam, comp, chk, ver}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fam->parsed()) return run_family(family_name, n, k, m, q, opt);
        if (comp->parsed()) return run_compute(what, opt);
        if (chk->parsed()) return run_check(what, farg, garg, opt);
        return run_verify(level, golden_path, opt);
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        if (e.code() == errc::SizeLimitExceeded) return 3;
        return is_input_error(e.code()) ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
