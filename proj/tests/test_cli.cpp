// End to end tests driving the command line binary as a subprocess. Each
// run captures stdout and the exit code; reports are parsed back as JSON.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    std::string cmd = std::string(CHOWKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_text.empty()) {
        std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/chowkit_cli_stdin.json";
        std::ofstream(path) << stdin_text;
        cmd += " < " + path;
    }
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json parse_report(const RunResult& r) {
    json doc = json::parse(r.out, nullptr, false);
    REQUIRE(!doc.is_discarded());
    return doc;
}

std::vector<long long> coeffs_of(const json& poly) {
    std::vector<long long> out;
    for (const auto& c : poly.at("coeffs"))
        out.push_back(c.is_string() ? std::stoll(c.get<std::string>())
                                    : c.get<long long>());
    return out;
}

} // namespace

TEST_CASE("family constructors emit poset documents") {
    RunResult d32 = run_cli("family dowling --n 3 --m 2");
    CHECK(d32.exit_code == 0);
    json doc = parse_report(d32);
    CHECK(doc.at("elements").size() == 24);
    CHECK(doc.contains("covers"));
    CHECK(doc.contains("labels"));

    json b1 = parse_report(run_cli("family boolean --n 1"));
    CHECK(b1.at("elements").size() == 2);
    CHECK(b1.at("covers").size() == 1);

    json u23 = parse_report(run_cli("family uniform --k 2 --n 3"));
    CHECK(u23.at("elements").size() == 5);
}

TEST_CASE("family output feeds compute through a pipe or a file") {
    RunResult fam = run_cli("family dowling --n 4 --m 2");
    REQUIRE(fam.exit_code == 0);

    RunResult comp = run_cli("compute chow --input -", fam.out);
    CHECK(comp.exit_code == 0);
    json rep = parse_report(comp);
    CHECK(rep.at("ok") == true);
    CHECK(coeffs_of(rep.at("outputs").at("chow")) == std::vector<long long>{1, 99, 99, 1});
    CHECK(rep.at("outputs").at("methods_agree") == true);
    CHECK(rep.at("inputs").at("elements") == 116);
    CHECK(rep.at("inputs").contains("digest"));
}

TEST_CASE("augmented polynomial and per-method selection") {
    RunResult fam = run_cli("family boolean --n 3");
    for (const char* m : {"", " --method flag", " --method sum", " --method adjoin"}) {
        RunResult comp = run_cli(std::string("compute aug-chow --input -") + m, fam.out);
        CHECK(comp.exit_code == 0);
        json rep = parse_report(comp);
        CHECK(coeffs_of(rep.at("outputs").at("aug_chow")) ==
              std::vector<long long>{1, 7, 7, 1});
    }
    RunResult bad = run_cli("compute aug-chow --input - --method nope", fam.out);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("gamma, h, chain and characteristic outputs") {
    RunResult fam = run_cli("family uniform --k 3 --n 5");
    json g = parse_report(run_cli("compute gamma --input -", fam.out));
    CHECK(coeffs_of(g.at("outputs").at("gamma")) == std::vector<long long>{1, 9});
    CHECK(coeffs_of(g.at("outputs").at("gamma_augmented")) == std::vector<long long>{1, 13});
    CHECK(g.at("outputs").at("gamma").at("var") == "y");

    json h = parse_report(run_cli("compute h --input -", fam.out));
    CHECK(coeffs_of(h.at("outputs").at("h")) == std::vector<long long>{1, 13, 6});

    json ch = parse_report(run_cli("compute char --input -", fam.out));
    CHECK(coeffs_of(ch.at("outputs").at("char")) == std::vector<long long>{-6, 10, -5, 1});

    json f = parse_report(run_cli("compute chain --input -", fam.out));
    CHECK(coeffs_of(f.at("outputs").at("chain")) == std::vector<long long>{1, 15, 20});
}

TEST_CASE("structural checks report pass and fail with witnesses") {
    RunResult u35 = run_cli("family uniform --k 3 --n 5");

    json umel = parse_report(run_cli("check umel --input -", u35.out));
    CHECK(umel.at("ok") == true);

    RunResult ss = run_cli("check supersolvable --input -", u35.out);
    CHECK(ss.exit_code == 1);
    json ssrep = parse_report(ss);
    CHECK(ssrep.at("ok") == false);
    CHECK(ssrep.at("checks").at(0).at("detail").get<std::string>().find("NotSupersolvable") !=
          std::string::npos);

    RunResult b3 = run_cli("family boolean --n 3");
    json ssb = parse_report(run_cli("check supersolvable --input -", b3.out));
    CHECK(ssb.at("ok") == true);
    CHECK(ssb.at("outputs").at("modular_chain").size() == 4);

    json bat = parse_report(run_cli("check battery --input -", u35.out));
    CHECK(bat.at("ok") == true);
    CHECK(bat.at("checks").size() >= 4);

    json tn = parse_report(run_cli("check tn --input -", b3.out));
    CHECK(tn.at("ok") == true);

    RunResult p4 = run_cli("family partition --n 4");
    RunResult tnp = run_cli("check tn --input -", p4.out);
    CHECK(tnp.exit_code == 1);
    CHECK(parse_report(tnp).at("checks").at(0).at("detail").get<std::string>().find(
              "NotLowerRankUniform") != std::string::npos);
}

TEST_CASE("polynomial checks from inline coefficients") {
    RunResult ok = run_cli("check interlace --f 1,1 --g 1,4,1");
    CHECK(ok.exit_code == 0);
    CHECK(parse_report(ok).at("ok") == true);

    RunResult no = run_cli("check interlace --f 1,4,1 --g 1,1");
    CHECK(no.exit_code == 1);

    RunResult rr = run_cli("check realroot --f 1,4,1");
    CHECK(rr.exit_code == 0);
    CHECK(parse_report(rr).at("outputs").at("distinct_real_roots") == 2);

    RunResult complex_roots = run_cli("check realroot --f 1,1,1");
    CHECK(complex_roots.exit_code == 1);

    RunResult bad = run_cli("check realroot --f 1,zebra");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("exit codes distinguish input errors and resource limits") {
    CHECK(run_cli("family nosuch").exit_code == 2);
    CHECK(run_cli("compute chow --input -", "not json").exit_code == 2);
    CHECK(run_cli("compute chow --input /nonexistent/file").exit_code == 2);
    CHECK(run_cli("compute nosuchthing --input -",
                  run_cli("family boolean --n 2").out)
              .exit_code == 2);
    CHECK(run_cli("family dowling --n 4 --m 3 --max-elements 10").exit_code == 3);

    // A valid poset document with no labels: labeled checks reject it.
    std::string unlabeled =
        R"({"elements":["a","b","c","d"],"covers":[[0,1],[0,2],[1,3],[2,3]]})";
    CHECK(run_cli("compute chow --input -", unlabeled).exit_code == 0);
    CHECK(run_cli("check el --input -", unlabeled).exit_code == 2);
}

TEST_CASE("verify runs the battery and honors a replacement golden table") {
    RunResult v = run_cli("verify --level quick --seed 12345");
    CHECK(v.exit_code == 0);
    json rep = parse_report(v);
    CHECK(rep.at("ok") == true);
    CHECK(rep.at("checks").size() == 9);
    CHECK(rep.at("inputs").at("seed") == 12345);
    for (const auto& c : rep.at("checks")) CHECK(c.at("pass") == true);

    // Corrupting one golden coefficient must fail with a coefficient diff.
    std::string bad = R"({"3":[1,14,1],"4":[1,99,98,1]})";
    std::string path = "/tmp/chowkit_bad_golden.json";
    std::ofstream(path) << bad;
    RunResult corrupted = run_cli("verify --level quick --golden " + path);
    CHECK(corrupted.exit_code == 1);
    json crep = parse_report(corrupted);
    CHECK(crep.at("ok") == false);
    bool found = false;
    for (const auto& c : crep.at("checks"))
        if (!c.at("pass")) {
            found = true;
            CHECK(c.at("detail").get<std::string>().find("dowling(4,2)") != std::string::npos);
        }
    CHECK(found);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    RunResult a = run_cli("verify --level quick --seed 777");
    RunResult b = run_cli("verify --level quick --seed 777");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    RunResult fam = run_cli("family dowling --n 3 --m 2");
    RunResult c1 = run_cli("compute chow --input -", fam.out);
    RunResult c2 = run_cli("compute chow --input -", fam.out);
    CHECK(c1.out == c2.out);
}

TEST_CASE("output file writing and round trip through from_json") {
    std::string path = "/tmp/chowkit_cli_out.json";
    RunResult fam = run_cli("family projective --n 3 --q 2 --output " + path);
    CHECK(fam.exit_code == 0);
    CHECK(fam.out.empty());

    RunResult comp = run_cli("compute chow --input " + path);
    CHECK(comp.exit_code == 0);
    json rep = parse_report(comp);
    CHECK(coeffs_of(rep.at("outputs").at("chow")) == std::vector<long long>{1, 8, 1});
    std::remove(path.c_str());
}

TEST_CASE("flats family builds a lattice from a point configuration") {
    // Four points in the projective plane over F_2, three collinear: the
    // lopsided near-pencil arrangement.
    std::string cfg = R"({"q":2,"d":3,"points":[[1,0,0],[0,1,0],[1,1,0],[0,0,1]]})";
    RunResult fam = run_cli("family flats --input -", cfg);
    CHECK(fam.exit_code == 0);
    json doc = parse_report(fam);
    // 0, 4 points, 4 lines (one triple plus three pairs through e3), top.
    CHECK(doc.at("elements").size() == 10);

    RunResult ru = run_cli("check rank-uniform --input -", fam.out);
    CHECK(ru.exit_code == 1);
}
