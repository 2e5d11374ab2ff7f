// End-to-end checks of the command-line tool; argv[1] is the binary path.
#include "etfq/graphs.hpp"
#include "etfq/matgf.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cout << "FAIL: " << what << "\n";
    }
}

int run(const std::string& cmd) {
    int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-binary>\n";
        return 2;
    }
    std::string cli = argv[1];
    auto dir = std::filesystem::temp_directory_path() / "etfq_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto at = [&](const std::string& name) { return (dir / name).string(); };

    // construct / verify round trip through files
    expect(run(cli + " gerzon --d 10 --p 3 --output " + at("g10")) == 0, "gerzon exit");
    std::string cert = slurp(at("g10.cert.txt"));
    expect(contains(cert, "a 0") && contains(cert, "c 0") && contains(cert, "d 10") &&
               contains(cert, "n 55"),
           "gerzon certificate fields");
    expect(run(cli + " verify --input " + at("g10.gram.txt") + " --output " +
               at("g10.recheck.txt")) == 0,
           "verify exit");
    std::string recheck = slurp(at("g10.recheck.txt"));
    for (const char* key : {"p 3", "l 1", "a 0", "b 1", "c 0", "d 10", "n 55"})
        expect(contains(recheck, key), std::string("verify field ") + key);

    // identical invocations produce identical artifacts
    expect(run(cli + " gerzon --d 10 --p 3 --output " + at("g10b")) == 0, "gerzon rerun");
    expect(slurp(at("g10.gram.txt")) == slurp(at("g10b.gram.txt")),
           "gerzon output determinism");

    expect(run(cli + " steiner --m 7 --p 3 --output " + at("st")) == 0, "steiner exit");
    expect(run(cli + " verify --input " + at("st.gram.txt")) == 0, "steiner verifies");

    // naimark of the all-ones Gram over F_7
    {
        std::ofstream out(at("j5.txt"));
        etfq::MatGF::all_ones(etfq::FieldCtx::make(7, 1), 5, 5).write(out);
    }
    expect(run(cli + " naimark --input " + at("j5.txt") + " --output " + at("j5c")) == 0,
           "naimark exit");
    std::string ncert = slurp(at("j5c.cert.txt"));
    expect(contains(ncert, "a 4") && contains(ncert, "c 5") && contains(ncert, "d 4"),
           "naimark certificate fields");

    // a non-ETF Gram is a verified negative (exit 1)
    {
        std::ofstream out(at("bad.txt"));
        out << "5 1 2 2\n1 2\n2 1\n";
    }
    expect(run(cli + " verify --input " + at("bad.txt")) == 1, "verify negative exit");

    // construct from a generated family and from an edge list
    expect(run(cli + " construct --family triangular_complement:5 --mode centroidal"
                     " --p 3 --output " + at("pet")) == 0,
           "construct exit");
    expect(contains(slurp(at("pet.cert.txt")), "d 4"), "construct certificate");
    {
        std::ofstream out(at("pet.edges"));
        etfq::triangular_complement(5).write_edge_list(out);
    }
    expect(run(cli + " construct --input " + at("pet.edges") + " --mode centroidal"
                     " --p 3 --output " + at("pet2")) == 0,
           "construct from edge list");
    expect(slurp(at("pet.gram.txt")) == slurp(at("pet2.gram.txt")),
           "edge-list construct matches family construct");

    // bordered mode fails its conditions on the Petersen graph at p = 3
    expect(run(cli + " construct --family triangular_complement:5 --mode bordered"
                     " --p 3 --output " + at("nope")) == 1,
           "construct negative exit");

    // project a real signature matrix
    {
        std::ofstream out(at("sig.txt"));
        etfq::seidel_matrix(etfq::triangular_complement(5)).write(out);
    }
    expect(run(cli + " project-real --input " + at("sig.txt") +
               " --d 5 --p 3 --output " + at("proj")) == 0,
           "project-real exit");
    expect(contains(slurp(at("proj.cert.txt")), "d 4"), "projected rank");

    // scan and report
    {
        std::ofstream out(at("rows.csv"));
        out << "v,k,lambda,mu\n99,14,1,2\n";
    }
    expect(run(cli + " scan --input " + at("rows.csv") + " --pmax 7 --output " +
               at("rows.out.csv")) == 0,
           "scan exit");
    expect(contains(slurp(at("rows.out.csv")), "99,14,1,2,5,45,exact,100,2,4,bordered"),
           "scan output row");
    expect(run(cli + " report --input " + at("rows.out.csv")) == 0, "report scan exit");

    // nonexistence pipeline: verified negative, reportable certificate
    expect(run(cli + " nonexist --d 2 --n 4 --output " + at("cert.json")) == 1,
           "nonexist exit");
    expect(contains(slurp(at("cert.json")), "\"verdict\": \"nonexistent\""),
           "nonexist verdict");
    expect(run(cli + " report --input " + at("cert.json")) == 0, "report cert exit");

    // existence witness comes back with exit 0
    expect(run(cli + " nonexist --d 2 --n 3 --primes 5 --output " + at("wit.json")) == 0,
           "witness exit");
    expect(contains(slurp(at("wit.json")), "existence-witness"), "witness payload");

    // empty report input: empty table, success
    {
        std::ofstream out(at("empty.txt"));
    }
    expect(run(cli + " report --input " + at("empty.txt")) == 0, "empty report exit");

    // input errors exit 2
    expect(run(cli + " verify --input " + at("missing.txt")) == 2, "missing file exit");
    expect(run(cli + " gerzon --d 11 --p 3") == 2, "precondition exit");

    if (failures) {
        std::cout << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
