#include "etfq/cliquesearch.hpp"
#include "etfq/constructions.hpp"
#include "etfq/frames.hpp"
#include "etfq/graphs.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace etfq;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // verified negative result
constexpr int kExitError = 2;    // input or usage error

int default_workers() {
    if (const char* env = std::getenv("ETFQ_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

MatGF read_gram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return MatGF::read(in);
}

void emit_certificate(const EtfCertificate& cert, const std::string& prefix) {
    if (prefix.empty()) {
        write_certificate(std::cout, cert, "-");
        return;
    }
    std::string gram_path = prefix + ".gram.txt";
    std::string cert_path = prefix + ".cert.txt";
    {
        std::ofstream out(gram_path);
        if (!out) throw std::invalid_argument("cannot write '" + gram_path + "'");
        cert.gram.write(out);
    }
    std::ofstream out(cert_path);
    if (!out) throw std::invalid_argument("cannot write '" + cert_path + "'");
    write_certificate(out, cert, gram_path);
    std::cout << "wrote " << cert_path << " and " << gram_path << "\n";
}

void print_params(std::ostream& out, const EtfCertificate& cert) {
    const FieldCtx& f = cert.params.field;
    out << "(" << f.str(cert.params.a) << "," << f.str(cert.params.b) << ","
        << f.str(cert.params.c) << ")-ETF, d=" << cert.params.d
        << ", n=" << cert.params.n << " over F_" << f.q();
}

int cmd_report(const std::string& input) {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot open '" + input + "'");
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    if (!first.empty() && first[0] == '{') {
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
        std::string kind = j.value("kind", "");
        if (kind == "existence-witness") {
            std::cout << "existence witness: d=" << j["d"] << " n=" << j["n"]
                      << " p=" << j["p"] << " s=" << j["s"] << " a=" << j["a"] << "\n";
            return kExitOk;
        }
        NonexistenceCertificate cert = certificate_from_json(j);
        std::cout << std::setw(4) << "p" << std::setw(4) << "s" << std::setw(6) << "a"
                  << std::setw(8) << "|V|" << std::setw(8) << "omega" << "\n";
        for (const SearchBlock& b : cert.blocks)
            std::cout << std::setw(4) << b.p << std::setw(4) << b.s << std::setw(6)
                      << b.a << std::setw(8) << b.v_size << std::setw(8) << b.omega
                      << "\n";
        std::cout << "verdict: " << (cert.nonexistent ? "nonexistent" : "undecided")
                  << " (d=" << cert.d << ", n=" << cert.n << ")\n";
        return kExitOk;
    }
    if (first.rfind("v,k,lambda,mu,p,", 0) == 0) {
        std::vector<ScanRow> rows = read_scan_rows(in);
        std::cout << std::setw(4) << "p" << std::setw(6) << "d" << std::setw(6) << "n"
                  << std::setw(5) << "a" << std::setw(5) << "c" << "  flags\n";
        for (const ScanRow& r : rows) {
            std::cout << std::setw(4) << r.p << std::setw(6) << r.d << std::setw(6)
                      << r.n << std::setw(5) << r.a << std::setw(5) << r.c << "  ";
            for (std::size_t i = 0; i < r.flags.size(); ++i)
                std::cout << (i ? ";" : "") << r.flags[i];
            std::cout << "\n";
        }
        return kExitOk;
    }
    if (first.rfind("p ", 0) == 0) {
        std::cout << in.rdbuf();
        return kExitOk;
    }
    if (first.empty()) return kExitOk;  // empty input, empty table
    throw std::invalid_argument("unrecognized certificate format in '" + input + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for equiangular tight frames in finite orthogonal geometries"};
    app.require_subcommand(1);

    std::string input, output, family, mode = "centroidal", delta_str, primes_str;
    std::uint64_t p = 0, pmax = 0;
    std::size_t d = 0, n = 0, m = 0;
    int l = 1;
    std::size_t dmax = 0;
    bool real_exists = false;
    int workers = default_workers();

    auto* verify = app.add_subcommand("verify", "verify a Gram matrix file");
    verify->add_option("--input", input)->required();
    verify->add_option("--output", output);

    auto* construct = app.add_subcommand("construct", "build an ETF from a graph");
    construct->add_option("--family", family, "triangular:M | triangular_complement:M | paley:Q | lattice:M | edges:PATH");
    construct->add_option("--input", input, "edge list file (alternative to --family)");
    construct->add_option("--mode", mode)->check(CLI::IsMember({"bordered", "centroidal"}));
    construct->add_option("--p", p)->required();
    construct->add_option("--output", output);

    auto* scan_cmd = app.add_subcommand("scan", "scan SRG parameter rows");
    scan_cmd->add_option("--input", input)->required();
    scan_cmd->add_option("--pmax", pmax)->required();
    scan_cmd->add_option("--dmax", dmax);
    scan_cmd->add_option("--output", output);

    auto* gerzon = app.add_subcommand("gerzon", "triangular Gerzon-equality family");
    gerzon->add_option("--d", d)->required();
    gerzon->add_option("--p", p)->required();
    gerzon->add_option("--output", output);

    auto* steiner = app.add_subcommand("steiner", "Steiner + modular Hadamard ETF");
    steiner->add_option("--m", m)->required();
    steiner->add_option("--p", p)->required();
    steiner->add_option("--output", output);

    auto* naimark_cmd = app.add_subcommand("naimark", "Naimark complement of a Gram file");
    naimark_cmd->add_option("--input", input)->required();
    naimark_cmd->add_option("--output", output);

    auto* project = app.add_subcommand("project-real", "reduce a real signature matrix into F_{p^l}");
    project->add_option("--input", input)->required();
    project->add_option("--d", d, "real dimension")->required();
    project->add_option("--p", p)->required();
    project->add_option("--l", l)->check(CLI::IsMember({1, 2}));
    project->add_option("--delta", delta_str, "square root of n-1 when n = 2d");
    project->add_option("--output", output);

    auto* nonexist = app.add_subcommand("nonexist", "clique-search nonexistence pipeline");
    nonexist->add_option("--d", d)->required();
    nonexist->add_option("--n", n)->required();
    nonexist->add_option("--primes", primes_str, "comma-separated; default: candidate primes");
    nonexist->add_option("--real-exists", real_exists);
    nonexist->add_option("--workers", workers);
    nonexist->add_option("--output", output);

    auto* report = app.add_subcommand("report", "human-readable summary of certificates");
    report->add_option("--input", input)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            MatGF g = read_gram(input);
            auto cert = verify_etf(g);
            if (!cert) {
                std::cout << "not an ETF Gram matrix\n";
                return kExitNegative;
            }
            if (output.empty()) {
                write_certificate(std::cout, cert.value(), input);
            } else {
                std::ofstream out(output);
                if (!out) throw std::invalid_argument("cannot write '" + output + "'");
                write_certificate(out, cert.value(), input);
            }
            return kExitOk;
        }
        if (*construct) {
            if (family.empty() == input.empty())
                throw std::invalid_argument("construct needs exactly one of --family / --input");
            Graph g = family.empty() ? generate("edges:" + input) : generate(family);
            if (mode == "bordered") {
                auto certs = bordered_etfs(g, p);
                if (certs.empty()) {
                    std::cout << "construction conditions fail for this graph and prime\n";
                    return kExitNegative;
                }
                if (certs.size() == 1) {
                    emit_certificate(certs[0], output);
                } else {
                    emit_certificate(certs[0], output.empty() ? output : output + ".plus");
                    emit_certificate(certs[1], output.empty() ? output : output + ".minus");
                }
                for (const auto& c : certs) {
                    print_params(std::cout, c);
                    std::cout << "\n";
                }
            } else {
                EtfCertificate cert = centroidal_certificate(g, p);
                emit_certificate(cert, output);
                print_params(std::cout, cert);
                std::cout << "\n";
            }
            return kExitOk;
        }
        if (*scan_cmd) {
            std::ifstream in(input);
            if (!in) throw std::invalid_argument("cannot open '" + input + "'");
            auto rows = read_scan_input(in);
            auto result = scan(rows, pmax,
                               dmax ? std::optional<std::size_t>(dmax) : std::nullopt);
            if (output.empty()) {
                write_scan_rows(std::cout, result);
            } else {
                std::ofstream out(output);
                if (!out) throw std::invalid_argument("cannot write '" + output + "'");
                write_scan_rows(out, result);
            }
            return kExitOk;
        }
        if (*gerzon) {
            EtfCertificate cert = triangular_gerzon(d, p);
            emit_certificate(cert, output);
            print_params(std::cout, cert);
            auto norm = normalized_params(cert.params);
            std::cout << "; normalized (a,c)=(" << cert.params.field.str(norm.first)
                      << "," << cert.params.field.str(norm.second) << ")\n";
            return kExitOk;
        }
        if (*steiner) {
            EtfCertificate cert = steiner_modular(m, p);
            emit_certificate(cert, output);
            print_params(std::cout, cert);
            std::cout << "\n";
            return kExitOk;
        }
        if (*naimark_cmd) {
            MatGF g = read_gram(input);
            auto cert = verify_etf(g);
            if (!cert) {
                std::cout << "input is not an ETF Gram matrix\n";
                return kExitNegative;
            }
            EtfCertificate comp = naimark(cert.value());
            emit_certificate(comp, output);
            print_params(std::cout, comp);
            std::cout << "\n";
            return kExitOk;
        }
        if (*project) {
            std::ifstream in(input);
            if (!in) throw std::invalid_argument("cannot open '" + input + "'");
            IntMat s = IntMat::read(in);
            std::optional<felem> delta;
            if (!delta_str.empty()) delta = FieldCtx::make(p, l).parse(delta_str);
            EtfCertificate cert = project_real_signature(s, d, p, l, delta);
            emit_certificate(cert, output);
            print_params(std::cout, cert);
            std::cout << "\n";
            return kExitOk;
        }
        if (*nonexist) {
            std::optional<std::vector<std::uint64_t>> primes;
            if (!primes_str.empty()) {
                std::vector<std::uint64_t> ps;
                std::stringstream ss(primes_str);
                std::string item;
                while (std::getline(ss, item, ',')) ps.push_back(std::stoull(item));
                primes = std::move(ps);
            }
            PipelineResult result = nonexistence_pipeline(d, n, primes, real_exists, workers);
            nlohmann::ordered_json j = result.certificate
                                           ? certificate_json(*result.certificate)
                                           : witness_json(*result.witness);
            if (output.empty()) {
                std::cout << j.dump(1) << "\n";
            } else {
                std::ofstream out(output);
                if (!out) throw std::invalid_argument("cannot write '" + output + "'");
                out << j.dump(1) << "\n";
                std::cout << "wrote " << output << "\n";
            }
            if (result.certificate && result.certificate->nonexistent) {
                std::cout << "verdict: nonexistent\n";
                return kExitNegative;
            }
            std::cout << "existence witness found\n";
            return kExitOk;
        }
        if (*report) return cmd_report(input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
