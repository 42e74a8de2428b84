// masseykit: verification runs for Massey products, Kummer towers and abelian
// crossed products. Exit status: 0 all checks passed, 1 a check failed or the
// instance was rejected, 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "masseykit/parse_error.hpp"
#include "masseykit/reports.hpp"

using masseykit::fp_t;
using masseykit::reports::Json;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string flag(const Json& j) {
    if (j.is_null()) return "-";
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

// One readable line per record; nested objects are flattened with dots.
void print_text(std::ostream& os, const Json& j, const std::string& prefix = "") {
    for (const auto& [key, value] : j.items()) {
        std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            print_text(os, value, name);
            continue;
        }
        os << name << ": " << flag(value) << "\n";
    }
}

void print_line(std::ostream& os, const Json& j) {
    bool first = true;
    for (const auto& [key, value] : j.items()) {
        os << (first ? "" : "  ") << key << "=" << flag(value);
        first = false;
    }
    os << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Massey products, Kummer towers and abelian crossed products"};
    app.require_subcommand(1);
    bool json = false;
    std::uint64_t seed = 0;
    std::string output;
    app.add_flag("--json", json, "Emit JSON Lines");
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    app.add_option("-o,--output", output, "Write the report to this file");

    std::string group;
    std::optional<fp_t> p;
    fp_t ell = 0, field_p = 0;

    auto* coh = app.add_subcommand("cohomology", "Dimensions of H^1 and H^2 with trivial F_p coefficients");
    bool basis = false;
    coh->add_option("--group", group, "Group specifier, e.g. heisenberg:3")->required();
    coh->add_option("--p", p, "Coefficient prime (default: the group's prime)");
    coh->add_flag("--basis", basis, "Include cochain representatives");

    auto* scan = app.add_subcommand("massey-scan", "Decide every triple Massey product on H^1 by both methods");
    scan->add_option("--group", group, "Group specifier")->required();
    scan->add_option("--p", p, "Coefficient prime");

    auto* dwyer = app.add_subcommand("dwyer-check", "Round trip between defining systems and unipotent maps");
    unsigned samples = 100;
    dwyer->add_option("--group", group, "Group specifier")->required();
    dwyer->add_option("--p", p, "Coefficient prime");
    dwyer->add_option("--samples", samples, "Number of sampled defining systems")->capture_default_str();

    auto* tower = app.add_subcommand("tower", "Build and check the degree p^3 Heisenberg tower");
    std::string b = "t";
    std::optional<std::string> v;
    tower->add_option("--ell", ell, "Characteristic of F = F_l(t)")->required();
    tower->add_option("--p", field_p, "Degree prime, p | l - 1")->required();
    tower->add_option("--b", b, "b in F")->capture_default_str();
    tower->add_option("--v", v, "v in F[x]/(x^p - b) (default: random from the seed)");

    auto* crossed = app.add_subcommand("crossed", "Build and check the crossed product A_{v1,v2}");
    std::string a2 = "t";
    masseykit::reports::CrossedOptions copts;
    bool no_center = false;
    crossed->add_option("--ell", ell, "Characteristic of F = F_l(t)")->required();
    crossed->add_option("--p", field_p, "Degree prime, p | l - 1")->required();
    crossed->add_option("--a2", a2, "a2 in F")->capture_default_str();
    crossed->add_option("--v2", copts.v2, "v2 in F[x2]/(x2^p - a2) (default: random from the seed)");
    crossed->add_option("--associativity", copts.associativity, "Random associativity triples")
        ->capture_default_str();
    crossed->add_flag("--no-center", no_center, "Skip the center computation");

    for (auto* sub : {coh, scan, dwyer, tower, crossed}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            std::cerr << "error: cannot open " << output << "\n";
            return kExitUsage;
        }
    }
    std::ostream& os = output.empty() ? std::cout : file;
    bool per_line = scan->parsed() || dwyer->parsed();
    auto sink = [&](const Json& j) {
        if (json)
            os << j.dump() << "\n";
        else if (per_line)
            print_line(os, j);
        else
            print_text(os, j);
    };

    namespace r = masseykit::reports;
    try {
        bool ok = true;
        if (coh->parsed()) {
            ok = r::cohomology(group, p, basis, sink);
        } else if (scan->parsed()) {
            ok = r::massey_scan(group, p, sink);
        } else if (dwyer->parsed()) {
            ok = r::dwyer_check(group, p, samples, seed, sink);
        } else if (tower->parsed()) {
            ok = r::tower(masseykit::PrimeFieldSpec::make(ell, field_p), b, v, seed, sink);
        } else if (crossed->parsed()) {
            copts.center = !no_center;
            ok = r::crossed(masseykit::PrimeFieldSpec::make(ell, field_p), a2, copts, seed, sink);
        }
        os.flush();
        if (!ok) std::cerr << "some checks failed\n";
        return ok ? 0 : kExitFailed;
    } catch (const masseykit::InstanceRejected& e) {
        std::cerr << "instance rejected: " << e.what() << "\n";
        return kExitFailed;
    } catch (const masseykit::RetryExhausted& e) {
        std::cerr << "retry budget of " << masseykit::kRetryBudget << " exhausted: " << e.what() << "\n";
        return kExitFailed;
    } catch (const std::invalid_argument& e) {
        // Includes parse errors, which report their position.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailed;
    }
}
