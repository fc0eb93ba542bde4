#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flagops/cli.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonFlags {
    std::string config;
    std::string type = "A2";
    std::string lattice = "adj";
    std::vector<int> theta;
    int precision = 0;
    std::string basis = "schubert";
    std::string output = "json";
    std::string law = "additive";
    std::string op_kind;
    unsigned p = 2;
    int steenrod_i = -1;
    int twist_K = 3;
    std::vector<int> partition;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON config file path, or - for stdin");
    cmd->add_option("--type", f.type, "root datum designator, e.g. A2, B2, A1xA1");
    cmd->add_option("--lattice", f.lattice, "lattice: adj or sc")
        ->check(CLI::IsMember({"adj", "sc"}));
    cmd->add_option("--theta", f.theta, "parabolic subset (1-based simple root indices)");
    cmd->add_option("--precision", f.precision, "truncation order (default |Sigma^+|+2)");
    cmd->add_option("--basis", f.basis, "basis: schubert or qdual")
        ->check(CLI::IsMember({"schubert", "qdual"}));
    cmd->add_option("--output", f.output, "output: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--law", f.law,
                    "coefficient law: additive, multiplicative, multiplicative_periodic, twist(K)");
    cmd->add_option("--op", f.op_kind,
                    "operation kind: identity, steenrod, chow_trace, chern_character, twist");
    cmd->add_option("-p,--prime", f.p, "prime for steenrod / chow_trace");
    cmd->add_option("-i,--index", f.steenrod_i, "Steenrod operation index (optional)");
    cmd->add_option("-K,--twist-vars", f.twist_K, "number of twist variables");
    cmd->add_option("--partition", f.partition, "partition for chow_trace / twist extraction");
}

std::string build_config(const std::string& command, const CommonFlags& f) {
    if (!f.config.empty()) return read_input(f.config);
    nlohmann::ordered_json cfg;
    cfg["command"] = command;
    cfg["datum"] = {{"type", f.type}, {"lattice", f.lattice}};
    if (!f.theta.empty()) cfg["datum"]["theta"] = f.theta;
    if (f.precision > 0) cfg["precision"] = f.precision;
    cfg["basis"] = f.basis;
    cfg["output"] = f.output;
    cfg["source_theory"] = {{"law", f.law}};
    if (!f.op_kind.empty()) {
        nlohmann::ordered_json op;
        op["kind"] = f.op_kind;
        if (f.op_kind == "steenrod" || f.op_kind == "chow_trace") op["p"] = f.p;
        if (f.op_kind == "steenrod" && f.steenrod_i >= 0) op["i"] = f.steenrod_i;
        if (f.op_kind == "twist") op["K"] = f.twist_K;
        if (!f.partition.empty()) op["partition"] = f.partition;
        cfg["operation"] = op;
    }
    return cfg.dump();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact equivariant Schubert calculus over formal group laws"};
    app.require_subcommand(1);

    CommonFlags fc, fv, fs;
    CLI::App* compute = app.add_subcommand("compute", "compute an operation table");
    add_common(compute, fc);
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(verify, fv);
    CLI::App* stable = app.add_subcommand("schubert-table", "emit D, C diagonals and GKM certificates");
    add_common(stable, fs);

    CLI11_PARSE(app, argc, argv);

    try {
        std::string cfg;
        if (compute->parsed()) cfg = build_config("compute", fc);
        if (verify->parsed()) cfg = build_config("verify", fv);
        if (stable->parsed()) cfg = build_config("schubert-table", fs);
        return flagops::run_job(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
