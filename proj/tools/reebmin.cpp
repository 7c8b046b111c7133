#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "reebmin/problem.hpp"

using namespace reebmin;

int main(int argc, char** argv) {
    CLI::App app{"Reeb vector volume minimization for toric and complexity-one cones"};
    std::string command_name_arg, spec_path, out_path, tol;
    std::optional<int> max_iter;
    std::optional<unsigned> precision;
    unsigned threads = 1;
    bool json_only = false;
    app.add_option("command", command_name_arg, "minimize | eval | futaki | downgrade | binom2toric | oracle | approx")
        ->required();
    app.add_option("spec", spec_path, "problem spec (JSON)")->required();
    app.add_option("--out", out_path, "write the JSON report here");
    app.add_option("--tol", tol, "minimizer tolerance");
    app.add_option("--max-iter", max_iter, "minimizer iteration cap");
    app.add_option("--precision", precision, "working precision in bits");
    app.add_option("--threads", threads, "threads for lattice-point counting");
    app.add_flag("--json-only", json_only, "print the JSON report instead of the table");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Command command = parse_command(command_name_arg);
        RunOptions options;
        if (!tol.empty()) {
            try {
                options.tolerance = Real(tol);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "--tol: not a number");
            }
        }
        options.max_iter = max_iter;
        options.precision_bits = precision;
        options.threads = threads;
        const ProblemSpec spec = load_spec_file(spec_path);
        const Json report = run(command, spec, options);
        const std::string text = report.dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
            out << text;
        }
        if (json_only) {
            if (out_path.empty()) std::cout << text;
        } else {
            std::cout << render_table(report);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << error_report(e).dump(2) << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << error_report(Error(ErrorCode::InvalidArgument, e.what())).dump(2) << "\n";
        return 1;
    }
}
