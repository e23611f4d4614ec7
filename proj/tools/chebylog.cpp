// chebylog: shifted-Chebyshev coefficients of x^m (-log x)^l on [0, 1].
//
//   chebylog table  --max-m M --max-l L --max-n N [--mode exact|numeric|both] [--format tsv|json] [--digits D]
//   chebylog verify --max-m M --max-l L --max-n N [--tol T]
//   chebylog eval   -m M -l L -N TERMS -x X [--digits D]
//
// Exit status: 0 success, 1 usage error, 2 verification failure.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chebylog/cli.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shifted-Chebyshev expansion coefficients of x^m (-log x)^l"};
    app.require_subcommand(1);

    chebylog::TableOptions table_opts;
    std::string mode = "exact";
    std::string format = "tsv";
    auto* table = app.add_subcommand("table", "Emit the coefficient table A_{m,l,n} (and B_{m,l} where n = 0, l >= 1)");
    table->add_option("--max-m", table_opts.max_m, "Largest power of x")->required();
    table->add_option("--max-l", table_opts.max_l, "Largest power of -log x")->required();
    table->add_option("--max-n", table_opts.max_n, "Largest Chebyshev index")->required();
    table->add_option("--mode", mode, "exact, numeric or both")->capture_default_str();
    table->add_option("--format", format, "tsv or json")->capture_default_str();
    table->add_option("--digits", table_opts.digits, "Significant digits of numeric output")->capture_default_str();
    table->add_option("--threads", table_opts.threads, "Worker threads (0: all cores)")->capture_default_str();

    int vm = 0, vl = 0, vn = 0;
    double tol = 1e-9;
    auto* verify = app.add_subcommand("verify", "Cross-check exact values against series and quadrature");
    verify->add_option("--max-m", vm, "Largest power of x")->required();
    verify->add_option("--max-l", vl, "Largest power of -log x")->required();
    verify->add_option("--max-n", vn, "Largest Chebyshev index")->required();
    verify->add_option("--tol", tol, "Largest tolerated absolute discrepancy")->capture_default_str();

    int em = 0, el = 0, terms = 0;
    double x = 0.0;
    int eval_digits = 15;
    auto* eval = app.add_subcommand("eval", "Evaluate the truncated expansion at a point");
    eval->add_option("-m,--m", em, "Power of x")->required();
    eval->add_option("-l,--l", el, "Power of -log x")->required();
    eval->add_option("-N,--terms", terms, "Highest Chebyshev index kept")->required();
    eval->add_option("-x,--x", x, "Evaluation point in [0, 1]")->required();
    eval->add_option("--digits", eval_digits, "Significant digits of output")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*table) {
            table_opts.mode = chebylog::parse_table_mode(mode);
            table_opts.format = chebylog::parse_table_format(format);
            chebylog::CoeffCache cache;
            const auto rows = chebylog::build_table(table_opts, cache);
            chebylog::write_table(std::cout, rows, table_opts);
            return 0;
        }
        if (*verify) {
            const auto report = chebylog::verify(vm, vl, vn, tol);
            chebylog::write_report(std::cout, report);
            for (const auto& f : report.failures) std::cerr << "verify: " << f << '\n';
            return report.passed() ? 0 : kExitVerifyFailed;
        }
        if (*eval) {
            if (eval_digits < 1 || eval_digits > 17) throw chebylog::UsageError("digits must be in 1..17");
            const auto r = chebylog::eval_point(em, el, terms, x);
            std::cout << "approximation\t" << chebylog::format_number(r.approximation, eval_digits) << '\n'
                      << "reference\t" << chebylog::format_number(r.reference, eval_digits) << '\n'
                      << "error\t" << chebylog::format_number(r.error, 3) << '\n';
            return 0;
        }
    } catch (const chebylog::UsageError& e) {
        std::cerr << "chebylog: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "chebylog: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "chebylog: internal error: " << e.what() << '\n';
        return 3;
    }
    return kExitUsage;
}
