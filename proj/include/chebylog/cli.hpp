#pragma once

// Library side of the command-line tool: coefficient tables, the
// three-route verification report, and point evaluation of truncated
// expansions. The executable in tools/ only parses flags and calls these.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "chebylog/chebeval.hpp"
#include "chebylog/coeffs.hpp"
#include "chebylog/exactnum.hpp"
#include "chebylog/numerics.hpp"

namespace chebylog {

/// Bad flags or bounds; the tool exits with status 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class TableMode { exact, numeric, both };
enum class TableFormat { tsv, json };

inline constexpr std::size_t kMaxTableRows = 100'000;

struct TableOptions {
    int max_m = 0;
    int max_l = 0;
    int max_n = 0;
    TableMode mode = TableMode::exact;
    TableFormat format = TableFormat::tsv;
    int digits = 15;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct TableRow {
    int m = 0;
    int l = 0;
    int n = 0;
    std::optional<SymValue> a_exact;
    std::optional<NumValue> a_numeric;
    std::optional<SymValue> b_exact;
    std::optional<NumValue> b_numeric;

    [[nodiscard]] bool has_companion() const noexcept { return n == 0 && l >= 1; }
};

[[nodiscard]] inline TableMode parse_table_mode(const std::string& s) {
    if (s == "exact") return TableMode::exact;
    if (s == "numeric") return TableMode::numeric;
    if (s == "both") return TableMode::both;
    throw UsageError("unknown mode '" + s + "' (expected exact, numeric or both)");
}

[[nodiscard]] inline TableFormat parse_table_format(const std::string& s) {
    if (s == "tsv") return TableFormat::tsv;
    if (s == "json") return TableFormat::json;
    throw UsageError("unknown format '" + s + "' (expected tsv or json)");
}

/// Shortest correctly rounded form with `digits` significant digits (ties to
/// even on the exact binary value).
[[nodiscard]] inline std::string format_number(double v, int digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

namespace detail {

inline void validate_table_options(const TableOptions& o) {
    if (o.max_m < 0 || o.max_l < 0 || o.max_n < 0) throw UsageError("table bounds must be >= 0");
    if (o.digits < 1 || o.digits > 17) throw UsageError("digits must be in 1..17");
    const auto rows = static_cast<std::size_t>(o.max_m + 1) * static_cast<std::size_t>(o.max_l + 1) *
                      static_cast<std::size_t>(o.max_n + 1);
    if (rows > kMaxTableRows) {
        throw UsageError("table would have " + std::to_string(rows) + " rows (limit " +
                         std::to_string(kMaxTableRows) + ")");
    }
}

/// Runs job(i) for i in [0, count) on a small worker pool; rethrows the
/// first exception.
template <class Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// All rows for 0 <= m <= max_m, 0 <= l <= max_l, 0 <= n <= max_n, sorted by
/// (m, l, n). Cells (m, l) are computed in parallel against the shared cache.
[[nodiscard]] inline std::vector<TableRow> build_table(const TableOptions& opts, CoeffCache& cache,
                                                       const NumericEnv& env = {}) {
    detail::validate_table_options(opts);
    const bool want_exact = opts.mode != TableMode::numeric;
    const bool want_numeric = opts.mode != TableMode::exact;
    const auto cols_l = static_cast<std::size_t>(opts.max_l + 1);
    const auto cols_n = static_cast<std::size_t>(opts.max_n + 1);
    const std::size_t cells = static_cast<std::size_t>(opts.max_m + 1) * cols_l;

    std::vector<TableRow> rows(cells * cols_n);
    detail::parallel_for(cells, opts.threads, [&](std::size_t cell) {
        const int m = static_cast<int>(cell / cols_l);
        const int l = static_cast<int>(cell % cols_l);
        for (int n = 0; n <= opts.max_n; ++n) {
            TableRow& row = rows[cell * cols_n + static_cast<std::size_t>(n)];
            row.m = m;
            row.l = l;
            row.n = n;
            SymValue a = coefficient({m, l, n}, cache);
            if (want_numeric) row.a_numeric = eval_sym(a, env);
            if (want_exact) row.a_exact = std::move(a);
            if (row.has_companion()) {
                SymValue b = b_ml(m, l, cache);
                if (want_numeric) row.b_numeric = eval_sym(b, env);
                if (want_exact) row.b_exact = std::move(b);
            }
        }
    });
    return rows;
}

/// TSV: `m<TAB>l<TAB>n<TAB>A[<TAB>B]` after a `#` header. In `both` mode each
/// of A and B is written as two columns, exact then numeric.
inline void write_table(std::ostream& os, const std::vector<TableRow>& rows, const TableOptions& opts) {
    const bool exact = opts.mode != TableMode::numeric;
    const bool numeric = opts.mode != TableMode::exact;

    if (opts.format == TableFormat::json) {
        auto value_json = [&](const std::optional<SymValue>& ex, const std::optional<NumValue>& num) {
            nlohmann::ordered_json v;
            if (ex) v["exact"] = to_string(*ex);
            if (num) v["numeric"] = std::stod(format_number(num->value, opts.digits));
            return v;
        };
        nlohmann::ordered_json doc;
        doc["mode"] = opts.mode == TableMode::exact ? "exact" : opts.mode == TableMode::numeric ? "numeric" : "both";
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["m"] = r.m;
            j["l"] = r.l;
            j["n"] = r.n;
            j["A"] = value_json(r.a_exact, r.a_numeric);
            if (r.has_companion()) j["B"] = value_json(r.b_exact, r.b_numeric);
            doc["rows"].push_back(std::move(j));
        }
        os << doc.dump(2) << '\n';
        return;
    }

    os << (exact && numeric ? "# m\tl\tn\tA\tA_numeric\tB\tB_numeric\n" : "# m\tl\tn\tA\tB\n");
    auto cells = [&](const std::optional<SymValue>& ex, const std::optional<NumValue>& num) {
        std::string s;
        if (exact) s += '\t' + to_string(*ex);
        if (numeric) s += '\t' + format_number(num->value, opts.digits);
        return s;
    };
    for (const auto& r : rows) {
        os << r.m << '\t' << r.l << '\t' << r.n << cells(r.a_exact, r.a_numeric);
        if (r.has_companion()) os << cells(r.b_exact, r.b_numeric);
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct RouteDiscrepancy {
    std::string name;
    double max_abs = 0.0;
    std::string worst_key;
    std::size_t checks = 0;
    bool passed = true;
};

struct VerifyReport {
    double tolerance = 0.0;
    std::vector<RouteDiscrepancy> routes;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

namespace detail {

[[nodiscard]] inline std::string key_string(int m, int l, int n) {
    return "(" + std::to_string(m) + "," + std::to_string(l) + "," + std::to_string(n) + ")";
}
[[nodiscard]] inline std::string key_string(int m, int l) {
    return "(" + std::to_string(m) + "," + std::to_string(l) + ")";
}

inline void record(RouteDiscrepancy& route, VerifyReport& report, double diff, const std::string& key) {
    ++route.checks;
    const double d = std::isnan(diff) ? std::numeric_limits<double>::infinity() : diff;
    if (route.checks == 1 || d > route.max_abs) {
        route.max_abs = d;
        route.worst_key = key;
    }
    if (!(d <= report.tolerance)) {
        route.passed = false;
        report.failures.push_back(route.name + " " + key + ": discrepancy " + format_number(d, 6));
    }
}

}  // namespace detail

/// Compares every A_{m,l,n} in range three ways (exact, quadrature, and for
/// n = 0 the series) and every B_{m,l} (-1 <= m <= max_m, 1 <= l <= max_l)
/// against its series.
[[nodiscard]] inline VerifyReport verify(int max_m, int max_l, int max_n, double tol,
                                         const NumericEnv& env = {}) {
    if (!(tol > 0.0)) throw UsageError("tolerance must be > 0");
    if (max_m < 0 || max_l < 0 || max_n < 0) throw UsageError("verify bounds must be >= 0");

    VerifyReport report;
    report.tolerance = tol;
    RouteDiscrepancy exact_quad;
    exact_quad.name = "exact-vs-quadrature";
    RouteDiscrepancy exact_series;
    exact_series.name = "exact-vs-series(n=0)";
    RouteDiscrepancy b_exact_series;
    b_exact_series.name = "companion-exact-vs-series";

    CoeffCache cache;
    for (int m = 0; m <= max_m; ++m) {
        for (int l = 0; l <= max_l; ++l) {
            for (int n = 0; n <= max_n; ++n) {
                const auto key = detail::key_string(m, l, n);
                const NumValue exact = eval_sym(coefficient({m, l, n}, cache), env);
                const NumValue quad = quad_oracle({m, l, n}, env);
                detail::record(exact_quad, report, std::fabs(exact.value - quad.value), key);
                if (n == 0) {
                    const NumValue series = a0_series(m, l, env);
                    detail::record(exact_series, report, std::fabs(exact.value - series.value), key);
                }
            }
        }
    }
    for (int m = -1; m <= max_m; ++m) {
        for (int l = 1; l <= max_l; ++l) {
            const NumValue exact = eval_sym(b_ml(m, l, cache), env);
            const NumValue series = b_series(m, l, env);
            detail::record(b_exact_series, report, std::fabs(exact.value - series.value),
                           detail::key_string(m, l));
        }
    }
    report.routes = {exact_quad, exact_series, b_exact_series};
    return report;
}

inline void write_report(std::ostream& os, const VerifyReport& report) {
    for (const auto& r : report.routes) {
        os << r.name << "\tchecks=" << r.checks;
        if (r.checks > 0) os << "\tmax_abs=" << format_number(r.max_abs, 3) << "\tworst=" << r.worst_key;
        os << '\t' << (r.passed ? "PASS" : "FAIL") << '\n';
    }
    os << (report.passed() ? "PASS" : "FAIL") << " (tol " << format_number(report.tolerance, 3) << ")\n";
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct PointEvaluation {
    double approximation = 0.0;
    double reference = 0.0;
    double error = 0.0;  // approximation - reference
};

/// x^m (-log x)^l, with the limits 0 at x = 0 (m >= 1) and 1 for m = l = 0.
[[nodiscard]] inline double kernel_value(int m, int l, double x) {
    if (l > 0 && x == 1.0) return 0.0;
    if (x == 0.0) {
        if (m == 0 && l >= 1) throw std::domain_error("kernel diverges at x = 0 for m = 0, l >= 1");
        return m == 0 ? 1.0 : 0.0;
    }
    return std::pow(x, m) * std::pow(-std::log(x), l);
}

/// Numeric A_{m,l,0..N} from the exact coefficients.
[[nodiscard]] inline ChebSeries expansion(int m, int l, int N, CoeffCache& cache, const NumericEnv& env = {}) {
    if (N < 0) throw UsageError("number of terms N must be >= 0");
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) coeffs.push_back(eval_sym(coefficient({m, l, n}, cache), env).value);
    return ChebSeries(std::move(coeffs));
}

[[nodiscard]] inline PointEvaluation eval_point(int m, int l, int N, double x, const NumericEnv& env = {}) {
    if (m < 0 || l < 0) throw UsageError("m and l must be >= 0");
    if (N < 0) throw UsageError("number of terms N must be >= 0");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("x must lie in [0, 1]");
    if (x == 0.0 && m == 0 && l >= 1) throw std::domain_error("x = 0 is a singular point for m = 0, l >= 1");
    CoeffCache cache;
    const ChebSeries series = expansion(m, l, N, cache, env);
    PointEvaluation out;
    out.approximation = clenshaw_primed(series, x);
    out.reference = kernel_value(m, l, x);
    out.error = out.approximation - out.reference;
    return out;
}

}  // namespace chebylog
