// mills: exact Laplace-polynomial tables, certified Mills-ratio brackets,
// continued-fraction convergents, asymptotic partial sums and the identity
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mills/mills.hpp"

namespace {

using nlohmann::json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

// Thrown for argument problems discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a certified invariant fails to check out; a defect, not bad input.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open output file '" + path + "'");
    out << body;
}

json rational_json(const mills::BigRational& q) {
    return json{{"rational", {{"num", q.num().get_str()}, {"den", q.den().get_str()}}}};
}

std::vector<mills::BigRational> make_grid(double start, double stop, int count, const std::string& spacing) {
    if (count < 1) throw UsageError("grid needs --t-count >= 1");
    if (!(start > 0.0)) throw UsageError("grid requires t > 0");
    if (stop < start) throw UsageError("grid requires --t-stop >= --t-start");
    std::vector<mills::BigRational> grid;
    grid.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double x = start;
        if (count > 1) {
            double f = static_cast<double>(i) / (count - 1);
            x = spacing == "log" ? start * std::pow(stop / start, f) : start + (stop - start) * f;
        }
        grid.push_back(mills::BigRational::from_double(x));
    }
    return grid;
}

// ---- table ----

std::string render_table(const std::string& which, int k_max) {
    std::ostringstream os;
    if (which == "laplace") {
        for (int k = 1; k <= k_max; ++k) {
            mills::LaplacePair pair = mills::laplace_pair_recurrence(k);
            os << "P_" << k << " = " << pair.P.to_string() << "; Q_" << k - 1 << " = "
               << pair.Q_prev.to_string() << "\n";
        }
        return os.str();
    }
    for (int k = 0; k <= k_max; ++k) {
        os << "k=" << k << ": ";
        for (int m = 0; m <= k; ++m) {
            mills::BigInt v;
            if (which == "p")
                v = mills::p_coeff_closed(k, m);
            else if (which == "q")
                v = mills::q_coeff_closed(k, m);
            else
                v = mills::beta_coeff(k, m);
            os << v.get_str() << (m == k ? "" : ", ");
        }
        os << "\n";
    }
    return os.str();
}

int run_table(const std::string& which, int k_max, const std::string& out_path) {
    if (k_max < 0) throw UsageError("--k-max must be nonnegative");
    write_output(out_path, render_table(which, k_max));
    return 0;
}

// ---- bound ----

struct BoundRow {
    mills::BigRational t;
    int depth;
    mills::Bracket b;
    std::string r_decimal;
};

int run_bound(double t_start, double t_stop, int t_count, const std::string& spacing, int depth,
              int digits, const std::string& format, const std::string& out_path) {
    if (depth < 1) throw UsageError("--depth must be >= 1");
    if (digits < 20) throw UsageError("--digits must be >= 20");
    auto grid = make_grid(t_start, t_stop, t_count, spacing);
    const mpfr_prec_t prec = mills::digits_to_bits(digits);

    std::vector<BoundRow> rows;
    for (const auto& t : grid) {
        mills::BigReal r = mills::mills_ratio(t, prec);
        for (int j = 1; j <= depth; ++j) {
            mills::Bracket b = mills::bracket(t, j);
            // Certify the sandwich before emitting anything.
            if (!(r.definitely_above(b.lower) && r.definitely_below(b.upper)))
                throw InvariantViolation("bracket failed to sandwich R at t = " + t.to_string() +
                                         ", depth " + std::to_string(j));
            rows.push_back(BoundRow{t, j, std::move(b), r.to_decimal_string(digits)});
        }
    }

    std::string body;
    if (format == "csv") {
        std::ostringstream os;
        os << "t,depth,lower,lower_decimal,upper,upper_decimal,r_decimal,width,width_decimal\n";
        for (const auto& row : rows) {
            mills::BigRational w = row.b.width();
            os << row.t.to_fraction_string() << ',' << row.depth << ',' << row.b.lower.to_fraction_string()
               << ',' << row.b.lower.to_decimal_string(digits) << ',' << row.b.upper.to_fraction_string()
               << ',' << row.b.upper.to_decimal_string(digits) << ',' << row.r_decimal << ','
               << w.to_fraction_string() << ',' << w.to_decimal_string(digits) << "\n";
        }
        body = os.str();
    } else {
        json j;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            mills::BigRational w = row.b.width();
            j["rows"].push_back(json{{"t", rational_json(row.t)},
                                     {"depth", row.depth},
                                     {"lower", rational_json(row.b.lower)},
                                     {"lower_decimal", row.b.lower.to_decimal_string(digits)},
                                     {"upper", rational_json(row.b.upper)},
                                     {"upper_decimal", row.b.upper.to_decimal_string(digits)},
                                     {"r_decimal", row.r_decimal},
                                     {"width", rational_json(w)},
                                     {"width_decimal", w.to_decimal_string(digits)}});
        }
        body = j.dump(2) + "\n";
    }
    write_output(out_path, body);
    return 0;
}

// ---- cf / asym ----

int run_cf(const std::string& t_str, int k_max, int digits, const std::string& format,
           const std::string& out_path) {
    if (digits < 20) throw UsageError("--digits must be >= 20");
    if (k_max < 1) throw UsageError("--k-max must be >= 1");
    mills::BigRational t = mills::BigRational::from_string(t_str);
    if (t.sign() <= 0) throw UsageError("cf requires t > 0");
    const mpfr_prec_t prec = mills::digits_to_bits(digits);
    mills::BigReal r = mills::mills_ratio(t, prec);

    struct Row {
        int k;
        mills::BigRational conv;
        const char* side;
        bool ok;
    };
    std::vector<Row> rows;
    for (int k = 1; k <= k_max; ++k) {
        mills::BigRational conv = mills::cf_convergent(k, t);
        bool lower_side = k % 2 == 0;  // even k: Q_{k-1}/P_k is a lower bound
        bool ok = lower_side ? r.definitely_above(conv) : r.definitely_below(conv);
        if (!ok)
            throw InvariantViolation("convergent k=" + std::to_string(k) + " fell on the wrong side of R");
        rows.push_back(Row{k, std::move(conv), lower_side ? "lower" : "upper", ok});
    }

    std::string body;
    if (format == "csv") {
        std::ostringstream os;
        os << "k,convergent,convergent_decimal,side,verdict\n";
        for (const auto& row : rows)
            os << row.k << ',' << row.conv.to_fraction_string() << ','
               << row.conv.to_decimal_string(digits) << ',' << row.side << ','
               << (row.ok ? "ok" : "violated") << "\n";
        body = os.str();
    } else {
        json j;
        j["r_decimal"] = r.to_decimal_string(digits);
        j["rows"] = json::array();
        for (const auto& row : rows)
            j["rows"].push_back(json{{"k", row.k},
                                     {"convergent", rational_json(row.conv)},
                                     {"convergent_decimal", row.conv.to_decimal_string(digits)},
                                     {"side", row.side},
                                     {"verdict", row.ok ? "ok" : "violated"}});
        body = j.dump(2) + "\n";
    }
    write_output(out_path, body);
    return 0;
}

int run_asym(const std::string& t_str, int j_max, int digits, const std::string& format,
             const std::string& out_path) {
    if (digits < 20) throw UsageError("--digits must be >= 20");
    if (j_max < 0) throw UsageError("--j-max must be >= 0");
    mills::BigRational t = mills::BigRational::from_string(t_str);
    if (t.sign() <= 0) throw UsageError("asym requires t > 0");
    const mpfr_prec_t prec = mills::digits_to_bits(digits);
    mills::BigReal r = mills::mills_ratio(t, prec);

    struct Row {
        int j;
        mills::BigRational sum;
        const char* side;
        bool ok;
    };
    std::vector<Row> rows;
    for (int j = 0; j <= j_max; ++j) {
        mills::BigRational s = mills::asymptotic_partial_sum(t, j);
        bool upper_side = j % 2 == 0;  // S_0 = 1/t sits above R
        bool ok = upper_side ? r.definitely_below(s) : r.definitely_above(s);
        if (!ok)
            throw InvariantViolation("partial sum j=" + std::to_string(j) + " fell on the wrong side of R");
        rows.push_back(Row{j, std::move(s), upper_side ? "upper" : "lower", ok});
    }

    std::string body;
    if (format == "csv") {
        std::ostringstream os;
        os << "j,partial_sum,partial_sum_decimal,side,verdict\n";
        for (const auto& row : rows)
            os << row.j << ',' << row.sum.to_fraction_string() << ','
               << row.sum.to_decimal_string(digits) << ',' << row.side << ','
               << (row.ok ? "ok" : "violated") << "\n";
        body = os.str();
    } else {
        json j;
        j["r_decimal"] = r.to_decimal_string(digits);
        j["rows"] = json::array();
        for (const auto& row : rows)
            j["rows"].push_back(json{{"j", row.j},
                                     {"partial_sum", rational_json(row.sum)},
                                     {"partial_sum_decimal", row.sum.to_decimal_string(digits)},
                                     {"side", row.side},
                                     {"verdict", row.ok ? "ok" : "violated"}});
        body = j.dump(2) + "\n";
    }
    write_output(out_path, body);
    return 0;
}

// ---- verify ----

int run_verify(const std::string& suite_name, const std::string& out_path) {
    mills::Suite suite = mills::suite_from_string(suite_name);
    auto reports = mills::run_suite(suite);
    std::ostringstream os;
    bool all_ok = true;
    for (const auto& rep : reports) {
        os << rep.name << " " << rep.kind_string() << " " << rep.status() << " | " << rep.detail << "\n";
        all_ok = all_ok && rep.verified;
    }
    os << (all_ok ? "all checks verified" : "FAILURES present") << " (" << reports.size() << " checks)\n";
    write_output(out_path, os.str());
    return all_ok ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace polynomials and certified Mills-ratio numerics"};
    app.require_subcommand(1);

    std::string out_path;

    // table
    auto* table = app.add_subcommand("table", "print a polynomial/coefficient table");
    std::string table_which;
    int table_kmax = 8;
    table->add_option("which", table_which, "one of laplace|p|q|beta")
        ->required()
        ->check(CLI::IsMember({"laplace", "p", "q", "beta"}));
    table->add_option("--k-max", table_kmax, "largest order to print");
    table->add_option("--out", out_path, "write output to PATH instead of stdout");

    // bound
    auto* bound = app.add_subcommand("bound", "certified rational brackets for R(t) over a grid");
    double t_start = 0.0, t_stop = 0.0;
    int t_count = 1, depth = 5, digits = 30;
    std::string spacing = "linear", format = "csv";
    bound->add_option("--t-start", t_start, "first grid point (> 0)")->required();
    auto* stop_opt = bound->add_option("--t-stop", t_stop, "last grid point (defaults to --t-start)");
    bound->add_option("--t-count", t_count, "number of grid points");
    bound->add_option("--t-spacing", spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    bound->add_option("--depth", depth, "emit depths 1..DEPTH per grid point");
    bound->add_option("--digits", digits, "decimal digits for R and decimal columns (>= 20)");
    bound->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bound->add_option("--out", out_path, "write output to PATH instead of stdout");

    // cf
    auto* cf = app.add_subcommand("cf", "continued-fraction convergents at a rational t");
    std::string cf_t;
    int cf_kmax = 10;
    int cf_digits = 30;
    std::string cf_format = "csv";
    cf->add_option("--t", cf_t, "evaluation point, e.g. 7/2 or 3.5")->required();
    cf->add_option("--k-max", cf_kmax, "deepest convergent");
    cf->add_option("--digits", cf_digits, "decimal digits (>= 20)");
    cf->add_option("--format", cf_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cf->add_option("--out", out_path, "write output to PATH instead of stdout");

    // asym
    auto* asym = app.add_subcommand("asym", "asymptotic partial sums at a rational t");
    std::string asym_t;
    int asym_jmax = 5;
    int asym_digits = 30;
    std::string asym_format = "csv";
    asym->add_option("--t", asym_t, "evaluation point, e.g. 2 or 5/2")->required();
    asym->add_option("--j-max", asym_jmax, "last partial sum order");
    asym->add_option("--digits", asym_digits, "decimal digits (>= 20)");
    asym->add_option("--format", asym_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    asym->add_option("--out", out_path, "write output to PATH instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite_name = "all";
    verify->add_option("suite", suite_name, "all|identities|polynomials|numeric")
        ->check(CLI::IsMember({"all", "identities", "polynomials", "numeric"}));
    verify->add_option("--out", out_path, "write output to PATH instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (table->parsed()) return run_table(table_which, table_kmax, out_path);
        if (bound->parsed())
            return run_bound(t_start, stop_opt->count() ? t_stop : t_start, t_count, spacing, depth,
                             digits, format, out_path);
        if (cf->parsed()) return run_cf(cf_t, cf_kmax, cf_digits, cf_format, out_path);
        if (asym->parsed()) return run_asym(asym_t, asym_jmax, asym_digits, asym_format, out_path);
        if (verify->parsed()) return run_verify(suite_name, out_path);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mills::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
