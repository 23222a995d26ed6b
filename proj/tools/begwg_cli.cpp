#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "begwg/batch.hpp"
#include "begwg/begwg.hpp"
#include "begwg/dataio.hpp"
#include "begwg/egwg.hpp"
#include "begwg/estimation.hpp"
#include "begwg/moments.hpp"
#include "begwg/reliability.hpp"

namespace {

using namespace begwg;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool parse_number(const std::string& tok, double& out) {
    const char* first = tok.c_str();
    const char* last = first + tok.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

// A grid is either a single value "v" or "start:stop:steps" with `steps`
// equally spaced points including both endpoints.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    toks.push_back(cur);
    if (toks.size() == 1) {
        double v;
        if (!parse_number(toks[0], v))
            throw std::invalid_argument("grid: not a number: " + spec);
        return {v};
    }
    if (toks.size() != 3)
        throw std::invalid_argument(
            "grid: expected a value or start:stop:steps, got " + spec);
    double start, stop, steps_d;
    if (!parse_number(toks[0], start) || !parse_number(toks[1], stop) ||
        !parse_number(toks[2], steps_d) || steps_d < 1.0 ||
        steps_d != static_cast<double>(static_cast<long>(steps_d)))
        throw std::invalid_argument("grid: bad start:stop:steps spec: " + spec);
    const long steps = static_cast<long>(steps_d);
    std::vector<double> xs;
    xs.reserve(steps);
    if (steps == 1) {
        xs.push_back(start);
    } else {
        for (long i = 0; i < steps; ++i)
            xs.push_back(start + i * (stop - start) / (steps - 1));
    }
    return xs;
}

struct ModelFlags {
    double a = 0.1, b = 0.2, c = 0.2, d = 0.5;
    double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
};

void add_base_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--a", mf.a, "base scale a")->capture_default_str();
    cmd->add_option("--b", mf.b, "base power b")->capture_default_str();
    cmd->add_option("--c", mf.c, "base rate c")->capture_default_str();
    cmd->add_option("--d", mf.d, "base power d")->capture_default_str();
}

void add_alpha_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--alpha1", mf.alpha1, "shape of component 1")->required();
    cmd->add_option("--alpha2", mf.alpha2, "shape of component 2")->required();
    cmd->add_option("--alpha3", mf.alpha3, "shared shape")->required();
}

// Output sink: file when --output was given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw DataError("cannot open output file " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int run_eval(const ModelFlags& mf, const std::string& quantity,
             const std::string& x1spec, const std::string& x2spec,
             bool as_json, const std::string& output) {
    const BegwgParams p(mf.a, mf.b, mf.c, mf.d, mf.alpha1, mf.alpha2,
                        mf.alpha3);
    const bool one_dim = quantity == "min-cdf" || quantity == "max-cdf";
    if (!one_dim && x2spec.empty())
        throw std::invalid_argument("--x2 is required for " + quantity);
    if (one_dim && !x2spec.empty())
        throw std::invalid_argument("--x2 does not apply to " + quantity);
    const std::vector<double> g1 = parse_grid(x1spec);
    const std::vector<double> g2 = one_dim ? std::vector<double>{}
                                           : parse_grid(x2spec);
    Sink sink(output);
    std::ostream& out = sink.out();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();

    auto csv_header = [&]() -> const char* {
        if (one_dim) return "t,value";
        if (quantity == "pdf" || quantity == "reversed-hazard")
            return "x1,x2,value,region";
        if (quantity == "hazard-gradient") return "x1,x2,h1,h2";
        return "x1,x2,value";
    };
    if (!as_json) out << csv_header() << "\n";

    auto emit_1d = [&](double t, double v) {
        if (as_json)
            rows.push_back({{"t", t}, {"value", v}});
        else
            out << fmt17(t) << "," << fmt17(v) << "\n";
    };
    auto emit_value = [&](double x1, double x2, double v) {
        if (as_json)
            rows.push_back({{"x1", x1}, {"x2", x2}, {"value", v}});
        else
            out << fmt17(x1) << "," << fmt17(x2) << "," << fmt17(v) << "\n";
    };
    auto emit_region = [&](double x1, double x2, const RegionValue& rv) {
        if (as_json)
            rows.push_back({{"x1", x1},
                            {"x2", x2},
                            {"value", rv.value},
                            {"region", region_name(rv.region)}});
        else
            out << fmt17(x1) << "," << fmt17(x2) << "," << fmt17(rv.value)
                << "," << region_name(rv.region) << "\n";
    };
    auto emit_pair = [&](double x1, double x2, const GradientPair& g) {
        if (as_json)
            rows.push_back(
                {{"x1", x1}, {"x2", x2}, {"h1", g.g1}, {"h2", g.g2}});
        else
            out << fmt17(x1) << "," << fmt17(x2) << "," << fmt17(g.g1) << ","
                << fmt17(g.g2) << "\n";
    };

    if (one_dim) {
        for (double t : g1)
            emit_1d(t, quantity == "min-cdf" ? min_cdf(p, t) : max_cdf(p, t));
    } else {
        for (double x1 : g1)
            for (double x2 : g2) {
                if (quantity == "cdf")
                    emit_value(x1, x2, joint_cdf(p, x1, x2));
                else if (quantity == "survival")
                    emit_value(x1, x2, joint_survival(p, x1, x2));
                else if (quantity == "mwt")
                    emit_value(x1, x2, mean_waiting_time_joint(p, x1, x2));
                else if (quantity == "pdf")
                    emit_region(x1, x2, joint_pdf(p, x1, x2));
                else if (quantity == "reversed-hazard")
                    emit_region(x1, x2, reversed_hazard(p, x1, x2));
                else
                    emit_pair(x1, x2, hazard_gradient(p, x1, x2));
            }
    }
    if (as_json) out << rows.dump(2) << "\n";
    return 0;
}

int run_moments(const ModelFlags& mf, const std::vector<int>& rs, bool as_json,
                const std::string& output) {
    const BegwgParams p(mf.a, mf.b, mf.c, mf.d, mf.alpha1, mf.alpha2,
                        mf.alpha3);
    Sink sink(output);
    std::ostream& out = sink.out();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (!as_json)
        out << "which,r,quadrature,series_value,series_converged,series_terms\n";
    for (int which : {1, 2})
        for (int r : rs) {
            const double quad = raw_moment_quadrature(p, which, r);
            const SeriesResult sr = raw_moment_series(p, which, r);
            if (as_json)
                rows.push_back({{"which", which},
                                {"r", r},
                                {"quadrature", quad},
                                {"series_value", sr.value},
                                {"series_converged", sr.converged},
                                {"series_terms", sr.terms_used}});
            else
                out << which << "," << r << "," << fmt17(quad) << ","
                    << fmt17(sr.value) << "," << (sr.converged ? 1 : 0) << ","
                    << sr.terms_used << "\n";
        }
    if (as_json) out << rows.dump(2) << "\n";
    return 0;
}

int run_simulate(const ModelFlags& mf, std::size_t n, std::uint64_t seed,
                 const std::string& output) {
    const BegwgParams p(mf.a, mf.b, mf.c, mf.d, mf.alpha1, mf.alpha2,
                        mf.alpha3);
    const PairedSample s = sample_pairs(p, seed, n);
    Sink sink(output);
    save_csv(sink.out(), s);
    return 0;
}

void print_fit_text(std::ostream& out, const FitResult& r) {
    out << "alpha1          " << fmt17(r.alpha_hat[0]) << "\n";
    out << "alpha2          " << fmt17(r.alpha_hat[1]) << "\n";
    out << "alpha3          " << fmt17(r.alpha_hat[2]) << "\n";
    out << "log_likelihood  " << fmt17(r.log_likelihood) << "\n";
    out << "aic             " << fmt17(r.aic) << "\n";
    out << "caic            " << fmt17(r.caic) << "\n";
    out << "bic             " << fmt17(r.bic_paper) << "\n";
    out << "bic_standard    " << fmt17(r.bic_standard) << "\n";
    for (int i = 0; i < 3; ++i)
        out << "ci_alpha" << i + 1 << "       [" << fmt17(r.ci[i].lo) << ", "
            << fmt17(r.ci[i].hi) << "]\n";
    out << "converged       " << (r.converged ? "yes" : "no") << "\n";
    out << "iterations      " << r.iterations << "\n";
}

int run_fit(const ModelFlags& mf, const std::string& input, double tie_tol,
            bool as_json) {
    const BaseParams base{mf.a, mf.b, mf.c, mf.d};
    const PairedSample s = load_csv(input);
    const FitResult r = fit_mle(base, s, tie_tol);
    if (as_json)
        std::cout << fit_result_to_json(r) << "\n";
    else
        print_fit_text(std::cout, r);
    return r.converged ? 0 : 3;
}

// One comparison row of the reproduction report.
struct RepRow {
    const char* name;
    double computed;
    const char* reference;  // as printed in the reference analysis
    bool ok;
};

int run_reproduce() {
    const BaseParams base;
    const PairedSample& data = nfl_dataset();
    const FitResult r = fit_mle(base, data);

    auto rel_ok = [](double computed, double ref, double tol) {
        return std::fabs(computed - ref) <= tol * std::fabs(ref);
    };
    auto abs_ok = [](double computed, double ref, double tol) {
        return std::fabs(computed - ref) <= tol;
    };

    const double negll = -r.log_likelihood;
    std::vector<RepRow> rows = {
        {"alpha1", r.alpha_hat[0], "0.0323", rel_ok(r.alpha_hat[0], 0.0323, 0.15)},
        {"alpha2", r.alpha_hat[1], "0.186", rel_ok(r.alpha_hat[1], 0.186, 0.15)},
        {"alpha3", r.alpha_hat[2], "0.406", rel_ok(r.alpha_hat[2], 0.406, 0.15)},
        {"neg_log_likelihood", negll, "354.03", abs_ok(negll, 354.03, 0.5)},
        {"aic", r.aic, "714.06", abs_ok(r.aic, 714.06, 0.5)},
        {"caic", r.caic, "714.69", abs_ok(r.caic, 714.69, 0.5)},
        {"bic", r.bic_paper, "359.63", abs_ok(r.bic_paper, 359.63, 0.5)},
        {"var_alpha1", r.covariance[0][0], "0.0005173",
         rel_ok(r.covariance[0][0], 0.0005173, 0.10)},
        {"var_alpha2", r.covariance[1][1], "0.0021423",
         rel_ok(r.covariance[1][1], 0.0021423, 0.10)},
        {"var_alpha3", r.covariance[2][2], "0.0102564",
         rel_ok(r.covariance[2][2], 0.0102564, 0.10)},
    };
    const double ci_ref[3][2] = {{0.0, 0.077}, {0.0955, 0.277}, {0.207, 0.605}};
    const char* ci_txt[3] = {"[0, 0.077]", "[0.0955, 0.277]", "[0.207, 0.605]"};

    std::printf("%-20s %-26s %-16s %s\n", "metric", "computed", "reference",
                "flag");
    for (const RepRow& row : rows)
        std::printf("%-20s %-26s %-16s %s\n", row.name,
                    fmt17(row.computed).c_str(), row.reference,
                    row.ok ? "ok" : "DIFFERS");
    int agree = 0;
    for (const RepRow& row : rows) agree += row.ok;
    for (int i = 0; i < 3; ++i) {
        const bool ok = abs_ok(r.ci[i].lo, ci_ref[i][0], 0.005) &&
                        abs_ok(r.ci[i].hi, ci_ref[i][1], 0.005);
        agree += ok;
        const std::string ci =
            "[" + fmt17(r.ci[i].lo) + ", " + fmt17(r.ci[i].hi) + "]";
        std::printf("ci_alpha%-12d %-26s %-16s %s\n", i + 1, ci.c_str(),
                    ci_txt[i], ok ? "ok" : "DIFFERS");
    }
    std::printf("\nagreement: %d/13 rows within tolerance\n", agree);
    std::printf(
        "reference alternative (BEGD): neg_log_likelihood=370.41 aic=748.82 "
        "caic=749.90 bic=377.88\n");
    std::printf(
        "rows marked DIFFERS cannot be reproduced from the reference "
        "analysis's own inputs; see README for the arithmetic.\n");
    return r.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bivariate exponentiated generalized Weibull-Gompertz tools"};
    app.require_subcommand(1);

    ModelFlags mf;
    std::string quantity, x1spec, x2spec, output, input;
    bool as_json = false;
    std::vector<int> rs = {1, 2};
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double tie_tol = 0.0;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a quantity on a grid");
    add_base_flags(eval, mf);
    add_alpha_flags(eval, mf);
    eval->add_option("--quantity", quantity, "what to evaluate")
        ->required()
        ->check(CLI::IsMember({"cdf", "pdf", "survival", "hazard-gradient",
                               "reversed-hazard", "mwt", "min-cdf", "max-cdf"}));
    eval->add_option("--x1", x1spec, "x1 value or start:stop:steps grid")
        ->required();
    eval->add_option("--x2", x2spec, "x2 value or start:stop:steps grid");
    eval->add_flag("--json", as_json, "emit JSON rows instead of CSV");
    eval->add_option("--output", output, "write to a file instead of stdout");

    CLI::App* moments = app.add_subcommand(
        "moments", "raw moments by quadrature and by the printed series");
    add_base_flags(moments, mf);
    add_alpha_flags(moments, mf);
    moments->add_option("--r", rs, "moment orders (repeatable)")
        ->check(CLI::PositiveNumber);
    moments->add_flag("--json", as_json, "emit JSON rows instead of CSV");
    moments->add_option("--output", output,
                        "write to a file instead of stdout");

    CLI::App* simulate =
        app.add_subcommand("simulate", "draw exact samples as CSV");
    add_base_flags(simulate, mf);
    add_alpha_flags(simulate, mf);
    simulate->add_option("--n", n, "number of pairs")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "stream seed")->required();
    simulate->add_option("--output", output,
                         "write to a file instead of stdout");

    CLI::App* fit = app.add_subcommand("fit", "maximum likelihood fit");
    add_base_flags(fit, mf);
    fit->add_option("--input", input, "two-column CSV with header x1,x2")
        ->required();
    fit->add_option("--tie-tol", tie_tol,
                    "|x1-x2| at or below this counts as a tie")
        ->capture_default_str();
    fit->add_flag("--json", as_json, "emit the fit as JSON");

    CLI::App* reproduce = app.add_subcommand(
        "reproduce", "fit the built-in scoring-time data and compare against "
                     "the reference analysis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed())
            return run_eval(mf, quantity, x1spec, x2spec, as_json, output);
        if (moments->parsed()) return run_moments(mf, rs, as_json, output);
        if (simulate->parsed()) return run_simulate(mf, n, seed, output);
        if (fit->parsed()) return run_fit(mf, input, tie_tol, as_json);
        if (reproduce->parsed()) return run_reproduce();
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
