#include <algorithm>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmvol/hmvol.hpp"
#include "report.hpp"

namespace {

using namespace hmvol;

// "a..b" or "a,b,c" or a mix: "1..3,7".
std::vector<long> parse_range(const std::string& text, const std::string& flag) {
    std::vector<long> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            const std::size_t dots = item.find("..");
            std::size_t used = 0;
            if (dots == std::string::npos) {
                out.push_back(std::stol(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } else {
                const std::string lo_s = item.substr(0, dots), hi_s = item.substr(dots + 2);
                const long lo = std::stol(lo_s, &used);
                if (used != lo_s.size()) throw std::invalid_argument(item);
                const long hi = std::stol(hi_s, &used);
                if (used != hi_s.size()) throw std::invalid_argument(item);
                if (hi < lo) throw PreconditionError(flag + " range " + item + " is empty");
                if (hi - lo > 10000) throw GuardError(flag + " range " + item + " has more than 10000 entries");
                for (long v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::logic_error&) {
            throw ParseError(flag + ": cannot read '" + item + "' as INT or INT..INT", start);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct AnalyzeArgs {
    std::string expression;
    std::vector<std::string> groups;
    std::optional<std::string> gsp;
    bool json = false;
    bool oracle_check = false;
    int precision = 30;
};

int run_analyze(const AnalyzeArgs& a) {
    const Lattice lattice = expr::parse_lattice(a.expression);
    AnalyzeOptions opt;
    for (const std::string& g : a.groups) opt.groups.push_back(parse_tag(g));
    if (a.gsp) {
        Integer g;
        if (g.set_str(*a.gsp, 10) != 0) throw ParseError("--gsp: '" + *a.gsp + "' is not an INT", 0);
        opt.g_sp_plus = g;
    }
    opt.oracle_check = a.oracle_check;
    const VolumeReport rep = analyze(lattice, opt, a.expression);
    const report::Echo echo = report::echo_digits(a.precision);
    if (a.json)
        std::cout << report::analyze_json(rep, echo).dump(2) << "\n";
    else
        std::cout << report::analyze_text(rep, echo);
    return 0;
}

struct CatalogArgs {
    std::string family;
    std::string m = "0";
    std::string d = "1..10";
    bool json = false;
};

int run_catalog(const CatalogArgs& a) {
    const Family f = parse_family(a.family);
    std::vector<unsigned> ms;
    for (long m : parse_range(a.m, "--m")) {
        if (m < 0 || m > 3) throw GuardError("--m must lie in 0..3");
        ms.push_back(static_cast<unsigned>(m));
    }
    std::vector<long> ds = family_uses_d(f) ? parse_range(a.d, "--d") : std::vector<long>{1};
    for (long d : ds)
        if (d < 1 || d > 1000) throw GuardError("--d must lie in 1..1000");
    if (f == Family::N) std::erase_if(ds, [](long d) { return d % 4 != 1; });

    std::vector<std::future<CatalogRow>> jobs;
    for (unsigned m : ms)
        for (long d : ds) jobs.push_back(std::async(std::launch::async, [f, m, d] { return catalog_row(f, m, d); }));
    std::vector<CatalogRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());

    if (a.json)
        std::cout << report::catalog_json(rows).dump(2) << "\n";
    else
        std::cout << report::catalog_text(rows);
    const auto bad = std::count_if(rows.begin(), rows.end(), [](const CatalogRow& r) { return !r.match(); });
    if (bad) {
        std::cerr << "catalog: " << bad << " of " << rows.size() << " entries disagree with the closed form\n";
        return 5;
    }
    return 0;
}

struct OracleArgs {
    std::string expression;
    long p = 2;
    std::optional<int> r;
    std::string convention = "entrywise";
    bool json = false;
};

int run_oracle(const OracleArgs& a) {
    const Lattice lattice = expr::parse_lattice(a.expression);
    const Integer p(a.p);
    if (!is_prime(p)) throw PreconditionError("p = " + p.get_str() + " is not prime");
    CountingConvention conv;
    if (a.convention == "entrywise")
        conv = CountingConvention::Entrywise;
    else if (a.convention == "diagonal")
        conv = CountingConvention::DiagonalDoubled;
    else
        throw PreconditionError("--convention must be 'entrywise' or 'diagonal'");
    if (a.r && *a.r < 1) throw PreconditionError("r must be at least 1");

    const Rational formula = local_density(lattice, p).value;
    const OracleRun run = stabilized_oracle(lattice, p, conv, a.r);
    const bool match = run.stable && run.value == formula;
    const std::string conv_name = p == 2 ? a.convention : "n/a";
    if (a.json) {
        report::json out = report::oracle_json(p, run);
        out["expression"] = a.expression;
        out["formula"] = report::rational(formula);
        out["convention"] = conv_name;
        out["match"] = match;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lattice     " << a.expression << "\n";
        std::cout << "p           " << p << "\n";
        if (p == 2) std::cout << "convention  " << conv_name << "\n";
        std::cout << "formula     " << formula << "\n";
        for (const auto& [r, v] : run.values) std::cout << "oracle r=" << r << "  " << v << "\n";
        std::cout << "verdict     "
                  << (!run.stable ? "not stable below the guard" : match ? "stable, matches" : "stable, MISMATCH")
                  << "\n";
    }
    if (run.stable && !match && conv == CountingConvention::Entrywise)
        throw InternalError("formula " + formula.get_str() + " disagrees with the stabilized count " +
                            run.value.get_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hirzebruch-Mumford volumes of orthogonal groups of integral lattices"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    auto* analyze_cmd = app.add_subcommand("analyze", "densities, volumes and cusp-form growth for a lattice");
    analyze_cmd->add_option("expr", aa.expression, "lattice expression, e.g. \"2*U + <-2>\"")->required();
    analyze_cmd->add_option("--group", aa.groups, "O, O+, SO+, O~+ or SO~+ (repeatable)");
    analyze_cmd->add_option("--gsp", aa.gsp, "number of spinor genera g_sp^+ (default 1)");
    analyze_cmd->add_flag("--json", aa.json, "emit JSON");
    analyze_cmd->add_flag("--oracle-check", aa.oracle_check, "verify densities by brute-force counting (rank <= 3)");
    analyze_cmd->add_option("--precision", aa.precision, "digits of the numeric echo (max 100)");

    CatalogArgs ca;
    auto* catalog_cmd = app.add_subcommand("catalog", "engine values against the closed forms of a family");
    catalog_cmd->add_option("family", ca.family, "II, T, L, K or N")->required();
    catalog_cmd->add_option("--m", ca.m, "m values: INT, INT..INT or a comma list (default 0)");
    catalog_cmd->add_option("--d", ca.d, "d values for L, K, N (default 1..10)");
    catalog_cmd->add_flag("--json", ca.json, "emit JSON");

    OracleArgs oa;
    auto* oracle_cmd = app.add_subcommand("oracle", "compare a local density with the Siegel counting oracle");
    oracle_cmd->add_option("expr", oa.expression, "lattice expression of rank <= 3")->required();
    oracle_cmd->add_option("p", oa.p, "prime")->required();
    oracle_cmd->add_option("r", oa.r, "starting depth (default v_p(2 det) + 1)");
    oracle_cmd->add_option("--convention", oa.convention, "p = 2 counting: entrywise (default) or diagonal");
    oracle_cmd->add_flag("--json", oa.json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze_cmd) return run_analyze(aa);
        if (*catalog_cmd) return run_catalog(ca);
        if (*oracle_cmd) return run_oracle(oa);
    } catch (const hmvol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
