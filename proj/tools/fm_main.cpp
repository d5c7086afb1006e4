#include "fm/cantor.hpp"
#include "fm/covering.hpp"
#include "fm/errors.hpp"
#include "fm/maximal.hpp"
#include "fm/measure.hpp"
#include "fm/recursion.hpp"
#include "fm/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using fm::Enclosure;
using fm::OpenInterval;
using fm::Rational;
using json = nlohmann::ordered_json;

struct Options {
    std::vector<std::string> measures;
    std::string x;
    std::string a = "0";
    std::string b = "1";
    std::string delta = "1";
    std::string eps = "1/100";
    std::string tol = "1/1000000";
    std::string grid;
    std::string suite = "all";
    std::string format;
    std::string out;
    int depth = 8;
    int levels = 3;
    std::uint64_t seed = 0;
};

fm::IFSMeasure load_measure(const std::string& spec) {
    if (spec == "cantor") return fm::cantor_measure();
    if (spec == "quarter-cantor") return fm::quarter_cantor_measure();
    std::ifstream in(spec);
    if (!in) throw fm::ParseError("cannot read measure spec: " + spec);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return fm::IFSMeasure::parse(buffer.str());
}

fm::MeasureSum load_sum(const std::vector<std::string>& specs) {
    if (specs.empty()) return fm::MeasureSum(fm::cantor_measure());
    std::vector<fm::IFSMeasure> components;
    components.reserve(specs.size());
    for (const auto& s : specs) components.push_back(load_measure(s));
    return fm::MeasureSum::of(std::move(components));
}

struct GridSpec {
    Rational start;
    Rational stop;
    long count = 1;
};

GridSpec parse_grid(const std::string& text) {
    const auto c1 = text.find(',');
    const auto c2 = text.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw fm::ParseError("grid must be start,stop,count");
    GridSpec g;
    g.start = Rational::parse(text.substr(0, c1));
    g.stop = Rational::parse(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string count = text.substr(c2 + 1);
    try {
        g.count = std::stol(count);
    } catch (const std::exception&) {
        throw fm::ParseError("grid count must be an integer: " + count);
    }
    if (g.count < 1) throw fm::ParseError("grid count must be positive");
    if (g.stop < g.start) throw fm::ParseError("grid stop must not precede start");
    return g;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw fm::ParseError("cannot write output file: " + opt.out);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

json enclosure_json(const Enclosure& e) {
    return json{{"lo", e.lo.str()}, {"hi", e.hi.str()}};
}

int cmd_eval(const Options& opt) {
    if (opt.x.empty()) throw fm::ParseError("eval requires --x");
    const fm::MeasureSum f = load_sum(opt.measures);
    const Rational x = Rational::parse(opt.x);
    const Enclosure v = fm::cdf_eval(f, x, opt.depth);
    json j;
    j["x"] = x.str();
    j["lo"] = v.lo.str();
    j["hi"] = v.hi.str();
    j["exact"] = v.exact();
    if (v.exact()) j["value"] = v.lo.str();
    emit(opt, j.dump(2));
    return 0;
}

int cmd_integral(const Options& opt) {
    const fm::MeasureSum f = load_sum(opt.measures);
    const Rational a = Rational::parse(opt.a);
    const Rational b = Rational::parse(opt.b);
    const Enclosure v = fm::cdf_integral(f, a, b, opt.depth);
    json j;
    j["a"] = a.str();
    j["b"] = b.str();
    j["integral"] = enclosure_json(v);
    j["width"] = v.width().str();
    emit(opt, j.dump(2));
    return 0;
}

int cmd_maximal(const Options& opt) {
    if (opt.x.empty()) throw fm::ParseError("maximal requires --x");
    const fm::MeasureSum f = load_sum(opt.measures);
    const Rational x = Rational::parse(opt.x);
    const Rational delta = Rational::parse(opt.delta);
    const Rational tol = Rational::parse(opt.tol);
    const fm::MaximalResult m = fm::maximal_local(f, x, delta, tol, opt.depth);
    const fm::ContactVerdict verdict = fm::contact_classify(f, x, delta, tol, opt.depth);
    json j;
    j["x"] = x.str();
    j["delta"] = delta.str();
    j["value"] = enclosure_json(m.value);
    j["witness_radius"] = m.witness_radius.str();
    j["witnessed_lo"] = m.witnessed_lo.str();
    j["to_tolerance"] = m.to_tolerance;
    j["verdict"] = verdict.detached ? "detached" : "undetermined";
    if (verdict.detached) j["margin"] = verdict.margin.str();
    emit(opt, j.dump(2));
    return 0;
}

int cmd_gaps(const Options& opt) {
    const fm::MeasureSum f = load_sum(opt.measures);
    const fm::IFSMeasure& mu = f.smallest();
    const OpenInterval J(Rational::parse(opt.a), Rational::parse(opt.b));
    const std::vector<fm::Gap> gaps = fm::gap_enumerate(mu, J, opt.depth);
    if (opt.format == "json") {
        json j = json::array();
        for (const auto& g : gaps)
            j.push_back(json{{"index", g.index},
                             {"generation", g.generation},
                             {"a", g.a.str()},
                             {"b", g.b.str()},
                             {"radius", g.radius().str()}});
        emit(opt, j.dump(2));
        return 0;
    }
    std::ostringstream csv;
    csv << "index,generation,a,b,radius,a_dec,b_dec,radius_dec\n";
    for (const auto& g : gaps)
        csv << g.index << ',' << g.generation << ',' << g.a.str() << ',' << g.b.str() << ','
            << g.radius().str() << ',' << g.a.decimal() << ',' << g.b.decimal() << ','
            << g.radius().decimal() << '\n';
    emit(opt, csv.str());
    return 0;
}

int cmd_contact_scan(const Options& opt) {
    if (opt.grid.empty()) throw fm::ParseError("contact-scan requires --grid start,stop,count");
    const fm::MeasureSum f = load_sum(opt.measures);
    const GridSpec grid = parse_grid(opt.grid);
    const Rational delta = Rational::parse(opt.delta);
    const Rational tol = Rational::parse(opt.tol);

    struct Row {
        Rational x;
        Enclosure fx{Rational(0), Rational(0)};
        Enclosure m{Rational(0), Rational(0)};
        bool detached = false;
    };
    std::vector<Row> rows;
    for (long i = 0; i < grid.count; ++i) {
        Row row;
        row.x = grid.count == 1 ? grid.start
                                : grid.start + (grid.stop - grid.start) *
                                                   Rational(i, grid.count - 1);
        row.fx = fm::cdf_eval(f, row.x, opt.depth);
        const fm::MaximalResult m = fm::maximal_local(f, row.x, delta, tol, opt.depth);
        row.m = m.value;
        row.detached = fm::contact_classify(f, row.x, delta, tol, opt.depth).detached;
        rows.push_back(std::move(row));
    }

    if (opt.format == "json") {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back(json{{"x", r.x.str()},
                             {"f", enclosure_json(r.fx)},
                             {"M", enclosure_json(r.m)},
                             {"verdict", r.detached ? "detached" : "undetermined"}});
        emit(opt, j.dump(2));
        return 0;
    }
    std::ostringstream csv;
    csv << "x,f_lo,f_hi,M_lo,M_hi,verdict,x_dec,f_lo_dec,f_hi_dec,M_lo_dec,M_hi_dec\n";
    for (const auto& r : rows)
        csv << r.x.str() << ',' << r.fx.lo.str() << ',' << r.fx.hi.str() << ',' << r.m.lo.str()
            << ',' << r.m.hi.str() << ',' << (r.detached ? "detached" : "undetermined") << ','
            << r.x.decimal() << ',' << r.fx.lo.decimal() << ',' << r.fx.hi.decimal() << ','
            << r.m.lo.decimal() << ',' << r.m.hi.decimal() << '\n';
    emit(opt, csv.str());
    return 0;
}

int cmd_image_bound(const Options& opt) {
    const fm::MeasureSum f = load_sum(opt.measures);
    const OpenInterval I(Rational::parse(opt.a), Rational::parse(opt.b));
    const Rational delta = Rational::parse(opt.delta);
    const fm::RecursionReport rep =
        fm::image_measure_bound(f, I, delta, opt.levels, opt.depth);
    emit(opt, rep.to_json());
    return 0;
}

int cmd_cantor_pattern(const Options& opt) {
    if (opt.x.empty()) throw fm::ParseError("cantor-pattern requires --x");
    const Rational y = Rational::parse(opt.x);
    const fm::PatternScan scan = fm::pattern_scan(y, std::max(opt.depth, 3));
    json j;
    j["y"] = y.str();
    j["window"] = std::max(opt.depth, 3);
    j["digits"] = scan.digits;
    j["positions"] = scan.positions;
    j["dyadic"] = scan.dyadic;
    emit(opt, j.dump(2));
    return 0;
}

int cmd_verify(const Options& opt) {
    const fm::MeasureSum f = load_sum(opt.measures);
    std::vector<fm::SuiteResult> results;
    if (opt.suite == "all") {
        results = fm::verify_all(f, opt.seed, opt.depth);
    } else if (opt.suite == "measures") {
        results.push_back(fm::verify_measures(f, opt.seed, opt.depth));
    } else if (opt.suite == "covering") {
        results.push_back(fm::verify_covering(f, opt.seed, opt.depth));
    } else if (opt.suite == "detachment") {
        results.push_back(fm::verify_detachment(f, opt.seed, opt.depth));
    } else if (opt.suite == "cantor") {
        results.push_back(fm::verify_cantor(opt.seed, opt.depth));
    } else if (opt.suite == "induction") {
        results.push_back(fm::verify_induction(f, opt.seed, opt.depth));
    } else {
        throw fm::ParseError("unknown suite: " + opt.suite);
    }
    emit(opt, fm::report_json(results, opt.seed, opt.depth));
    for (const auto& r : results)
        if (!r.passed()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified maximal-function computations for self-similar measures"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&opt](CLI::App* cmd) {
        cmd->add_option("--measure", opt.measures,
                        "measure spec: JSON file path, or builtin cantor | quarter-cantor "
                        "(repeatable; several specs form a sum)");
        cmd->add_option("--depth", opt.depth, "descent depth / generation cap");
        cmd->add_option("--format", opt.format, "output format: csv | json");
        cmd->add_option("--out", opt.out, "write the report to this path instead of stdout");
        return cmd;
    };

    CLI::App* eval = add_common(app.add_subcommand("eval", "evaluate the CDF at a point"));
    eval->add_option("--x", opt.x, "evaluation point (rational)")->required();

    CLI::App* integral =
        add_common(app.add_subcommand("integral", "integrate the CDF over [a, b]"));
    integral->add_option("--a", opt.a, "left endpoint");
    integral->add_option("--b", opt.b, "right endpoint");

    CLI::App* maximal =
        add_common(app.add_subcommand("maximal", "local maximal function at a point"));
    maximal->add_option("--x", opt.x, "center (rational)")->required();
    maximal->add_option("--delta", opt.delta, "radius cap");
    maximal->add_option("--tol", opt.tol, "enclosure width target");

    CLI::App* gaps = add_common(
        app.add_subcommand("gaps", "complementary intervals of the support inside (a, b)"));
    gaps->add_option("--a", opt.a, "window left endpoint");
    gaps->add_option("--b", opt.b, "window right endpoint");

    CLI::App* scan = add_common(
        app.add_subcommand("contact-scan", "grid scan of f, M_delta f, and detachment"));
    scan->add_option("--grid", opt.grid, "start,stop,count")->required();
    scan->add_option("--delta", opt.delta, "radius cap");
    scan->add_option("--tol", opt.tol, "enclosure width target");

    CLI::App* bound = add_common(
        app.add_subcommand("image-bound", "measure-shrinking recursion report"));
    bound->add_option("--a", opt.a, "interval left endpoint");
    bound->add_option("--b", opt.b, "interval right endpoint");
    bound->add_option("--delta", opt.delta, "radius cap");
    bound->add_option("--levels", opt.levels, "recursion levels");

    CLI::App* verify = add_common(app.add_subcommand("verify", "run a verification suite"));
    verify->add_option("--suite", opt.suite,
                       "measures | covering | detachment | cantor | induction | all");
    verify->add_option("--seed", opt.seed, "sampling seed");

    CLI::App* pattern = add_common(
        app.add_subcommand("cantor-pattern", "binary digits and (1,0,0) occurrences"));
    pattern->add_option("--x", opt.x, "point in [0, 1]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(eval)) return cmd_eval(opt);
        if (app.got_subcommand(integral)) return cmd_integral(opt);
        if (app.got_subcommand(maximal)) return cmd_maximal(opt);
        if (app.got_subcommand(gaps)) return cmd_gaps(opt);
        if (app.got_subcommand(scan)) return cmd_contact_scan(opt);
        if (app.got_subcommand(bound)) return cmd_image_bound(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(pattern)) return cmd_cantor_pattern(opt);
    } catch (const fm::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fm::BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fm::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
