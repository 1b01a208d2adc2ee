#include "cli.hpp"

#include "padist/errors.hpp"
#include "padist/json_io.hpp"
#include "padist/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace padist::cli {

namespace {

struct Options {
    std::string spec;
    std::string other;
    long prime = 0;
    unsigned depth = 4;
    std::string format = "text";
    unsigned threads = 1;
    std::uint64_t budget = 1'000'000;
    std::size_t max_violations = 100;

    std::string ball;
    std::string poly;
    std::string step;

    std::string point;
    std::string preperiod;
    std::string period;
    std::size_t digits = 12;
    std::string compare_point;
    std::string compare_preperiod;
    std::string compare_period;

    ScanOptions scan() const { return ScanOptions{budget, std::max(1u, threads)}; }
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

SpecDocument load_spec(const std::string& path, long prime_flag) {
    if (path.empty()) throw InputError("--spec is required");
    return spec_from_json(read_json_file(path), prime_flag);
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (format == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
    throw InputError("unsupported --format '" + format + "' (expected " + list + ")");
}

Ball parse_ball(const std::string& text, long p) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw InputError("ball must be written rep/depth, got '" + text + "'");
    const Integer a = parse_integer(text.substr(0, slash));
    const Integer n = parse_integer(text.substr(slash + 1));
    if (n < 0 || n > 100'000) throw InputError("bad ball depth in '" + text + "'");
    return ball_make(p, static_cast<unsigned>(n.get_ui()), a);
}

std::vector<unsigned> parse_digit_list(const std::string& text) {
    std::vector<unsigned> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const Integer d = parse_integer(item);
        if (d < 0 || d > 1'000'000'000) throw InputError("bad digit '" + item + "'");
        out.push_back(static_cast<unsigned>(d.get_ui()));
    }
    return out;
}

std::string digit_list(const std::vector<unsigned>& ds) {
    std::string s = "[";
    for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + std::to_string(ds[i]);
    return s + "]";
}

/// Columns padded to the widest cell; the last column is not padded.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << cells[c];
            if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

std::string emit_json(const Json& j) { return j.dump(2) + "\n"; }

// Each command returns its exit code and fills `out`; nothing is printed on error.

int cmd_eval(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto doc = load_spec(o.spec, o.prime);
    if (o.ball.empty()) throw InputError("--ball is required");
    const Ball b = parse_ball(o.ball, doc.prime);
    const Rational v = evaluate(doc.expr, b);
    const Rational n = norm(v, doc.prime);
    if (o.format == "json")
        out = emit_json({{"ball", ball_to_json(b)}, {"value", to_string(v)}, {"norm", to_string(n)}});
    else
        out = to_string(v) + " norm=" + to_string(n) + "\n";
    return kPass;
}

int cmd_verify(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto doc = load_spec(o.spec, o.prime);
    const auto report = check_relation(doc.expr, o.depth, o.scan());
    if (o.format == "json") {
        out = emit_json(to_json(report, o.max_violations));
    } else {
        std::ostringstream os;
        os << "relation check  prime=" << report.prime << "  depth=" << report.max_depth
           << "  checked=" << report.checked_count << "  violations=" << report.violations.size() << "\n";
        if (!report.ok()) {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < report.violations.size() && i < o.max_violations; ++i) {
                const auto& v = report.violations[i];
                rows.push_back({std::to_string(v.ball.depth()), to_string(v.ball.rep()), to_string(v.lhs),
                                to_string(v.children_sum)});
            }
            os << render_table({"depth", "rep", "lhs", "children_sum"}, rows);
            if (report.violations.size() > o.max_violations)
                os << "truncated: " << report.violations.size() - o.max_violations << " more\n";
        }
        os << (report.ok() ? "PASS" : "FAIL") << "\n";
        out = os.str();
    }
    return report.ok() ? kPass : kFail;
}

const node::Graft& top_graft(const SpecDocument& doc) {
    const auto* g = std::get_if<node::Graft>(&doc.expr.node().v);
    if (!g) throw InputError("graft-check needs a spec whose top-level expr is a graft");
    return *g;
}

int cmd_graft_check(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto doc = load_spec(o.spec, o.prime);
    const auto& g = top_graft(doc);
    const auto report = check_graft_precondition(g.left, g.right, g.path, o.depth);
    if (o.format == "json") {
        out = emit_json(to_json(report));
    } else {
        std::ostringstream os;
        os << "graft precondition  depth=" << report.depth_checked << "\n";
        if (!report.on_path_agreement.empty()) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& f : report.on_path_agreement)
                rows.push_back({std::to_string(f.depth), to_string(f.left_value), to_string(f.right_value)});
            os << "on-path disagreements:\n" << render_table({"n", "left", "right"}, rows);
        }
        if (!report.tail_sum_failures.empty()) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& f : report.tail_sum_failures)
                rows.push_back({std::to_string(f.depth), to_string(f.left_sum_difference),
                                to_string(f.right_sum_difference)});
            os << "tail-sum failures:\n" << render_table({"n", "left_sum_diff", "right_sum_diff"}, rows);
        }
        os << (report.passed() ? "PASS" : "FAIL") << "\n";
        out = os.str();
    }
    return report.passed() ? kPass : kFail;
}

int cmd_branch_check(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto doc = load_spec(o.spec, o.prime);
    const auto* br = std::get_if<node::Branch>(&doc.expr.node().v);
    if (!br) throw InputError("branch-check needs a spec whose top-level expr is a branch");

    const auto witness = check_branch_hypothesis(br->k, br->children, o.depth, o.scan());
    std::vector<std::optional<Ball>> separations;
    bool all_separated = true;
    for (const auto& child : br->children) {
        separations.push_back(distinctness_witness(doc.expr, child, o.depth, o.scan()));
        all_separated = all_separated && separations.back().has_value();
    }

    if (o.format == "json") {
        Json j;
        j["k"] = br->k;
        j["search_depth"] = o.depth;
        if (witness)
            j["hypothesis_witness"] = {{"t", witness->t}, {"s", witness->s}, {"ball", ball_to_json(witness->ball)}};
        else
            j["hypothesis_witness"] = nullptr;
        Json seps = Json::object();
        for (std::size_t t = 0; t < separations.size(); ++t)
            seps[std::to_string(t)] = separations[t] ? ball_to_json(*separations[t]) : Json(nullptr);
        j["distinct_from_children"] = seps;
        out = emit_json(j);
    } else {
        std::ostringstream os;
        if (witness)
            os << "hypothesis witness: t=" << witness->t << " s=" << witness->s << " ball=" << witness->ball.to_string()
               << "\n";
        else
            os << "hypothesis: no witness up to depth " << o.depth << "\n";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < separations.size(); ++t)
            rows.push_back({std::to_string(t), separations[t] ? separations[t]->to_string()
                                                               : "none up to depth " + std::to_string(o.depth)});
        os << render_table({"child", "separating_ball"}, rows);
        out = os.str();
    }
    return witness && all_separated ? kPass : kFail;
}

int cmd_distinct(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto a = load_spec(o.spec, o.prime);
    if (o.other.empty()) throw InputError("--other is required");
    const auto b = load_spec(o.other, a.prime);
    const auto w = distinctness_witness(a.expr, b.expr, o.depth, o.scan());
    if (o.format == "json") {
        Json j{{"max_depth", o.depth}};
        if (w)
            j["witness"] = {{"ball", ball_to_json(*w)},
                            {"left", to_string(evaluate(a.expr, *w))},
                            {"right", to_string(evaluate(b.expr, *w))}};
        else
            j["witness"] = nullptr;
        out = emit_json(j);
    } else if (w) {
        out = "witness ball=" + w->to_string() + " left=" + to_string(evaluate(a.expr, *w)) +
              " right=" + to_string(evaluate(b.expr, *w)) + "\n";
    } else {
        out = "no witness up to depth " + std::to_string(o.depth) + "\n";
    }
    // Like diff(1): 0 when no difference is found, 1 when one is.
    return w ? kFail : kPass;
}

int cmd_norms(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json", "csv"});
    const auto doc = load_spec(o.spec, o.prime);
    const auto v = boundedness_verdict(doc.expr, o.depth, o.scan());
    if (o.format == "json") {
        Json j = to_json(v.scan);
        j["flag"] = to_string(v.flag);
        j["discrepancy"] = v.discrepancy ? Json(*v.discrepancy) : Json(nullptr);
        out = emit_json(j);
    } else if (o.format == "csv") {
        std::ostringstream os;
        os << "depth,max_norm,argmax_rep\n";
        for (const auto& r : v.scan.rows)
            os << r.depth << "," << to_string(r.max_norm) << "," << to_string(r.argmax.rep()) << "\n";
        out = os.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : v.scan.rows)
            rows.push_back({std::to_string(r.depth), to_string(r.max_norm), r.argmax.to_string()});
        out = render_table({"depth", "max_norm", "argmax"}, rows) + "flag: " + to_string(v.flag) + "\n" +
              (v.discrepancy ? "discrepancy: " + *v.discrepancy + "\n" : "");
    }
    return kPass;
}

int cmd_integrate(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    const auto doc = load_spec(o.spec, o.prime);
    if (o.poly.empty() == o.step.empty()) throw InputError("give exactly one of --poly or --step");
    const TestFn f = o.poly.empty() ? step_from_json(read_json_file(o.step), doc.prime) : parse_polynomial(o.poly);
    const auto report = integrate(doc.expr, f, o.depth, o.scan());
    if (o.format == "json") {
        out = emit_json(to_json(report));
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < report.partial_sums.size(); ++i)
            rows.push_back({std::to_string(i + 1), to_string(report.partial_sums[i]),
                            i == 0 ? "-" : to_string(report.difference_norms[i - 1])});
        out = render_table({"N", "S_N", "|S_N - S_(N-1)|_p"}, rows) + "verdict: " + to_string(report.verdict) +
              " (finite-window heuristic)\n";
    }
    return kPass;
}

int cmd_dump(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json", "csv", "dot"});
    const auto doc = load_spec(o.spec, o.prime);
    const long p = doc.prime;
    const ScanOptions scan = o.scan();
    level_size(p, o.depth, scan);
    std::vector<std::vector<Rational>> levels;
    for (unsigned n = 0; n <= o.depth; ++n) levels.push_back(evaluate_level(doc.expr, n, scan));

    std::ostringstream os;
    if (o.format == "dot") {
        os << "digraph distribution {\n  node [shape=box];\n";
        for (unsigned n = 0; n <= o.depth; ++n)
            for (std::size_t a = 0; a < levels[n].size(); ++a)
                os << "  \"" << a << "/" << n << "\" [label=\"" << a << "+(" << p << "^" << n << ")\\n"
                   << to_string(levels[n][a]) << "\"];\n";
        for (unsigned n = 0; n < o.depth; ++n)
            for (std::size_t a = 0; a < levels[n].size(); ++a)
                for (long b = 0; b < p; ++b)
                    os << "  \"" << a << "/" << n << "\" -> \"" << a + levels[n].size() * static_cast<std::size_t>(b)
                       << "/" << n + 1 << "\" [label=\"" << b << "\"];\n";
        os << "}\n";
    } else if (o.format == "json") {
        Json rows = Json::array();
        for (unsigned n = 0; n <= o.depth; ++n)
            for (std::size_t a = 0; a < levels[n].size(); ++a)
                rows.push_back({{"depth", n},
                                {"rep", a},
                                {"value", to_string(levels[n][a])},
                                {"norm", to_string(norm(levels[n][a], p))}});
        os << emit_json(rows);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (unsigned n = 0; n <= o.depth; ++n)
            for (std::size_t a = 0; a < levels[n].size(); ++a)
                rows.push_back({std::to_string(n), std::to_string(a), to_string(levels[n][a]),
                                to_string(norm(levels[n][a], p))});
        if (o.format == "csv") {
            os << "depth,rep,value,norm\n";
            for (const auto& r : rows) os << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
        } else {
            os << render_table({"depth", "rep", "value", "norm"}, rows);
        }
    }
    out = os.str();
    return kPass;
}

std::optional<Path> path_from_flags(long p, const std::string& point, const std::string& pre, const std::string& per) {
    if (!point.empty()) {
        if (!per.empty() || !pre.empty()) throw InputError("give a point or a path, not both");
        return point_to_path(PAdicPoint(p, parse_rational(point)));
    }
    if (per.empty()) {
        if (!pre.empty()) throw InputError("a path needs --period");
        return std::nullopt;
    }
    return Path(p, pre.empty() ? std::vector<unsigned>{} : parse_digit_list(pre), parse_digit_list(per));
}

int cmd_path(const Options& o, std::string& out) {
    require_format(o.format, {"text", "json"});
    if (o.prime == 0) throw InputError("--prime is required");
    require_prime(o.prime);
    const auto path = path_from_flags(o.prime, o.point, o.preperiod, o.period);
    if (!path) throw InputError("give --point or --period");
    const PAdicPoint t = path_to_point(*path);
    const Path canonical = point_to_path(t);
    std::string digits;
    for (std::size_t i = 0; i < o.digits; ++i) digits += std::to_string(canonical.digit(i)) + (o.prime > 10 ? " " : "");
    if (!digits.empty() && digits.back() == ' ') digits.pop_back();

    const auto other = path_from_flags(o.prime, o.compare_point, o.compare_preperiod, o.compare_period);
    std::optional<Divergence> ball_div;
    if (!o.ball.empty()) ball_div = divergence_index(parse_ball(o.ball, o.prime), *path);

    if (o.format == "json") {
        Json j{{"prime", o.prime}, {"digits", digits}, {"path", path_to_json(canonical)}, {"value", to_string(t.value())}};
        if (other) {
            j["compare"] = to_string(path_compare(*other, *path));
            j["divergence"] = to_string(divergence_index(path_to_point(*other), *path));
        }
        if (ball_div) j["ball_divergence"] = to_string(*ball_div);
        out = emit_json(j);
    } else {
        std::ostringstream os;
        os << digits << ", ";
        if (!canonical.preperiod().empty()) os << "preperiod=" << digit_list(canonical.preperiod()) << ", ";
        os << "period=" << digit_list(canonical.period()) << "\n";
        os << "value=" << to_string(t.value()) << "\n";
        if (other) {
            os << "compare=" << to_string(path_compare(*other, *path)) << "\n";
            os << "divergence=" << to_string(divergence_index(path_to_point(*other), *path)) << "\n";
        }
        if (ball_div) os << "ball_divergence=" << to_string(*ball_div) << "\n";
        out = os.str();
    }
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact p-adic distributions on Z_p: evaluate, verify, integrate", "padist"};
    app.require_subcommand(1);
    Options o;

    auto add_spec = [&](CLI::App* c) {
        c->add_option("--spec", o.spec, "distribution spec (JSON)");
        c->add_option("--prime", o.prime, "prime p (must match the spec's prime when both are given)");
        c->add_option("--format", o.format, "output format: text|json|csv|dot (per command)");
        c->add_option("--threads", o.threads, "worker threads for ball enumeration");
        c->add_option("--budget", o.budget, "maximum balls per level");
    };
    auto add_depth = [&](CLI::App* c, const char* what) { c->add_option("--depth", o.depth, what); };

    auto* eval = app.add_subcommand("eval", "value and p-adic norm on one ball");
    add_spec(eval);
    eval->add_option("--ball", o.ball, "ball as rep/depth");

    auto* verify = app.add_subcommand("verify", "check the distribution relation to a depth");
    add_spec(verify);
    add_depth(verify, "check balls of depth 0..N-1");
    verify->add_option("--max-violations", o.max_violations, "cap on reported violations");

    auto* graft_check = app.add_subcommand("graft-check", "check the graft precondition");
    add_spec(graft_check);
    add_depth(graft_check, "check on-path levels 0..N");

    auto* branch_check = app.add_subcommand("branch-check", "search a branch hypothesis witness and distinctness");
    add_spec(branch_check);
    add_depth(branch_check, "search depth");

    auto* distinct = app.add_subcommand("distinct", "first ball where two distributions differ");
    add_spec(distinct);
    distinct->add_option("--other", o.other, "second spec (JSON)");
    add_depth(distinct, "search depth");

    auto* norms = app.add_subcommand("norms", "per-depth maximum p-adic norm");
    add_spec(norms);
    add_depth(norms, "scan depths 0..N");

    auto* integ = app.add_subcommand("integrate", "Riemann sums S_1..S_N");
    add_spec(integ);
    add_depth(integ, "largest N");
    integ->add_option("--poly", o.poly, "polynomial, e.g. \"1/2 + 3*x^2\"");
    integ->add_option("--step", o.step, "step function JSON file");

    auto* dump = app.add_subcommand("dump", "all ball values to a depth");
    add_spec(dump);
    add_depth(dump, "depths 0..N");

    auto* path = app.add_subcommand("path", "digits, value, order and divergence of a path");
    path->add_option("--prime", o.prime, "prime p");
    path->add_option("--format", o.format, "text|json");
    path->add_option("--point", o.point, "rational point of Z_p");
    path->add_option("--preperiod", o.preperiod, "comma-separated digits");
    path->add_option("--period", o.period, "comma-separated digits");
    path->add_option("--digits", o.digits, "number of digits to print");
    path->add_option("--compare-point", o.compare_point, "compare another point against the path");
    path->add_option("--compare-preperiod", o.compare_preperiod, "compare another path (preperiod)");
    path->add_option("--compare-period", o.compare_period, "compare another path (period)");
    path->add_option("--ball", o.ball, "divergence index of a ball rep/depth");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    std::string text;
    try {
        int code = kPass;
        if (eval->parsed()) code = cmd_eval(o, text);
        else if (verify->parsed()) code = cmd_verify(o, text);
        else if (graft_check->parsed()) code = cmd_graft_check(o, text);
        else if (branch_check->parsed()) code = cmd_branch_check(o, text);
        else if (distinct->parsed()) code = cmd_distinct(o, text);
        else if (norms->parsed()) code = cmd_norms(o, text);
        else if (integ->parsed()) code = cmd_integrate(o, text);
        else if (dump->parsed()) code = cmd_dump(o, text);
        else if (path->parsed()) code = cmd_path(o, text);
        out << text;
        return code;
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << "\n";
        return kBudgetError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace padist::cli
