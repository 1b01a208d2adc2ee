#include "padist/json_io.hpp"

#include "padist/errors.hpp"

namespace padist {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

unsigned unsigned_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1'000'000)
        throw InputError(std::string("field '") + key + "' must be a non-negative integer");
    return static_cast<unsigned>(v.get<long long>());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return parse_integer(j.dump());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw InputError("expected an integer, got " + j.dump());
}

std::vector<unsigned> digits_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("digit list must be an array");
    std::vector<unsigned> out;
    for (const auto& d : j) {
        if (!d.is_number_integer() || d.get<long long>() < 0 || d.get<long long>() > 1'000'000'000)
            throw InputError("bad digit " + d.dump());
        out.push_back(static_cast<unsigned>(d.get<long long>()));
    }
    return out;
}

}  // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputError("expected a rational string, got " + j.dump());
}

Json rational_to_json(const Rational& x) { return to_string(x); }

Ball ball_from_json(const Json& j, long p) {
    return Ball(p, unsigned_field(j, "n"), integer_from_json(field(j, "a")));
}

Json ball_to_json(const Ball& b) {
    Json a = b.rep().fits_slong_p() ? Json(b.rep().get_si()) : Json(to_string(b.rep()));
    return Json{{"a", a}, {"n", b.depth()}};
}

Path path_from_json(const Json& j, long p) {
    const std::vector<unsigned> pre = j.contains("preperiod") ? digits_from_json(j.at("preperiod")) : std::vector<unsigned>{};
    return Path(p, pre, digits_from_json(field(j, "period")));
}

Json path_to_json(const Path& path) { return Json{{"preperiod", path.preperiod()}, {"period", path.period()}}; }

Dist dist_from_json(const Json& j, long p, const std::map<std::string, Dist>& defs) {
    if (!j.is_object()) throw InputError("expression must be an object, got " + j.dump());
    if (j.contains("ref")) {
        const auto name = j.at("ref").get<std::string>();
        const auto it = defs.find(name);
        if (it == defs.end()) throw InputError("undefined reference '" + name + "'");
        if (it->second.prime() != p) throw InputError("reference '" + name + "' has a different prime");
        return it->second;
    }
    const Json& type_j = field(j, "type");
    if (!type_j.is_string()) throw InputError("'type' must be a string");
    const std::string type = type_j.get<std::string>();
    auto sub = [&](const char* key) { return dist_from_json(field(j, key), p, defs); };

    if (type == "dirac") return dirac(PAdicPoint(p, rational_from_json(field(j, "point"))));
    if (type == "haar") return haar(p, j.contains("scale") ? rational_from_json(j.at("scale")) : Rational(1));
    if (type == "mazur") return mazur(p);
    if (type == "bernoulli") return bernoulli(p, unsigned_field(j, "k"));
    if (type == "lincomb") {
        const Json& terms_j = field(j, "terms");
        if (!terms_j.is_array()) throw InputError("'terms' must be an array");
        std::vector<node::Term> terms;
        for (const auto& t : terms_j)
            terms.push_back({rational_from_json(field(t, "coef")), dist_from_json(field(t, "expr"), p, defs)});
        return linear_comb(p, std::move(terms));
    }
    if (type == "restrict") return restrict_to(ball_from_json(field(j, "cell"), p), sub("expr"));
    if (type == "regularize")
        return regularize(unsigned_field(j, "k"), rational_from_json(field(j, "alpha")), sub("expr"));
    if (type == "graft") return graft(path_from_json(field(j, "path"), p), sub("left"), sub("right"));
    if (type == "branch") {
        const unsigned k = unsigned_field(j, "k");
        const Json& kids = field(j, "children");
        if (!kids.is_object()) throw InputError("'children' must be an object keyed \"0\"..\"p^k-1\"");
        const Integer count = ipow(p, k);
        if (count > 1'000'000) throw InputError("branch: too many children");
        std::vector<Dist> children;
        for (unsigned long t = 0; t < count.get_ui(); ++t) {
            const std::string key = std::to_string(t);
            if (!kids.contains(key)) throw InputError("branch: missing child \"" + key + "\"");
            children.push_back(dist_from_json(kids.at(key), p, defs));
        }
        if (kids.size() != children.size()) throw InputError("branch: unexpected child keys");
        return branch(k, std::move(children));
    }
    throw InputError("unknown expression type '" + type + "'");
}

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

Json dist_to_json(const Dist& e) {
    return std::visit(
        overloaded{
            [](const node::Dirac& d) { return Json{{"type", "dirac"}, {"point", to_string(d.point.value())}}; },
            [](const node::Haar& h) { return Json{{"type", "haar"}, {"scale", to_string(h.scale)}}; },
            [](const node::Mazur&) { return Json{{"type", "mazur"}}; },
            [](const node::Bernoulli& b) { return Json{{"type", "bernoulli"}, {"k", b.k}}; },
            [](const node::LinearComb& lc) {
                Json terms = Json::array();
                for (const auto& t : lc.terms) terms.push_back({{"coef", to_string(t.coef)}, {"expr", dist_to_json(t.expr)}});
                return Json{{"type", "lincomb"}, {"terms", terms}};
            },
            [](const node::Restrict& r) {
                return Json{{"type", "restrict"}, {"cell", ball_to_json(r.cell)}, {"expr", dist_to_json(r.expr)}};
            },
            [](const node::Regularize& r) {
                return Json{{"type", "regularize"}, {"k", r.k}, {"alpha", to_string(r.alpha)}, {"expr", dist_to_json(r.expr)}};
            },
            [](const node::Graft& g) {
                return Json{{"type", "graft"},
                            {"path", path_to_json(g.path)},
                            {"left", dist_to_json(g.left)},
                            {"right", dist_to_json(g.right)}};
            },
            [](const node::Branch& b) {
                Json kids = Json::object();
                for (std::size_t t = 0; t < b.children.size(); ++t) kids[std::to_string(t)] = dist_to_json(b.children[t]);
                return Json{{"type", "branch"}, {"k", b.k}, {"children", kids}};
            },
        },
        e.node().v);
}

SpecDocument spec_from_json(const Json& j, long prime_flag) {
    if (!j.is_object()) throw InputError("spec document must be a JSON object");
    long p = prime_flag;
    if (j.contains("prime")) {
        const Json& pj = j.at("prime");
        if (!pj.is_number_integer()) throw InputError("'prime' must be an integer");
        const long doc_p = static_cast<long>(pj.get<long long>());
        if (prime_flag != 0 && doc_p != prime_flag)
            throw InputError("prime mismatch: --prime " + std::to_string(prime_flag) + " vs spec " + std::to_string(doc_p));
        p = doc_p;
    }
    if (p == 0) throw InputError("no prime given (use --prime or a \"prime\" field)");
    require_prime(p);

    std::map<std::string, Dist> defs;
    if (j.contains("defs")) {
        const Json& dj = j.at("defs");
        if (!dj.is_object()) throw InputError("'defs' must be an object");
        for (const auto& [name, expr] : dj.items()) defs.insert_or_assign(name, dist_from_json(expr, p, defs));
    }
    Dist expr = dist_from_json(field(j, "expr"), p, defs);
    return SpecDocument{p, std::move(expr), std::move(defs)};
}

Json to_json(const RelationReport& r, std::size_t max_violations) {
    Json v = Json::array();
    for (std::size_t i = 0; i < r.violations.size() && i < max_violations; ++i) {
        const auto& x = r.violations[i];
        v.push_back({{"ball", ball_to_json(x.ball)}, {"lhs", to_string(x.lhs)}, {"children_sum", to_string(x.children_sum)}});
    }
    return Json{{"prime", r.prime},
                {"max_depth", r.max_depth},
                {"checked_count", r.checked_count},
                {"violation_count", r.violations.size()},
                {"violations", v},
                {"truncated", r.violations.size() > max_violations},
                {"ok", r.ok()}};
}

Json to_json(const GraftPreconditionReport& r) {
    Json on = Json::array(), tail = Json::array();
    for (const auto& f : r.on_path_agreement)
        on.push_back({{"n", f.depth}, {"left", to_string(f.left_value)}, {"right", to_string(f.right_value)}});
    for (const auto& f : r.tail_sum_failures)
        tail.push_back({{"n", f.depth},
                        {"left_sum_difference", to_string(f.left_sum_difference)},
                        {"right_sum_difference", to_string(f.right_sum_difference)}});
    return Json{{"depth_checked", r.depth_checked}, {"on_path_agreement", on}, {"tail_sum_failures", tail}, {"passed", r.passed()}};
}

Json to_json(const NormScanReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"depth", row.depth}, {"max_norm", to_string(row.max_norm)}, {"argmax", ball_to_json(row.argmax)}});
    return Json{{"rows", rows}};
}

Json to_json(const IntegrationReport& r) {
    Json sums = Json::array(), norms = Json::array();
    for (const auto& s : r.partial_sums) sums.push_back(to_string(s));
    for (const auto& n : r.difference_norms) norms.push_back(to_string(n));
    return Json{{"partial_sums", sums},
                {"difference_norms", norms},
                {"verdict", to_string(r.verdict)},
                {"note", "verdicts are finite-window heuristics, not limit claims"}};
}

TestFn step_from_json(const Json& j, long p) {
    const unsigned d = unsigned_field(j, "depth");
    const Json& vals = field(j, "values");
    const Integer count = ipow(p, d);
    if (count > 1'000'000) throw InputError("step function too deep");
    std::vector<Rational> values;
    if (vals.is_array()) {
        for (const auto& v : vals) values.push_back(rational_from_json(v));
    } else if (vals.is_object()) {
        for (unsigned long a = 0; a < count.get_ui(); ++a) {
            const std::string key = std::to_string(a);
            if (!vals.contains(key)) throw InputError("step function: missing value for \"" + key + "\"");
            values.push_back(rational_from_json(vals.at(key)));
        }
        if (vals.size() != values.size()) throw InputError("step function: unexpected keys");
    } else {
        throw InputError("step function 'values' must be an object or array");
    }
    return TestFn::step(p, d, std::move(values));
}

}  // namespace padist
