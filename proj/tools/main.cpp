// modsep — construct and verify separating sets of polynomial invariants for
// the indecomposable modular representations handled by the core library.
//
// Subcommands:
//   construct   build a separating set and print it
//   verify      build (or load via --set-file) and exhaustively check separation
//   fibers      check the gluing fiber condition at every recursion level
//   oracles     run the exact symbolic lemma oracles
//   power-sums  print the power-sum table used by the cyclic congruences
//   search      run the generic brute-force separating-set search
//
// Exit codes: 0 pass, 1 verification failure, 2 invalid arguments.

#include <CLI11.hpp>
#include <json.hpp>

#include <modsep/field.hpp>
#include <modsep/poly.hpp>
#include <modsep/action.hpp>
#include <modsep/reps.hpp>
#include <modsep/sep.hpp>
#include <modsep/verify.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace modsep;

struct Options {
    std::string command;
    std::string spec;
    std::string field;      // empty -> default_field(spec)
    std::string format = "text";
    std::string output;    // empty -> stdout
    std::string set_file;  // verify only
    uint32_t degree_bound = 4;
    uint64_t point_limit = 0;  // 0 -> default_point_limit()
    uint32_t threads = 1;
};

void write_out(const Options& opt, const std::string& body) {
    if (opt.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.output);
    out << body;
}

std::string render(const Options& opt, const json& doc, const std::string& text) {
    if (opt.format == "json") return doc.dump(2) + "\n";
    return text;
}

json point_to_json(const Point& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(c.to_string());
    return a;
}

std::string point_to_text(const Point& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].to_string();
    }
    return s + ")";
}

json elements_to_json(const std::vector<SetElement>& elems) {
    json a = json::array();
    for (size_t i = 0; i < elems.size(); ++i) {
        json e;
        e["index"] = i + 1;
        e["provenance"] = std::string(provenance_name(elems[i].provenance));
        e["degree"] = elems[i].poly.degree();
        e["polynomial"] = elems[i].poly.to_string();
        a.push_back(e);
    }
    return a;
}

void elements_to_text(std::ostream& os, const std::vector<SetElement>& elems) {
    for (size_t i = 0; i < elems.size(); ++i)
        os << "  " << (i + 1) << ". [" << provenance_name(elems[i].provenance) << "] "
           << elems[i].poly.to_string() << "\n";
}

json steps_to_json(const SeparatingSet& set) {
    json a = json::array();
    for (const auto& step : set.steps) {
        json s;
        s["source"] = step.source.to_string();
        s["target"] = step.phi.target.to_string();
        json kept = json::array();  // 1-based source variable of each target variable
        for (uint32_t c : step.phi.kept) kept.push_back(c + 1);
        s["kept"] = kept;
        s["added"] = elements_to_json(step.added);
        a.push_back(s);
    }
    return a;
}

void steps_to_text(std::ostream& os, const SeparatingSet& set) {
    if (set.steps.empty()) return;
    os << "recursion steps (innermost first):\n";
    for (const auto& step : set.steps) {
        os << "  " << step.source.to_string() << " -> " << step.phi.target.to_string()
           << "  (target x_j = source x_{kept[j]}: ";
        for (size_t j = 0; j < step.phi.kept.size(); ++j) {
            if (j) os << ", ";
            os << "x" << (j + 1) << "=x" << (step.phi.kept[j] + 1);
        }
        os << ")\n";
        for (size_t i = 0; i < step.added.size(); ++i)
            os << "    + [" << provenance_name(step.added[i].provenance) << "] "
               << step.added[i].poly.to_string() << "\n";
    }
}

struct Context {
    ModuleSpec spec;
    const FiniteField& field;
};

Context make_context(const Options& opt) {
    ModuleSpec spec = ModuleSpec::parse(opt.spec);
    const FiniteField& field =
        opt.field.empty() ? default_field(spec) : make_field_named(opt.field);
    spec.validate(field);
    return Context{spec, field};
}

json header_json(const Options& opt, const Context& ctx) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = opt.command;
    doc["spec"] = ctx.spec.to_string();
    doc["field"] = ctx.field.name();
    doc["dimension"] = ctx.spec.dimension();
    return doc;
}

uint64_t effective_limit(const Options& opt) {
    return opt.point_limit ? opt.point_limit : default_point_limit();
}

int run_construct(const Options& opt) {
    Context ctx = make_context(opt);
    SeparatingSet set = separating_set(ctx.spec, ctx.field, effective_limit(opt), opt.threads);

    json doc = header_json(opt, ctx);
    doc["set_size"] = set.elements.size();
    doc["elements"] = elements_to_json(set.elements);
    doc["steps"] = steps_to_json(set);

    std::ostringstream text;
    text << "spec: " << ctx.spec.to_string() << "\n"
         << "field: " << ctx.field.name() << "\n"
         << "dimension: " << ctx.spec.dimension() << "\n"
         << "separating set (" << set.elements.size() << " elements):\n";
    elements_to_text(text, set.elements);
    steps_to_text(text, set);

    write_out(opt, render(opt, doc, text.str()));
    return 0;
}

// The accepted --set-file layout is exactly construct's JSON output.
struct LoadedSet {
    ModuleSpec spec;
    const FiniteField& field;
    std::vector<Polynomial> polys;
};

LoadedSet load_set_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open set file: " + path);
    json doc = json::parse(in, nullptr, true);
    if (!doc.contains("schema") || doc["schema"] != 1)
        throw std::invalid_argument("set file: unsupported schema");
    ModuleSpec spec = ModuleSpec::parse(doc.at("spec").get<std::string>());
    const FiniteField& field = make_field_named(doc.at("field").get<std::string>());
    spec.validate(field);
    std::vector<Polynomial> polys;
    for (const auto& e : doc.at("elements"))
        polys.push_back(
            Polynomial::parse(field, spec.dimension(), e.at("polynomial").get<std::string>()));
    return LoadedSet{spec, field, std::move(polys)};
}

int run_verify(const Options& opt) {
    std::optional<ModuleSpec> spec;
    const FiniteField* field = nullptr;
    std::vector<Polynomial> polys;

    if (!opt.set_file.empty()) {
        if (!opt.spec.empty() || !opt.field.empty())
            throw std::invalid_argument("give either --set-file or --spec/--field, not both");
        LoadedSet loaded = load_set_file(opt.set_file);
        spec = loaded.spec;
        field = &loaded.field;
        polys = std::move(loaded.polys);
    } else {
        Context ctx = make_context(opt);
        spec = ctx.spec;
        field = &ctx.field;
        SeparatingSet set = separating_set(ctx.spec, ctx.field, effective_limit(opt), opt.threads);
        polys = set.polynomials();
    }

    GroupAction G = build_action(*spec, *field);
    VerificationReport rep = check_separating(G, polys, effective_limit(opt), opt.threads);

    json doc;
    doc["schema"] = 1;
    doc["command"] = opt.command;
    doc["spec"] = spec->to_string();
    doc["field"] = field->name();
    doc["dimension"] = spec->dimension();
    doc["set_size"] = polys.size();
    doc["point_count"] = rep.point_count;
    doc["orbit_count"] = rep.orbit_count;
    doc["class_count"] = rep.class_count;
    doc["ok"] = rep.ok;
    if (rep.counterexample) {
        json cex;
        cex["u"] = point_to_json(rep.counterexample->first);
        cex["v"] = point_to_json(rep.counterexample->second);
        doc["counterexample"] = cex;
    } else {
        doc["counterexample"] = nullptr;
    }

    std::ostringstream text;
    text << "spec: " << spec->to_string() << "\n"
         << "field: " << field->name() << "\n"
         << "invariants: " << polys.size() << "\n"
         << "points: " << rep.point_count << "\n"
         << "orbits: " << rep.orbit_count << "\n"
         << "classes: " << rep.class_count << "\n"
         << "result: " << (rep.ok ? "ok" : "FAIL") << "\n";
    if (rep.counterexample)
        text << "counterexample: u = " << point_to_text(rep.counterexample->first)
             << ", v = " << point_to_text(rep.counterexample->second) << "\n";

    write_out(opt, render(opt, doc, text.str()));
    return rep.ok ? 0 : 1;
}

int run_fibers(const Options& opt) {
    Context ctx = make_context(opt);
    SeparatingSet set = separating_set(ctx.spec, ctx.field, effective_limit(opt), opt.threads);

    bool all_ok = true;
    json steps = json::array();
    std::ostringstream text;
    text << "spec: " << ctx.spec.to_string() << "\n"
         << "field: " << ctx.field.name() << "\n";
    if (set.steps.empty()) text << "no recursion steps\n";

    for (const auto& step : set.steps) {
        GroupAction G = build_action(step.source, ctx.field);
        std::vector<Polynomial> T;
        for (const auto& e : step.added) T.push_back(e.poly);
        VerificationReport rep =
            check_fiber_condition(G, step.phi, T, effective_limit(opt), opt.threads);
        all_ok = all_ok && rep.ok;

        json s;
        s["source"] = step.source.to_string();
        s["target"] = step.phi.target.to_string();
        s["point_count"] = rep.point_count;
        s["ok"] = rep.ok;
        if (rep.counterexample) {
            json cex;
            cex["u"] = point_to_json(rep.counterexample->first);
            cex["v"] = point_to_json(rep.counterexample->second);
            s["counterexample"] = cex;
        } else {
            s["counterexample"] = nullptr;
        }
        steps.push_back(s);

        text << step.source.to_string() << " -> " << step.phi.target.to_string() << ": "
             << (rep.ok ? "ok" : "FAIL") << " (" << rep.point_count << " points)\n";
        if (rep.counterexample)
            text << "  counterexample: u = " << point_to_text(rep.counterexample->first)
                 << ", v = " << point_to_text(rep.counterexample->second) << "\n";
    }

    json doc = header_json(opt, ctx);
    doc["steps"] = steps;
    doc["ok"] = all_ok;
    text << "result: " << (all_ok ? "ok" : "FAIL") << "\n";

    write_out(opt, render(opt, doc, text.str()));
    return all_ok ? 0 : 1;
}

int run_oracles(const Options& opt) {
    Context ctx = make_context(opt);
    std::vector<OracleResult> results = lemma_oracles(ctx.spec, ctx.field);

    bool all_ok = true;
    json list = json::array();
    std::ostringstream text;
    text << "spec: " << ctx.spec.to_string() << "\n"
         << "field: " << ctx.field.name() << "\n";
    if (results.empty()) text << "no oracles for this family\n";
    for (const auto& r : results) {
        all_ok = all_ok && r.pass;
        json e;
        e["id"] = r.id;
        e["pass"] = r.pass;
        e["difference"] = r.difference.to_string();
        list.push_back(e);
        text << r.id << ": " << (r.pass ? "pass" : "FAIL") << "\n";
        if (!r.pass) text << "  difference: " << r.difference.to_string() << "\n";
    }

    json doc = header_json(opt, ctx);
    doc["oracles"] = list;
    doc["ok"] = all_ok;
    text << "result: " << (all_ok ? "ok" : "FAIL") << "\n";

    write_out(opt, render(opt, doc, text.str()));
    return all_ok ? 0 : 1;
}

int run_power_sums(const Options& opt) {
    const uint32_t primes[] = {2, 3, 5, 7};
    bool all_ok = true;
    json table = json::array();
    std::ostringstream text;
    text << "  p   a  sum(l^a, l=0..p-1) mod p   expected\n";
    for (uint32_t p : primes) {
        for (uint32_t a = 1; a <= 2 * (p - 1); ++a) {
            uint32_t got = power_sum(p, a);
            uint32_t expected = (a % (p - 1) == 0) ? p - 1 : 0;
            all_ok = all_ok && (got == expected);
            json row;
            row["p"] = p;
            row["a"] = a;
            row["sum"] = got;
            row["expected"] = expected;
            row["ok"] = (got == expected);
            table.push_back(row);
            text << "  " << p << "   " << a << "  " << got << "   " << expected
                 << (got == expected ? "" : "   MISMATCH") << "\n";
        }
    }
    json doc;
    doc["schema"] = 1;
    doc["command"] = opt.command;
    doc["table"] = table;
    doc["ok"] = all_ok;
    text << "result: " << (all_ok ? "ok" : "FAIL") << "\n";

    write_out(opt, render(opt, doc, text.str()));
    return all_ok ? 0 : 1;
}

int run_search(const Options& opt) {
    Context ctx = make_context(opt);
    SeparatingSet set =
        generic_search(ctx.spec, ctx.field, opt.degree_bound, effective_limit(opt), opt.threads);

    json doc = header_json(opt, ctx);
    doc["degree_bound"] = opt.degree_bound;
    doc["set_size"] = set.elements.size();
    doc["elements"] = elements_to_json(set.elements);

    std::ostringstream text;
    text << "spec: " << ctx.spec.to_string() << "\n"
         << "field: " << ctx.field.name() << "\n"
         << "degree bound: " << opt.degree_bound << "\n"
         << "separating set (" << set.elements.size() << " elements):\n";
    elements_to_text(text, set.elements);

    write_out(opt, render(opt, doc, text.str()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separating invariants for modular representations"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec)
            sub->add_option("--spec", opt.spec,
                            "module spec, e.g. klein-ii:n=3,lambda=t or cyclic:p=3,m=4,n=3");
        sub->add_option("--field", opt.field, "base field p^k (default: smallest valid)");
        sub->add_option("--point-limit", opt.point_limit,
                        "refuse enumerations beyond this many points");
        sub->add_option("--threads", opt.threads, "worker threads for exhaustive scans");
        sub->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output", opt.output, "write the report to this file");
    };

    CLI::App* construct = app.add_subcommand("construct", "build a separating set");
    add_common(construct, true);
    construct->get_option("--spec")->required();

    CLI::App* verify = app.add_subcommand("verify", "exhaustive separation check");
    add_common(verify, true);
    verify->add_option("--set-file", opt.set_file,
                       "verify the polynomials from this construct JSON instead of rebuilding");

    CLI::App* fibers = app.add_subcommand("fibers", "check the gluing fiber conditions");
    add_common(fibers, true);
    fibers->get_option("--spec")->required();

    CLI::App* oracles = app.add_subcommand("oracles", "run the symbolic lemma oracles");
    add_common(oracles, true);
    oracles->get_option("--spec")->required();

    CLI::App* power_sums = app.add_subcommand("power-sums", "print the power-sum table");
    add_common(power_sums, false);

    CLI::App* search = app.add_subcommand("search", "generic separating-set search");
    add_common(search, true);
    search->get_option("--spec")->required();
    search->add_option("--degree-bound", opt.degree_bound, "maximum candidate degree")
        ->check(CLI::PositiveNumber);

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
        if (construct->parsed()) { opt.command = "construct"; return run_construct(opt); }
        if (verify->parsed()) {
            opt.command = "verify";
            if (opt.spec.empty() && opt.set_file.empty())
                throw std::invalid_argument("verify needs --spec or --set-file");
            return run_verify(opt);
        }
        if (fibers->parsed()) { opt.command = "fibers"; return run_fibers(opt); }
        if (oracles->parsed()) { opt.command = "oracles"; return run_oracles(opt); }
        if (power_sums->parsed()) { opt.command = "power-sums"; return run_power_sums(opt); }
        if (search->parsed()) { opt.command = "search"; return run_search(opt); }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
