// Command-line front end: classify domains against semistar operations, apply
// closures, factor ideals, run the two-generator construction, query the
// Nagata/Kronecker layer, and run the oracle self-test suite.
//
// Exit codes: 0 success (including "false" classification answers),
// 2 parse error, 3 unsupported query, 4 internal disagreement, 5 other error.

#include <semistar/oracle.hpp>
#include <semistar/parse.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace semistar;
using nlohmann::json;

namespace {

struct options {
    bool as_json = false;
    std::uint64_t seed = kDefaultSeed;
    int samples = 200;
    int precision = 8;

    sample_plan plan() const { return sample_plan{samples, seed}; }
};

json family_json(const domain& d, const prime_family& f) {
    json j;
    j["generic"] = f.generic;
    j["members"] = json::array();
    for (auto& p : f.members) j["members"].push_back(prime_str(d, p));
    j["excluded"] = json::array();
    for (auto& p : f.excluded) j["excluded"].push_back(prime_str(d, p));
    if (f.theta_empty) j["theta_empty"] = true;
    return j;
}

json flag_json(const flag& f) {
    json j;
    j["value"] = tv_name(f.value);
    if (!f.witness.empty()) j["witness"] = f.witness;
    return j;
}

json report_json(const domain& d, const classification_report& r) {
    json j;
    j["domain"] = r.domain_name;
    j["star"] = r.star_name;
    j["quasi_max"] = family_json(d, r.quasi_max);
    j["flags"]["pstarmd"] = flag_json(r.pstarmd);
    j["flags"]["star_add"] = flag_json(r.star_add);
    j["flags"]["star_noetherian"] = flag_json(r.star_noetherian);
    j["flags"]["star_dd"] = flag_json(r.star_dd);
    j["flags"]["fc"] = flag_json(r.fc);
    j["flags"]["quasi_star_integrally_closed"] = flag_json(r.qsic);
    j["flags"]["krull"] = flag_json(r.krull);
    if (r.dim)
        j["star_dim"] = *r.dim;
    else
        j["star_dim"] = "unknown";
    j["notes"] = r.notes;
    j["seed"] = r.seed;
    return j;
}

void print_report_human(const domain& d, const classification_report& r) {
    std::cout << "domain: " << r.domain_name << "\n";
    std::cout << "star:   " << r.star_name << "\n";
    std::cout << "quasi-maximal set: ";
    if (r.quasi_max.generic) {
        std::cout << "all maximal ideals";
        for (auto& p : r.quasi_max.excluded) std::cout << " \\ " << prime_str(d, p);
        for (auto& p : r.quasi_max.members) std::cout << " + " << prime_str(d, p);
    } else {
        if (r.quasi_max.members.empty()) std::cout << "(empty)";
        for (size_t i = 0; i < r.quasi_max.members.size(); i++)
            std::cout << (i ? ", " : "") << prime_str(d, r.quasi_max.members[i]);
    }
    std::cout << "\n";
    auto row = [](const char* name, const flag& f) {
        std::cout << "  " << name << ": " << tv_name(f.value);
        if (!f.witness.empty()) std::cout << "   [" << f.witness << "]";
        std::cout << "\n";
    };
    row("pstarmd        ", r.pstarmd);
    row("star_add       ", r.star_add);
    row("star_noetherian", r.star_noetherian);
    row("star_dd        ", r.star_dd);
    row("fc             ", r.fc);
    row("qs_int_closed  ", r.qsic);
    row("krull          ", r.krull);
    std::cout << "  star_dim       : ";
    if (r.dim)
        std::cout << *r.dim << "\n";
    else
        std::cout << "unknown\n";
    for (auto& n : r.notes) std::cout << "  note: " << n << "\n";
    std::cout << "  seed: " << r.seed << "\n";
}

int cmd_classify(const options& o, const std::string& ds, const std::string& os) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    classification_report r = classify(d, s, o.plan());
    if (o.as_json)
        std::cout << report_json(d, r).dump(2) << "\n";
    else
        print_report_human(d, r);
    return 0;
}

int cmd_apply(const options& o, const std::string& ds, const std::string& os,
              const std::string& is) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    ideal e = parse_ideal(d, is);
    ideal r = apply_star(s, e);
    if (o.as_json) {
        json j;
        j["domain"] = dom_str(d);
        j["star"] = star_str(d, s);
        j["input"] = ideal_str(e);
        j["closure"] = ideal_str(r);
        j["fg"] = ideal_is_fg(r);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << ideal_str(e) << "^" << star_str(d, s) << " = " << ideal_str(r) << "\n";
    }
    return 0;
}

int cmd_factor(const options& o, const std::string& ds, const std::string& os,
               const std::string& is) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    ideal e = parse_ideal(d, is);
    star_factorization f = factor_into_primes(e, s);
    if (o.as_json) {
        json j;
        j["domain"] = dom_str(d);
        j["star"] = star_str(d, s);
        j["ideal"] = ideal_str(e);
        j["unit"] = f.unit;
        j["factors"] = json::array();
        for (auto& [p, k] : f.primes)
            j["factors"].push_back({{"prime", prime_str(d, p)}, {"exponent", k}});
        std::cout << j.dump(2) << "\n";
    } else {
        if (f.unit) {
            std::cout << "unit ideal (I^tilde = D^tilde): empty factorization\n";
            return 0;
        }
        std::cout << ideal_str(e) << " ~ ";
        for (size_t i = 0; i < f.primes.size(); i++) {
            if (i) std::cout << " * ";
            std::cout << prime_str(d, f.primes[i].first);
            if (f.primes[i].second > 1) std::cout << "^" << f.primes[i].second;
        }
        std::cout << "   (up to " << star_str(d, mk_tilde(s)) << "-closure)\n";
    }
    return 0;
}

int cmd_twogen(const options& o, const std::string& ds, const std::string& os,
               const std::string& is, const std::string& as) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    ideal e = parse_ideal(d, is);
    element a = parse_element(d, as);
    element b = two_generator(e, a, s);
    if (o.as_json) {
        json j;
        j["a"] = elem_str(a);
        j["b"] = elem_str(b);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "I^tilde = ((a, b)D)^tilde with a = " << elem_str(a)
                  << ", b = " << elem_str(b) << "\n";
    }
    return 0;
}

int cmd_kr(const options& o, const std::string& ds, const std::string& os,
           const std::string& fs, const std::string& gs) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    kpoly f = parse_poly(d, fs);
    kpoly g = parse_poly(d, gs);
    bool member = kronecker_member(f, g, s);
    if (o.as_json) {
        json j;
        j["member"] = member;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "f/g in Kr(D, " << star_str(d, s) << "): " << (member ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

int cmd_nagata(const options& o, const std::string& ds, const std::string& os,
               const std::string& arg) {
    domain d0 = parse_domain(ds);
    star s = parse_op(d0, os);
    domain d = op_domain(d0, s);
    if (arg.rfind("poly", 0) == 0) {
        kpoly h = parse_poly(d, arg);
        bool member = is_in_nagata_mult_set(h, s);
        if (o.as_json) {
            json j;
            j["member"] = member;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "h in N(" << star_str(d, s) << "): " << (member ? "yes" : "no")
                      << "\n";
        }
        return 0;
    }
    ideal e = parse_ideal(d, arg);
    kpoly wtn = nagata_principal_witness(e, s);
    if (o.as_json) {
        json j;
        j["witness"] = poly_str(wtn);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "I Na(D, star) = f Na(D, star) with f = " << poly_str(wtn) << "\n";
    }
    return 0;
}

int cmd_report(const options& o, const std::string& ds,
               const std::vector<std::string>& ops) {
    domain d0 = parse_domain(ds);
    std::vector<classification_report> rows(ops.size());
    std::vector<domain> doms(ops.size());
#ifdef SEMISTAR_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < ops.size(); i++) {
        star s = parse_op(d0, ops[i]);
        doms[i] = op_domain(d0, s);
        rows[i] = classify(doms[i], s, o.plan());
    }
    if (o.as_json) {
        json j = json::array();
        for (size_t i = 0; i < rows.size(); i++) j.push_back(report_json(doms[i], rows[i]));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "domain: " << dom_str(d0) << "\n";
        std::cout << "op              P*MD  ADD   Noeth DD    FC    QIC   dim\n";
        for (auto& r : rows) {
            auto cell = [](const flag& f) {
                std::string s = tv_name(f.value);
                s.resize(6, ' ');
                return s;
            };
            std::string name = r.star_name;
            name.resize(std::max<size_t>(16, name.size() + 1), ' ');
            std::cout << name << cell(r.pstarmd) << cell(r.star_add)
                      << cell(r.star_noetherian) << cell(r.star_dd) << cell(r.fc)
                      << cell(r.qsic);
            if (r.dim)
                std::cout << *r.dim;
            else
                std::cout << "?";
            std::cout << "\n";
        }
    }
    return 0;
}

struct selftest_item {
    std::string domain_text;
    std::string op_text;
};

std::vector<selftest_item> default_selftest_matrix() {
    std::vector<selftest_item> v;
    auto add = [&](const std::string& d, std::initializer_list<const char*> ops) {
        for (auto* o : ops) v.push_back({d, o});
    };
    add("divisor(n=3)", {"d", "v", "t", "w", "star[sub[1,2]]", "tilde(star[sub[1,2]])",
                         "theta", "spectral[P1,P3]", "spectral[max\\P2]"});
    add("quadratic(d=-1,f=1)", {"d", "v", "t", "w", "star[OK]", "theta", "spectral[max\\P2]"});
    add("quadratic(d=-3,f=2)",
        {"d", "v", "t", "w", "star[OK]", "tilde(star[OK])", "theta", "spectral[max\\P2]",
         "pull(t,OK)"});
    add("pullback(field k=Q,K=Q(i))",
        {"d", "v", "t", "w", "star[T]", "tilde(star[T])", "theta", "pull(t,T)"});
    add("pullback(order d=-3,f=2)",
        {"d", "v", "t", "w", "star[T]", "tilde(star[T])", "pull(t,T)"});
    add("cusp(K=Q)", {"d", "v", "t", "w", "star[T]", "tilde(star[T])", "theta", "pull(t,T)"});
    return v;
}

int cmd_selftest(const options& o, const std::vector<std::string>& args) {
    std::vector<selftest_item> items;
    if (args.size() == 2)
        items.push_back({args[0], args[1]});
    else
        items = default_selftest_matrix();
    std::vector<suite_result> results(items.size());
    std::vector<oracle_result> oracles;
    std::vector<std::string> odoms;
#ifdef SEMISTAR_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < items.size(); i++) {
        domain d0 = parse_domain(items[i].domain_text);
        star s = parse_op(d0, items[i].op_text);
        domain d = op_domain(d0, s);
        results[i] = run_theorem_suite(d, s, o.plan());
    }
    // oracle batteries, one per distinct domain
    {
        std::vector<std::string> seen;
        for (auto& it : items)
            if (std::find(seen.begin(), seen.end(), it.domain_text) == seen.end())
                seen.push_back(it.domain_text);
        oracles.resize(seen.size());
        odoms = seen;
#ifdef SEMISTAR_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (size_t i = 0; i < seen.size(); i++) {
            sample_plan p = o.plan();
            p.n_random = std::min(p.n_random, 60);
            oracles[i] = oracle_equivalence(parse_domain(seen[i]), p);
        }
    }
    bool ok = true;
    int rows = 0, agreed = 0;
    json jout = json::array();
    for (auto& r : results) {
        for (auto& row : r.rows) {
            rows++;
            if (row.ok()) agreed++;
            if (!row.ok()) {
                ok = false;
                if (!o.as_json)
                    std::cout << "DISAGREE [" << r.domain_name << " ; " << r.star_name
                              << "] " << row.id << ": " << row.first_disagreement << "\n";
            }
        }
        if (o.as_json) {
            json j;
            j["domain"] = r.domain_name;
            j["star"] = r.star_name;
            j["rows"] = json::array();
            for (auto& row : r.rows)
                j["rows"].push_back({{"id", row.id},
                                     {"instances", row.instances},
                                     {"agree", row.agree},
                                     {"witness", row.first_disagreement}});
            jout.push_back(j);
        }
    }
    for (size_t i = 0; i < oracles.size(); i++) {
        if (oracles[i].mismatches) {
            ok = false;
            if (!o.as_json)
                std::cout << "ORACLE MISMATCH [" << odoms[i]
                          << "]: " << oracles[i].first_mismatch << "\n";
        }
    }
    if (o.as_json) {
        json top;
        top["suites"] = jout;
        top["theorem_rows"] = rows;
        top["agreed"] = agreed;
        top["ok"] = ok;
        std::cout << top.dump(2) << "\n";
    } else {
        std::cout << "selftest: " << agreed << "/" << rows << " theorem rows agree, "
                  << oracles.size() << " oracle batteries " << (ok ? "clean" : "DIRTY")
                  << "\n";
    }
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact semistar-operation calculus over finitely representable domains"};
    app.require_subcommand(1);
    options opt;
    app.add_flag("--json", opt.as_json, "machine-readable output");
    app.add_option("--seed", opt.seed, "RNG seed for sampled falsifiers");
    app.add_option("--samples", opt.samples, "random samples per falsifier");
    app.add_option("--precision", opt.precision, "series precision for oracles");

    std::string ds, os, is, as, fs, gs, extra;
    std::vector<std::string> rest;

    auto* c_classify = app.add_subcommand("classify", "full predicate matrix");
    c_classify->add_option("domain", ds)->required();
    c_classify->add_option("op", os)->required();

    auto* c_apply = app.add_subcommand("apply", "closure of an ideal");
    c_apply->add_option("domain", ds)->required();
    c_apply->add_option("op", os)->required();
    c_apply->add_option("ideal", is)->required();

    auto* c_factor = app.add_subcommand("factor", "prime star-factorization");
    c_factor->add_option("domain", ds)->required();
    c_factor->add_option("op", os)->required();
    c_factor->add_option("ideal", is)->required();

    auto* c_twogen = app.add_subcommand("twogen", "two-generator completion");
    c_twogen->add_option("domain", ds)->required();
    c_twogen->add_option("op", os)->required();
    c_twogen->add_option("ideal", is)->required();
    c_twogen->add_option("a", as)->required();

    auto* c_kr = app.add_subcommand("kr", "Kronecker function ring membership");
    c_kr->add_option("domain", ds)->required();
    c_kr->add_option("op", os)->required();
    c_kr->add_option("f", fs)->required();
    c_kr->add_option("g", gs)->required();

    auto* c_nagata = app.add_subcommand("nagata", "N(star) membership / principal witness");
    c_nagata->add_option("domain", ds)->required();
    c_nagata->add_option("op", os)->required();
    c_nagata->add_option("arg", extra)->required();

    auto* c_report = app.add_subcommand("report", "classification matrix for several ops");
    c_report->add_option("domain", ds)->required();
    c_report->add_option("ops", rest)->required()->expected(-1);

    auto* c_selftest = app.add_subcommand("selftest", "theorem suite + oracle batteries");
    c_selftest->add_option("args", rest)->expected(-2);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) return cmd_classify(opt, ds, os);
        if (c_apply->parsed()) return cmd_apply(opt, ds, os, is);
        if (c_factor->parsed()) return cmd_factor(opt, ds, os, is);
        if (c_twogen->parsed()) return cmd_twogen(opt, ds, os, is, as);
        if (c_kr->parsed()) return cmd_kr(opt, ds, os, fs, gs);
        if (c_nagata->parsed()) return cmd_nagata(opt, ds, os, extra);
        if (c_report->parsed()) return cmd_report(opt, ds, rest);
        if (c_selftest->parsed()) return cmd_selftest(opt, rest);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const internal_disagreement& e) {
        std::cerr << "internal disagreement: " << e.what() << "\n";
        return 4;
    } catch (const verification_failed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 4;
    } catch (const unsupported_closure& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const unrepresentable_overring& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const semantic_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const not_star_dedekind& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const field_domain& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const bad_arity& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const bad_discriminant& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const bad_shape& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
