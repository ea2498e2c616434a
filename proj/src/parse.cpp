#include <semistar/parse.hpp>

#include <cctype>
#include <sstream>

namespace semistar {

namespace {

struct cursor {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
    }
    bool eat(const std::string& tok) {
        ws();
        if (s.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    bool done() {
        ws();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& why) {
        std::ostringstream o;
        o << why << " at position " << i << " in '" << s << "'";
        throw parse_error(o.str());
    }
    Int integer() {
        ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) i++;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
        if (i == start || (i == start + 1 && !std::isdigit((unsigned char)s[start])))
            fail("expected an integer");
        return Int(s.substr(start, i - start));
    }
    std::string ident() {
        ws();
        size_t start = i;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) i++;
        if (i == start) fail("expected a name");
        return s.substr(start, i - start);
    }
};

// --- element expressions ---------------------------------------------------------

// Values are finite Laurent polynomials over Q(sqrt d); plain field elements
// are degree-zero. Division is exact field division for constants and by
// monomials otherwise.
struct pexpr {
    pull_elem v;
};

pexpr pe_expr(cursor& c, const domain& d, bool allow_x);

pexpr pe_atom(cursor& c, const domain& d, bool allow_x) {
    c.ws();
    if (c.eat("(")) {
        pexpr e = pe_expr(c, d, allow_x);
        c.expect(")");
        return e;
    }
    if (c.eat("-")) {
        pexpr e = pe_atom(c, d, allow_x);
        for (auto& co : e.v.co) co = qelem{-co.x, -co.y};
        return e;
    }
    if (c.peek('w')) {
        c.expect("w");
        return {pe_const(qelem{Rat(0), Rat(1)})};
    }
    if (allow_x && (c.peek('X') || c.peek('x'))) {
        c.i++;
        return {pe_xpow(1)};
    }
    return {pe_const(qelem{Rat(c.integer()), Rat(0)})};
}

pexpr pe_power(cursor& c, const domain& d, bool allow_x) {
    pexpr b = pe_atom(c, d, allow_x);
    if (c.eat("^")) {
        Int e = c.integer();
        long ee = e.get_si();
        if (b.v.co.size() == 1 && b.v.co[0] == qelem{Rat(1), Rat(0)}) {
            return {pe_xpow(b.v.lead * ee)};
        }
        if (ee < 0) c.fail("negative powers only apply to X");
        pull_elem r = pe_const(qelem{Rat(1), Rat(0)});
        pull_domain pd = (d->kind == backend::pullback || d->kind == backend::pull_t)
                             ? d->pb
                             : make_cusp();
        if (d->kind == backend::quad) {
            pd = make_cusp();
            pd.d = d->ord.d;
        }
        for (long i = 0; i < ee; i++) r = pe_mul(pd, r, b.v);
        return {r};
    }
    return b;
}

pull_domain elem_field(const domain& d) {
    if (d->kind == backend::pullback || d->kind == backend::pull_t) return d->pb;
    pull_domain pd = make_cusp();
    if (d->kind == backend::quad) pd.d = d->ord.d;
    return pd;
}

pexpr pe_term(cursor& c, const domain& d, bool allow_x) {
    pexpr a = pe_power(c, d, allow_x);
    pull_domain pd = elem_field(d);
    while (true) {
        if (c.eat("*")) {
            pexpr b = pe_power(c, d, allow_x);
            a.v = pe_mul(pd, a.v, b.v);
        } else if (c.eat("/")) {
            pexpr b = pe_power(c, d, allow_x);
            if (b.v.is_zero()) c.fail("division by zero");
            if (b.v.co.size() != 1) c.fail("division only by monomials");
            qelem inv = qinv(b.v.co[0], pd.d);
            pull_elem mono = pe_make(-b.v.lead, {inv});
            a.v = pe_mul(pd, a.v, mono);
        } else {
            break;
        }
    }
    return a;
}

pexpr pe_expr(cursor& c, const domain& d, bool allow_x) {
    pexpr a = pe_term(c, d, allow_x);
    while (true) {
        c.ws();
        if (c.eat("+")) {
            pexpr b = pe_term(c, d, allow_x);
            a.v = pe_add(a.v, b.v);
        } else if (c.peek('-')) {
            pexpr b = pe_term(c, d, allow_x);
            a.v = pe_add(a.v, b.v);
        } else {
            break;
        }
    }
    return a;
}

element elem_from_pexpr(const domain& d, cursor& c, const pexpr& e) {
    switch (d->kind) {
        case backend::quad: {
            if (!e.v.is_zero() && (e.v.lead != 0 || e.v.co.size() != 1))
                c.fail("series are not elements of a quadratic order");
            qelem q = e.v.is_zero() ? qelem{Rat(0), Rat(0)} : e.v.co[0];
            return elem_quad(d, q);
        }
        case backend::pullback:
        case backend::pull_t: {
            if (d->pb.shape == pb_shape::cusp)
                for (auto& co : e.v.co)
                    if (co.y != 0) c.fail("the cusp coefficient field is Q");
            return elem_pull(d, e.v);
        }
        default: c.fail("element expression on the wrong backend");
    }
}

element parse_element_cur(const domain& d, cursor& c) {
    if (d->kind == backend::divisor) {
        c.expect("(");
        std::vector<long> v;
        while (!c.eat(")")) {
            if (!v.empty()) c.expect(",");
            v.push_back(c.integer().get_si());
        }
        if ((int)v.size() != d->div.n) c.fail("valuation tuple length mismatch");
        return elem_divisor(d, v);
    }
    bool allow_x = d->kind != backend::quad;
    pexpr e = pe_expr(c, d, allow_x);
    return elem_from_pexpr(d, c, e);
}

}  // namespace

element parse_element(const domain& d, const std::string& text) {
    cursor c{text};
    element e = parse_element_cur(d, c);
    if (!c.done()) c.fail("trailing input");
    return e;
}

ideal parse_ideal(const domain& d, const std::string& text) {
    cursor c{text};
    c.expect("ideal");
    c.expect("[");
    std::vector<element> gens;
    while (!c.eat("]")) {
        if (!gens.empty()) c.expect(",");
        gens.push_back(parse_element_cur(d, c));
    }
    // optional precision annotation, accepted for compatibility
    if (c.eat("(")) {
        c.expect("prec");
        c.integer();
        c.expect(")");
    }
    if (!c.done()) c.fail("trailing input");
    if (gens.empty()) c.fail("an ideal literal needs at least one generator");
    return ideal_from_gens(d, gens);
}

kpoly parse_poly(const domain& d, const std::string& text) {
    cursor c{text};
    c.expect("poly");
    c.expect("[");
    std::vector<element> co;
    while (!c.eat("]")) {
        if (!co.empty()) c.expect(",");
        co.push_back(parse_element_cur(d, c));
    }
    if (!c.done()) c.fail("trailing input");
    return poly_make(d, co);
}

domain parse_domain(const std::string& text) {
    cursor c{text};
    std::string kind = c.ident();
    if (kind == "divisor") {
        c.expect("(");
        c.expect("n");
        c.expect("=");
        Int n = c.integer();
        c.expect(")");
        if (n < 1 || n > 16) throw bad_arity("divisor domain needs 1 <= n <= 16");
        return dom_divisor((int)n.get_si());
    }
    if (kind == "quadratic") {
        c.expect("(");
        c.expect("d");
        c.expect("=");
        Int dd = c.integer();
        c.expect(",");
        c.expect("f");
        c.expect("=");
        Int f = c.integer();
        c.expect(")");
        return dom_quad(dd, f);
    }
    if (kind == "pullback") {
        c.expect("(");
        std::string shape = c.ident();
        if (shape == "field") {
            c.expect("k");
            c.expect("=");
            c.expect("Q");
            c.expect(",");
            c.expect("K");
            c.expect("=");
            c.expect("Q");
            c.expect("(");
            Int dd;
            if (c.eat("i")) {
                dd = -1;
            } else {
                c.expect("sqrt");
                dd = c.integer();
            }
            c.expect(")");
            c.expect(")");
            return dom_pullback_field(dd);
        }
        if (shape == "order") {
            c.expect("d");
            c.expect("=");
            Int dd = c.integer();
            c.expect(",");
            c.expect("f");
            c.expect("=");
            Int f = c.integer();
            c.expect(")");
            return dom_pullback_order(dd, f);
        }
        c.fail("pullback shape must be 'field' or 'order'");
    }
    if (kind == "cusp") {
        c.expect("(");
        c.expect("K");
        c.expect("=");
        c.expect("Q");
        c.expect(")");
        return dom_cusp();
    }
    c.fail("unknown domain '" + kind + "'");
    throw parse_error("unreachable");
}

overring_ref parse_overring(const domain& d, const std::string& text) {
    cursor c{text};
    overring_ref t;
    if (c.eat("order")) {
        c.expect("[");
        t.k = overring_ref::kind::quad_sub;
        t.f2 = c.integer();
        c.expect("]");
    } else if (c.eat("sub")) {
        c.expect("[");
        t.k = overring_ref::kind::div_sub;
        while (!c.eat("]")) {
            if (!t.sub.empty()) c.expect(",");
            t.sub.push_back((int)c.integer().get_si() - 1);
        }
        std::sort(t.sub.begin(), t.sub.end());
    } else if (c.eat("OK")) {
        t.k = overring_ref::kind::quad_sub;
        t.f2 = 1;
    } else if (c.eat("T")) {
        t.k = overring_ref::kind::pull_t;
    } else if (c.eat("K")) {
        t.k = overring_ref::kind::field_k;
    } else if (c.eat("D")) {
        t.k = overring_ref::kind::self;
    } else {
        c.fail("unknown overring");
    }
    if (!c.done()) c.fail("trailing input");
    // validate representability against the domain
    overring_domain(d, t);
    return t;
}

prime_id parse_prime(const domain& d, const std::string& text) {
    cursor c{text};
    prime_id p;
    if (c.eat("M") || c.eat("N")) {
        if (d->kind == backend::pullback) {
            p.k = prime_id::pk::pb_m;
            return p;
        }
        if (d->kind == backend::pull_t) {
            p.k = prime_id::pk::pt_m;
            return p;
        }
        c.fail("M names the pullback maximal ideal only");
    }
    c.expect("P");
    Int n = c.integer();
    switch (d->kind) {
        case backend::divisor: {
            long idx = n.get_si() - 1;
            if (idx < 0 || idx >= d->div.n) throw semantic_error("no such valuation index");
            p.k = prime_id::pk::div_idx;
            p.idx = (int)idx;
            return p;
        }
        case backend::quad:
        case backend::pullback: {
            const quad_order& o = d->kind == backend::quad ? d->ord : d->pb.R;
            if (d->kind == backend::pullback && d->pb.shape != pb_shape::order)
                c.fail("this pullback has no lifted primes");
            if (!is_prime(n)) throw semantic_error("P<n> needs a rational prime");
            auto ps = primes_over(o, n);
            int which = 0;
            if (c.eat("a")) which = 0;
            else if (c.eat("b")) which = 1;
            else if (ps.size() > 1) throw semantic_error("split prime needs an a/b suffix");
            if (which >= (int)ps.size()) throw semantic_error("no such prime");
            p.k = d->kind == backend::quad ? prime_id::pk::quad_p : prime_id::pk::pb_lift;
            p.q = ps[which];
            return p;
        }
        default: c.fail("no primes over this backend");
    }
    throw parse_error("unreachable");
}

static star parse_op_cur(const domain& d, cursor& c);

static overring_ref parse_overring_cur(const domain& d, cursor& c) {
    size_t start = c.i;
    int depth = 0;
    while (c.i < c.s.size()) {
        char ch = c.s[c.i];
        if (ch == '[') depth++;
        if (ch == ']') {
            if (depth == 0) break;
            depth--;
        }
        if (depth == 0 && (ch == ',' || ch == ')')) break;
        c.i++;
    }
    return parse_overring(d, c.s.substr(start, c.i - start));
}

static star parse_op_cur(const domain& d, cursor& c) {
    std::string head = c.ident();
    if (head == "d") return mk_d();
    if (head == "e") return mk_e();
    if (head == "v") return mk_v();
    if (head == "t") return mk_t();
    if (head == "w") return mk_w();
    if (head == "theta") return mk_theta();
    if (head == "star") {
        c.expect("[");
        overring_ref t = parse_overring_cur(d, c);
        c.expect("]");
        return mk_over_t(t);
    }
    if (head == "spectral") {
        c.expect("[");
        prime_family fam;
        if (c.eat("max")) {
            fam.generic = true;
            while (c.eat("\\")) {
                size_t start = c.i;
                while (c.i < c.s.size() && c.s[c.i] != '\\' && c.s[c.i] != ']') c.i++;
                fam.excluded.push_back(parse_prime(d, c.s.substr(start, c.i - start)));
            }
            if (d->kind == backend::divisor) {
                // the divisor model has an explicit finite maximal spectrum
                fam.generic = false;
                for (auto& p : base_candidate_primes(d))
                    if (!pid_in_list(fam.excluded, p)) fam.members.push_back(p);
                fam.excluded.clear();
            }
        } else {
            while (!c.peek(']')) {
                if (!fam.members.empty()) c.expect(",");
                size_t start = c.i;
                while (c.i < c.s.size() && c.s[c.i] != ',' && c.s[c.i] != ']') c.i++;
                fam.members.push_back(parse_prime(d, c.s.substr(start, c.i - start)));
            }
        }
        c.expect("]");
        return mk_spectral(fam);
    }
    auto unary = [&](auto mk) {
        c.expect("(");
        star inner = parse_op_cur(d, c);
        c.expect(")");
        return mk(inner);
    };
    if (head == "ft") return unary([](const star& s) { return mk_ft(s); });
    if (head == "tilde") return unary([](const star& s) { return mk_tilde(s); });
    if (head == "a") return unary([](const star& s) { return mk_eab(s); });
    if (head == "restrict") {
        c.expect("(");
        star inner = parse_op_cur(d, c);
        c.expect(",");
        overring_ref t = parse_overring_cur(d, c);
        c.expect(")");
        return mk_restrict(inner, d, t);
    }
    if (head == "pull") {
        c.expect("(");
        // the inner operation lives on the overring; find it first
        size_t save = c.i;
        int depth = 1;
        size_t comma = std::string::npos;
        for (size_t j = c.i; j < c.s.size(); j++) {
            if (c.s[j] == '(') depth++;
            if (c.s[j] == ')') depth--;
            if (depth == 0) break;
            if (c.s[j] == ',' && depth == 1) comma = j;
        }
        if (comma == std::string::npos) c.fail("pull(OP,T) needs two arguments");
        std::string tpart;
        {
            size_t j = comma + 1;
            int dep = 1;
            size_t end = c.s.size();
            for (size_t k = j; k < c.s.size(); k++) {
                if (c.s[k] == '(') dep++;
                if (c.s[k] == ')') dep--;
                if (dep == 0) {
                    end = k;
                    break;
                }
            }
            tpart = c.s.substr(j, end - j);
        }
        overring_ref t = parse_overring(d, tpart);
        domain td = overring_domain(d, t);
        cursor ci{c.s};
        ci.i = save;
        star inner = parse_op_cur(td, ci);
        c.i = comma + 1 + tpart.size();
        c.expect(")");
        return mk_pull(inner, t);
    }
    c.fail("unknown operation '" + head + "'");
    throw parse_error("unreachable");
}

star parse_op(const domain& d, const std::string& text) {
    cursor c{text};
    star s = parse_op_cur(d, c);
    if (!c.done()) c.fail("trailing input");
    return s;
}

domain op_domain(const domain& d, const star& s) {
    if (s->k == star_op::op::restrict_to) return overring_domain(s->parent, s->t);
    return d;
}

}  // namespace semistar
