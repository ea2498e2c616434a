#include <semistar/axioms.hpp>

#include <sstream>

namespace semistar {

// --- canonical families -------------------------------------------------------

static void push_combos(std::vector<ideal>& out) {
    size_t base = out.size();
    for (size_t i = 0; i < base && i < 6; i++)
        for (size_t j = i + 1; j < base && j < 6; j++) {
            out.push_back(ideal_mul(out[i], out[j]));
            out.push_back(ideal_add(out[i], out[j]));
            try {
                out.push_back(ideal_colon(out[i], out[j]));
            } catch (const colon_zero&) {
            }
        }
}

std::vector<ideal> canonical_ideals(const domain& d) {
    std::vector<ideal> out;
    switch (d->kind) {
        case backend::divisor: {
            int n = d->div.n;
            out.push_back(ideal_ring(d));
            for (int i = 0; i < std::min(n, 8); i++) {
                prime_id p;
                p.k = prime_id::pk::div_idx;
                p.idx = i;
                out.push_back(ideal_of_prime(d, p));
            }
            std::vector<long> a(n, 0), b(n, 0), c(n, 0);
            for (int i = 0; i < n; i++) {
                a[i] = (i % 3) + 1;
                b[i] = (i % 2) ? -1 : 2;
                c[i] = (i == 0) ? 3 : 0;
            }
            out.push_back(ideal_principal(elem_divisor(d, a)));
            out.push_back(ideal_principal(elem_divisor(d, b)));
            out.push_back(ideal_principal(elem_divisor(d, c)));
            push_combos(out);
            // a spectral image: masked away from the first valuation
            prime_family f1;
            f1.members.push_back({prime_id::pk::div_idx, 0, {}});
            out.push_back(spectral_eval(f1, out[1]));
            out.push_back(ideal_full_k(d));
            break;
        }
        case backend::quad: {
            const quad_order& o = d->ord;
            out.push_back(ideal_ring(d));
            for (Int p = 2; p < 20; p = next_prime(p)) {
                for (auto& q : primes_over(o, p)) {
                    prime_id pid;
                    pid.k = prime_id::pk::quad_p;
                    pid.q = q;
                    out.push_back(ideal_of_prime(d, pid));
                }
                if (out.size() > 9) break;
            }
            auto pr = [&](Rat x, Rat y) {
                out.push_back(ideal_principal(elem_quad(d, qelem{x, y})));
            };
            pr(Rat(2), Rat(0));
            pr(Rat(6), Rat(0));
            pr(Rat(0), Rat(1));      // w
            pr(Rat(1), Rat(1));      // 1 + w
            pr(Rat(1, 2), Rat(0));   // fractional
            out.push_back(ideal{d, qm_lattice(lattice_maximal_order(o))});  // O_K
            if (o.f != 1) {
                // the conductor f*O_K and a masked module at a special prime
                out.push_back(ideal_scale(ideal{d, qm_lattice(lattice_maximal_order(o))},
                                          elem_quad(d, qelem{Rat(o.f), Rat(0)})));
                auto sp = special_primes(o);
                out.push_back(ideal{d, qm_make(o, lattice_ring(o), qmode::all_but, {sp[0]})});
                prime_id pid;
                pid.k = prime_id::pk::quad_p;
                pid.q = sp[0];
                out.push_back(ideal_mul(ideal_of_prime(d, pid), ideal_of_prime(d, pid)));
            }
            push_combos(out);
            out.push_back(ideal_full_k(d));
            break;
        }
        case backend::pullback: {
            const pull_domain& pb = d->pb;
            out.push_back(ideal_ring(d));
            out.push_back(ideal{d, pm_maximal(pb)});            // M (or N)
            out.push_back(ideal{d, pm_tmark(0)});               // T
            out.push_back(ideal{d, pm_tmark(2)});
            out.push_back(ideal{d, pm_tmark(-1)});
            out.push_back(ideal_mul(out[1], out[1]));           // M^2
            switch (pb.shape) {
                case pb_shape::field: {
                    out.push_back(ideal{d, pm_level_field(pb, 0, qelem{Rat(0), Rat(1)})});
                    out.push_back(ideal{d, pm_level_field(pb, 1, qelem{Rat(1), Rat(1)})});
                    out.push_back(ideal{d, pm_level_field(pb, -1, qelem{Rat(1), Rat(0)})});
                    out.push_back(
                        ideal_principal(elem_pull(d, pe_make(1, {qelem{Rat(0), Rat(1)}}))));
                    break;
                }
                case pb_shape::order: {
                    const quad_order& R = pb.R;
                    out.push_back(ideal{d, pm_level_order(pb, 0, qm_lattice(lattice_maximal_order(R)))});
                    for (auto& q : special_primes(R)) {
                        out.push_back(ideal{d, pm_lift_prime(pb, q)});
                        out.push_back(ideal{d, pm_level_order(pb, 1, qm_lattice(q.lat))});
                    }
                    for (auto& q : fresh_primes(R, 2, special_primes(R)))
                        out.push_back(ideal{d, pm_lift_prime(pb, q)});
                    out.push_back(ideal{d, pm_level_order(pb, -1, qm_lattice(lattice_ring(R)))});
                    break;
                }
                case pb_shape::cusp: {
                    for (long n : {0L, 1L, -1L})
                        for (int c : {0, 1, -1})
                            out.push_back(ideal{d, pm_level_cusp(n, qelem{Rat(c), Rat(0)})});
                    out.push_back(ideal{d, pm_tmark(3)});
                    break;
                }
            }
            push_combos(out);
            out.push_back(ideal_full_k(d));
            break;
        }
        case backend::pull_t: {
            for (long n : {0L, 1L, 2L, -1L, 3L}) out.push_back(ideal{d, pm_tmark(n)});
            out.push_back(ideal_full_k(d));
            break;
        }
    }
    return out;
}

std::vector<element> canonical_elements(const domain& d) {
    std::vector<element> out;
    switch (d->kind) {
        case backend::divisor: {
            int n = d->div.n;
            out.push_back(elem_one(d));
            std::vector<long> a(n, 0);
            a[0] = 1;
            out.push_back(elem_divisor(d, a));
            std::vector<long> b(n, 1);
            out.push_back(elem_divisor(d, b));
            std::vector<long> c(n, 0);
            c[n - 1] = -2;
            out.push_back(elem_divisor(d, c));
            break;
        }
        case backend::quad:
            for (auto [x, y] : std::vector<std::pair<int, int>>{
                     {1, 0}, {2, 0}, {3, 0}, {6, 0}, {0, 1}, {1, 1}, {-1, 1}, {2, 1}})
                out.push_back(elem_quad(d, qelem{Rat(x), Rat(y)}));
            out.push_back(elem_quad(d, qelem{Rat(1, 2), Rat(0)}));
            break;
        case backend::pullback: {
            bool quad_coeff = d->pb.shape != pb_shape::cusp;
            out.push_back(elem_one(d));
            out.push_back(elem_pull(d, pe_xpow(1)));
            out.push_back(elem_pull(d, pe_xpow(d->pb.shape == pb_shape::cusp ? 2 : 1)));
            out.push_back(elem_pull(d, pe_xpow(3)));
            out.push_back(elem_pull(d, pe_make(0, {qelem{Rat(1), Rat(0)}, qelem{Rat(0), Rat(0)},
                                                   qelem{Rat(1), Rat(0)}})));  // 1 + X^2
            if (quad_coeff)
                out.push_back(elem_pull(d, pe_make(1, {qelem{Rat(0), Rat(1)}})));  // w X
            out.push_back(elem_pull(d, pe_xpow(-1)));
            break;
        }
        case backend::pull_t:
            out.push_back(elem_one(d));
            out.push_back(elem_pull(d, pe_xpow(1)));
            out.push_back(elem_pull(d, pe_xpow(-2)));
            break;
    }
    return out;
}

ideal random_ideal(const domain& d, rng& r) {
    switch (d->kind) {
        case backend::divisor: {
            div_module m;
            for (int i = 0; i < d->div.n; i++) {
                if (r.range(0, 9) == 0)
                    m.c.push_back(std::nullopt);
                else
                    m.c.push_back(r.range(-4, 5));
            }
            bool all_masked = true;
            for (auto& c : m.c)
                if (c) all_masked = false;
            if (all_masked && d->div.n > 0) m.c[0] = 1;
            return ideal{d, m};
        }
        case backend::quad: {
            auto g = [&] {
                qelem e{Rat(0), Rat(0)};
                while (e.is_zero())
                    e = qelem{Rat(r.range(-6, 6), r.range(1, 2)), Rat(r.range(-6, 6), 1)};
                e.x.canonicalize();
                return e;
            };
            ideal a = ideal_from_gens(d, {elem_quad(d, g()), elem_quad(d, g())});
            int pick = (int)r.range(0, 9);
            if (pick < 7) return a;
            if (pick == 7) return ideal_mul(a, ideal_from_gens(d, {elem_quad(d, g())}));
            if (pick == 8) return ideal_colon(ideal_ring(d), a);
            auto sp = special_primes(d->ord);
            if (sp.empty()) return a;
            return ideal{d, qm_make(d->ord, std::get<quad_module>(a.m).lat, qmode::all_but,
                                    {sp[0]})};
        }
        case backend::pullback: {
            long n = r.range(-2, 3);
            switch (d->pb.shape) {
                case pb_shape::field: {
                    int pick = (int)r.range(0, 3);
                    if (pick == 0) return ideal{d, pm_tmark(n)};
                    qelem c{Rat(r.range(-3, 3)), Rat(r.range(-3, 3))};
                    if (c.is_zero()) c = qelem{Rat(1), Rat(0)};
                    return ideal{d, pm_level_field(d->pb, n, c)};
                }
                case pb_shape::order: {
                    int pick = (int)r.range(0, 4);
                    if (pick == 0) return ideal{d, pm_tmark(n)};
                    qelem g{Rat(0), Rat(0)};
                    while (g.is_zero()) g = qelem{Rat(r.range(-5, 5)), Rat(r.range(-2, 2))};
                    qlattice L = (pick == 1) ? lattice_ring(d->pb.R)
                                             : lattice_from_gens(d->pb.R, {g});
                    if (pick == 3)
                        L = lat_add(d->pb.R, L, lattice_maximal_order(d->pb.R));
                    return ideal{d, pm_level_order(d->pb, n, qm_lattice(L))};
                }
                case pb_shape::cusp: {
                    if (r.coin()) return ideal{d, pm_tmark(n)};
                    return ideal{d, pm_level_cusp(n, qelem{Rat(r.range(-3, 3)), Rat(0)})};
                }
            }
            throw error("bad shape");
        }
        case backend::pull_t: return ideal{d, pm_tmark(r.range(-3, 4))};
    }
    throw error("bad backend");
}

element random_element(const domain& d, rng& r) {
    switch (d->kind) {
        case backend::divisor: {
            std::vector<long> v;
            for (int i = 0; i < d->div.n; i++) v.push_back(r.range(-3, 4));
            return elem_divisor(d, v);
        }
        case backend::quad: {
            qelem e{Rat(0), Rat(0)};
            while (e.is_zero())
                e = qelem{Rat(r.range(-9, 9), r.range(1, 3)), Rat(r.range(-9, 9), 1)};
            e.x.canonicalize();
            return elem_quad(d, e);
        }
        default: {
            bool rational_only = d->kind == backend::pullback && d->pb.shape == pb_shape::cusp;
            std::vector<qelem> co;
            for (int i = 0; i < 3; i++)
                co.push_back(qelem{Rat(r.range(-4, 4)),
                                   rational_only ? Rat(0) : Rat(r.range(-2, 2))});
            pull_elem e = pe_make(r.range(-2, 2), co);
            if (e.is_zero()) e = pe_xpow(1);
            return elem_pull(d, e);
        }
    }
}

std::vector<ideal> sample_ideals(const domain& d, const sample_plan& p) {
    std::vector<ideal> out = canonical_ideals(d);
    rng r(p.seed);
    for (int i = 0; i < p.n_random; i++) out.push_back(random_ideal(d, r));
    return out;
}

// --- axiom checking ------------------------------------------------------------

static std::string pairw(const ideal& a, const ideal& b) {
    return "E=" + ideal_str(a) + "  F=" + ideal_str(b);
}

axiom_report check_axioms(const domain& d, const closure_fn& f, const sample_plan& p) {
    axiom_report rep;
    rep.seed = p.seed;
    std::vector<ideal> s = sample_ideals(d, p);
    rep.samples = (int)s.size();
    std::vector<element> xs = canonical_elements(d);
    auto viol = [&](const std::string& ax, const std::string& w) {
        if (rep.violations.size() < 8) rep.violations.push_back({ax, w});
    };
    std::vector<ideal> cl;
    cl.reserve(s.size());
    for (auto& e : s) cl.push_back(f(e));
    for (size_t i = 0; i < s.size(); i++) {
        const ideal& e = s[i];
        const ideal& ce = cl[i];
        if (!ideal_subset(e, ce)) viol("star3-extensive", ideal_str(e));
        if (!(f(ce) == ce)) viol("star3-idempotent", ideal_str(e));
        if (i < 40) {
            for (auto& x : xs) {
                if (elem_is_zero(x)) continue;
                if (!(f(ideal_scale(e, x)) == ideal_scale(ce, x)))
                    viol("star1-scaling", "x=" + elem_str(x) + " E=" + ideal_str(e));
            }
        }
    }
    size_t m = std::min<size_t>(s.size(), 28);
    for (size_t i = 0; i < m; i++)
        for (size_t j = 0; j < m; j++) {
            if (i == j) continue;
            const ideal &e = s[i], &g = s[j];
            ideal sum = ideal_add(e, g);
            if (!ideal_subset(cl[i], f(sum))) viol("star2-monotone", pairw(e, g));
            ideal prod = ideal_mul(e, g);
            ideal lhs = f(prod);
            if (!(lhs == f(ideal_mul(cl[i], g))) || !(lhs == f(ideal_mul(cl[i], cl[j]))))
                viol("product-formula", pairw(e, g));
            if (!(f(sum) == f(ideal_add(cl[i], cl[j])))) viol("sum-formula", pairw(e, g));
            try {
                ideal col = ideal_colon(e, g);
                ideal rhs1 = ideal_colon(cl[i], cl[j]);
                ideal rhs2 = ideal_colon(cl[i], g);
                if (!(rhs1 == rhs2) || !(rhs2 == f(rhs2)) || !ideal_subset(f(col), rhs1))
                    viol("colon-formula", pairw(e, g));
            } catch (const colon_zero&) {
            }
            ideal inter = ideal_intersect(e, g);
            ideal ri = ideal_intersect(cl[i], cl[j]);
            if (!ideal_subset(f(inter), ri) || !(ri == f(ri)))
                viol("intersection-formula", pairw(e, g));
        }
    return rep;
}

axiom_report check_axioms(const domain& d, const star& s, const sample_plan& p) {
    return check_axioms(d, [&](const ideal& e) { return apply_star(s, e); }, p);
}

verdict op_leq(const domain& d, const star& s1, const star& s2, const sample_plan& p) {
    for (auto& e : sample_ideals(d, p)) {
        if (!ideal_subset(apply_star(s1, e), apply_star(s2, e)))
            return {false, ideal_str(e)};
    }
    return {true, ""};
}

verdict op_equal_sampled(const domain& d, const star& s1, const star& s2,
                         const sample_plan& p) {
    for (auto& e : sample_ideals(d, p)) {
        if (!(apply_star(s1, e) == apply_star(s2, e))) return {false, ideal_str(e)};
    }
    return {true, ""};
}

}  // namespace semistar
