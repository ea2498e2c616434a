#include <semistar/domain.hpp>

#include <sstream>

namespace semistar {

static domain mk(domain_data d) { return std::make_shared<const domain_data>(std::move(d)); }

domain dom_divisor(int n) {
    domain_data d;
    d.kind = backend::divisor;
    d.div = make_divisor_domain(n);
    return mk(std::move(d));
}

domain dom_divisor_unchecked(int n) {
    domain_data d;
    d.kind = backend::divisor;
    d.div = divisor_domain{n};
    return mk(std::move(d));
}

domain dom_quad(const Int& dd, const Int& f) {
    domain_data d;
    d.kind = backend::quad;
    d.ord = make_order(dd, f);
    return mk(std::move(d));
}

domain dom_pullback_field(const Int& dd) {
    domain_data d;
    d.kind = backend::pullback;
    d.pb = make_pullback_field(dd);
    return mk(std::move(d));
}

domain dom_pullback_order(const Int& dd, const Int& f) {
    domain_data d;
    d.kind = backend::pullback;
    try {
        d.pb = make_pullback_order(make_order(dd, f));
    } catch (const bad_discriminant& e) {
        throw bad_shape(e.what());
    }
    return mk(std::move(d));
}

domain dom_cusp() {
    domain_data d;
    d.kind = backend::pullback;
    d.pb = make_cusp();
    return mk(std::move(d));
}

domain dom_pull_t(const domain& parent) {
    if (parent->kind != backend::pullback) throw error("pull_t needs a pullback parent");
    domain_data d;
    d.kind = backend::pull_t;
    d.pb = parent->pb;
    return mk(std::move(d));
}

bool dom_equal(const domain& a, const domain& b) { return *a == *b; }

bool dom_is_field(const domain& d) {
    return d->kind == backend::divisor && d->div.n == 0;
}

bool dom_is_noetherian(const domain& d) {
    if (d->kind == backend::pullback && d->pb.shape == pb_shape::order) return false;
    return true;
}

std::string dom_str(const domain& d) {
    std::ostringstream s;
    switch (d->kind) {
        case backend::divisor:
            if (d->div.n == 0)
                s << "field";
            else
                s << "divisor(n=" << d->div.n << ")";
            break;
        case backend::quad:
            s << "quadratic(d=" << d->ord.d << ",f=" << d->ord.f << ")";
            break;
        case backend::pullback:
            switch (d->pb.shape) {
                case pb_shape::field:
                    s << "pullback(field k=Q,K=Q(sqrt " << d->pb.d << "))";
                    break;
                case pb_shape::order:
                    s << "pullback(order d=" << d->pb.R.d << ",f=" << d->pb.R.f << ")";
                    break;
                case pb_shape::cusp: s << "cusp(K=Q)"; break;
            }
            break;
        case backend::pull_t: s << "T=K[[X]]"; break;
    }
    return s.str();
}

// --- elements --------------------------------------------------------------------

element elem_divisor(const domain& d, std::vector<long> vals) {
    if (d->kind != backend::divisor) throw error("divisor element on wrong backend");
    return element{d, div_elem{std::move(vals)}};
}
element elem_quad(const domain& d, const qelem& x) {
    if (d->kind != backend::quad) throw error("quadratic element on wrong backend");
    return element{d, x};
}
element elem_pull(const domain& d, const pull_elem& x) {
    if (d->kind != backend::pullback && d->kind != backend::pull_t)
        throw error("series element on wrong backend");
    return element{d, x};
}

element elem_one(const domain& d) {
    switch (d->kind) {
        case backend::divisor: return element{d, div_elem{std::vector<long>(d->div.n, 0)}};
        case backend::quad: return element{d, qelem{Rat(1), Rat(0)}};
        default: return element{d, pe_const(qelem{Rat(1), Rat(0)})};
    }
}

bool elem_is_zero(const element& x) {
    if (auto* q = std::get_if<qelem>(&x.v)) return q->is_zero();
    if (auto* p = std::get_if<pull_elem>(&x.v)) return p->is_zero();
    return false;  // divisor elements are nonzero by construction
}

element elem_mul(const element& a, const element& b) {
    if (!dom_equal(a.dom, b.dom)) throw mixed_domain("element product across domains");
    switch (a.dom->kind) {
        case backend::divisor: {
            auto& x = std::get<div_elem>(a.v);
            auto& y = std::get<div_elem>(b.v);
            div_elem r = x;
            for (size_t i = 0; i < r.v.size(); i++) r.v[i] += y.v[i];
            return element{a.dom, r};
        }
        case backend::quad:
            return element{a.dom, qmul(std::get<qelem>(a.v), std::get<qelem>(b.v), a.dom->ord.d)};
        default:
            return element{a.dom, pe_mul(a.dom->pb, std::get<pull_elem>(a.v),
                                         std::get<pull_elem>(b.v))};
    }
}

element elem_add(const element& a, const element& b) {
    if (!dom_equal(a.dom, b.dom)) throw mixed_domain("element sum across domains");
    switch (a.dom->kind) {
        case backend::divisor:
            throw error("divisor model elements have no additive structure");
        case backend::quad:
            return element{a.dom, qadd(std::get<qelem>(a.v), std::get<qelem>(b.v))};
        default:
            return element{a.dom, pe_add(std::get<pull_elem>(a.v), std::get<pull_elem>(b.v))};
    }
}

bool elem_in_ring(const element& x) {
    switch (x.dom->kind) {
        case backend::divisor: {
            for (long w : std::get<div_elem>(x.v).v)
                if (w < 0) return false;
            return true;
        }
        case backend::quad:
            return lat_contains(x.dom->ord, lattice_ring(x.dom->ord), std::get<qelem>(x.v));
        case backend::pullback: return pe_in_domain(x.dom->pb, std::get<pull_elem>(x.v));
        case backend::pull_t: {
            auto& p = std::get<pull_elem>(x.v);
            return p.is_zero() || p.lead >= 0;
        }
    }
    return false;
}

std::string elem_str(const element& x) {
    switch (x.dom->kind) {
        case backend::divisor: {
            std::ostringstream s;
            s << "(";
            auto& v = std::get<div_elem>(x.v).v;
            for (size_t i = 0; i < v.size(); i++) s << (i ? "," : "") << v[i];
            s << ")";
            return s.str();
        }
        case backend::quad: return qelem_str(std::get<qelem>(x.v));
        default: return pe_str(std::get<pull_elem>(x.v));
    }
}

// --- primes ----------------------------------------------------------------------

std::string prime_str(const domain& d, const prime_id& p) {
    std::ostringstream s;
    switch (p.k) {
        case prime_id::pk::div_idx: s << "P" << (p.idx + 1); break;
        case prime_id::pk::quad_p:
            s << "P" << p.q.p;
            if (p.q.kind == prime_kind::split) s << (p.q.which == 0 ? "a" : "b");
            break;
        case prime_id::pk::pb_m: s << (d->pb.shape == pb_shape::cusp ? "N" : "M"); break;
        case prime_id::pk::pb_lift:
            s << "P" << p.q.p;
            if (p.q.kind == prime_kind::split) s << (p.q.which == 0 ? "a" : "b");
            s << "+M";
            break;
        case prime_id::pk::pt_m: s << "M_T"; break;
    }
    return s.str();
}

bool prime_loc_is_dvr(const domain& d, const prime_id& p) {
    switch (p.k) {
        case prime_id::pk::div_idx: return true;
        case prime_id::pk::quad_p: return p.q.dvr;
        case prime_id::pk::pb_m: return d->pb.shape == pb_shape::order;  // D_M = T
        case prime_id::pk::pb_lift: return false;  // rank-two at best
        case prime_id::pk::pt_m: return true;
    }
    return false;
}

bool prime_loc_is_valuation(const domain& d, const prime_id& p) {
    switch (p.k) {
        case prime_id::pk::div_idx: return true;
        case prime_id::pk::quad_p: return p.q.dvr;
        case prime_id::pk::pb_m: return d->pb.shape == pb_shape::order;
        case prime_id::pk::pb_lift: return p.q.dvr;  // R_q a DVR gives a rank-two valuation
        case prime_id::pk::pt_m: return true;
    }
    return false;
}

int prime_height(const domain&, const prime_id& p) {
    return p.k == prime_id::pk::pb_lift ? 2 : 1;
}

// --- ideals ----------------------------------------------------------------------

void require_same_domain(const ideal& a, const ideal& b) {
    if (!dom_equal(a.dom, b.dom)) throw mixed_domain("ideal operation across domains");
}

ideal ideal_ring(const domain& d) {
    switch (d->kind) {
        case backend::divisor: return ideal{d, div_module::ring(d->div.n)};
        case backend::quad: return ideal{d, qm_lattice(lattice_ring(d->ord))};
        case backend::pullback: return ideal{d, pm_ring(d->pb)};
        case backend::pull_t: return ideal{d, pm_tmark(0)};
    }
    throw error("bad backend");
}

ideal ideal_full_k(const domain& d) {
    switch (d->kind) {
        case backend::divisor: return ideal{d, div_module::field_k(d->div.n)};
        case backend::quad: return ideal{d, qm_full_k()};
        default: return ideal{d, pm_full_k()};
    }
}

ideal ideal_principal(const element& x) {
    if (elem_is_zero(x)) throw error("zero ideal is not representable");
    switch (x.dom->kind) {
        case backend::divisor:
            return ideal{x.dom, div_module::principal(std::get<div_elem>(x.v))};
        case backend::quad:
            return ideal{x.dom,
                         qm_lattice(lattice_principal(x.dom->ord, std::get<qelem>(x.v)))};
        case backend::pullback:
            return ideal{x.dom, pm_principal(x.dom->pb, std::get<pull_elem>(x.v))};
        case backend::pull_t: {
            auto& p = std::get<pull_elem>(x.v);
            return ideal{x.dom, pm_tmark(p.lead)};
        }
    }
    throw error("bad backend");
}

ideal ideal_from_gens(const domain& d, const std::vector<element>& gens) {
    std::optional<ideal> acc;
    for (auto& g : gens) {
        if (elem_is_zero(g)) continue;
        if (!dom_equal(g.dom, d)) throw mixed_domain("generator from another domain");
        ideal p = ideal_principal(g);
        acc = acc ? ideal_add(*acc, p) : p;
    }
    if (!acc) throw error("zero module is not representable");
    return *acc;
}

ideal ideal_of_prime(const domain& d, const prime_id& p) {
    switch (p.k) {
        case prime_id::pk::div_idx: return ideal{d, div_module::prime(d->div.n, p.idx)};
        case prime_id::pk::quad_p: return ideal{d, qm_lattice(p.q.lat)};
        case prime_id::pk::pb_m: return ideal{d, pm_maximal(d->pb)};
        case prime_id::pk::pb_lift: return ideal{d, pm_lift_prime(d->pb, p.q)};
        case prime_id::pk::pt_m: return ideal{d, pm_tmark(1)};
    }
    throw error("bad prime");
}

template <class FDiv, class FQuad, class FPull>
static ideal dispatch2(const ideal& a, const ideal& b, FDiv fd, FQuad fq, FPull fp) {
    require_same_domain(a, b);
    switch (a.dom->kind) {
        case backend::divisor:
            return ideal{a.dom, fd(std::get<div_module>(a.m), std::get<div_module>(b.m))};
        case backend::quad:
            return ideal{a.dom, fq(a.dom->ord, std::get<quad_module>(a.m),
                                   std::get<quad_module>(b.m))};
        default:
            return ideal{a.dom, fp(a.dom->pb, std::get<pull_module>(a.m),
                                   std::get<pull_module>(b.m))};
    }
}

ideal ideal_mul(const ideal& a, const ideal& b) {
    return dispatch2(
        a, b, [](auto& x, auto& y) { return div_mul(x, y); },
        [](auto& o, auto& x, auto& y) { return qm_mul(o, x, y); },
        [](auto& o, auto& x, auto& y) { return pm_mul(o, x, y); });
}
ideal ideal_add(const ideal& a, const ideal& b) {
    return dispatch2(
        a, b, [](auto& x, auto& y) { return div_add(x, y); },
        [](auto& o, auto& x, auto& y) { return qm_add(o, x, y); },
        [](auto& o, auto& x, auto& y) { return pm_add(o, x, y); });
}
ideal ideal_intersect(const ideal& a, const ideal& b) {
    return dispatch2(
        a, b, [](auto& x, auto& y) { return div_intersect(x, y); },
        [](auto& o, auto& x, auto& y) { return qm_intersect(o, x, y); },
        [](auto& o, auto& x, auto& y) { return pm_intersect(o, x, y); });
}
ideal ideal_colon(const ideal& a, const ideal& b) {
    return dispatch2(
        a, b, [](auto& x, auto& y) { return div_colon(x, y); },
        [](auto& o, auto& x, auto& y) { return qm_colon(o, x, y); },
        [](auto& o, auto& x, auto& y) { return pm_colon(o, x, y); });
}

ideal ideal_scale(const ideal& a, const element& x) {
    if (!dom_equal(a.dom, x.dom)) throw mixed_domain("scaling by a foreign element");
    switch (a.dom->kind) {
        case backend::divisor:
            return ideal{a.dom, div_scale(std::get<div_module>(a.m), std::get<div_elem>(x.v))};
        case backend::quad:
            return ideal{a.dom,
                         qm_scale(a.dom->ord, std::get<quad_module>(a.m), std::get<qelem>(x.v))};
        default:
            return ideal{a.dom, pm_scale(a.dom->pb, std::get<pull_module>(a.m),
                                         std::get<pull_elem>(x.v))};
    }
}

ideal ideal_pow(const ideal& a, long e) {
    if (e == 0) return ideal_ring(a.dom);
    ideal base = (e > 0) ? a : ideal_colon(ideal_ring(a.dom), a);
    long n = e > 0 ? e : -e;
    ideal r = base;
    for (long i = 1; i < n; i++) r = ideal_mul(r, base);
    return r;
}

bool ideal_subset(const ideal& a, const ideal& b) {
    require_same_domain(a, b);
    switch (a.dom->kind) {
        case backend::divisor:
            return div_subset(std::get<div_module>(a.m), std::get<div_module>(b.m));
        case backend::quad:
            return qm_subset(a.dom->ord, std::get<quad_module>(a.m),
                             std::get<quad_module>(b.m));
        default:
            return pm_subset(a.dom->pb, std::get<pull_module>(a.m),
                             std::get<pull_module>(b.m));
    }
}

bool ideal_contains(const ideal& a, const element& x) {
    if (!dom_equal(a.dom, x.dom)) throw mixed_domain("membership across domains");
    switch (a.dom->kind) {
        case backend::divisor:
            return div_contains(std::get<div_module>(a.m), std::get<div_elem>(x.v));
        case backend::quad:
            return qm_contains(a.dom->ord, std::get<quad_module>(a.m), std::get<qelem>(x.v));
        default:
            return pm_contains(a.dom->pb, std::get<pull_module>(a.m),
                               std::get<pull_elem>(x.v));
    }
}

bool ideal_is_fg(const ideal& a) {
    switch (a.dom->kind) {
        case backend::divisor: return std::get<div_module>(a.m).fg();
        case backend::quad: return std::get<quad_module>(a.m).fg();
        case backend::pullback: return pm_fg(a.dom->pb, std::get<pull_module>(a.m));
        case backend::pull_t: return std::get<pull_module>(a.m).k != pkind::full_k;
    }
    return false;
}

bool ideal_is_integral(const ideal& a) { return ideal_subset(a, ideal_ring(a.dom)); }

bool ideal_is_full_k(const ideal& a) { return a == ideal_full_k(a.dom); }

std::vector<element> ideal_gens(const ideal& a) {
    std::vector<element> out;
    switch (a.dom->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(a.m);
            if (!m.fg()) throw error("module is not finitely generated");
            std::vector<long> v;
            for (auto& c : m.c) v.push_back(*c);
            out.push_back(element{a.dom, div_elem{v}});
            break;
        }
        case backend::quad: {
            auto& m = std::get<quad_module>(a.m);
            if (!m.fg()) throw error("module is not finitely generated");
            for (auto& g : lat_gens(a.dom->ord, m.lat)) out.push_back(element{a.dom, g});
            break;
        }
        case backend::pullback: {
            for (auto& g : pm_gens(a.dom->pb, std::get<pull_module>(a.m)))
                out.push_back(element{a.dom, g});
            break;
        }
        case backend::pull_t: {
            auto& m = std::get<pull_module>(a.m);
            if (m.k == pkind::full_k) throw error("module is not finitely generated");
            out.push_back(element{a.dom, pe_xpow(m.n)});
            break;
        }
    }
    return out;
}

ideal ideal_localize(const ideal& a, const prime_id& p) {
    switch (p.k) {
        case prime_id::pk::div_idx:
            return ideal{a.dom, div_localize(std::get<div_module>(a.m), p.idx)};
        case prime_id::pk::quad_p:
            return ideal{a.dom, qm_localize(a.dom->ord, std::get<quad_module>(a.m), p.q)};
        case prime_id::pk::pb_m:
            return ideal{a.dom, pm_localize_at_m(a.dom->pb, std::get<pull_module>(a.m))};
        case prime_id::pk::pb_lift:
            return ideal{a.dom,
                         pm_localize_at_lift(a.dom->pb, std::get<pull_module>(a.m), p.q)};
        case prime_id::pk::pt_m: return a;  // T is local
    }
    throw error("bad prime");
}

std::optional<long> ideal_val_at(const ideal& a, const prime_id& p) {
    switch (p.k) {
        case prime_id::pk::div_idx: {
            auto& c = std::get<div_module>(a.m).c[p.idx];
            return c ? std::optional<long>(*c) : std::nullopt;
        }
        case prime_id::pk::quad_p:
            return qm_val_at(a.dom->ord, std::get<quad_module>(a.m), p.q);
        case prime_id::pk::pb_m:
            if (a.dom->pb.shape != pb_shape::order)
                throw error("no discrete valuation at this prime");
            return pm_level(std::get<pull_module>(a.m));
        case prime_id::pk::pt_m: return pm_level(std::get<pull_module>(a.m));
        default: throw error("no discrete valuation at this prime");
    }
}

ideal ideal_cofinal_fg(const ideal& a, int k) {
    if (ideal_is_fg(a)) return a;
    switch (a.dom->kind) {
        case backend::divisor: {
            auto m = std::get<div_module>(a.m);
            long depth = -(long)k;
            long lo = 0;
            for (auto& c : m.c)
                if (c) lo = std::min(lo, *c);
            for (auto& c : m.c)
                if (!c) c = lo + depth;
            return ideal{a.dom, m};
        }
        case backend::quad:
            return ideal{a.dom, qm_cofinal_fg(a.dom->ord, std::get<quad_module>(a.m), k)};
        case backend::pullback: {
            auto& m = std::get<pull_module>(a.m);
            auto& pb = a.dom->pb;
            Int b = 1;
            Int p = 1;
            for (int i = 0; i < k; i++) {
                p = next_prime(p);
                for (int j = 0; j < k; j++) b *= p;
            }
            qelem binv{Rat(1, b), Rat(0)};
            binv.x.canonicalize();
            if (m.k == pkind::full_k) {
                if (pb.shape == pb_shape::order) {
                    qlattice L = lat_scale(pb.R, lattice_ring(pb.R), binv);
                    return ideal{a.dom, pm_level_order(pb, -(long)k, qm_lattice(L))};
                }
                return ideal{a.dom, pm_tmark(-(long)k)};
            }
            if (m.k == pkind::t_mark) {
                // order shape: X^n T is not fg; approximate by X^n((1/b)R + XT)
                qlattice L = lat_scale(pb.R, lattice_ring(pb.R), binv);
                return ideal{a.dom, pm_level_order(pb, m.n, qm_lattice(L))};
            }
            // masked level module over an order base
            return ideal{a.dom,
                         pm_level_order(pb, m.n, qm_cofinal_fg(pb.R, m.vmod, k))};
        }
        case backend::pull_t:
            return ideal{a.dom, pm_tmark(-(long)k)};  // K((X)) = union of X^-k T
    }
    throw error("bad backend");
}

std::string ideal_str(const ideal& a) {
    std::ostringstream s;
    switch (a.dom->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(a.m);
            s << "(";
            for (int i = 0; i < m.n(); i++) {
                if (i) s << ",";
                if (m.c[i])
                    s << *m.c[i];
                else
                    s << "*";
            }
            s << ")";
            break;
        }
        case backend::quad: {
            auto& m = std::get<quad_module>(a.m);
            if (m.is_full_k()) {
                s << "K";
                break;
            }
            auto& L = m.lat;
            if (L.den != 1) s << "(1/" << L.den << ")";
            s << "[" << L.a << ", " << L.b << "+" << L.c << "*tau]";
            if (!m.set.empty()) {
                s << (m.mode == qmode::all_but ? " masked{" : " only{");
                for (size_t i = 0; i < m.set.size(); i++) {
                    if (i) s << ",";
                    prime_id pid;
                    pid.k = prime_id::pk::quad_p;
                    pid.q = m.set[i];
                    s << prime_str(a.dom, pid);
                }
                s << "}";
            }
            break;
        }
        default: {
            auto& m = std::get<pull_module>(a.m);
            if (m.k == pkind::full_k) {
                s << "K((X))";
                break;
            }
            if (m.k == pkind::t_mark) {
                s << "X^" << m.n << "*T";
                break;
            }
            switch (a.dom->pb.shape) {
                case pb_shape::field:
                    s << "X^" << m.n << "*(Q*(" << qelem_str(m.line) << ") + X*T)";
                    break;
                case pb_shape::order: {
                    ideal v{dom_quad(a.dom->pb.R.d, a.dom->pb.R.f), m.vmod};
                    s << "X^" << m.n << "*(" << ideal_str(v) << " + X*T)";
                    break;
                }
                case pb_shape::cusp: {
                    std::ostringstream c;
                    c << m.cuspc.x;
                    s << "X^" << m.n << "*(1+" << c.str() << "X)*K + X^" << (m.n + 2)
                      << "*T";
                    break;
                }
            }
        }
    }
    return s.str();
}

}  // namespace semistar
