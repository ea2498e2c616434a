#include <semistar/eval.hpp>

#include <algorithm>
#include <set>

namespace semistar {

using op = star_op::op;

// ---------------------------------------------------------------------------
// small set helpers over prime_id

static std::vector<prime_id> pid_sorted(std::vector<prime_id> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](const prime_id& a, const prime_id& b) { return a == b; }),
            v.end());
    return v;
}
static bool pid_in(const std::vector<prime_id>& v, const prime_id& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

bool pid_in_list(const std::vector<prime_id>& v, const prime_id& p) { return pid_in(v, p); }

bool family_contains(const prime_family& fam, const prime_id& p) {
    if (pid_in(fam.members, p)) return true;
    if (!fam.generic) return false;
    return !pid_in(fam.excluded, p);
}

// ---------------------------------------------------------------------------
// prime enumeration

std::vector<prime_id> domain_primes_over(const domain& d, const Int& p) {
    std::vector<prime_id> out;
    switch (d->kind) {
        case backend::divisor: break;  // no rational structure
        case backend::quad:
            for (auto& q : primes_over(d->ord, p)) {
                prime_id pid;
                pid.k = prime_id::pk::quad_p;
                pid.q = q;
                out.push_back(pid);
            }
            break;
        case backend::pullback:
            if (d->pb.shape == pb_shape::order)
                for (auto& q : primes_over(d->pb.R, p)) {
                    prime_id pid;
                    pid.k = prime_id::pk::pb_lift;
                    pid.q = q;
                    out.push_back(pid);
                }
            break;
        case backend::pull_t: break;
    }
    return out;
}

std::vector<prime_id> base_candidate_primes(const domain& d) {
    std::vector<prime_id> out;
    switch (d->kind) {
        case backend::divisor:
            for (int i = 0; i < d->div.n; i++) {
                prime_id p;
                p.k = prime_id::pk::div_idx;
                p.idx = i;
                out.push_back(p);
            }
            break;
        case backend::quad:
            for (auto& q : special_primes(d->ord)) {
                prime_id p;
                p.k = prime_id::pk::quad_p;
                p.q = q;
                out.push_back(p);
            }
            break;
        case backend::pullback: {
            prime_id m;
            m.k = prime_id::pk::pb_m;
            out.push_back(m);
            if (d->pb.shape == pb_shape::order)
                for (auto& q : special_primes(d->pb.R)) {
                    prime_id p;
                    p.k = prime_id::pk::pb_lift;
                    p.q = q;
                    out.push_back(p);
                }
            break;
        }
        case backend::pull_t: {
            prime_id m;
            m.k = prime_id::pk::pt_m;
            out.push_back(m);
            break;
        }
    }
    return out;
}

std::vector<prime_id> fresh_pool_primes(const domain& d, int k,
                                        const std::vector<prime_id>& avoid) {
    std::vector<prime_id> out;
    if (d->kind != backend::quad &&
        !(d->kind == backend::pullback && d->pb.shape == pb_shape::order))
        return out;
    const quad_order& o = (d->kind == backend::quad) ? d->ord : d->pb.R;
    std::vector<quad_prime> avoid_q;
    for (auto& a : avoid)
        if (a.k == prime_id::pk::quad_p || a.k == prime_id::pk::pb_lift)
            avoid_q.push_back(a.q);
    // skip singular primes: the generic pool is the DVR part of Max
    std::vector<quad_prime> sp = special_primes(o);
    for (auto& s : sp) avoid_q.push_back(s);
    for (auto& q : fresh_primes(o, k, avoid_q)) {
        prime_id p;
        p.k = (d->kind == backend::quad) ? prime_id::pk::quad_p : prime_id::pk::pb_lift;
        p.q = q;
        out.push_back(p);
    }
    return out;
}

// rational primes mentioned anywhere in a star expression
static void collect_ps(const star& s, std::set<Int>& ps) {
    if (!s) return;
    for (auto& m : s->delta.members)
        if (m.k == prime_id::pk::quad_p || m.k == prime_id::pk::pb_lift) ps.insert(m.q.p);
    for (auto& m : s->delta.excluded)
        if (m.k == prime_id::pk::quad_p || m.k == prime_id::pk::pb_lift) ps.insert(m.q.p);
    if (s->t.k == overring_ref::kind::quad_sub) ps.insert(0);  // marker, conductor handled via specials
    collect_ps(s->inner, ps);
}

static std::vector<prime_id> candidate_primes(const domain& d, const star& s) {
    std::vector<prime_id> cand = base_candidate_primes(d);
    std::set<Int> ps;
    collect_ps(s, ps);
    for (auto& p : ps)
        if (p > 1)
            for (auto& q : domain_primes_over(d, p)) cand.push_back(q);
    return pid_sorted(std::move(cand));
}

// ---------------------------------------------------------------------------
// spectral evaluation

static ideal spectral_divisor(const prime_family& fam, const ideal& e) {
    auto m = std::get<div_module>(e.m);
    div_module r = div_module::field_k(m.n());
    for (auto& p : fam.members)
        if (p.k == prime_id::pk::div_idx) r.c[p.idx] = m.c[p.idx];
    return ideal{e.dom, r};
}

static ideal spectral_quad(const prime_family& fam, const ideal& e) {
    const quad_order& o = e.dom->ord;
    auto m = std::get<quad_module>(e.m);
    auto to_q = [](const std::vector<prime_id>& v) {
        std::vector<quad_prime> q;
        for (auto& p : v) q.push_back(p.q);
        return q;
    };
    if (fam.generic) {
        std::vector<quad_prime> excl = to_q(fam.excluded);
        std::vector<quad_prime> memb = to_q(fam.members);
        // complement of the family: excluded minus re-included members
        std::vector<quad_prime> off;
        for (auto& q : excl)
            if (std::find(memb.begin(), memb.end(), q) == memb.end()) off.push_back(q);
        if (m.mode == qmode::all_but) {
            auto set = off;
            set.insert(set.end(), m.set.begin(), m.set.end());
            return ideal{e.dom, qm_make(o, m.lat, qmode::all_but, set)};
        }
        // only-mode: constrained where both constrain
        std::vector<quad_prime> keep;
        for (auto& q : m.set) {
            bool in_off = std::find(off.begin(), off.end(), q) != off.end();
            if (!in_off) keep.push_back(q);
        }
        return ideal{e.dom, qm_make(o, m.lat, qmode::only, keep)};
    }
    std::vector<quad_prime> keep;
    for (auto& p : fam.members) {
        const quad_prime& q = p.q;
        bool constrained = (m.mode == qmode::all_but)
                               ? std::find(m.set.begin(), m.set.end(), q) == m.set.end()
                               : std::find(m.set.begin(), m.set.end(), q) != m.set.end();
        if (constrained) keep.push_back(q);
    }
    return ideal{e.dom, qm_make(o, m.lat, qmode::only, keep)};
}

static ideal spectral_pull(const prime_family& fam, const ideal& e) {
    const pull_domain& pb = e.dom->pb;
    auto m = std::get<pull_module>(e.m);
    bool has_m = false;
    std::vector<quad_prime> lifts;
    for (auto& p : fam.members) {
        if (p.k == prime_id::pk::pb_m) has_m = true;
        if (p.k == prime_id::pk::pb_lift) lifts.push_back(p.q);
    }
    std::optional<ideal> acc;
    auto meet = [&](const ideal& x) { acc = acc ? ideal_intersect(*acc, x) : x; };
    if (has_m) meet(ideal{e.dom, pm_localize_at_m(pb, m)});
    if (fam.generic || !lifts.empty()) {
        if (m.k == pkind::level && pb.shape == pb_shape::order) {
            // the V-part sees the corresponding quadratic spectral closure
            prime_family qf;
            qf.generic = fam.generic;
            for (auto& q : lifts) {
                prime_id p;
                p.k = prime_id::pk::quad_p;
                p.q = q;
                qf.members.push_back(p);
            }
            for (auto& x : fam.excluded)
                if (x.k == prime_id::pk::pb_lift) {
                    prime_id p;
                    p.k = prime_id::pk::quad_p;
                    p.q = x.q;
                    qf.excluded.push_back(p);
                }
            domain rd = dom_quad(pb.R.d, pb.R.f);
            ideal v{rd, m.vmod};
            ideal w = spectral_quad(qf, v);
            meet(ideal{e.dom, pm_level_order(pb, m.n, std::get<quad_module>(w.m))});
        } else {
            // X^n T and K((X)) are fixed by every D_{q+M}
            meet(ideal{e.dom, m});
        }
    }
    if (!acc) return ideal_full_k(e.dom);
    return *acc;
}

ideal spectral_eval(const prime_family& fam, const ideal& e) {
    if (fam.empty()) return ideal_full_k(e.dom);
    switch (e.dom->kind) {
        case backend::divisor: return spectral_divisor(fam, e);
        case backend::quad: return spectral_quad(fam, e);
        case backend::pullback: return spectral_pull(fam, e);
        case backend::pull_t: return e;  // T is local: E D_{M_T} = E
    }
    throw error("bad backend");
}

// ---------------------------------------------------------------------------
// overrings

domain overring_domain(const domain& d, const overring_ref& t) {
    switch (t.k) {
        case overring_ref::kind::self: return d;
        case overring_ref::kind::field_k: return dom_divisor_unchecked(0);
        case overring_ref::kind::div_sub: {
            if (d->kind != backend::divisor) throw unrepresentable_overring("sub-family overring needs the divisor model");
            for (int i : t.sub)
                if (i < 0 || i >= d->div.n) throw unrepresentable_overring("sub-family index out of range");
            return dom_divisor_unchecked((int)t.sub.size());
        }
        case overring_ref::kind::quad_sub: {
            if (d->kind != backend::quad) throw unrepresentable_overring("order overring needs the quadratic model");
            if (t.f2 < 1 || fmod(d->ord.f, t.f2) != 0)
                throw unrepresentable_overring("overring index must divide the conductor index");
            return dom_quad(d->ord.d, t.f2);
        }
        case overring_ref::kind::pull_t: {
            if (d->kind != backend::pullback) throw unrepresentable_overring("T overring needs a pullback domain");
            return dom_pull_t(d);
        }
    }
    throw error("bad overring");
}

ideal overring_module(const domain& d, const overring_ref& t) {
    switch (t.k) {
        case overring_ref::kind::self: return ideal_ring(d);
        case overring_ref::kind::field_k: return ideal_full_k(d);
        case overring_ref::kind::div_sub: {
            div_module m = div_module::field_k(d->div.n);
            for (int i : t.sub) m.c[i] = 0;
            return ideal{d, m};
        }
        case overring_ref::kind::quad_sub:
            return ideal{d, qm_lattice(lattice_suborder(d->ord, t.f2))};
        case overring_ref::kind::pull_t:
            return ideal{d, pm_tmark(0)};
    }
    throw error("bad overring");
}

ideal over_t_eval(const overring_ref& t, const ideal& e) {
    const domain& d = e.dom;
    switch (t.k) {
        case overring_ref::kind::self: return e;
        case overring_ref::kind::field_k: return ideal_full_k(d);
        case overring_ref::kind::div_sub: {
            auto m = std::get<div_module>(e.m);
            div_module r = div_module::field_k(d->div.n);
            for (int i : t.sub) r.c[i] = m.c[i];
            return ideal{d, r};
        }
        case overring_ref::kind::quad_sub:
            return ideal_mul(e, overring_module(d, t));
        case overring_ref::kind::pull_t:
            if (d->kind == backend::pull_t) return e;
            return ideal{d, pm_mul_T(d->pb, std::get<pull_module>(e.m))};
    }
    throw error("bad overring");
}

// contraction Q cap D of a prime of the overring order
static quad_prime quad_contract(const quad_order& dord, const quad_order& tord,
                                const quad_prime& Q) {
    for (auto& P : primes_over(dord, Q.p)) {
        bool contains = true;
        for (auto& g : lat_gens(tord, Q.lat))
            if (!lat_contains(dord, P.lat, g)) contains = false;
        if (contains) return P;
    }
    throw internal_disagreement("overring prime has no contraction");
}

ideal to_overring_rep(const domain& d, const overring_ref& t, const ideal& e) {
    switch (t.k) {
        case overring_ref::kind::self: return e;
        case overring_ref::kind::field_k: {
            domain f = dom_divisor_unchecked(0);
            return ideal{f, div_module::ring(0)};
        }
        case overring_ref::kind::div_sub: {
            auto& m = std::get<div_module>(e.m);
            for (int i = 0; i < d->div.n; i++)
                if (m.c[i] && std::find(t.sub.begin(), t.sub.end(), i) == t.sub.end())
                    throw semantic_error("module is not an overring module (constrained off the sub-family)");
            div_module r;
            for (int i : t.sub) r.c.push_back(m.c[i]);
            return ideal{overring_domain(d, t), r};
        }
        case overring_ref::kind::quad_sub: {
            domain td = overring_domain(d, t);
            auto& m = std::get<quad_module>(e.m);
            if (!(ideal_mul(e, overring_module(d, t)) == e))
                throw semantic_error("module is not stable under the overring");
            std::vector<qelem> gens = lat_gens(d->ord, m.lat);
            qlattice lt = lattice_from_gens(td->ord, gens);
            std::vector<quad_prime> set;
            for (auto& P : m.set)
                for (auto& Q : primes_over(td->ord, P.p))
                    if (quad_contract(d->ord, td->ord, Q) == P) set.push_back(Q);
            return ideal{td, qm_make(td->ord, lt, m.mode, set)};
        }
        case overring_ref::kind::pull_t: {
            domain td = overring_domain(d, t);
            auto& m = std::get<pull_module>(e.m);
            if (m.k == pkind::level)
                throw semantic_error("module is not stable under T");
            return ideal{td, m};
        }
    }
    throw error("bad overring");
}

ideal to_base_rep(const domain& d, const overring_ref& t, const ideal& e) {
    switch (t.k) {
        case overring_ref::kind::self: return e;
        case overring_ref::kind::field_k: return ideal_full_k(d);
        case overring_ref::kind::div_sub: {
            auto& m = std::get<div_module>(e.m);
            div_module r = div_module::field_k(d->div.n);
            for (size_t j = 0; j < t.sub.size(); j++) r.c[t.sub[j]] = m.c[j];
            return ideal{d, r};
        }
        case overring_ref::kind::quad_sub: {
            domain td = overring_domain(d, t);
            auto& m = std::get<quad_module>(e.m);
            qlattice lt = lattice_from_gens(d->ord, lat_gens(td->ord, m.lat));
            std::vector<quad_prime> set;
            for (auto& Q : m.set) {
                quad_prime P = quad_contract(d->ord, td->ord, Q);
                // every sibling of Q over the same contraction must be masked too
                for (auto& Q2 : primes_over(td->ord, Q.p))
                    if (quad_contract(d->ord, td->ord, Q2) == P &&
                        std::find(m.set.begin(), m.set.end(), Q2) == m.set.end())
                        throw unrepresentable_overring(
                            "partial mask under a singular prime is not representable");
                set.push_back(P);
            }
            return ideal{d, qm_make(d->ord, lt, m.mode, set)};
        }
        case overring_ref::kind::pull_t:
            return ideal{d, std::get<pull_module>(e.m)};
    }
    throw error("bad overring");
}

// ---------------------------------------------------------------------------
// quasi-maximal machinery

static bool is_quasi_prime(const domain& d, const star& sf, const prime_id& p) {
    ideal I = ideal_of_prime(d, p);
    ideal Q = apply_star(sf, I);
    return ideal_intersect(Q, ideal_ring(d)) == I;
}

prime_family quasi_max_set(const domain& d, const star& s) {
    if (dom_is_field(d)) throw field_domain("a field has no quasi-maximal structure");
    star sf = mk_ft(s);
    prime_family fam;
    std::vector<prime_id> cand = candidate_primes(d, s);
    std::vector<prime_id> quasi, non_quasi;
    for (auto& p : cand)
        (is_quasi_prime(d, sf, p) ? quasi : non_quasi).push_back(p);
    bool has_pool = d->kind == backend::quad ||
                    (d->kind == backend::pullback && d->pb.shape == pb_shape::order);
    if (has_pool) {
        auto fresh = fresh_pool_primes(d, 2, cand);
        bool gen0 = is_quasi_prime(d, sf, fresh[0]);
        bool gen1 = is_quasi_prime(d, sf, fresh[1]);
        if (gen0 != gen1)
            throw internal_disagreement(
                "generic quasi-maximality probes disagree; exceptional-set scheme violated");
        fam.generic = gen0;
    }
    if (fam.generic) {
        // pool members found quasi are redundant; the exceptions are the rest
        for (auto& p : non_quasi)
            if (p.k == prime_id::pk::quad_p || p.k == prime_id::pk::pb_lift)
                fam.excluded.push_back(p);
        for (auto& p : quasi)
            if (!(p.k == prime_id::pk::quad_p || p.k == prime_id::pk::pb_lift))
                fam.members.push_back(p);
    } else {
        fam.members = quasi;
    }
    if (d->kind == backend::pullback) {
        // M = XT sits inside every lifted prime q + M: it is quasi-maximal
        // only when no lifted prime is in the set
        bool lifts = fam.generic;
        for (auto& p : fam.members)
            if (p.k == prime_id::pk::pb_lift) lifts = true;
        if (lifts) {
            std::vector<prime_id> keep;
            for (auto& p : fam.members)
                if (p.k != prime_id::pk::pb_m) keep.push_back(p);
            fam.members = keep;
        }
    }
    fam.members = pid_sorted(std::move(fam.members));
    fam.excluded = pid_sorted(std::move(fam.excluded));
    return fam;
}

prime_family theta_family(const domain& d) {
    prime_family fam;
    if (d->kind == backend::divisor) {
        fam.members = base_candidate_primes(d);
        return fam;
    }
    prime_family tmax = quasi_max_set(d, mk_v());
    star t = mk_t();
    ideal ring = ideal_ring(d);
    auto t_invertible = [&](const prime_id& p) {
        ideal P = ideal_of_prime(d, p);
        ideal J = ideal_mul(P, ideal_colon(ring, P));
        return apply_star(t, J) == ring;
    };
    auto pool_kind = [](const prime_id& p) {
        return p.k == prime_id::pk::quad_p || p.k == prime_id::pk::pb_lift;
    };
    // explicit primes to vet: the explicit t-maximals plus, for a generic
    // family, every exceptional-scheme candidate still inside the pool
    std::vector<prime_id> vet = tmax.members;
    if (tmax.generic)
        for (auto& p : base_candidate_primes(d))
            if (pool_kind(p) && !pid_in(tmax.excluded, p) && !pid_in(vet, p))
                vet.push_back(p);
    fam.generic = tmax.generic;
    fam.excluded = tmax.excluded;
    for (auto& p : vet) {
        bool inv = t_invertible(p);
        if (pool_kind(p) && fam.generic) {
            if (!inv) fam.excluded.push_back(p);
        } else if (inv) {
            fam.members.push_back(p);
        }
    }
    if (fam.generic) {
        // generic primes avoid the conductor, hence are invertible; spot-check
        auto fresh = fresh_pool_primes(d, 1, fam.excluded);
        if (!fresh.empty() && !t_invertible(fresh[0]))
            throw internal_disagreement("generic prime failed t-invertibility");
    }
    fam.members = pid_sorted(std::move(fam.members));
    fam.excluded = pid_sorted(std::move(fam.excluded));
    if (fam.empty()) fam.theta_empty = true;
    return fam;
}

// ---------------------------------------------------------------------------
// e.a.b. machinery

static ideal apply_ft_cofinal(const star& inner, const ideal& e);

// the star-valuation overring family test: V^{star_f} = V
static bool is_star_val_module(const star& s, const ideal& vmod) {
    return apply_star(mk_ft(s), vmod) == vmod;
}

static ideal eab_eval_fg(const star& inner, const ideal& e) {
    const domain& d = e.dom;
    switch (d->kind) {
        case backend::divisor: {
            prime_family fam;
            for (int i = 0; i < d->div.n; i++) {
                div_module vi = div_module::field_k(d->div.n);
                vi.c[i] = 0;
                if (is_star_val_module(inner, ideal{d, vi})) {
                    prime_id p;
                    p.k = prime_id::pk::div_idx;
                    p.idx = i;
                    fam.members.push_back(p);
                }
            }
            return spectral_eval(fam, e);
        }
        case backend::quad: {
            const quad_order& o = d->ord;
            // representability of T_Q as a module needs the prime over p to
            // contract bijectively; a split prime over the conductor breaks that
            for (auto& p : factor_rational(o.f)) {
                quad_order ok = make_order(o.d, 1);
                if (primes_over(ok, p).size() > 1)
                    throw unsupported_closure(
                        "star-valuation family is not enumerable: split prime over the conductor");
            }
            ideal okm{d, qm_lattice(lattice_maximal_order(o))};
            auto tq_module = [&](const prime_id& p) { return ideal_localize(okm, p); };
            prime_family fam;
            std::vector<prime_id> cand = candidate_primes(d, inner);
            std::vector<prime_id> in, out;
            for (auto& p : cand)
                (is_star_val_module(inner, tq_module(p)) ? in : out).push_back(p);
            auto fresh = fresh_pool_primes(d, 2, cand);
            bool g0 = is_star_val_module(inner, tq_module(fresh[0]));
            bool g1 = is_star_val_module(inner, tq_module(fresh[1]));
            if (g0 != g1)
                throw internal_disagreement("generic star-valuation probes disagree");
            fam.generic = g0;
            if (fam.generic)
                fam.excluded = out;
            else
                fam.members = in;
            if (fam.empty()) return ideal_full_k(d);
            return spectral_eval(fam, ideal_mul(e, okm));
        }
        case backend::pullback: {
            const pull_domain& pb = d->pb;
            std::optional<ideal> acc;
            auto meet = [&](const ideal& x) { acc = acc ? ideal_intersect(*acc, x) : x; };
            ideal tmod{d, pm_tmark(0)};
            if (is_star_val_module(inner, tmod)) meet(over_t_eval({overring_ref::kind::pull_t}, e));
            if (pb.shape == pb_shape::order) {
                // rank-two valuation overrings W_q = (O_K)_q + M
                domain rd = dom_quad(pb.R.d, pb.R.f);
                for (auto& p : factor_rational(pb.R.f)) {
                    quad_order ok = make_order(pb.R.d, 1);
                    if (primes_over(ok, p).size() > 1)
                        throw unsupported_closure(
                            "star-valuation family is not enumerable: split prime over the conductor");
                }
                ideal okm{rd, qm_lattice(lattice_maximal_order(pb.R))};
                auto wq_module = [&](const quad_prime& q) {
                    prime_id p;
                    p.k = prime_id::pk::quad_p;
                    p.q = q;
                    ideal loc = ideal_localize(okm, p);
                    return ideal{d, pm_level_order(pb, 0, std::get<quad_module>(loc.m))};
                };
                std::vector<prime_id> cand = candidate_primes(d, inner);
                std::vector<quad_prime> in, out;
                for (auto& p : cand) {
                    if (p.k != prime_id::pk::pb_lift) continue;
                    (is_star_val_module(inner, wq_module(p.q)) ? in : out).push_back(p.q);
                }
                auto fresh = fresh_pool_primes(d, 2, cand);
                bool g0 = is_star_val_module(inner, wq_module(fresh[0].q));
                bool g1 = is_star_val_module(inner, wq_module(fresh[1].q));
                if (g0 != g1)
                    throw internal_disagreement("generic star-valuation probes disagree");
                auto m = std::get<pull_module>(e.m);
                if (g0 || !in.empty()) {
                    if (m.k == pkind::level) {
                        prime_family qf;
                        qf.generic = g0;
                        for (auto& q : (g0 ? out : in)) {
                            prime_id p;
                            p.k = prime_id::pk::quad_p;
                            p.q = q;
                            (g0 ? qf.excluded : qf.members).push_back(p);
                        }
                        ideal v{rd, m.vmod};
                        ideal w = spectral_eval(qf, ideal_mul(v, okm));
                        meet(ideal{d, pm_level_order(pb, m.n, std::get<quad_module>(w.m))});
                    } else {
                        meet(ideal{d, m});  // X^n T is stable under every W_q
                    }
                }
            }
            if (!acc) return ideal_full_k(d);
            return *acc;
        }
        case backend::pull_t: {
            ideal ring = ideal_ring(d);
            if (is_star_val_module(inner, ring)) return e;
            return ideal_full_k(d);
        }
    }
    throw error("bad backend");
}

static ideal eab_eval(const star& inner, const ideal& e) {
    if (ideal_is_fg(e)) return eab_eval_fg(inner, e);
    // E^{star_a} is of finite type: union over a cofinal fg family, with the
    // same exit rules as apply_ft_cofinal
    ideal prev = eab_eval_fg(inner, ideal_cofinal_fg(e, 0));
    bool all_fixed = prev == ideal_cofinal_fg(e, 0);
    for (int k = 1; k <= 10; k++) {
        ideal fk = ideal_cofinal_fg(e, k);
        ideal cur = eab_eval_fg(inner, fk);
        if (!ideal_subset(prev, cur))
            throw internal_disagreement("cofinal family closure is not ascending");
        if (ideal_subset(e, cur)) return cur;
        all_fixed = all_fixed && cur == fk;
        if (all_fixed && k >= 2) return e;
        if (cur == prev && k >= 2) return cur;
        prev = cur;
    }
    throw unsupported_closure("e.a.b. closure union did not stabilize");
}

// ---------------------------------------------------------------------------
// the closure evaluator

// Union of F^star over a cofinal ascending family of fg subideals F of e.
// Exits on one of three conditions:
//  - e is contained in some F^star: then F^star <= e^{star_f} <= e^star
//    <= F^{star star} = F^star, so the union is exactly F^star;
//  - the closure fixes the probed tail of the family: the union is e itself
//    (every fg subideal sits inside a fixed probe, so its closure stays in e);
//  - two consecutive probes agree: the union has stabilized.
static ideal apply_ft_cofinal(const star& inner, const ideal& e) {
    ideal prev = apply_star(inner, ideal_cofinal_fg(e, 0));
    bool all_fixed = prev == ideal_cofinal_fg(e, 0);
    for (int k = 1; k <= 10; k++) {
        ideal fk = ideal_cofinal_fg(e, k);
        ideal cur = apply_star(inner, fk);
        if (!ideal_subset(prev, cur))
            throw internal_disagreement("cofinal family closure is not ascending");
        if (ideal_subset(e, cur)) return cur;
        all_fixed = all_fixed && cur == fk;
        if (all_fixed && k >= 2) return e;
        if (cur == prev && k >= 2) return cur;
        prev = cur;
    }
    throw unsupported_closure("finite-type closure union did not stabilize");
}

static ideal v_eval(const ideal& e) {
    ideal ring = ideal_ring(e.dom);
    ideal inv = ideal_ring(e.dom);
    try {
        inv = ideal_colon(ring, e);
    } catch (const colon_zero&) {
        return ideal_full_k(e.dom);  // E^{-1} = 0 forces E^v = K
    }
    return ideal_colon(ring, inv);
}

ideal apply_star(const star& s, const ideal& e) {
    switch (s->k) {
        case op::ident: return e;
        case op::trivial: return ideal_full_k(e.dom);
        case op::v: return v_eval(e);
        case op::over_t: return over_t_eval(s->t, e);
        case op::spectral: return spectral_eval(s->delta, e);
        case op::finite_type:
            if (ideal_is_fg(e)) return apply_star(s->inner, e);
            return apply_ft_cofinal(s->inner, e);
        case op::stable: {
            prime_family fam = quasi_max_set(e.dom, s->inner);
            return spectral_eval(fam, e);
        }
        case op::eab: return eab_eval(s->inner, e);
        case op::theta: return spectral_eval(theta_family(e.dom), e);
        case op::restrict_to: {
            ideal base = to_base_rep(s->parent, s->t, e);
            ideal r = apply_star(s->inner, base);
            return to_overring_rep(s->parent, s->t, r);
        }
        case op::pull_from: {
            ideal et = to_overring_rep(e.dom, s->t, over_t_eval(s->t, e));
            ideal rt = apply_star(s->inner, et);
            return to_base_rep(e.dom, s->t, rt);
        }
    }
    throw error("bad star op");
}

ideal domain_closure_bracket(const domain& d, const star& s) {
    return apply_star(mk_eab(s), ideal_ring(d));
}

std::vector<prime_id> primes_containing(const ideal& a) {
    if (!ideal_is_integral(a)) throw error("primes_containing needs an integral ideal");
    const domain& d = a.dom;
    std::vector<prime_id> out;
    switch (d->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(a.m);
            for (int i = 0; i < m.n(); i++)
                if (m.c[i] && *m.c[i] >= 1) {
                    prime_id p;
                    p.k = prime_id::pk::div_idx;
                    p.idx = i;
                    out.push_back(p);
                }
            break;
        }
        case backend::quad: {
            auto& m = std::get<quad_module>(a.m);
            if (!m.fg()) throw error("primes_containing needs a lattice");
            for (auto& p : factor_rational(m.lat.a * m.lat.c))
                for (auto& q : primes_over(d->ord, p))
                    if (lat_subset(d->ord, m.lat, q.lat)) {
                        prime_id pid;
                        pid.k = prime_id::pk::quad_p;
                        pid.q = q;
                        out.push_back(pid);
                    }
            break;
        }
        case backend::pullback: {
            auto& m = std::get<pull_module>(a.m);
            prime_id mm;
            mm.k = prime_id::pk::pb_m;
            if (pm_subset(d->pb, m, pm_maximal(d->pb))) out.push_back(mm);
            if (d->pb.shape == pb_shape::order && m.k == pkind::level && m.n == 0) {
                if (!m.vmod.fg()) throw error("masked module in primes_containing");
                for (auto& p : factor_rational(m.vmod.lat.a * m.vmod.lat.c))
                    for (auto& q : primes_over(d->pb.R, p))
                        if (lat_subset(d->pb.R, m.vmod.lat, q.lat)) {
                            prime_id pid;
                            pid.k = prime_id::pk::pb_lift;
                            pid.q = q;
                            out.push_back(pid);
                        }
            }
            // level >= 1 ideals over an order base lie in every lifted prime;
            // callers that need that case must handle it by the family shape.
            break;
        }
        case backend::pull_t: {
            auto& m = std::get<pull_module>(a.m);
            if (m.k == pkind::t_mark && m.n >= 1) {
                prime_id p;
                p.k = prime_id::pk::pt_m;
                out.push_back(p);
            }
            break;
        }
    }
    return pid_sorted(std::move(out));
}

}  // namespace semistar
