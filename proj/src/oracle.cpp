#include <semistar/oracle.hpp>

#include <algorithm>
#include <sstream>

namespace semistar {

// --- independent p-adic valuations ------------------------------------------------

static long vp_int(const Int& n0, const Int& p) {
    if (n0 == 0) throw error("valuation of zero");
    Int n = abs(n0);
    long v = 0;
    while (fmod(n, p) == 0) {
        n /= p;
        v++;
    }
    return v;
}

long padic_val(const quad_order& o, const qelem& z, const quad_prime& P) {
    if (!P.dvr) throw error("padic_val needs a DVR prime");
    if (z.is_zero()) throw error("valuation of zero");
    Rat u, v;
    o.welem_to_tau(z, u, v);
    Int m = lcm(u.get_den(), v.get_den());
    Rat ru = u * m, rv = v * m;
    ru.canonicalize();
    rv.canonicalize();
    Int U = Int(ru.get_num()), V = Int(rv.get_num());
    long e = (P.kind == prime_kind::ramified) ? 2 : 1;
    long mv = 0;
    {
        Int mm = m;
        while (fmod(mm, P.p) == 0) {
            mm /= P.p;
            mv++;
        }
    }
    Int N = U * U + o.tr * U * V + o.nm * V * V;  // norm in tau coordinates
    long val = 0;
    switch (P.kind) {
        case prime_kind::inert: {
            long vn = vp_int(N, P.p);
            if (vn % 2 != 0) throw internal_disagreement("odd norm valuation at an inert prime");
            val = vn / 2;
            break;
        }
        case prime_kind::ramified: val = vp_int(N, P.p); break;
        case prime_kind::split: {
            // Hensel-lift the root of t^2 - tr t + nm attached to P and
            // evaluate U + V * r p-adically
            Int r = fmod(P.p - P.lat.b, P.p);  // lat.b = (-r) mod p
            long prec = 48;
            while (true) {
                Int pk = 1;
                for (long i = 0; i < prec; i++) pk *= P.p;
                Int rk = r;
                Int cur = P.p;
                while (cur < pk) {
                    cur = cur * cur;
                    Int f = rk * rk - o.tr * rk + o.nm;
                    Int fp = 2 * rk - o.tr;
                    Int mod = cur < pk ? cur : pk;
                    Int inv;
                    if (mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), mod.get_mpz_t()) == 0)
                        throw internal_disagreement("Hensel derivative not invertible");
                    rk = fmod(rk - f * inv, mod);
                }
                Int ev = fmod(U + V * rk, pk);
                if (ev == 0) {
                    prec *= 2;
                    if (prec > 4096)
                        throw internal_disagreement("p-adic precision exhausted");
                    continue;
                }
                val = vp_int(ev, P.p);
                break;
            }
            break;
        }
        default: throw error("padic_val needs a DVR prime");
    }
    return val - e * mv;
}

// --- element probes ---------------------------------------------------------------

static std::vector<element> probe_elements(const ideal& e, int depth) {
    const domain& d = e.dom;
    std::vector<element> out;
    auto add = [&](const element& x) {
        if (!elem_is_zero(x) && ideal_contains(e, x)) out.push_back(x);
    };
    if (ideal_is_fg(e))
        for (auto& g : ideal_gens(e)) add(g);
    for (auto& x : canonical_elements(d)) add(x);
    switch (d->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(e.m);
            std::vector<long> v;
            for (auto& c : m.c) v.push_back(c ? *c : -(long)depth);
            add(elem_divisor(d, v));
            break;
        }
        case backend::quad: {
            auto& m = std::get<quad_module>(e.m);
            for (auto& g : lat_gens(d->ord, m.lat)) {
                add(elem_quad(d, g));
                for (auto& P : m.set)
                    for (int k = 1; k <= depth; k++) {
                        Int pk = 1;
                        for (int i = 0; i < k; i++) pk *= P.p;
                        qelem gg{g.x / Rat(pk), g.y / Rat(pk)};
                        gg.x.canonicalize();
                        gg.y.canonicalize();
                        add(elem_quad(d, gg));
                    }
            }
            break;
        }
        case backend::pullback:
        case backend::pull_t: {
            auto& m = std::get<pull_module>(e.m);
            long n = (m.k == pkind::full_k) ? -(long)depth : m.n;
            for (long j = 0; j <= depth; j++) {
                add(elem_pull(d, pe_xpow(n + j)));
                add(elem_pull(d, pe_make(n + j, {qelem{Rat(0), Rat(1)}})));
                add(elem_pull(d, pe_make(n + j, {qelem{Rat(1), Rat(0)}, qelem{Rat(1), Rat(0)}})));
            }
            if (d->kind == backend::pullback && m.k == pkind::level) {
                switch (d->pb.shape) {
                    case pb_shape::field: add(elem_pull(d, pe_make(m.n, {m.line}))); break;
                    case pb_shape::order:
                        for (auto& g : lat_gens(d->pb.R, m.vmod.lat))
                            add(elem_pull(d, pe_make(m.n, {g})));
                        break;
                    case pb_shape::cusp:
                        add(elem_pull(d, pe_make(m.n, {qelem{Rat(1), Rat(0)}, m.cuspc})));
                        break;
                }
            }
            break;
        }
    }
    return out;
}

// --- quadratic colon by congruence scanning ----------------------------------------

// membership of (X + Y tau)/den in the lattice A, by the triangular congruences
static bool lat_member_scaled(const qlattice& A, const Int& X, const Int& Y,
                              const Int& den) {
    // (X + Y tau)/den in (1/A.den)(A.a Z + (A.b + A.c tau) Z)
    // scale both sides to denominator lcm
    Int l = lcm(den, A.den);
    Int sx = l / den, sa = l / A.den;
    Int XX = X * sx, YY = Y * sx;
    Int Aa = A.a * sa, Ab = A.b * sa, Ac = A.c * sa;
    if (fmod(YY, Ac) != 0) return false;
    Int k2 = YY / Ac;
    return fmod(XX - k2 * Ab, Aa) == 0;
}

// a x = b (mod m), m >= 1: least solution and stride, if solvable
static std::optional<std::pair<Int, Int>> solve_lin_cong(const Int& a, const Int& b,
                                                         const Int& m) {
    Int g = gcd(fmod(a, m), m);
    if (g == 0) g = m;
    if (fmod(b, g) != 0) return std::nullopt;
    Int m2 = m / g;
    Int a2 = fmod(a / g, m2), b2 = fmod(b / g, m2);
    if (m2 == 1) return std::make_pair(Int(0), Int(1));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a2.get_mpz_t(), m2.get_mpz_t()) == 0)
        return std::nullopt;
    return std::make_pair(fmod(b2 * inv, m2), m2);
}

// { z : z B <= A } for lattices: congruence-class enumeration over the grid
// (1/M) Z^2 modulo the known interior multiple q D
static qlattice brute_colon_lat(const quad_order& o, const qlattice& A, const qlattice& B) {
    Int M = A.den * B.a * B.c * B.den;
    Int qM = A.a * A.c * B.den * B.a * B.c * B.den;  // q*M with q = Aa Ac Bden / Aden
    std::vector<std::array<Rat, 2>> found;
    std::array<Int, 2> b1 = {B.a, Int(0)}, b2 = {B.b, B.c};
    auto ok = [&](const Int& x, const Int& y) {
        for (auto& b : {b1, b2}) {
            Int u = x * b[0] - o.nm * y * b[1];
            Int v = x * b[1] + y * b[0] + o.tr * y * b[1];
            if (!lat_member_scaled(A, u, v, M * B.den)) return false;
        }
        return true;
    };
    // constraint z*(B.a/B.den) in A pins y and x to congruence classes
    Int l = lcm(M * B.den, A.den);
    Int s = l / (M * B.den), sa = l / A.den;
    Int coef = B.a * s;
    auto ysol = solve_lin_cong(coef, 0, A.c * sa);
    if (!ysol) throw error("oracle congruence without solutions");
    Int ystep = ysol->second;
    Int total = 0;
    for (Int y = 0; y < qM; y += ystep) {
        Int yprime = y * coef;
        Int k2 = yprime / (A.c * sa);
        auto xsol = solve_lin_cong(coef, fmod(k2 * A.b * sa, A.a * sa), A.a * sa);
        if (!xsol) continue;
        for (Int x = xsol->first; x < qM; x += xsol->second) {
            if (++total > 2000000) throw error("oracle colon grid too large");
            if (ok(x, y)) {
                Rat rx(x, M), ry(y, M);
                rx.canonicalize();
                ry.canonicalize();
                found.push_back({rx, ry});
            }
        }
    }
    // q D lies inside the colon; its basis completes the span
    Rat qscale(A.a * A.c * B.den, A.den);
    qscale.canonicalize();
    found.push_back({qscale, Rat(0)});
    found.push_back({Rat(0), qscale});
    std::vector<qelem> gens;
    for (auto& f : found) gens.push_back(o.tau_to_welem(f[0], f[1]));
    return lattice_from_gens(o, gens);
}

// --- brute_v ------------------------------------------------------------------------

static bool quad_is_masked(const quad_module& m) {
    return !(m.mode == qmode::all_but && m.set.empty());
}

// series-probe reconstruction of (A : B) for pullback modules
static pull_module brute_pb_colon(const domain& d, const pull_module& A,
                                  const pull_module& B) {
    const pull_domain& pb = d->pb;
    ideal Ai{d, A}, Bi{d, B};
    if (A.k == pkind::full_k) return pm_full_k();
    // test battery from B, including deep tails that detect T-absorption
    std::vector<element> bats = probe_elements(Bi, 5);
    auto zok = [&](const pull_elem& z) {
        element ze = elem_pull(d, z);
        for (auto& b : bats)
            if (!ideal_contains(Ai, elem_mul(ze, b))) return false;
        return true;
    };
    long la = A.n, lb = B.n;
    if (B.k == pkind::full_k) lb = -6;
    long gap = (pb.shape == pb_shape::cusp) ? 2 : 1;
    // scan orders for the lowest order of a colon element
    for (long r = la - lb - 2 * gap; r <= la - lb + 2 * gap + 2; r++) {
        std::vector<qelem> coeffs;
        bool cusp = pb.shape == pb_shape::cusp;
        std::vector<qelem> grid;
        for (int a = -6; a <= 6; a++)
            for (int b = cusp ? 0 : -6; b <= (cusp ? 0 : 6); b++)
                for (int q = 1; q <= 3; q++) {
                    qelem c{Rat(a, q), Rat(b, q)};
                    c.x.canonicalize();
                    c.y.canonicalize();
                    if (!c.is_zero()) grid.push_back(c);
                }
        std::vector<pull_elem> members;
        for (auto& c : grid) {
            pull_elem z = pe_make(r, {c});
            if (zok(z)) members.push_back(z);
        }
        if (cusp && members.empty()) {
            // cusp lines live on pairs (1, b): scan X^r (1 + b X)
            for (int b = -6; b <= 6; b++)
                for (int q = 1; q <= 3; q++) {
                    Rat t(b, q);
                    t.canonicalize();
                    pull_elem z = pe_make(r, {qelem{Rat(1), Rat(0)}, qelem{t, Rat(0)}});
                    if (zok(z)) members.push_back(z);
                }
        }
        if (members.empty()) continue;
        // reconstruct from the members plus the forced tail X^{r+gap} T
        std::vector<pull_elem> gens = members;
        gens.push_back(pe_xpow(r + gap));
        if (pb.shape != pb_shape::cusp) gens.push_back(pe_make(r + gap, {qelem{Rat(0), Rat(1)}}));
        // verify the tail really belongs (it must: z X^{r+gap} T stays deep)
        if (!zok(pe_xpow(r + gap))) continue;
        ideal rec = ideal_from_gens(d, [&] {
            std::vector<element> es;
            for (auto& g : gens) es.push_back(elem_pull(d, g));
            return es;
        }());
        return std::get<pull_module>(rec.m);
    }
    throw colon_zero("no colon elements found in the probe window");
}

ideal brute_v(const ideal& e) {
    const domain& d = e.dom;
    switch (d->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(e.m);
            for (auto& c : m.c)
                if (!c) return ideal_full_k(d);  // E^-1 = 0
            // scan for the least valuation of an inverse element per slot
            div_module inv;
            for (int i = 0; i < m.n(); i++) {
                long k = -21;
                for (k = -20; k <= 20; k++)
                    if (k + *m.c[i] >= 0) break;
                inv.c.push_back(k);
            }
            div_module vv;
            for (int i = 0; i < m.n(); i++) {
                long k;
                for (k = -20; k <= 20; k++)
                    if (k + *inv.c[i] >= 0) break;
                vv.c.push_back(k);
            }
            return ideal{d, vv};
        }
        case backend::quad: {
            auto& m = std::get<quad_module>(e.m);
            if (quad_is_masked(m)) {
                // deep denominators at an unconstrained prime kill the dual
                return ideal_full_k(d);
            }
            qlattice inv = brute_colon_lat(d->ord, lattice_ring(d->ord), m.lat);
            qlattice vv = brute_colon_lat(d->ord, lattice_ring(d->ord), inv);
            return ideal{d, qm_lattice(vv)};
        }
        case backend::pullback: {
            auto& m = std::get<pull_module>(e.m);
            pull_module ring = pm_ring(d->pb);
            try {
                pull_module inv = brute_pb_colon(d, ring, m);
                pull_module vv = brute_pb_colon(d, ring, inv);
                return ideal{d, vv};
            } catch (const colon_zero&) {
                return ideal_full_k(d);
            }
        }
        case backend::pull_t: {
            auto& m = std::get<pull_module>(e.m);
            if (m.k == pkind::full_k) return ideal_full_k(d);
            return e;  // X^n T is divisorial over the DVR T
        }
    }
    throw error("bad backend");
}

// --- brute_spectral -----------------------------------------------------------------

static bool probe_unconstrained_quad(const ideal& e, const quad_prime& P) {
    // does e admit elements with arbitrarily deep P-denominators?
    auto& m = std::get<quad_module>(e.m);
    auto gens = lat_gens(e.dom->ord, m.lat);
    Int p6 = 1;
    for (int i = 0; i < 6; i++) p6 *= P.p;
    for (auto& g : gens) {
        qelem gg{g.x / Rat(p6), g.y / Rat(p6)};
        gg.x.canonicalize();
        gg.y.canonicalize();
        if (ideal_contains(e, elem_quad(e.dom, gg))) return true;
    }
    return false;
}

ideal brute_spectral(const ideal& e, const std::vector<prime_id>& delta) {
    const domain& d = e.dom;
    if (delta.empty()) return ideal_full_k(d);
    switch (d->kind) {
        case backend::divisor: {
            auto& m = std::get<div_module>(e.m);
            div_module r = div_module::field_k(d->div.n);
            for (auto& p : delta) r.c[p.idx] = m.c[p.idx];
            return ideal{d, r};
        }
        case backend::quad: {
            const quad_order& o = d->ord;
            auto& m = std::get<quad_module>(e.m);
            std::vector<quad_prime> constrained;
            qlattice acc = lattice_ring(o);
            bool any = false;
            for (auto& pid : delta) {
                const quad_prime& P = pid.q;
                if (probe_unconstrained_quad(e, P)) continue;
                constrained.push_back(P);
                if (P.dvr) {
                    long v = 1000000;
                    for (auto& g : lat_gens(o, m.lat))
                        v = std::min(v, padic_val(o, g, P));
                    qlattice comp = lattice_ring(o);
                    qlattice PL = P.lat;
                    if (v >= 0)
                        for (long i = 0; i < v; i++) comp = lat_mul(o, comp, PL);
                    else {
                        qlattice Pinv = brute_colon_lat(o, lattice_ring(o), PL);
                        for (long i = 0; i < -v; i++) comp = lat_mul(o, comp, Pinv);
                    }
                    acc = lat_mul(o, acc, trivialize(o, comp, [&] {
                              std::vector<quad_prime> off;
                              for (auto& Q : active_primes(o, comp))
                                  if (!(Q == P)) off.push_back(Q);
                              return off;
                          }()));
                    any = true;
                } else {
                    // singular prime: collect the P-local members on a grid
                    std::vector<qelem> mem;
                    std::vector<qelem> sgrid;
                    for (auto& s : canonical_elements(d)) {
                        qelem se = std::get<qelem>(s.v);
                        if (!lat_contains(o, P.lat, se) && lat_contains(o, lattice_ring(o), se))
                            sgrid.push_back(se);
                    }
                    sgrid.push_back(qelem{Rat(1), Rat(0)});
                    for (int a = -8; a <= 8; a++)
                        for (int b = -8; b <= 8; b++)
                            for (int q = 1; q <= 4; q++) {
                                qelem z{Rat(a, q), Rat(b, q)};
                                z.x.canonicalize();
                                z.y.canonicalize();
                                if (z.is_zero()) continue;
                                for (auto& s : sgrid) {
                                    qelem sz = qmul(s, z, o.d);
                                    if (ideal_contains(e, elem_quad(d, sz))) {
                                        mem.push_back(z);
                                        break;
                                    }
                                }
                            }
                    qlattice comp = lattice_from_gens(o, mem);
                    acc = lat_mul(o, acc, trivialize(o, comp, [&] {
                              std::vector<quad_prime> off;
                              for (auto& Q : active_primes(o, comp))
                                  if (!(Q == P)) off.push_back(Q);
                              return off;
                          }()));
                    any = true;
                }
            }
            if (!any) return ideal_full_k(d);
            return ideal{d, qm_make(o, acc, qmode::only, constrained)};
        }
        case backend::pullback: {
            auto& m = std::get<pull_module>(e.m);
            std::optional<ideal> acc;
            auto meet = [&](const ideal& x) { acc = acc ? ideal_intersect(*acc, x) : x; };
            for (auto& pid : delta) {
                if (pid.k == prime_id::pk::pb_m) {
                    if (d->pb.shape == pb_shape::order) {
                        // D_M = T: the localization is X^level T
                        long lvl = m.k == pkind::full_k ? 0 : m.n;
                        if (m.k == pkind::full_k)
                            meet(ideal_full_k(d));
                        else
                            meet(ideal{d, pm_tmark(lvl)});
                    } else {
                        meet(e);  // D_M = D
                    }
                } else if (pid.k == prime_id::pk::pb_lift) {
                    meet(ideal_localize(e, pid));
                }
            }
            if (!acc) return ideal_full_k(d);
            return *acc;
        }
        case backend::pull_t: return e;
    }
    throw error("bad backend");
}

// --- brute_ft -----------------------------------------------------------------------

ideal brute_ft(const star& s, const ideal& e, int bound) {
    std::vector<element> probes = probe_elements(e, std::max(1, bound / 4));
    if ((int)probes.size() > bound) probes.resize(bound);
    if (probes.empty()) throw error("no probe elements found");
    std::vector<element> acc;
    std::optional<ideal> uni;
    for (auto& x : probes) {
        acc.push_back(x);
        ideal F = ideal_from_gens(e.dom, acc);
        ideal c = apply_star(s, F);
        uni = uni ? ideal_add(*uni, c) : c;  // ascending chain: sum = union
    }
    ideal fast = apply_star(mk_ft(s), e);
    if (!ideal_subset(*uni, fast))
        throw internal_disagreement("brute finite-type union exceeds the fast path");
    return *uni;
}

// --- oracle equivalence battery -------------------------------------------------------

oracle_result oracle_equivalence(const domain& d, const sample_plan& p) {
    oracle_result out;
    auto miss = [&](const std::string& what, const ideal& e) {
        out.mismatches++;
        if (out.first_mismatch.empty()) out.first_mismatch = what + " on " + ideal_str(e);
    };
    std::vector<std::vector<prime_id>> deltas;
    {
        std::vector<prime_id> base = base_candidate_primes(d);
        if (!base.empty()) deltas.push_back({base[0]});
        if (base.size() > 1) deltas.push_back({base[0], base[1]});
        for (auto& f : fresh_pool_primes(d, 1, base)) deltas.push_back({f});
    }
    star v = mk_v();
    star t = mk_t();
    for (auto& e : sample_ideals(d, p)) {
        out.checked++;
        if (!(apply_star(v, e) == brute_v(e))) miss("brute_v", e);
        for (auto& dl : deltas) {
            prime_family fam;
            fam.members = dl;
            if (!(spectral_eval(fam, e) == brute_spectral(e, dl))) miss("brute_spectral", e);
        }
        ideal bf = brute_ft(v, e, 12);
        ideal ff = apply_star(t, e);
        if (!ideal_subset(bf, ff)) miss("brute_ft containment", e);
        if (ideal_is_fg(e) && !(bf == ff)) miss("brute_ft equality (fg)", e);
    }
    return out;
}

// --- theorem cross-equivalence suite ---------------------------------------------------

namespace {

struct suite_ctx {
    domain d;
    star s;
    sample_plan plan;
    std::vector<ideal> samples;
    prime_family fam;          // M(star_f)
    std::vector<prime_id> prime_cands;
    flag f_pstarmd, f_add, f_noeth, f_dd, f_fc, f_qsic, f_krull;
    star ts, fts;
    ideal ring, dts, dfts;
};

void row_check(theorem_result& r, bool lhs, bool rhs, const std::string& w) {
    r.instances++;
    if (lhs == rhs)
        r.agree++;
    else if (r.first_disagreement.empty())
        r.first_disagreement = w;
}

bool tvb(const flag& f) { return f.value == tv::yes; }

}  // namespace

suite_result run_theorem_suite(const domain& d, const star& s, const sample_plan& p) {
    suite_ctx c;
    c.d = d;
    c.s = s;
    c.plan = p;
    c.samples = sample_ideals(d, p);
    c.fam = quasi_max_set(d, s);
    c.prime_cands = base_candidate_primes(d);
    for (auto& f : fresh_pool_primes(d, 2, c.prime_cands)) c.prime_cands.push_back(f);
    c.f_pstarmd = is_pstarmd(d, s);
    c.f_add = is_star_add(d, s);
    c.f_noeth = is_star_noetherian(d, s);
    c.f_dd = is_star_dd(d, s);
    c.f_fc = fc_property_global(d, s);
    c.f_qsic = is_quasi_star_integrally_closed(d, s);
    c.f_krull = is_krull(d);
    c.ts = mk_tilde(s);
    c.fts = mk_ft(s);
    c.ring = ideal_ring(d);
    c.dts = apply_star(c.ts, c.ring);
    c.dfts = apply_star(c.fts, c.ring);

    suite_result out;
    out.domain_name = dom_str(d);
    out.star_name = star_str(d, s);
    out.seed = p.seed;

    auto integral_fg = [&](const ideal& e) {
        return ideal_is_fg(e) && ideal_is_integral(e) && !(e == c.ring);
    };

    // pr:1.5 (i)<->(ii): P*MD iff every sampled nonzero fg ideal is
    // star_f-invertible
    {
        theorem_result r{"pr:1.5 (i)<->(ii) fg-invertibility vs valuation localizations"};
        bool all_inv = true;
        std::string w;
        for (auto& e : c.samples) {
            if (!integral_fg(e)) continue;
            if (!is_star_invertible(e, c.fts)) {
                all_inv = false;
                w = ideal_str(e);
                break;
            }
        }
        row_check(r, all_inv, tvb(c.f_pstarmd), w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // pr:1.5 (i)<->(iv): Na = Kr iff P*MD
    {
        theorem_result r{"pr:1.5 (i)<->(iv) Na = Kr"};
        na_kr_verdict v = na_equals_kr_sampled(d, s, p);
        row_check(r, v.holds, tvb(c.f_pstarmd),
                  v.holds ? "no witness found though not a P*MD"
                          : v.witness_f + " / " + v.witness_g);
        out.rows.push_back(r);
    }
    // pr:1.5: in a P*MD, tilde = star_f
    {
        theorem_result r{"pr:1.5 tilde = star_f in a P*MD"};
        if (tvb(c.f_pstarmd)) {
            verdict v = op_equal_sampled(d, c.ts, c.fts, p);
            row_check(r, v.holds, true, v.witness);
        } else {
            row_check(r, true, true, "");
        }
        out.rows.push_back(r);
    }
    // prop:2.2(2): ADD implies P*MD and quasi-star_f-primes are maximal
    {
        theorem_result r{"prop:2.2(2) ADD forces P*MD and prime=maximal"};
        bool rhs = true;
        std::string w;
        if (tvb(c.f_add)) {
            if (!tvb(c.f_pstarmd)) {
                rhs = false;
                w = "not a P*MD";
            }
            for (auto& pc : c.prime_cands) {
                ideal P = ideal_of_prime(d, pc);
                if (is_quasi_star_ideal(P, c.fts) && !family_contains(c.fam, pc)) {
                    rhs = false;
                    w = prime_str(d, pc) + " quasi-prime but not maximal";
                }
            }
        }
        row_check(r, true, rhs, w);
        out.rows.push_back(r);
    }
    // prop:2.4: for a (semi)star operation, star-ADD iff t-ADD and star_f = t
    {
        theorem_result r{"prop:2.4 star-ADD = t-ADD + star_f=t (semistar with D^star=D)"};
        if (apply_star(s, c.ring) == c.ring) {
            bool rhs = tvb(is_star_add(d, mk_v())) && op_equal_sampled(d, c.fts, mk_t(), p).holds;
            row_check(r, tvb(c.f_add), rhs, "route mismatch");
        } else {
            row_check(r, true, true, "");
        }
        out.rows.push_back(r);
    }
    // thm:2.7 (1)<->(2): ADD iff tilde-cancellation law on sampled triples
    {
        theorem_result r{"thm:2.7 (1)<->(2) tilde-cancellation law"};
        bool cl = true;
        std::string w;
        size_t m = std::min<size_t>(c.samples.size(), 7);
        for (size_t i = 0; i < m && cl; i++)
            for (size_t j = 0; j < m && cl; j++)
                for (size_t k = 0; k < m && cl; k++) {
                    verdict v = cancellation_check(c.samples[i], c.samples[j], c.samples[k], s);
                    if (!v.holds) {
                        cl = false;
                        w = v.witness;
                    }
                }
        row_check(r, cl, tvb(c.f_add), w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // thm:2.7 (1)<->(3): ADD iff P*MD, star_f-dim = 1, (M^2)^{star_f} != M^{star_f}
    {
        theorem_result r{"thm:2.7 (1)<->(3) dimension-one square-separation route"};
        bool rhs = tvb(c.f_pstarmd);
        std::string w;
        auto dim = star_dim(d, c.fts);
        if (!(dim && *dim == 1)) {
            rhs = false;
            w = "star_f-dim != 1";
        }
        for (auto& pc : c.prime_cands) {
            if (!family_contains(c.fam, pc)) continue;
            ideal M = ideal_of_prime(d, pc);
            if (apply_star(c.fts, ideal_mul(M, M)) == apply_star(c.fts, M)) {
                rhs = false;
                w = "(M^2)^{star_f} = M^{star_f} at " + prime_str(d, pc);
            }
        }
        row_check(r, tvb(c.f_add), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // prop:2.8: ADD iff prime-radical ideals have prime-power tilde closures
    {
        theorem_result r{"prop:2.8 primary-power structure"};
        bool rhs = true;
        std::string w;
        for (auto& pc : c.prime_cands) {
            if (!family_contains(c.fam, pc)) continue;
            ideal P = ideal_of_prime(d, pc);
            for (long k : {1L, 2L, 3L}) {
                ideal I = ideal_pow(P, k);
                if (!(apply_star(c.fts, I) == c.dfts) &&
                    ideal_subset(I, c.ring)) {
                    bool powish = false;
                    for (long n = 1; n <= 6; n++)
                        if (apply_star(c.ts, I) == apply_star(c.ts, ideal_pow(P, n)))
                            powish = true;
                    if (!powish) {
                        rhs = false;
                        w = "I = " + ideal_str(I);
                    }
                }
            }
        }
        // a non-power primary-type sample for the falsification direction
        for (auto& e : c.samples) {
            if (!ideal_is_integral(e) || e == c.ring) continue;
            auto ps = primes_containing(e);
            prime_id target;
            bool radical_prime = false;
            if (ps.size() == 1) {
                target = ps[0];
                radical_prime = true;
            }
            if (d->kind == backend::pullback) {
                auto lvl = pm_level(std::get<pull_module>(e.m));
                if (lvl && *lvl >= 1) {
                    target = prime_id{};
                    target.k = prime_id::pk::pb_m;
                    radical_prime = true;
                }
            }
            if (!radical_prime || !family_contains(c.fam, target)) continue;
            if (apply_star(c.fts, e) == c.dfts) continue;
            ideal P = ideal_of_prime(d, target);
            bool powish = false;
            for (long n = 1; n <= 6; n++)
                if (apply_star(c.ts, e) == apply_star(c.ts, ideal_pow(P, n))) powish = true;
            if (!powish) {
                rhs = false;
                w = "I = " + ideal_str(e);
            }
        }
        row_check(r, tvb(c.f_add), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // prop:3.2 (1)<->(4): DD iff every sampled nonzero integral ideal is
    // quasi-tilde-invertible
    {
        theorem_result r{"prop:3.2 (1)<->(4) quasi-tilde-invertibility of ideals"};
        bool rhs = true;
        std::string w;
        for (auto& e : c.samples) {
            if (!ideal_is_integral(e)) continue;
            if (!is_quasi_star_invertible(e, c.ts)) {
                rhs = false;
                w = ideal_str(e);
                break;
            }
        }
        row_check(r, tvb(c.f_dd), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // prop:3.2 (1)<->(2): group structure of tilde classes on a DD
    {
        theorem_result r{"prop:3.2 (1)<->(2) group law on tilde classes"};
        bool ok = true;
        std::string w;
        if (tvb(c.f_dd)) {
            size_t m = std::min<size_t>(c.samples.size(), 6);
            for (size_t i = 0; i < m && ok; i++) {
                ideal inv = star_group_inverse(c.samples[i], s);
                if (!(apply_star(c.ts, ideal_mul(c.samples[i], inv)) == c.dts)) {
                    ok = false;
                    w = ideal_str(c.samples[i]);
                }
                for (size_t j = 0; j < m && ok; j++) {
                    ideal ab = star_product(c.samples[i], c.samples[j], s);
                    for (size_t k = 0; k < m && ok; k++) {
                        ideal l = star_product(ideal{c.d, ab.m}, c.samples[k], s);
                        ideal bc = star_product(c.samples[j], c.samples[k], s);
                        ideal rg = star_product(c.samples[i], ideal{c.d, bc.m}, s);
                        if (!(l == rg)) {
                            ok = false;
                            w = "associativity";
                        }
                    }
                }
            }
        }
        row_check(r, true, ok, w);
        out.rows.push_back(r);
    }
    // lemma:GP3.4: primes quasi-invertible iff sampled ideals quasi-invertible
    {
        theorem_result r{"lemma:GP3.4 Cohen-type reduction"};
        bool primes_ok = true;
        for (auto& pc : c.prime_cands) {
            ideal P = ideal_of_prime(d, pc);
            if (is_quasi_star_ideal(P, c.ts) && !is_quasi_star_invertible(P, c.ts))
                primes_ok = false;
        }
        bool ideals_ok = true;
        std::string w;
        for (auto& e : c.samples) {
            if (!ideal_is_integral(e)) continue;
            if (!is_quasi_star_invertible(e, c.ts)) {
                ideals_ok = false;
                w = ideal_str(e);
                break;
            }
        }
        row_check(r, primes_ok, ideals_ok, w.empty() ? "prime route failed" : w);
        out.rows.push_back(r);
    }
    // thm:GP3.4: DD iff every quasi-tilde-prime is quasi-tilde-invertible
    {
        theorem_result r{"thm:GP3.4 prime quasi-invertibility route"};
        bool rhs = true;
        std::string w;
        for (auto& pc : c.prime_cands) {
            ideal P = ideal_of_prime(d, pc);
            if (!is_quasi_star_ideal(P, c.ts)) continue;
            if (!is_quasi_star_invertible(P, c.ts)) {
                rhs = false;
                w = prime_str(d, pc);
            }
        }
        row_check(r, tvb(c.f_dd), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // thm:3.3: DD iff ADD + finite character
    {
        theorem_result r{"thm:3.3 DD = ADD + FC"};
        row_check(r, tvb(c.f_dd), tvb(c.f_add) && tvb(c.f_fc), "route mismatch");
        out.rows.push_back(r);
    }
    // thm:3.5: DD iff tilde-Noetherian, tilde-dim 1, quasi-tilde-integrally closed
    {
        theorem_result r{"thm:3.5 Noether axioms route"};
        auto dim = star_dim(d, c.ts);
        bool rhs = tvb(is_star_noetherian(d, c.ts)) && dim && *dim == 1 &&
                   tvb(is_quasi_star_integrally_closed(d, c.ts));
        row_check(r, tvb(c.f_dd), rhs, "route mismatch");
        out.rows.push_back(r);
    }
    // cor:krull: Krull iff every w-prime is w-invertible iff every t-prime is
    // t-invertible (two independent scans)
    {
        theorem_result r{"cor:krull w-route vs t-route"};
        star w_ = mk_w(), t_ = mk_t();
        auto scan = [&](const star& op) {
            for (auto& pc : c.prime_cands) {
                ideal P = ideal_of_prime(d, pc);
                if (!is_quasi_star_ideal(P, op)) continue;
                ideal J = ideal_mul(P, ideal_colon(c.ring, P));
                if (!(apply_star(op, J) == apply_star(op, c.ring))) return false;
            }
            return true;
        };
        bool wroute = scan(w_), troute = scan(t_);
        row_check(r, wroute, troute, "w/t scans disagree");
        r.instances++;
        if (wroute == tvb(c.f_krull))
            r.agree++;
        else if (r.first_disagreement.empty())
            r.first_disagreement = "scan vs krull flag";
        out.rows.push_back(r);
    }
    // cor:3.8: DD(star) iff DD(tilde(star))
    {
        theorem_result r{"cor:3.8 DD is a tilde-level notion"};
        row_check(r, tvb(c.f_dd), tvb(is_star_dd(d, c.ts)), "tilde route mismatch");
        out.rows.push_back(r);
    }
    // rk:4.17.1: for star_{T}-type operations, DD iff T Krull with matching
    // localizations
    {
        theorem_result r{"rk:4.17.1 Krull overring certificate"};
        const star_op* n = s.get();
        std::optional<overring_ref> tr;
        if (n->k == star_op::op::over_t) tr = n->t;
        if (n->k == star_op::op::pull_from) tr = n->t;
        if (tr) {
            flag crit = krull_overring_criterion(d, *tr);
            row_check(r, tvb(c.f_dd), tvb(crit), crit.witness);
        } else {
            row_check(r, true, true, "");
        }
        out.rows.push_back(r);
    }
    // prop:krull: for a (semi)star operation, DD iff Krull and star_f = t
    {
        theorem_result r{"prop:krull DD = Krull + star_f=t ((semi)star case)"};
        if (apply_star(s, c.ring) == c.ring) {
            bool rhs = tvb(c.f_krull) && op_equal_sampled(d, c.fts, mk_t(), p).holds;
            row_check(r, tvb(c.f_dd), rhs, "route mismatch");
        } else {
            row_check(r, true, true, "");
        }
        out.rows.push_back(r);
    }
    // thm:3.6: DD iff sampled integral ideals factor into comaximal prime powers
    {
        theorem_result r{"thm:3.6 prime star-factorization"};
        bool rhs = true;
        std::string w;
        for (auto& e : c.samples) {
            if (!ideal_is_integral(e)) continue;
            ideal its = apply_star(c.ts, e);
            if (its == c.dts) continue;
            // reconstruct candidate exponents from the family localizations
            std::optional<ideal> prod;
            bool ok = true;
            for (auto& pc : c.prime_cands) {
                if (!family_contains(c.fam, pc)) continue;
                if (!ideal_subset(e, ideal_of_prime(d, pc))) continue;
                if (!prime_loc_is_dvr(d, pc)) {
                    ok = false;
                    break;
                }
                auto v = ideal_val_at(e, pc);
                if (!v || *v < 1) continue;
                ideal pe = ideal_pow(ideal_of_prime(d, pc), *v);
                prod = prod ? ideal_mul(*prod, pe) : pe;
            }
            if (d->kind == backend::pullback && c.fam.generic) ok = false;
            if (ok && prod) ok = apply_star(c.ts, *prod) == its;
            if (ok && !prod) ok = false;
            if (!ok) {
                rhs = false;
                w = ideal_str(e);
                break;
            }
        }
        row_check(r, tvb(c.f_dd), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // thm:3.9: DD iff the two-generator property holds on sampled pairs
    {
        theorem_result r{"thm:3.9 two-generator property"};
        bool rhs = true;
        std::string w;
        int tried = 0;
        for (auto& e : c.samples) {
            if (!ideal_is_integral(e) || tried > 24) continue;
            for (auto& a : probe_elements(e, 2)) {
                if (elem_is_zero(a)) continue;
                tried++;
                ideal its = apply_star(c.ts, e);
                bool found = false;
                // search the probe battery for a second generator
                for (auto& b : probe_elements(e, 3)) {
                    if (elem_is_zero(b)) continue;
                    ideal ab = ideal_add(ideal_principal(a), ideal_principal(b));
                    if (apply_star(c.ts, ab) == its) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    rhs = false;
                    w = ideal_str(e) + " with a = " + elem_str(a);
                }
                break;
            }
            if (!rhs) break;
        }
        row_check(r, tvb(c.f_dd), rhs, w.empty() ? "flag mismatch" : w);
        out.rows.push_back(r);
    }
    // lemma:GP4.2 / cor:GP4.3: comaximal intersections equal products
    {
        theorem_result r{"lemma:GP4.2 comaximal product identity"};
        bool ok = true;
        std::string w;
        size_t m = std::min<size_t>(c.samples.size(), 10);
        for (size_t i = 0; i < m && ok; i++)
            for (size_t j = i + 1; j < m && ok; j++) {
                const ideal &A = c.samples[i], &B = c.samples[j];
                if (!ideal_is_integral(A) || !ideal_is_integral(B)) continue;
                if (!is_star_comaximal(A, B, c.fts)) continue;
                auto id = comaximal_product({A, B}, c.fts);
                if (!id.equal) {
                    ok = false;
                    w = ideal_str(A) + " vs " + ideal_str(B);
                }
            }
        row_check(r, true, ok, w);
        out.rows.push_back(r);
    }
    return out;
}

}  // namespace semistar
