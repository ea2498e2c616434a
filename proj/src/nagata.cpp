#include <semistar/nagata.hpp>
#include <semistar/arith.hpp>

#include <sstream>

namespace semistar {

kpoly poly_make(const domain& d, std::vector<element> co) {
    if (co.size() > 33) throw error("polynomial degree capped at 32");
    for (auto& c : co)
        if (!dom_equal(c.dom, d)) throw mixed_domain("coefficient from another domain");
    return kpoly{d, std::move(co)};
}

std::string poly_str(const kpoly& f) {
    std::ostringstream s;
    bool first = true;
    for (size_t i = 0; i < f.co.size(); i++) {
        if (elem_is_zero(f.co[i])) continue;
        if (!first) s << " + ";
        first = false;
        s << "(" << elem_str(f.co[i]) << ")";
        if (i == 1) s << "Z";
        if (i > 1) s << "Z^" << i;
    }
    if (first) s << "0";
    return s.str();
}

bool poly_in_ring(const kpoly& f) {
    for (auto& c : f.co)
        if (!elem_is_zero(c) && !elem_in_ring(c)) return false;
    return true;
}

ideal content(const kpoly& f) {
    std::vector<element> nz;
    for (auto& c : f.co)
        if (!elem_is_zero(c)) nz.push_back(c);
    if (nz.empty()) throw zero_poly("the zero polynomial has no content ideal");
    return ideal_from_gens(f.dom, nz);
}

bool is_in_nagata_mult_set(const kpoly& h, const star& s) {
    if (!poly_in_ring(h)) throw not_in_d("N(star) lives inside D[Z]");
    ideal c = content(h);
    ideal ds = apply_star(s, ideal_ring(h.dom));
    bool member = apply_star(s, c) == ds;
    // N(star) = N(star_f)
    bool member_f = apply_star(mk_ft(s), c) == apply_star(mk_ft(s), ideal_ring(h.dom));
    if (member != member_f)
        throw internal_disagreement("N(star) and N(star_f) disagreed on a sample");
    return member;
}

prime_family nagata_maximal_ideals(const domain& d, const star& s) {
    return quasi_max_set(d, s);
}

kpoly nagata_principal_witness(const ideal& I, const star& s) {
    require_star_dd(I.dom, s);
    ideal J = fg_witness(I, mk_tilde(s));
    return poly_make(I.dom, ideal_gens(J));
}

bool kronecker_member(const kpoly& f, const kpoly& g, const star& s) {
    if (!poly_in_ring(f) || !poly_in_ring(g)) throw not_in_d("Kr membership is about D[Z]");
    ideal cf = content(f);
    ideal cg = content(g);
    return ideal_subset(cf, apply_star(mk_eab(s), cg));
}

bool kr_member_const(const domain& d, const element& z, const star& s) {
    return ideal_contains(domain_closure_bracket(d, s), z);
}

bool na_member_const(const domain& d, const element& z, const star& s) {
    // z in Na iff some g' in N(star) has z g' in D[Z] iff the denominator
    // ideal J_z = (D :_D zD) is not inside any quasi-(star_f)-maximal ideal
    ideal ring = ideal_ring(d);
    if (ideal_contains(ring, z)) return true;
    ideal jz = ideal_intersect(ideal_colon(ring, ideal_principal(z)), ring);
    prime_family fam = quasi_max_set(d, s);
    for (auto& p : fam.members)
        if (ideal_subset(jz, ideal_of_prime(d, p))) return false;
    if (fam.generic)
        for (auto& p : primes_containing(jz))
            if (family_contains(fam, p)) return false;
    return true;
}

// constant candidates that can separate Kr from Na on each backend
static std::vector<element> witness_candidates(const domain& d) {
    std::vector<element> out;
    switch (d->kind) {
        case backend::divisor: break;  // every localization is a DVR
        case backend::quad: {
            const quad_order& o = d->ord;
            if (o.f != 1) {
                domain dd = d;
                for (auto& g : lat_gens(o, lattice_maximal_order(o)))
                    out.push_back(elem_quad(dd, g));
                for (auto& p : factor_rational(o.f)) {
                    qelem om = lat_gens(o, lattice_maximal_order(o))[1];
                    qelem fp{Rat(o.f / p), Rat(0)};
                    out.push_back(elem_quad(dd, qmul(fp, om, o.d)));
                }
            }
            break;
        }
        case backend::pullback:
            switch (d->pb.shape) {
                case pb_shape::field:
                    out.push_back(elem_pull(d, pe_const(qelem{Rat(0), Rat(1)})));  // w
                    break;
                case pb_shape::order: {
                    const quad_order& R = d->pb.R;
                    for (auto& g : lat_gens(R, lattice_maximal_order(R)))
                        out.push_back(elem_pull(d, pe_const(g)));
                    out.push_back(elem_pull(d, pe_const(qelem{Rat(0), Rat(1)})));
                    break;
                }
                case pb_shape::cusp:
                    out.push_back(elem_pull(d, pe_xpow(1)));  // X
                    break;
            }
            break;
        case backend::pull_t: break;
    }
    return out;
}

// denominator in D clearing the constant z, for reporting f/g in D[Z]
static element clearing_denominator(const domain& d, const element& z) {
    switch (d->kind) {
        case backend::quad: {
            auto& q = std::get<qelem>(z.v);
            Int den = lcm(q.x.get_den(), q.y.get_den());
            Int f = d->ord.f;
            return elem_quad(d, qelem{Rat(den * f), Rat(0)});
        }
        case backend::pullback:
        case backend::pull_t: {
            auto& p = std::get<pull_elem>(z.v);
            long k = std::max(0L, 2 - p.lead);
            if (d->pb.shape == pb_shape::cusp && k == 1) k = 2;
            return elem_pull(d, pe_xpow(k));
        }
        default: return elem_one(d);
    }
}

na_kr_verdict na_equals_kr_sampled(const domain& d, const star& s, const sample_plan& p) {
    na_kr_verdict out;
    // certified constant candidates first (deterministic)
    for (auto& z : witness_candidates(d)) {
        if (elem_in_ring(z)) continue;
        bool kr = kr_member_const(d, z, s);
        bool na = na_member_const(d, z, s);
        if (na && !kr)
            throw internal_disagreement("Na membership outside Kr: inclusion violated");
        if (kr && !na) {
            element den = clearing_denominator(d, z);
            out.holds = false;
            out.witness_f = elem_str(elem_mul(z, den));
            out.witness_g = elem_str(den);
            out.samples++;
            return out;
        }
        out.samples++;
    }
    // random constants z = x/y from sampled elements
    rng r(p.seed);
    for (int i = 0; i < p.n_random; i++) {
        element x = random_element(d, r);
        element z = x;
        if (d->kind == backend::quad && r.coin()) {
            auto q = std::get<qelem>(x.v);
            q.x /= 2;
            q.y /= 2;
            q.x.canonicalize();
            q.y.canonicalize();
            z = elem_quad(d, q);
        }
        if (elem_is_zero(z)) continue;
        bool kr = kr_member_const(d, z, s);
        bool na = na_member_const(d, z, s);
        out.samples++;
        if (na && !kr)
            throw internal_disagreement("Na membership outside Kr: inclusion violated");
        if (kr && !na) {
            element den = clearing_denominator(d, z);
            out.holds = false;
            out.witness_f = elem_str(elem_mul(z, den));
            out.witness_g = elem_str(den);
            return out;
        }
    }
    return out;
}

}  // namespace semistar
