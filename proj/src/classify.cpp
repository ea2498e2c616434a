#include <semistar/classify.hpp>

#include <algorithm>
#include <sstream>

namespace semistar {

bool is_quasi_star_ideal(const ideal& I, const star& s) {
    if (!ideal_is_integral(I)) throw error("quasi-star test needs an integral ideal");
    return ideal_intersect(apply_star(s, I), ideal_ring(I.dom)) == I;
}

bool is_star_invertible(const ideal& I, const star& s) {
    ideal ring = ideal_ring(I.dom);
    ideal inv = ideal_colon(ring, I);
    return apply_star(s, ideal_mul(I, inv)) == apply_star(s, ring);
}

bool is_quasi_star_invertible(const ideal& E, const star& s) {
    ideal ring = ideal_ring(E.dom);
    ideal ds = apply_star(s, ring);
    ideal q = ideal_colon(ds, E);
    return apply_star(s, ideal_mul(E, q)) == ds;
}

// --- P*MD / ADD ------------------------------------------------------------------

static std::string loc_witness(const domain& d, const prime_id& p, bool want_dvr) {
    std::ostringstream s;
    if (p.k == prime_id::pk::pb_m && d->pb.shape != pb_shape::order) {
        s << "D_" << prime_str(d, p) << " = D is not a "
          << (want_dvr ? "DVR" : "valuation domain");
    } else {
        s << "D_" << prime_str(d, p) << " is not a "
          << (want_dvr ? "DVR" : "valuation domain");
    }
    return s.str();
}

flag is_pstarmd(const domain& d, const star& s) {
    if (dom_is_field(d)) return {tv::yes, "field convention"};
    prime_family fam = quasi_max_set(d, s);
    for (auto& p : fam.members)
        if (!prime_loc_is_valuation(d, p)) return {tv::no, loc_witness(d, p, false)};
    // generic pool members have valuation localizations by construction:
    // quadratic primes away from the conductor are DVRs, lifted primes over a
    // DVR base are rank-two valuation rings
    return {tv::yes, ""};
}

flag is_star_add(const domain& d, const star& s) {
    if (dom_is_field(d)) throw field_domain("is_star_add is about non-fields");
    prime_family fam = quasi_max_set(d, s);
    for (auto& p : fam.members)
        if (!prime_loc_is_dvr(d, p)) return {tv::no, loc_witness(d, p, true)};
    if (fam.generic && d->kind == backend::pullback) {
        // the generic pool consists of lifted primes with rank-two localizations
        return {tv::no, "generic lifted maximals have rank-two (non-DVR) localizations"};
    }
    return {tv::yes, ""};
}

flag is_star_noetherian(const domain& d, const star& s) {
    if (dom_is_noetherian(d))
        return {tv::yes, "Noetherian ambient ring"};
    // pullback over an order base
    prime_family fam = quasi_max_set(d, s);
    if (fam.empty())
        return {tv::yes, "no proper quasi-(star_f)-ideals"};
    bool lifts = fam.generic;
    std::optional<prime_id> probe;
    for (auto& p : fam.members)
        if (p.k == prime_id::pk::pb_lift) {
            lifts = true;
            probe = p;
        }
    if (!lifts)
        return {tv::yes, "M(star_f) = {M}: quasi-ideals are the chain X^n T"};
    if (!probe) {
        auto fresh = fresh_pool_primes(d, 1, fam.excluded);
        if (fresh.empty()) return {tv::unknown, ""};
        probe = fresh[0];
    }
    // strictly ascending chain of quasi-star ideals masked at one lifted prime
    const quad_order& R = d->pb.R;
    ideal prev = ideal_ring(d);
    bool all_quasi = true;
    for (int k = 0; k <= 5 && all_quasi; k++) {
        qlattice qk = probe->q.lat;
        qlattice num = lattice_ring(R);
        for (int i = 0; i < k; i++) num = lat_colon(R, num, qk);
        quad_module W = qm_make(R, num, qmode::only, {probe->q});
        ideal Ik{d, pm_level_order(d->pb, 1, W)};
        if (!is_quasi_star_ideal(Ik, s)) all_quasi = false;
        if (k > 0 && !(ideal_subset(prev, Ik) && !(prev == Ik))) all_quasi = false;
        prev = Ik;
    }
    if (all_quasi)
        return {tv::no,
                "ascending chain of quasi-ideals X(q^-k + XT) masked at " +
                    prime_str(d, *probe)};
    return {tv::unknown, ""};
}

ideal fg_witness(const ideal& I, const star& s) {
    if (ideal_is_fg(I)) return I;
    ideal target = apply_star(s, I);
    for (int k = 0; k <= 64; k++) {
        ideal J = ideal_cofinal_fg(I, k);
        if (apply_star(s, J) == target) return J;
    }
    throw witness_search_exhausted("no finitely generated star-equal subideal found");
}

// --- finite character ---------------------------------------------------------------

fc_result fc_property(const element& x, const star& s) {
    if (elem_is_zero(x)) throw error("finite character is about nonzero elements");
    if (!elem_in_ring(x)) throw error("finite character is about elements of D");
    const domain& d = x.dom;
    prime_family fam = quasi_max_set(d, s);
    fc_result res;
    auto in_prime = [&](const prime_id& p) {
        return ideal_contains(ideal_of_prime(d, p), x);
    };
    for (auto& p : fam.members)
        if (in_prime(p)) res.members.push_back(p);
    if (!fam.generic) return res;
    if (d->kind == backend::quad) {
        for (auto& p : primes_containing(ideal_principal(x)))
            if (!pid_in_list(fam.excluded, p) &&
                std::find(res.members.begin(), res.members.end(), p) == res.members.end())
                res.members.push_back(p);
        return res;
    }
    // lifted pool over an order base
    auto& pe = std::get<pull_elem>(x.v);
    qelem c0 = pe.is_zero() ? qelem{Rat(0), Rat(0)} : pe.coeff(0);
    if (c0.is_zero()) {
        res.infinite = true;  // x lies in M, hence in every lifted maximal
        return res;
    }
    domain rd = dom_quad(d->pb.R.d, d->pb.R.f);
    for (auto& p : primes_containing(ideal_principal(elem_quad(rd, c0)))) {
        prime_id lp;
        lp.k = prime_id::pk::pb_lift;
        lp.q = p.q;
        if (!pid_in_list(fam.excluded, lp) &&
            std::find(res.members.begin(), res.members.end(), lp) == res.members.end())
            res.members.push_back(lp);
    }
    return res;
}

flag fc_property_global(const domain& d, const star& s) {
    if (dom_is_field(d)) return {tv::yes, "field convention"};
    prime_family fam = quasi_max_set(d, s);
    if (!fam.generic) return {tv::yes, "finitely many quasi-(star_f)-maximal ideals"};
    switch (d->kind) {
        case backend::divisor:
        case backend::pull_t: return {tv::yes, ""};
        case backend::quad:
            return {tv::yes, "elements lie in the primes over their norm only"};
        case backend::pullback:
            return {tv::no, "X lies in every lifted maximal ideal q + M"};
    }
    return {tv::unknown, ""};
}

// --- dimension -----------------------------------------------------------------------

std::optional<int> star_dim(const domain& d, const star& s) {
    if (dom_is_field(d)) return 0;
    std::vector<prime_id> cand = base_candidate_primes(d);
    for (auto& p : fresh_pool_primes(d, 2, cand)) cand.push_back(p);
    auto quasi = [&](const prime_id& p) {
        return is_quasi_star_ideal(ideal_of_prime(d, p), s);
    };
    bool m_quasi = false;
    int dim = 0;
    for (auto& p : cand) {
        if (!quasi(p)) continue;
        if (p.k == prime_id::pk::pb_m) m_quasi = true;
    }
    for (auto& p : cand) {
        if (!quasi(p)) continue;
        int h = 1;
        if (p.k == prime_id::pk::pb_lift) h = m_quasi ? 2 : 1;
        dim = std::max(dim, h);
    }
    return dim;
}

// --- overrings -----------------------------------------------------------------------

bool is_star_valuation_overring(const domain& d, const overring_ref& V, const star& s) {
    ideal vm = overring_module(d, V);
    return apply_star(mk_ft(s), vm) == vm;
}

verdict is_linked(const domain& d, const overring_ref& T, const star& s,
                  const star& s_on_t, const sample_plan& p) {
    domain td = overring_domain(d, T);
    ideal tring = ideal_ring(td);
    ideal trhs = apply_star(s_on_t, tring);
    ideal ds = apply_star(s, ideal_ring(d));
    for (auto& e : sample_ideals(d, p)) {
        if (!ideal_is_fg(e) || !ideal_is_integral(e)) continue;
        if (!(apply_star(s, e) == ds)) continue;
        ideal ft = to_overring_rep(d, T, over_t_eval(T, e));
        if (!(apply_star(s_on_t, ft) == trhs))
            return {false, ideal_str(e)};
    }
    return {true, ""};
}

flag is_quasi_star_integrally_closed(const domain& d, const star& s) {
    try {
        ideal ds = apply_star(s, ideal_ring(d));
        ideal br = domain_closure_bracket(d, s);
        if (ds == br) return {tv::yes, ""};
        return {tv::no, "D^star = " + ideal_str(ds) + " != D^[star] = " + ideal_str(br)};
    } catch (const unsupported_closure& e) {
        return {tv::unknown, e.what()};
    }
}

bool integrally_closed(const domain& d) {
    switch (d->kind) {
        case backend::divisor: return true;
        case backend::quad: return d->ord.f == 1;
        case backend::pullback:
            switch (d->pb.shape) {
                case pb_shape::field: return false;  // K\k is integral over D
                case pb_shape::order: return d->pb.R.f == 1;
                case pb_shape::cusp: return false;  // X is integral over D
            }
            return false;
        case backend::pull_t: return true;
    }
    return false;
}

flag is_krull(const domain& d) {
    if (dom_is_field(d)) return {tv::yes, "field convention"};
    star t = mk_t();
    star v = mk_v();
    ideal ring = ideal_ring(d);
    auto t_prime_not_invertible = [&](const prime_id& p) {
        ideal P = ideal_of_prime(d, p);
        if (!(ideal_intersect(apply_star(v, P), ring) == P)) return false;  // not a t-prime
        ideal J = ideal_mul(P, ideal_colon(ring, P));
        return !(apply_star(t, J) == ring);
    };
    std::vector<prime_id> cand = base_candidate_primes(d);
    for (auto& p : cand)
        if (t_prime_not_invertible(p))
            return {tv::no, prime_str(d, p) + " is a t-prime that is not t-invertible"};
    for (auto& p : fresh_pool_primes(d, 2, cand))
        if (t_prime_not_invertible(p))
            return {tv::no, prime_str(d, p) + " is a t-prime that is not t-invertible"};
    return {tv::yes, ""};
}

flag krull_overring_criterion(const domain& d, const overring_ref& t) {
    switch (t.k) {
        case overring_ref::kind::self: return is_krull(d);
        case overring_ref::kind::field_k: return {tv::yes, "T = K"};
        case overring_ref::kind::div_sub: return {tv::yes, "sub-family of DVRs"};
        case overring_ref::kind::quad_sub: {
            flag kr = is_krull(overring_domain(d, t));
            if (kr.value != tv::yes) return {tv::no, "T is not Krull: " + kr.witness};
            // localization equality D_{Q cap D} = T_Q at every t_T-maximal Q
            for (auto& p : factor_rational(d->ord.f)) {
                Int vf = 0, vf2 = 0;
                Int f = d->ord.f, f2 = t.f2;
                while (fmod(f, p) == 0) {
                    vf++;
                    f /= p;
                }
                while (fmod(f2, p) == 0) {
                    vf2++;
                    f2 /= p;
                }
                if (vf != vf2) {
                    std::ostringstream w;
                    w << "D_P" << p << " != T_Q" << p
                      << " (conductor exponents differ at " << p << ")";
                    return {tv::no, w.str()};
                }
            }
            return {tv::yes, ""};
        }
        case overring_ref::kind::pull_t: {
            // T = K[[X]] is a DVR (Krull); condition reduces to D_M = T
            if (d->pb.shape == pb_shape::order) return {tv::yes, "D_M = T"};
            std::string m = d->pb.shape == pb_shape::cusp ? "N" : "M";
            return {tv::no, "D_" + m + " = D != T"};
        }
    }
    return {tv::unknown, ""};
}

// --- assembled report ------------------------------------------------------------------

static flag tv_and(const flag& a, const flag& b) {
    if (a.value == tv::no) return a;
    if (b.value == tv::no) return b;
    if (a.value == tv::yes && b.value == tv::yes) return {tv::yes, ""};
    return {tv::unknown, a.value == tv::unknown ? a.witness : b.witness};
}

flag is_star_dd(const domain& d, const star& s) {
    if (dom_is_field(d)) return {tv::yes, "field convention"};
    flag a = tv_and(is_pstarmd(d, s), is_star_noetherian(d, s));
    flag b = tv_and(is_star_add(d, s), fc_property_global(d, s));
    if (a.value != tv::unknown && b.value != tv::unknown && a.value != b.value)
        throw internal_disagreement(
            "star-DD routes disagree: (P*MD and Noetherian) vs (ADD and FC)");
    return a.value != tv::unknown ? a : b;
}

classification_report classify(const domain& d, const star& s, const sample_plan& p) {
    classification_report r;
    r.domain_name = dom_str(d);
    r.star_name = star_str(d, s);
    r.seed = p.seed;
    if (dom_is_field(d)) {
        r.pstarmd = r.star_add = r.star_noetherian = r.star_dd = r.fc = r.qsic =
            r.krull = {tv::yes, "field convention"};
        r.dim = 0;
        r.notes.push_back("a field has only the identity (semi)star operation");
        return r;
    }
    r.quasi_max = quasi_max_set(d, s);
    r.pstarmd = is_pstarmd(d, s);
    r.star_add = is_star_add(d, s);
    r.star_noetherian = is_star_noetherian(d, s);
    r.star_dd = is_star_dd(d, s);
    r.fc = fc_property_global(d, s);
    r.qsic = is_quasi_star_integrally_closed(d, s);
    r.krull = is_krull(d);
    r.dim = star_dim(d, s);
    if (r.quasi_max.theta_empty) r.notes.push_back("Theta is empty: star_Theta = e");
    if (!integrally_closed(d)) r.notes.push_back("D is not integrally closed");
    // implication lattice: DD => ADD => P*MD, DD => quasi-tilde-integrally closed
    auto chk = [](const flag& strong, const flag& weak, const char* what) {
        if (strong.value == tv::yes && weak.value == tv::no)
            throw internal_disagreement(std::string("implication violated: ") + what);
    };
    chk(r.star_dd, r.star_add, "star-DD implies star-ADD");
    chk(r.star_add, r.pstarmd, "star-ADD implies P*MD");
    flag qs_tilde = is_quasi_star_integrally_closed(d, mk_tilde(s));
    chk(r.star_dd, qs_tilde, "star-DD implies quasi-tilde-star integral closedness");
    return r;
}

}  // namespace semistar
