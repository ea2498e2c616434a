#include <semistar/arith.hpp>

#include <algorithm>

namespace semistar {

void require_star_dd(const domain& d, const star& s) {
    flag f = is_star_dd(d, s);
    if (f.value != tv::yes)
        throw not_star_dedekind("the instance is not a star-Dedekind domain: " + f.witness);
}

ideal star_product(const ideal& a, const ideal& b, const star& s) {
    require_same_domain(a, b);
    require_star_dd(a.dom, s);
    return apply_star(mk_tilde(s), ideal_mul(a, b));
}

ideal star_group_inverse(const ideal& f, const star& s) {
    require_star_dd(f.dom, s);
    star ts = mk_tilde(s);
    ideal dts = apply_star(ts, ideal_ring(f.dom));
    ideal g = apply_star(ts, ideal_colon(dts, f));
    if (!(apply_star(ts, ideal_mul(f, g)) == dts))
        throw verification_failed("group inverse law failed");
    return g;
}

// the family members containing an integral ideal (finite for the cases a
// star-Dedekind family can produce)
static std::vector<prime_id> members_containing(const domain& d, const prime_family& fam,
                                                const ideal& I) {
    std::vector<prime_id> out;
    for (auto& p : fam.members)
        if (ideal_subset(I, ideal_of_prime(d, p))) out.push_back(p);
    if (fam.generic) {
        for (auto& p : primes_containing(I)) {
            if (pid_in_list(fam.excluded, p) || pid_in_list(out, p)) continue;
            if (p.k == prime_id::pk::quad_p || p.k == prime_id::pk::pb_lift)
                out.push_back(p);
        }
    }
    return out;
}

star_factorization factor_into_primes(const ideal& I, const star& s) {
    const domain& d = I.dom;
    require_star_dd(d, s);
    if (!ideal_is_integral(I)) throw error("factorization is about integral ideals");
    star ts = mk_tilde(s);
    ideal its = apply_star(ts, I);
    ideal dts = apply_star(ts, ideal_ring(d));
    star_factorization out;
    if (its == dts) {
        out.unit = true;
        return out;
    }
    prime_family fam = quasi_max_set(d, s);
    for (auto& p : members_containing(d, fam, I)) {
        auto v = ideal_val_at(I, p);
        if (!v) throw verification_failed("factorization needs discrete valuations");
        if (*v >= 1) out.primes.push_back({p, *v});
    }
    std::sort(out.primes.begin(), out.primes.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    // verifier: reassemble and compare closures; exponents are the
    // localization valuations by construction
    std::optional<ideal> prod;
    for (auto& [p, e] : out.primes) {
        ideal pe = ideal_pow(ideal_of_prime(d, p), e);
        prod = prod ? ideal_mul(*prod, pe) : pe;
    }
    if (!prod) throw verification_failed("no factor found for a non-unit ideal");
    if (!(apply_star(ts, *prod) == its))
        throw verification_failed("factor reassembly does not reproduce the closure");
    // pairwise star_f-comaximality
    for (size_t i = 0; i < out.primes.size(); i++)
        for (size_t j = i + 1; j < out.primes.size(); j++)
            if (!is_star_comaximal(ideal_of_prime(d, out.primes[i].first),
                                   ideal_of_prime(d, out.primes[j].first), mk_ft(s)))
                throw verification_failed("factors are not pairwise comaximal");
    return out;
}

// deterministic two-generator completion
element two_generator(const ideal& I, const element& a, const star& s) {
    const domain& d = I.dom;
    require_star_dd(d, s);
    if (elem_is_zero(a) || !ideal_contains(I, a))
        throw error("two_generator needs a nonzero element of the ideal");
    star ts = mk_tilde(s);
    ideal its = apply_star(ts, I);
    prime_family fam = quasi_max_set(d, s);
    std::vector<prime_id> S = members_containing(d, fam, ideal_principal(a));
    auto verify = [&](const element& b) {
        ideal ab = ideal_add(ideal_principal(a), ideal_principal(b));
        return apply_star(ts, ab) == its;
    };
    switch (d->kind) {
        case backend::divisor: {
            std::vector<long> vb(d->div.n, 0);
            auto& m = std::get<div_module>(I.m);
            for (int i = 0; i < d->div.n; i++)
                if (m.c[i]) vb[i] = *m.c[i];
            element b = elem_divisor(d, vb);
            if (verify(b)) return b;
            break;
        }
        case backend::quad: {
            // smallest lattice point of I matching the valuations of I at the
            // members through a, ordered by norm then coefficients
            std::vector<std::pair<prime_id, long>> targets;
            for (auto& p : S) targets.push_back({p, *ideal_val_at(I, p)});
            auto gens = ideal_gens(I);
            qelem g1 = std::get<qelem>(gens[0].v), g2 = std::get<qelem>(gens[1].v);
            const Int d2 = d->ord.d;
            for (long shell = 1; shell <= 64; shell++) {
                std::optional<qelem> best;
                Rat best_n;
                for (long k1 = -shell; k1 <= shell; k1++)
                    for (long k2 = -shell; k2 <= shell; k2++) {
                        if (std::max(std::abs(k1), std::abs(k2)) != shell) continue;
                        qelem x = qadd(qmul(qelem{Rat(k1), Rat(0)}, g1, d2),
                                       qmul(qelem{Rat(k2), Rat(0)}, g2, d2));
                        if (x.is_zero()) continue;
                        bool ok = true;
                        ideal xd = ideal_principal(elem_quad(d, x));
                        for (auto& [p, e] : targets)
                            if (*ideal_val_at(xd, p) != e) ok = false;
                        if (!ok) continue;
                        Rat n = qnorm(x, d2);
                        if (n < 0) n = -n;
                        if (!best || n < best_n) {
                            best = x;
                            best_n = n;
                        }
                    }
                if (best) {
                    element b = elem_quad(d, *best);
                    if (verify(b)) return b;
                }
            }
            break;
        }
        case backend::pullback: {
            // star-Dedekind pullbacks have M(star_f) = {M}; the lowest-degree
            // series generating I T works
            auto lvl = pm_level(std::get<pull_module>(I.m));
            if (lvl) {
                element b = elem_pull(d, pe_xpow(*lvl));
                if (verify(b)) return b;
            }
            break;
        }
        case backend::pull_t: {
            auto lvl = pm_level(std::get<pull_module>(I.m));
            if (lvl) {
                element b = elem_pull(d, pe_xpow(*lvl));
                if (verify(b)) return b;
            }
            break;
        }
    }
    throw verification_failed("two-generator completion not found");
}

bool is_star_comaximal(const ideal& A, const ideal& B, const star& s) {
    require_same_domain(A, B);
    return apply_star(s, ideal_add(A, B)) == apply_star(s, ideal_ring(A.dom));
}

comaximal_identity comaximal_product(const std::vector<ideal>& as, const star& s) {
    if (as.size() < 2) throw error("comaximal identity needs at least two ideals");
    ideal inter = as[0], prod = as[0];
    for (size_t i = 1; i < as.size(); i++) {
        inter = ideal_intersect(inter, as[i]);
        prod = ideal_mul(prod, as[i]);
    }
    comaximal_identity out{apply_star(s, inter), apply_star(s, prod), false};
    out.equal = out.lhs == out.rhs;
    return out;
}

verdict cancellation_check(const ideal& A, const ideal& B, const ideal& C, const star& s) {
    star ts = mk_tilde(s);
    ideal ab = apply_star(ts, ideal_mul(A, B));
    ideal ac = apply_star(ts, ideal_mul(A, C));
    if (!(ab == ac)) return {true, ""};
    if (apply_star(ts, B) == apply_star(ts, C)) return {true, ""};
    return {false, "A=" + ideal_str(A) + " B=" + ideal_str(B) + " C=" + ideal_str(C)};
}

bool primary_lemma_check(const ideal& Q, const ideal& P, const element& x, const star& s) {
    if (ideal_contains(P, x)) throw error("the element must avoid the prime");
    star ts = mk_tilde(s);
    ideal rhs = ideal_mul(Q, ideal_add(Q, ideal_principal(x)));
    return apply_star(ts, Q) == apply_star(ts, rhs);
}

}  // namespace semistar
