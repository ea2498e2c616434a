#pragma once

#include <semistar/classify.hpp>

namespace semistar {

// Polynomials over K in an auxiliary indeterminate Z (distinct from the X of
// the power-series backends); only the content ideal ever matters.
struct kpoly {
    domain dom;
    std::vector<element> co;  // co[i] is the coefficient of Z^i, degree <= 32
};

kpoly poly_make(const domain& d, std::vector<element> co);
std::string poly_str(const kpoly& f);
bool poly_in_ring(const kpoly& f);  // all coefficients in D

ideal content(const kpoly& f);  // throws zero_poly on 0

// h in N(star): c(h)^star = D^star; N(star) = N(star_f) is asserted
bool is_in_nagata_mult_set(const kpoly& h, const star& s);

// Max(Na(D, star)) described by its contraction M(star_f)
prime_family nagata_maximal_ideals(const domain& d, const star& s);

// a polynomial f whose content is a fg J <= I with J^tilde = I^tilde, the
// desk-scale witness that I Na(D, star) is principal
kpoly nagata_principal_witness(const ideal& I, const star& s);

// f/g in Kr(D, star), decided through c(f) <= c(g)^{star_a}
bool kronecker_member(const kpoly& f, const kpoly& g, const star& s);

// membership of a constant z in K: exact on both sides
bool kr_member_const(const domain& d, const element& z, const star& s);
bool na_member_const(const domain& d, const element& z, const star& s);

struct na_kr_verdict {
    bool holds = true;           // no element of Kr \ Na found
    std::string witness_f, witness_g;  // a concrete f/g in Kr \ Na otherwise
    int samples = 0;
};

// Na(D, star) = Kr(D, star) falsifier; certified counterexamples come from
// constant candidates z with z in D^{star_a} and (D :_D z) inside a
// quasi-(star_f)-maximal ideal
na_kr_verdict na_equals_kr_sampled(const domain& d, const star& s, const sample_plan& p);

}  // namespace semistar
