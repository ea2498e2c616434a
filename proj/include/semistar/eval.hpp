#pragma once

#include <semistar/star.hpp>

namespace semistar {

// Semistar closure evaluation. Closure axioms hold by construction for every
// constructor; check_axioms (axioms.hpp) verifies them on samples.
ideal apply_star(const star& s, const ideal& e);

// M(star_f): the quasi-(star_f)-maximal ideals of d, in exceptional-set form.
// Throws field_domain when d is a field (the set would be empty by fiat).
prime_family quasi_max_set(const domain& d, const star& s);

// Theta = the maximal t-ideals that are t-invertible (empty flag surfaced).
prime_family theta_family(const domain& d);

// intersection of E D_P over the family (empty family gives K)
ideal spectral_eval(const prime_family& fam, const ideal& e);

// E * T for a representable overring
ideal over_t_eval(const overring_ref& t, const ideal& e);

// The overring T as a domain in its own right.
domain overring_domain(const domain& d, const overring_ref& t);
// T as a D-module.
ideal overring_module(const domain& d, const overring_ref& t);
// A module over T (T-stable, e.dom == d), re-expressed in T's representation.
ideal to_overring_rep(const domain& d, const overring_ref& t, const ideal& e);
// A T-module re-expressed as a module over the base domain d.
ideal to_base_rep(const domain& d, const overring_ref& t, const ideal& e);

// D^{[star]} = D^{star_a}, the semistar integral closure of the ring itself,
// returned as a D-module (an overring of D^star).
ideal domain_closure_bracket(const domain& d, const star& s);

// all maximal ideals containing the integral ideal a (exact, finite)
std::vector<prime_id> primes_containing(const ideal& a);
// the domain's primes over a rational prime p / the lifted structure
std::vector<prime_id> domain_primes_over(const domain& d, const Int& p);
// finite set of primes that any exceptional-set scheme for d must consider
std::vector<prime_id> base_candidate_primes(const domain& d);
// k primes from the generic pool avoiding the given list
std::vector<prime_id> fresh_pool_primes(const domain& d, int k,
                                        const std::vector<prime_id>& avoid);
// is P a member of the family?
bool family_contains(const prime_family& fam, const prime_id& p);
bool pid_in_list(const std::vector<prime_id>& v, const prime_id& p);

}  // namespace semistar
