#pragma once

#include <semistar/classify.hpp>

namespace semistar {

struct star_factorization {
    std::vector<std::pair<prime_id, long>> primes;  // exponents >= 1
    bool unit = false;  // I^tilde = D^tilde: empty factorization, flagged
};

// group structure on tilde-star closure classes of a star-Dedekind instance
ideal star_product(const ideal& a, const ideal& b, const star& s);
ideal star_group_inverse(const ideal& f, const star& s);

// unique prime star-factorization (throws not_star_dedekind otherwise)
star_factorization factor_into_primes(const ideal& I, const star& s);

// b with I^tilde = ((a,b)D)^tilde, deterministic (throws not_star_dedekind)
element two_generator(const ideal& I, const element& a, const star& s);

bool is_star_comaximal(const ideal& A, const ideal& B, const star& s);
struct comaximal_identity {
    ideal lhs, rhs;  // (A_1 cap ... cap A_n)^star and (A_1 ... A_n)^star
    bool equal;
};
comaximal_identity comaximal_product(const std::vector<ideal>& as, const star& s);

// tilde-star cancellation on one triple: (AB)~ = (AC)~ must force B~ = C~
verdict cancellation_check(const ideal& A, const ideal& B, const ideal& C, const star& s);
// Q^tilde = (Q(Q + xD))^tilde for a P-primary Q and x outside P
bool primary_lemma_check(const ideal& Q, const ideal& P, const element& x, const star& s);

void require_star_dd(const domain& d, const star& s);

}  // namespace semistar
