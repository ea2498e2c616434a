#pragma once

#include <semistar/nagata.hpp>
#include <semistar/star.hpp>

namespace semistar {

// Grammars (see README):
//   domain:  divisor(n=3) | quadratic(d=-3,f=2) | pullback(field k=Q,K=Q(i))
//            | pullback(field k=Q,K=Q(sqrt -3)) | pullback(order d=-3,f=2)
//            | cusp(K=Q)
//   op:      d | e | v | t | w | theta | star[T] | spectral[P2,P3]
//            | spectral[max\P2] | ft(OP) | tilde(OP) | a(OP)
//            | restrict(OP,T) | pull(OP,T)
//   T:       D | K | T | OK | order[f] | sub[1,2]
//   ideal:   ideal[g1,g2,...]  with element expressions over w, X, rationals
//   poly:    poly[c0,c1,...]   coefficients of 1, Z, Z^2, ...
// Parse errors carry the offending position.

domain parse_domain(const std::string& text);
overring_ref parse_overring(const domain& d, const std::string& text);
star parse_op(const domain& d, const std::string& text);
prime_id parse_prime(const domain& d, const std::string& text);
element parse_element(const domain& d, const std::string& text);
ideal parse_ideal(const domain& d, const std::string& text);
kpoly parse_poly(const domain& d, const std::string& text);

// the domain an operation actually lives on (restrict moves to the overring)
domain op_domain(const domain& d, const star& s);

}  // namespace semistar
