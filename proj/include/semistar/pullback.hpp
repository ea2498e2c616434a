#pragma once

#include <semistar/quad.hpp>

#include <vector>

namespace semistar {

// Pullback domains:
//   field: D = k + X K[[X]]  with k = Q properly inside K = Q(sqrt d)
//   order: D = R + X K[[X]]  with R a quadratic order, K its quotient field
//   cusp:  D = K[[X^2, X^3]] = K + X^2 K[[X]]  with K = Q
// T = K[[X]] is a DVR overring; elements live in K((X)) and are represented
// as exact finite Laurent polynomials over K.
//
// Every representable nonzero D-submodule E of K((X)) with E*T = X^n T sits in
// the sandwich X^{n+1} T ⊆ E ⊆ X^n T (X^{n+2} T for the cusp), which pins the
// finite representations below.

enum class pb_shape { field, order, cusp };

struct pull_domain {
    pb_shape shape;
    Int d;        // sqrt parameter of K (field/order); unused for cusp
    quad_order R; // order shape only

    friend bool operator==(const pull_domain&, const pull_domain&) = default;
};

pull_domain make_pullback_field(const Int& d);
pull_domain make_pullback_order(const quad_order& R);
pull_domain make_cusp();

// Finite Laurent polynomial sum co[i] * X^(lead+i); canonical: zero has empty
// co, otherwise co.front() != 0 and co.back() != 0.
struct pull_elem {
    long lead = 0;
    std::vector<qelem> co;

    bool is_zero() const { return co.empty(); }
    qelem coeff(long e) const {
        long i = e - lead;
        if (i < 0 || i >= (long)co.size()) return {Rat(0), Rat(0)};
        return co[i];
    }
    friend bool operator==(const pull_elem&, const pull_elem&) = default;
};

pull_elem pe_make(long lead, std::vector<qelem> co);
pull_elem pe_const(const qelem& a);
pull_elem pe_xpow(long n);  // X^n
pull_elem pe_add(const pull_elem& a, const pull_elem& b);
pull_elem pe_sub(const pull_elem& a, const pull_elem& b);
pull_elem pe_mul(const pull_domain& D, const pull_elem& a, const pull_elem& b);
bool pe_in_domain(const pull_domain& D, const pull_elem& a);
std::string pe_str(const pull_elem& a);

// --- modules -------------------------------------------------------------------

// t_mark: X^n T.
// level(field): X^n (k*line + X T), line a normalized element of K*.
// level(order): X^n (V + X T), V a (possibly masked) nonzero R-submodule of K.
// level(cusp):  X^n (1 + c X) K + X^{n+2} T.
enum class pkind { full_k, t_mark, level };

struct pull_module {
    pkind k = pkind::t_mark;
    long n = 0;
    qelem line;        // field shape
    quad_module vmod;  // order shape
    qelem cuspc;       // cusp shape

    friend bool operator==(const pull_module&, const pull_module&) = default;
};

pull_module pm_full_k();
pull_module pm_tmark(long n);
pull_module pm_ring(const pull_domain& D);       // D itself
pull_module pm_maximal(const pull_domain& D);    // M = XT (cusp: X^2 T)
pull_module pm_level_field(const pull_domain& D, long n, const qelem& c);
pull_module pm_level_order(const pull_domain& D, long n, const quad_module& V);
pull_module pm_level_cusp(long n, const qelem& c);
pull_module pm_principal(const pull_domain& D, const pull_elem& x);
pull_module pm_from_gens(const pull_domain& D, const std::vector<pull_elem>& gens);
// the prime q + M of R + M lifted from a maximal ideal q of R
pull_module pm_lift_prime(const pull_domain& D, const quad_prime& q);

bool pm_fg(const pull_domain& D, const pull_module& A);
std::vector<pull_elem> pm_gens(const pull_domain& D, const pull_module& A);

pull_module pm_mul(const pull_domain& D, const pull_module& A, const pull_module& B);
pull_module pm_add(const pull_domain& D, const pull_module& A, const pull_module& B);
pull_module pm_intersect(const pull_domain& D, const pull_module& A, const pull_module& B);
pull_module pm_colon(const pull_domain& D, const pull_module& A, const pull_module& B);
pull_module pm_scale(const pull_domain& D, const pull_module& A, const pull_elem& x);
bool pm_subset(const pull_domain& D, const pull_module& A, const pull_module& B);
bool pm_contains(const pull_domain& D, const pull_module& A, const pull_elem& x);

// localizations: at the contraction of Max(T) (field: D_M = D, order: D_M = T,
// cusp: D_N = D) and at lifted primes q + M (order shape)
pull_module pm_localize_at_m(const pull_domain& D, const pull_module& A);
pull_module pm_localize_at_lift(const pull_domain& D, const pull_module& A,
                                const quad_prime& q);
// E * T, the star_{T} closure
pull_module pm_mul_T(const pull_domain& D, const pull_module& A);
// order of E: the n with E*T = X^n T
std::optional<long> pm_level(const pull_module& A);

}  // namespace semistar
