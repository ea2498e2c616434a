#pragma once

#include <semistar/common.hpp>

#include <map>
#include <vector>

namespace semistar {

// Quadratic orders D = Z + f*O_K in K = Q(sqrt(d)), d squarefree != 0,1.
// D = Z[tau] with tau = f*omega, tau^2 = tr*tau - nm. Fractional ideals are
// full-rank D-stable lattices in Hermite normal form over the basis (1, tau).
// Spectral closures produce modules that are unconstrained (localization = K)
// at finitely many primes, or constrained at only finitely many primes; see
// quad_module below. All arithmetic is arbitrary-precision.

// Element x + y*w of K, w = sqrt(d).
struct qelem {
    Rat x, y;

    bool is_zero() const { return x == 0 && y == 0; }
    friend bool operator==(const qelem&, const qelem&) = default;
};

qelem qadd(const qelem& a, const qelem& b);
qelem qsub(const qelem& a, const qelem& b);
qelem qmul(const qelem& a, const qelem& b, const Int& d);
qelem qconj(const qelem& a);
Rat qnorm(const qelem& a, const Int& d);  // x^2 - d y^2
qelem qinv(const qelem& a, const Int& d);
std::string qelem_str(const qelem& a);

struct quad_order;

// L = (1/den) * (Z*a + Z*(b + c*tau)), canonical: den,a,c > 0, 0 <= b < a,
// gcd(den, a, b, c) = 1, and L is D-stable.
struct qlattice {
    Int den = 1, a = 1, b = 0, c = 1;

    friend bool operator==(const qlattice&, const qlattice&) = default;
    Rat index() const;  // [D : L] as a positive rational: a*c/den^2
};

enum class prime_kind { split, inert, ramified, singular };

// A maximal ideal of the order, keyed by (p, which); `which` distinguishes
// the two primes over a split rational prime.
struct quad_prime {
    Int p;
    int which = 0;
    prime_kind kind = prime_kind::inert;
    bool dvr = true;  // localization D_P is a DVR (false iff P | conductor)
    qlattice lat;

    friend bool operator==(const quad_prime& l, const quad_prime& r) {
        return l.p == r.p && l.which == r.which;
    }
    friend bool operator<(const quad_prime& l, const quad_prime& r) {
        return l.p < r.p || (l.p == r.p && l.which < r.which);
    }
};

struct quad_order {
    Int d;   // squarefree, != 0,1
    Int f;   // conductor index >= 1
    Int tr;  // trace of tau
    Int nm;  // norm of tau

    bool d1mod4() const;
    // coordinate changes between the (1, w) and (1, tau) bases
    void welem_to_tau(const qelem& e, Rat& u, Rat& v) const;
    qelem tau_to_welem(const Rat& u, const Rat& v) const;

    friend bool operator==(const quad_order&, const quad_order&) = default;
};

quad_order make_order(const Int& d, const Int& f);

// --- lattice construction and arithmetic ------------------------------------

// Lattice generated as a D-module by the given K-elements (tau-multiples are
// adjoined automatically). Throws on the zero module.
qlattice lattice_from_gens(const quad_order& o, const std::vector<qelem>& gens);
qlattice lattice_ring(const quad_order& o);                      // D itself
qlattice lattice_principal(const quad_order& o, const qelem& x); // xD
qlattice lattice_maximal_order(const quad_order& o);             // O_K as a D-module
qlattice lattice_suborder(const quad_order& o, const Int& f2);   // Z + f2*O_K, f | f2? no: f2 multiple? see .cpp

qlattice lat_mul(const quad_order& o, const qlattice& A, const qlattice& B);
qlattice lat_add(const quad_order& o, const qlattice& A, const qlattice& B);
qlattice lat_intersect(const quad_order& o, const qlattice& A, const qlattice& B);
qlattice lat_colon(const quad_order& o, const qlattice& A, const qlattice& B);
qlattice lat_scale(const quad_order& o, const qlattice& A, const qelem& x);
bool lat_subset(const quad_order& o, const qlattice& A, const qlattice& B);
bool lat_contains(const quad_order& o, const qlattice& A, const qelem& x);
std::vector<qelem> lat_gens(const quad_order& o, const qlattice& A);

// --- primes ------------------------------------------------------------------

std::vector<quad_prime> primes_over(const quad_order& o, const Int& p);
std::vector<quad_prime> special_primes(const quad_order& o);  // primes over p | f
// Rational primes dividing n (n != 0).
std::vector<Int> factor_rational(const Int& n);
// All maximal ideals P with L_P != D_P (a superset is fine; this is exact
// up to testing).
std::vector<quad_prime> active_primes(const quad_order& o, const qlattice& L);
// First k maximal ideals (ordered by p) avoiding the given set.
std::vector<quad_prime> fresh_primes(const quad_order& o, int k,
                                     const std::vector<quad_prime>& avoid);

// --- local surgery -----------------------------------------------------------

// Lattice with the same localizations as L away from S and trivial (= D_P)
// localizations at every P in S.
qlattice trivialize(const quad_order& o, const qlattice& L,
                    const std::vector<quad_prime>& S);
// Lattice with L's localization at P and trivial localizations elsewhere.
qlattice component_at(const quad_order& o, const qlattice& L, const quad_prime& P);
// Valuation of L at a prime with DVR localization.
long val_at(const quad_order& o, const qlattice& L, const quad_prime& P);
// Integral-ideal saturation: canonical lattice part of the closure
// "intersection of L*D_M over M outside S" (trivial parts on S).
qlattice saturate_away(const quad_order& o, const qlattice& L,
                       const std::vector<quad_prime>& S);

// --- modules with finitely many masked localizations -------------------------

// all_but: constrained at every maximal ideal outside `set` (lattice parts),
//          unconstrained (localization K) on `set`; set empty = plain lattice.
// only:    constrained exactly on `set`, unconstrained elsewhere;
//          set empty = the whole quotient field K.
enum class qmode { all_but, only };

struct quad_module {
    qlattice lat;
    qmode mode = qmode::all_but;
    std::vector<quad_prime> set;  // sorted, canonical

    bool fg() const { return mode == qmode::all_but && set.empty(); }
    bool is_full_k() const { return mode == qmode::only && set.empty(); }

    friend bool operator==(const quad_module& l, const quad_module& r) {
        return l.mode == r.mode && l.set == r.set && l.lat == r.lat;
    }
};

quad_module qm_lattice(const qlattice& L);
quad_module qm_full_k();
// Canonical module from raw parts (trivializes the lattice as required).
quad_module qm_make(const quad_order& o, const qlattice& L, qmode mode,
                    std::vector<quad_prime> set);

quad_module qm_mul(const quad_order& o, const quad_module& A, const quad_module& B);
quad_module qm_add(const quad_order& o, const quad_module& A, const quad_module& B);
quad_module qm_intersect(const quad_order& o, const quad_module& A, const quad_module& B);
quad_module qm_colon(const quad_order& o, const quad_module& A, const quad_module& B);
quad_module qm_scale(const quad_order& o, const quad_module& A, const qelem& x);
bool qm_subset(const quad_order& o, const quad_module& A, const quad_module& B);
bool qm_contains(const quad_order& o, const quad_module& A, const qelem& x);
// localization A * D_P as a module (only-mode with one prime, or K)
quad_module qm_localize(const quad_order& o, const quad_module& A, const quad_prime& P);
// nullopt when unconstrained at P; requires P.dvr otherwise
std::optional<long> qm_val_at(const quad_order& o, const quad_module& A,
                              const quad_prime& P);
// Finitely generated submodules L_k with union = A (cofinal fg family);
// k = 0, 1, 2, ... The family is constant once A itself is fg.
quad_module qm_cofinal_fg(const quad_order& o, const quad_module& A, int k);

// number theory helpers
bool is_prime(const Int& n);
Int next_prime(const Int& n);
std::vector<Int> sqrt_mod_p(const Int& a, const Int& p);  // roots of t^2 = a

}  // namespace semistar
