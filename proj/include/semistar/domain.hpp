#pragma once

#include <semistar/divisor.hpp>
#include <semistar/pullback.hpp>
#include <semistar/quad.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace semistar {

// The unified domain handle. pull_t is the DVR overring T = K[[X]] of a
// pullback domain, needed as a first-class domain for restricted operations.
enum class backend { divisor, quad, pullback, pull_t };

struct domain_data {
    backend kind;
    divisor_domain div;  // divisor (n = 0 encodes the field K, internal only)
    quad_order ord;      // quad
    pull_domain pb;      // pullback / pull_t (parent)

    friend bool operator==(const domain_data&, const domain_data&) = default;
};

using domain = std::shared_ptr<const domain_data>;

domain dom_divisor(int n);
domain dom_divisor_unchecked(int n);  // allows n = 0 (a field; internal)
domain dom_quad(const Int& d, const Int& f);
domain dom_pullback_field(const Int& d);
domain dom_pullback_order(const Int& d, const Int& f);
domain dom_cusp();
domain dom_pull_t(const domain& parent);

bool dom_equal(const domain& a, const domain& b);
bool dom_is_field(const domain& d);
// Structural Noetherianity of the ambient ring. False exactly for pullbacks
// over an order base (the V-parts admit strictly ascending R-module chains).
bool dom_is_noetherian(const domain& d);
std::string dom_str(const domain& d);

// --- elements ------------------------------------------------------------------

struct element {
    domain dom;
    std::variant<div_elem, qelem, pull_elem> v;
};

element elem_divisor(const domain& d, std::vector<long> vals);
element elem_quad(const domain& d, const qelem& x);
element elem_pull(const domain& d, const pull_elem& x);
element elem_one(const domain& d);
bool elem_is_zero(const element& x);
element elem_mul(const element& a, const element& b);
element elem_add(const element& a, const element& b);
bool elem_in_ring(const element& x);  // membership in D
std::string elem_str(const element& x);

// --- primes ---------------------------------------------------------------------

// A maximal (or quasi-maximal) prime reference.
struct prime_id {
    enum class pk { div_idx, quad_p, pb_m, pb_lift, pt_m };
    pk k = pk::div_idx;
    int idx = 0;    // divisor index
    quad_prime q;   // quad_p / pb_lift

    friend bool operator==(const prime_id& a, const prime_id& b) {
        if (a.k != b.k) return false;
        switch (a.k) {
            case pk::div_idx: return a.idx == b.idx;
            case pk::quad_p:
            case pk::pb_lift: return a.q == b.q;
            default: return true;
        }
    }
    friend bool operator<(const prime_id& a, const prime_id& b) {
        if (a.k != b.k) return (int)a.k < (int)b.k;
        switch (a.k) {
            case pk::div_idx: return a.idx < b.idx;
            case pk::quad_p:
            case pk::pb_lift: return a.q < b.q;
            default: return false;
        }
    }
};

std::string prime_str(const domain& d, const prime_id& p);
bool prime_loc_is_dvr(const domain& d, const prime_id& p);
bool prime_loc_is_valuation(const domain& d, const prime_id& p);
int prime_height(const domain& d, const prime_id& p);

// --- fractional ideals / nonzero submodules of K ---------------------------------

struct ideal {
    domain dom;
    std::variant<div_module, quad_module, pull_module> m;

    friend bool operator==(const ideal& a, const ideal& b) {
        return *a.dom == *b.dom && a.m == b.m;
    }
};

ideal ideal_ring(const domain& d);    // D
ideal ideal_full_k(const domain& d);  // K, the top module
ideal ideal_principal(const element& x);
ideal ideal_from_gens(const domain& d, const std::vector<element>& gens);
ideal ideal_of_prime(const domain& d, const prime_id& p);

ideal ideal_mul(const ideal& a, const ideal& b);
ideal ideal_add(const ideal& a, const ideal& b);
ideal ideal_intersect(const ideal& a, const ideal& b);
ideal ideal_colon(const ideal& a, const ideal& b);
ideal ideal_scale(const ideal& a, const element& x);
ideal ideal_pow(const ideal& a, long e);  // e >= 1, or e <= -1 with invertible colon route
bool ideal_subset(const ideal& a, const ideal& b);
bool ideal_contains(const ideal& a, const element& x);
bool ideal_is_fg(const ideal& a);
bool ideal_is_integral(const ideal& a);
bool ideal_is_full_k(const ideal& a);
std::vector<element> ideal_gens(const ideal& a);  // requires fg
ideal ideal_localize(const ideal& a, const prime_id& p);
std::optional<long> ideal_val_at(const ideal& a, const prime_id& p);
std::string ideal_str(const ideal& a);

// Cofinal ascending family of finitely generated subideals (index k >= 0);
// constant once the ideal is itself finitely generated.
ideal ideal_cofinal_fg(const ideal& a, int k);

void require_same_domain(const ideal& a, const ideal& b);

}  // namespace semistar
