#pragma once

#include <semistar/domain.hpp>

namespace semistar {

struct star_op;
using star = std::shared_ptr<const star_op>;

// A representable overring of a domain: the domain itself, the quotient
// field, a sub-family intersection (divisor model), an order between D and
// O_K (quadratic), or T = K[[X]] (pullbacks).
struct overring_ref {
    enum class kind { self, field_k, div_sub, quad_sub, pull_t };
    kind k = kind::self;
    std::vector<int> sub;  // div_sub: kept valuation indices, 0-based, sorted
    Int f2 = 1;            // quad_sub: suborder index, must divide f (1 = O_K)

    friend bool operator==(const overring_ref&, const overring_ref&) = default;
};

// A set of primes in exceptional-set form: the listed members, plus (when
// generic) every prime of the backend's generic pool except `excluded`.
// Pools: quad -> Max(D); pullback over an order -> the lifted maximals q + M.
struct prime_family {
    bool generic = false;
    std::vector<prime_id> members;
    std::vector<prime_id> excluded;
    bool theta_empty = false;  // set when a Theta construction came out empty

    bool empty() const { return !generic && members.empty(); }
    friend bool operator==(const prime_family&, const prime_family&) = default;
};

struct star_op {
    enum class op {
        ident,        // d
        trivial,      // e
        v,            // double inverse
        over_t,       // E -> E*T
        spectral,     // E -> intersection of E D_P over the family
        finite_type,  // star_f
        stable,       // tilde(star): spectral over M(star_f)
        eab,          // star_a via star-valuation overrings
        theta,        // spectral over the t-invertible t-maximals
        restrict_to,  // op on T induced by an op on D (E^star for E in F(T))
        pull_from     // op on D induced by an op on T (E -> (ET)^ast)
    };
    op k = op::ident;
    star inner;        // finite_type / stable / eab / restrict_to / pull_from
    overring_ref t;    // over_t / restrict_to / pull_from
    prime_family delta;  // spectral
    domain parent;     // restrict_to: the domain `inner` lives on

    friend bool operator==(const star_op& a, const star_op& b) {
        auto eq = [](const star& x, const star& y) {
            if (!x && !y) return true;
            if (!x || !y) return false;
            return *x == *y;
        };
        if (a.k != b.k || !(a.t == b.t) || !(a.delta == b.delta)) return false;
        if (!eq(a.inner, b.inner)) return false;
        if (!!a.parent != !!b.parent) return false;
        if (a.parent && !(*a.parent == *b.parent)) return false;
        return true;
    }
};

star mk_d();
star mk_e();
star mk_v();
star mk_t();  // ft(v)
star mk_w();  // tilde(v)
star mk_over_t(const overring_ref& t);
star mk_spectral(const prime_family& delta);
star mk_ft(const star& s);
star mk_tilde(const star& s);
star mk_eab(const star& s);
star mk_theta();
star mk_restrict(const star& inner_on_d, const domain& d, const overring_ref& t);
star mk_pull(const star& inner_on_t, const overring_ref& t);

std::string star_str(const domain& d, const star& s);

}  // namespace semistar
