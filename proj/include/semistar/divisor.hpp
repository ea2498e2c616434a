#pragma once

#include <semistar/common.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace semistar {

// Model of a semilocal Krull-type domain D = V_1 ∩ ... ∩ V_n cut out by n
// independent rank-one discrete valuations on a common quotient field.
// Nonzero D-submodules of K are determined by their localizations, so a
// module is a tuple of per-valuation constraints: an integer v_i, or
// "unconstrained" when the localization at i is all of K (that happens after
// spectral closures; such modules are not fractional ideals).
//
// n = 0 is a field (only reachable internally, e.g. restricting to the empty
// sub-family); make_divisor_domain rejects it.

struct divisor_domain {
    int n = 0;

    friend bool operator==(const divisor_domain&, const divisor_domain&) = default;
};

inline divisor_domain make_divisor_domain(int n) {
    if (n < 1 || n > 16) throw bad_arity("divisor domain needs 1 <= n <= 16");
    return divisor_domain{n};
}

struct div_elem {
    std::vector<long> v;  // valuation tuple, all finite
};

class div_module {
  public:
    // nullopt = unconstrained at that coordinate
    std::vector<std::optional<long>> c;

    static div_module ring(int n) {
        div_module m;
        m.c.assign(n, 0l);
        return m;
    }
    static div_module field_k(int n) {
        div_module m;
        m.c.assign(n, std::nullopt);
        return m;
    }
    static div_module principal(const div_elem& x) {
        div_module m;
        m.c.reserve(x.v.size());
        for (long w : x.v) m.c.push_back(w);
        return m;
    }
    static div_module prime(int n, int i) {
        div_module m = ring(n);
        m.c[i] = 1;
        return m;
    }

    int n() const { return (int)c.size(); }
    bool fg() const {
        for (auto& x : c)
            if (!x) return false;
        return true;
    }
    bool is_full_k() const {
        for (auto& x : c)
            if (x) return false;
        return true;
    }

    friend bool operator==(const div_module&, const div_module&) = default;
};

inline div_module div_mul(const div_module& a, const div_module& b) {
    div_module r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++)
        r.c[i] = (a.c[i] && b.c[i]) ? std::optional<long>(*a.c[i] + *b.c[i])
                                    : std::nullopt;
    return r;
}

inline div_module div_add(const div_module& a, const div_module& b) {
    div_module r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++)
        r.c[i] = (a.c[i] && b.c[i])
                     ? std::optional<long>(std::min(*a.c[i], *b.c[i]))
                     : std::nullopt;
    return r;
}

inline div_module div_intersect(const div_module& a, const div_module& b) {
    div_module r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++) {
        if (a.c[i] && b.c[i])
            r.c[i] = std::max(*a.c[i], *b.c[i]);
        else if (a.c[i])
            r.c[i] = a.c[i];
        else
            r.c[i] = b.c[i];
    }
    return r;
}

// (a : b) = { z : z b ⊆ a }. Unconstrained in b against a finite constraint
// in a forces z = 0 there; the colon is then the zero module.
inline div_module div_colon(const div_module& a, const div_module& b) {
    div_module r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); i++) {
        if (!a.c[i])
            r.c[i] = std::nullopt;
        else if (!b.c[i])
            throw colon_zero("divisor colon vanishes at an unconstrained coordinate");
        else
            r.c[i] = *a.c[i] - *b.c[i];
    }
    return r;
}

inline bool div_subset(const div_module& a, const div_module& b) {
    for (size_t i = 0; i < a.c.size(); i++) {
        if (!b.c[i]) continue;       // no constraint from b
        if (!a.c[i]) return false;   // a unbounded where b is bounded
        if (*a.c[i] < *b.c[i]) return false;
    }
    return true;
}

inline bool div_contains(const div_module& m, const div_elem& x) {
    for (size_t i = 0; i < m.c.size(); i++)
        if (m.c[i] && x.v[i] < *m.c[i]) return false;
    return true;
}

inline div_module div_scale(const div_module& m, const div_elem& x) {
    div_module r;
    r.c.resize(m.c.size());
    for (size_t i = 0; i < m.c.size(); i++)
        r.c[i] = m.c[i] ? std::optional<long>(*m.c[i] + x.v[i]) : std::nullopt;
    return r;
}

// Localization at valuation i: keeps the constraint at i, drops the rest.
inline div_module div_localize(const div_module& m, int i) {
    div_module r = div_module::field_k(m.n());
    r.c[i] = m.c[i];
    return r;
}

inline long div_localization_valuation(int i, const div_module& m) {
    if (!m.c[i]) throw error("valuation requested at an unconstrained coordinate");
    return *m.c[i];
}

// The approximation theorem holds by construction: an element with any
// prescribed valuation tuple exists.
inline div_elem element_with_valuations(const divisor_domain& d,
                                        std::vector<long> vals) {
    if ((int)vals.size() != d.n) throw bad_arity("valuation tuple length mismatch");
    return div_elem{std::move(vals)};
}

}  // namespace semistar
