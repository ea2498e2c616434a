#include <semistar/pullback.hpp>

#include <algorithm>
#include <sstream>

namespace semistar {

pull_domain make_pullback_field(const Int& d) {
    pull_domain D;
    D.shape = pb_shape::field;
    D.d = d;
    try {
        D.R = make_order(d, 1);  // validates d squarefree != 0,1
    } catch (const bad_discriminant& e) {
        throw bad_shape(e.what());
    }
    return D;
}

pull_domain make_pullback_order(const quad_order& R) {
    pull_domain D;
    D.shape = pb_shape::order;
    D.d = R.d;
    D.R = R;
    return D;
}

pull_domain make_cusp() {
    pull_domain D;
    D.shape = pb_shape::cusp;
    D.d = 0;
    D.R = quad_order{};
    return D;
}

// --- elements -------------------------------------------------------------------

pull_elem pe_make(long lead, std::vector<qelem> co) {
    size_t lo = 0;
    while (lo < co.size() && co[lo].is_zero()) lo++;
    size_t hi = co.size();
    while (hi > lo && co[hi - 1].is_zero()) hi--;
    pull_elem e;
    if (lo == hi) return e;
    e.lead = lead + (long)lo;
    e.co.assign(co.begin() + lo, co.begin() + hi);
    return e;
}

pull_elem pe_const(const qelem& a) { return pe_make(0, {a}); }
pull_elem pe_xpow(long n) { return pe_make(n, {qelem{Rat(1), Rat(0)}}); }

pull_elem pe_add(const pull_elem& a, const pull_elem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long lo = std::min(a.lead, b.lead);
    long hi = std::max(a.lead + (long)a.co.size(), b.lead + (long)b.co.size());
    std::vector<qelem> co((size_t)(hi - lo), qelem{Rat(0), Rat(0)});
    for (size_t i = 0; i < a.co.size(); i++)
        co[a.lead - lo + i] = qadd(co[a.lead - lo + i], a.co[i]);
    for (size_t i = 0; i < b.co.size(); i++)
        co[b.lead - lo + i] = qadd(co[b.lead - lo + i], b.co[i]);
    return pe_make(lo, std::move(co));
}

pull_elem pe_sub(const pull_elem& a, const pull_elem& b) {
    pull_elem nb = b;
    for (auto& c : nb.co) c = qelem{-c.x, -c.y};
    return pe_add(a, nb);
}

pull_elem pe_mul(const pull_domain& D, const pull_elem& a, const pull_elem& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<qelem> co(a.co.size() + b.co.size() - 1, qelem{Rat(0), Rat(0)});
    for (size_t i = 0; i < a.co.size(); i++)
        for (size_t j = 0; j < b.co.size(); j++)
            co[i + j] = qadd(co[i + j], qmul(a.co[i], b.co[j], D.d));
    return pe_make(a.lead + b.lead, std::move(co));
}

bool pe_in_domain(const pull_domain& D, const pull_elem& a) {
    if (a.is_zero()) return true;
    if (a.lead < 0) return false;
    switch (D.shape) {
        case pb_shape::field:
            return a.coeff(0).y == 0;  // constant term in k = Q
        case pb_shape::order: {
            qelem c0 = a.coeff(0);
            return c0.is_zero() || lat_contains(D.R, lattice_ring(D.R), c0);
        }
        case pb_shape::cusp: {
            if (!a.coeff(1).is_zero()) return false;
            for (auto& c : a.co)
                if (c.y != 0) return false;  // cusp coefficients live in K = Q
            return true;
        }
    }
    return false;
}

std::string pe_str(const pull_elem& a) {
    if (a.is_zero()) return "0";
    std::ostringstream s;
    bool first = true;
    for (size_t i = 0; i < a.co.size(); i++) {
        if (a.co[i].is_zero()) continue;
        long e = a.lead + (long)i;
        std::string c = qelem_str(a.co[i]);
        if (!first) s << " + ";
        first = false;
        if (e == 0)
            s << "(" << c << ")";
        else if (e == 1)
            s << "(" << c << ")*X";
        else
            s << "(" << c << ")*X^" << e;
    }
    return s.str();
}

// --- module constructors ----------------------------------------------------------

pull_module pm_full_k() {
    pull_module m;
    m.k = pkind::full_k;
    return m;
}

pull_module pm_tmark(long n) {
    pull_module m;
    m.k = pkind::t_mark;
    m.n = n;
    return m;
}

// normalize a field-shape line k*c
static qelem line_norm(const qelem& c) {
    if (c.is_zero()) throw error("zero line");
    if (c.x != 0) {
        Rat t = c.y / c.x;
        t.canonicalize();
        return {Rat(1), t};
    }
    return {Rat(0), Rat(1)};
}

pull_module pm_level_field(const pull_domain&, long n, const qelem& c) {
    pull_module m;
    m.k = pkind::level;
    m.n = n;
    m.line = line_norm(c);
    return m;
}

pull_module pm_level_order(const pull_domain&, long n, const quad_module& V) {
    if (V.is_full_k()) return pm_tmark(n);
    pull_module m;
    m.k = pkind::level;
    m.n = n;
    m.vmod = V;
    return m;
}

pull_module pm_level_cusp(long n, const qelem& c) {
    if (c.y != 0) throw error("cusp line parameter must be rational");
    pull_module m;
    m.k = pkind::level;
    m.n = n;
    m.cuspc = c;
    return m;
}

pull_module pm_ring(const pull_domain& D) {
    switch (D.shape) {
        case pb_shape::field: return pm_level_field(D, 0, qelem{Rat(1), Rat(0)});
        case pb_shape::order: return pm_level_order(D, 0, qm_lattice(lattice_ring(D.R)));
        case pb_shape::cusp: return pm_level_cusp(0, qelem{Rat(0), Rat(0)});
    }
    throw error("bad shape");
}

pull_module pm_maximal(const pull_domain& D) {
    return pm_tmark(D.shape == pb_shape::cusp ? 2 : 1);
}

pull_module pm_lift_prime(const pull_domain& D, const quad_prime& q) {
    if (D.shape != pb_shape::order) throw error("lifted primes exist only over an order base");
    return pm_level_order(D, 0, qm_lattice(q.lat));
}

pull_module pm_principal(const pull_domain& D, const pull_elem& x) {
    if (x.is_zero()) throw error("zero ideal is not representable");
    return pm_scale(D, pm_ring(D), x);
}

pull_module pm_from_gens(const pull_domain& D, const std::vector<pull_elem>& gens) {
    pull_module acc;
    bool have = false;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        pull_module p = pm_principal(D, g);
        acc = have ? pm_add(D, acc, p) : p;
        have = true;
    }
    if (!have) throw error("zero module is not representable");
    return acc;
}

std::optional<long> pm_level(const pull_module& A) {
    if (A.k == pkind::full_k) return std::nullopt;
    return A.n;
}

bool pm_fg(const pull_domain& D, const pull_module& A) {
    switch (A.k) {
        case pkind::full_k: return false;
        case pkind::t_mark:
            // T is generated by {1, w} over k+M and by {1, X} over the cusp,
            // but is not finitely generated over R + M.
            return D.shape != pb_shape::order;
        case pkind::level:
            if (D.shape == pb_shape::order) return A.vmod.fg();
            return true;
    }
    return false;
}

std::vector<pull_elem> pm_gens(const pull_domain& D, const pull_module& A) {
    if (!pm_fg(D, A)) throw error("module is not finitely generated");
    std::vector<pull_elem> g;
    switch (D.shape) {
        case pb_shape::field:
            if (A.k == pkind::t_mark) {
                g.push_back(pe_make(A.n, {qelem{Rat(1), Rat(0)}}));
                g.push_back(pe_make(A.n, {qelem{Rat(0), Rat(1)}}));
            } else {
                g.push_back(pe_make(A.n, {A.line}));
            }
            break;
        case pb_shape::order:
            for (auto& v : lat_gens(D.R, A.vmod.lat)) g.push_back(pe_make(A.n, {v}));
            break;
        case pb_shape::cusp:
            if (A.k == pkind::t_mark) {
                g.push_back(pe_xpow(A.n));
                g.push_back(pe_xpow(A.n + 1));
            } else {
                g.push_back(pe_make(A.n, {qelem{Rat(1), Rat(0)}, A.cuspc}));
            }
            break;
    }
    return g;
}

// --- V-part algebra (field shape) ---------------------------------------------

// field lines: product, sum (nullopt = spans K), intersect (nullopt = 0), colon
static qelem vline_mul(const pull_domain& D, const qelem& a, const qelem& b) {
    return line_norm(qmul(a, b, D.d));
}
static std::optional<qelem> vline_add(const qelem& a, const qelem& b) {
    if (a == b) return a;
    return std::nullopt;
}
static std::optional<qelem> vline_intersect(const qelem& a, const qelem& b) {
    if (a == b) return a;
    return std::nullopt;
}
static qelem vline_colon(const pull_domain& D, const qelem& a, const qelem& b) {
    return line_norm(qmul(a, qinv(b, D.d), D.d));
}

// --- module arithmetic ------------------------------------------------------------

pull_module pm_mul(const pull_domain& D, const pull_module& A, const pull_module& B) {
    if (A.k == pkind::full_k || B.k == pkind::full_k) return pm_full_k();
    if (A.k == pkind::t_mark || B.k == pkind::t_mark) return pm_tmark(A.n + B.n);
    switch (D.shape) {
        case pb_shape::field:
            return pm_level_field(D, A.n + B.n, vline_mul(D, A.line, B.line));
        case pb_shape::order:
            return pm_level_order(D, A.n + B.n, qm_mul(D.R, A.vmod, B.vmod));
        case pb_shape::cusp:
            return pm_level_cusp(A.n + B.n, qadd(A.cuspc, B.cuspc));
    }
    throw error("bad shape");
}

pull_module pm_add(const pull_domain& D, const pull_module& A, const pull_module& B) {
    if (A.k == pkind::full_k || B.k == pkind::full_k) return pm_full_k();
    long gap = (D.shape == pb_shape::cusp) ? 2 : 1;
    auto level_of = [&](const pull_module& M) { return M.n; };
    const pull_module& L = (level_of(A) <= level_of(B)) ? A : B;
    const pull_module& H = (level_of(A) <= level_of(B)) ? B : A;
    if (L.k == pkind::t_mark) {
        if (H.n >= L.n) return L;  // absorbed
        // unreachable: H has the higher level
        return L;
    }
    // L is a level module
    if (H.n >= L.n + gap) return L;  // deep part absorbed
    if (H.k == pkind::t_mark) {
        // H.n in (L.n, L.n + gap): merges the line with the tail
        if (D.shape == pb_shape::cusp && H.n == L.n + 1) return pm_tmark(L.n);
        return pm_tmark(std::min(L.n, H.n));
    }
    if (H.n != L.n) {
        // cusp only (gap 2): lines at adjacent levels span everything
        return pm_tmark(L.n);
    }
    switch (D.shape) {
        case pb_shape::field: {
            auto s = vline_add(L.line, H.line);
            return s ? pm_level_field(D, L.n, *s) : pm_tmark(L.n);
        }
        case pb_shape::order:
            return pm_level_order(D, L.n, qm_add(D.R, L.vmod, H.vmod));
        case pb_shape::cusp:
            if (L.cuspc == H.cuspc) return L;
            return pm_tmark(L.n);
    }
    throw error("bad shape");
}

pull_module pm_intersect(const pull_domain& D, const pull_module& A, const pull_module& B) {
    if (A.k == pkind::full_k) return B;
    if (B.k == pkind::full_k) return A;
    long gap = (D.shape == pb_shape::cusp) ? 2 : 1;
    const pull_module& L = (A.n <= B.n) ? A : B;
    const pull_module& H = (A.n <= B.n) ? B : A;
    if (L.k == pkind::t_mark) return H;  // X^l T contains everything at level >= l
    if (H.n >= L.n + gap) return H;      // H sits inside the deep tail of L
    if (H.n > L.n) {
        // strict intermediate level (cusp only): L has no elements there
        if (H.k == pkind::t_mark) return pm_tmark(L.n + gap);
        return pm_tmark(H.n + gap);
    }
    // equal levels
    if (H.k == pkind::t_mark) return L;
    switch (D.shape) {
        case pb_shape::field: {
            auto s = vline_intersect(L.line, H.line);
            return s ? pm_level_field(D, L.n, *s) : pm_tmark(L.n + 1);
        }
        case pb_shape::order:
            return pm_level_order(D, L.n, qm_intersect(D.R, L.vmod, H.vmod));
        case pb_shape::cusp:
            if (L.cuspc == H.cuspc) return L;
            return pm_tmark(L.n + 2);
    }
    throw error("bad shape");
}

pull_module pm_colon(const pull_domain& D, const pull_module& A, const pull_module& B) {
    if (B.k == pkind::full_k) {
        if (A.k == pkind::full_k) return pm_full_k();
        throw colon_zero("colon by the whole quotient field vanishes");
    }
    if (A.k == pkind::full_k) return pm_full_k();
    long gap = (D.shape == pb_shape::cusp) ? 2 : 1;
    if (A.k == pkind::t_mark) {
        if (B.k == pkind::t_mark) return pm_tmark(A.n - B.n);
        return pm_tmark(A.n - B.n);  // (X^n T : level(m)) = X^{n-m} T
    }
    if (B.k == pkind::t_mark) return pm_tmark(A.n + gap - B.n);
    switch (D.shape) {
        case pb_shape::field:
            return pm_level_field(D, A.n - B.n, vline_colon(D, A.line, B.line));
        case pb_shape::order:
            try {
                quad_module q = qm_colon(D.R, A.vmod, B.vmod);
                return pm_level_order(D, A.n - B.n, q);
            } catch (const colon_zero&) {
                return pm_tmark(A.n - B.n + 1);
            }
        case pb_shape::cusp:
            return pm_level_cusp(A.n - B.n, qsub(A.cuspc, B.cuspc));
    }
    throw error("bad shape");
}

pull_module pm_scale(const pull_domain& D, const pull_module& A, const pull_elem& x) {
    if (x.is_zero()) throw error("scaling by zero");
    if (A.k == pkind::full_k) return pm_full_k();
    long r = x.lead;
    qelem a = x.co[0];
    if (A.k == pkind::t_mark) return pm_tmark(A.n + r);
    switch (D.shape) {
        case pb_shape::field:
            return pm_level_field(D, A.n + r, qmul(A.line, a, D.d));
        case pb_shape::order:
            return pm_level_order(D, A.n + r, qm_scale(D.R, A.vmod, a));
        case pb_shape::cusp: {
            qelem b = x.coeff(x.lead + 1);
            // (a + bX)(1 + cX) ~ 1 + (c + b/a) X
            Rat t = A.cuspc.x + b.x / a.x;
            t.canonicalize();
            return pm_level_cusp(A.n + r, qelem{t, Rat(0)});
        }
    }
    throw error("bad shape");
}

bool pm_subset(const pull_domain& D, const pull_module& A, const pull_module& B) {
    if (B.k == pkind::full_k) return true;
    if (A.k == pkind::full_k) return false;
    long gap = (D.shape == pb_shape::cusp) ? 2 : 1;
    if (B.k == pkind::t_mark) return A.n >= B.n;
    if (A.k == pkind::t_mark) return A.n >= B.n + gap;
    if (A.n >= B.n + gap) return true;
    if (A.n != B.n) return false;
    switch (D.shape) {
        case pb_shape::field: return A.line == B.line;
        case pb_shape::order: return qm_subset(D.R, A.vmod, B.vmod);
        case pb_shape::cusp: return A.cuspc == B.cuspc;
    }
    return false;
}

bool pm_contains(const pull_domain& D, const pull_module& A, const pull_elem& x) {
    if (x.is_zero()) return true;
    if (A.k == pkind::full_k) return true;
    long r = x.lead;
    long gap = (D.shape == pb_shape::cusp) ? 2 : 1;
    if (A.k == pkind::t_mark) return r >= A.n;
    if (r >= A.n + gap) return true;
    if (r < A.n) return false;
    if (r > A.n) {
        // cusp, r == n+1: no elements of that order in a cusp line module
        return false;
    }
    qelem a = x.co[0];
    switch (D.shape) {
        case pb_shape::field: {
            qelem q = qmul(a, qinv(A.line, D.d), D.d);
            return q.y == 0;
        }
        case pb_shape::order: return qm_contains(D.R, A.vmod, a);
        case pb_shape::cusp: {
            qelem b = x.coeff(r + 1);
            return b == qmul(a, A.cuspc, D.d);
        }
    }
    return false;
}

pull_module pm_mul_T(const pull_domain&, const pull_module& A) {
    if (A.k == pkind::full_k) return pm_full_k();
    return pm_tmark(A.n);
}

pull_module pm_localize_at_m(const pull_domain& D, const pull_module& A) {
    // D_M = T for an order base, D_M = D for the local shapes
    if (D.shape == pb_shape::order) return pm_mul_T(D, A);
    return A;
}

pull_module pm_localize_at_lift(const pull_domain& D, const pull_module& A,
                                const quad_prime& q) {
    if (D.shape != pb_shape::order) throw error("no lifted primes on this shape");
    if (A.k != pkind::level) return A;  // X^n T and K are stable under R_q
    return pm_level_order(D, A.n, qm_localize(D.R, A.vmod, q));
}

}  // namespace semistar
