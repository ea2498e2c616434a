#include <semistar/quad.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <sstream>

namespace semistar {

// --- field elements ----------------------------------------------------------

qelem qadd(const qelem& a, const qelem& b) { return {a.x + b.x, a.y + b.y}; }
qelem qsub(const qelem& a, const qelem& b) { return {a.x - b.x, a.y - b.y}; }
qelem qmul(const qelem& a, const qelem& b, const Int& d) {
    return {a.x * b.x + Rat(d) * a.y * b.y, a.x * b.y + a.y * b.x};
}
qelem qconj(const qelem& a) { return {a.x, -a.y}; }
Rat qnorm(const qelem& a, const Int& d) { return a.x * a.x - Rat(d) * a.y * a.y; }
qelem qinv(const qelem& a, const Int& d) {
    Rat n = qnorm(a, d);
    if (n == 0) throw error("division by zero element");
    return {a.x / n, -a.y / n};
}

std::string qelem_str(const qelem& a) {
    auto rat = [](const Rat& r) {
        std::ostringstream s;
        s << r;
        return s.str();
    };
    if (a.y == 0) return rat(a.x);
    std::string ys = (a.y == 1) ? "w" : (a.y == -1 ? "-w" : rat(a.y) + "*w");
    if (a.x == 0) return ys;
    return rat(a.x) + (a.y > 0 ? "+" : "") + ys;
}

// --- order -------------------------------------------------------------------

bool quad_order::d1mod4() const { return fmod(d, 4) == 1; }

void quad_order::welem_to_tau(const qelem& e, Rat& u, Rat& v) const {
    // tau = f*omega; omega = (1+w)/2 if d = 1 mod 4 else w
    if (d1mod4()) {
        // x + y w = (x - y) + (2y/f) tau
        u = e.x - e.y;
        v = 2 * e.y / Rat(f);
    } else {
        u = e.x;
        v = e.y / Rat(f);
    }
    u.canonicalize();
    v.canonicalize();
}

qelem quad_order::tau_to_welem(const Rat& u, const Rat& v) const {
    if (d1mod4()) {
        Rat half = Rat(f) * v / 2;
        return {u + half, half};
    }
    return {u, v * Rat(f)};
}

static void factor_full(Int n, std::vector<std::pair<Int, int>>& out);

quad_order make_order(const Int& d, const Int& f) {
    if (d == 0 || d == 1) throw bad_discriminant("d must be a squarefree integer != 0, 1");
    std::vector<std::pair<Int, int>> fs;
    factor_full(abs(d), fs);
    for (auto& [p, e] : fs)
        if (e > 1) throw bad_discriminant("d must be squarefree");
    if (f < 1) throw bad_discriminant("conductor index must be >= 1");
    quad_order o;
    o.d = d;
    o.f = f;
    if (o.d1mod4()) {
        o.tr = f;
        o.nm = f * f * (1 - d) / 4;
    } else {
        o.tr = 0;
        o.nm = -f * f * d;
    }
    return o;
}

// --- integer factorization and prime helpers ----------------------------------

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

static Int pollard_rho(const Int& n, rng& rr) {
    if (fmod(n, 2) == 0) return 2;
    while (true) {
        Int x = fmod(Int(rr.range(2, 1 << 30)), n), y = x, c = fmod(Int(rr.range(1, 1 << 30)), n);
        Int dd = 1;
        while (dd == 1) {
            x = fmod(x * x + c, n);
            y = fmod(y * y + c, n);
            y = fmod(y * y + c, n);
            dd = gcd(abs(x - y), n);
        }
        if (dd != n) return dd;
    }
}

static void factor_rec(const Int& n, std::vector<Int>& out, rng& rr) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_rho(n, rr);
    factor_rec(d, out, rr);
    factor_rec(n / d, out, rr);
}

static void factor_full(Int n, std::vector<std::pair<Int, int>>& out) {
    out.clear();
    if (n < 0) n = -n;
    if (n <= 1) return;
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n && p < 100000; p = (p == 2 ? Int(3) : p + 2)) {
        while (fmod(n, p) == 0) {
            ps.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        rng rr(kDefaultSeed);
        factor_rec(n, ps, rr);
    }
    std::sort(ps.begin(), ps.end());
    for (auto& p : ps) {
        if (!out.empty() && out.back().first == p)
            out.back().second++;
        else
            out.push_back({p, 1});
    }
}

std::vector<Int> factor_rational(const Int& n) {
    std::vector<std::pair<Int, int>> fs;
    factor_full(n, fs);
    std::vector<Int> ps;
    for (auto& [p, e] : fs) ps.push_back(p);
    return ps;
}

static Int powmod(Int b, Int e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::vector<Int> sqrt_mod_p(const Int& a0, const Int& p) {
    Int a = fmod(a0, p);
    if (p == 2) {
        std::vector<Int> rs;
        for (Int t = 0; t < 2; t++)
            if (fmod(t * t - a, p) == 0) rs.push_back(t);
        return rs;
    }
    if (a == 0) return {Int(0)};
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return {};
    Int r;
    if (fmod(p, 4) == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        Int q = p - 1;
        unsigned long s = 0;
        while (fmod(q, 2) == 0) {
            q /= 2;
            s++;
        }
        Int z = 2;
        while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z++;
        Int m = s, c = powmod(z, q, p), t = powmod(a, q, p), rr = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            Int i = 0, tt = t;
            while (tt != 1) {
                tt = fmod(tt * tt, p);
                i++;
            }
            Int b = c;
            for (Int j = 0; j < m - i - 1; j++) b = fmod(b * b, p);
            m = i;
            c = fmod(b * b, p);
            t = fmod(t * c, p);
            rr = fmod(rr * b, p);
        }
        r = rr;
    }
    Int r2 = p - r;
    if (r == r2) return {r};
    if (r > r2) std::swap(r, r2);
    return {r, r2};
}

// --- HNF over the basis (1, tau) ----------------------------------------------

Rat qlattice::index() const {
    Rat r(a * c, den * den);
    r.canonicalize();
    return r;
}

// rows are integer tau-coordinate pairs; lattice = (1/den)*span(rows)
static qlattice hnf_rows(std::vector<std::array<Int, 2>> rows, Int den) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](auto& r) { return r[0] == 0 && r[1] == 0; }),
               rows.end());
    if (rows.empty()) throw error("zero module has no lattice representation");
    // clear the tau-column down to a single row by gcd steps
    while (true) {
        int cnt = 0, jmin = -1;
        for (int j = 0; j < (int)rows.size(); j++)
            if (rows[j][1] != 0) {
                cnt++;
                if (jmin < 0 || abs(rows[j][1]) < abs(rows[jmin][1])) jmin = j;
            }
        if (cnt <= 1) break;
        for (int j = 0; j < (int)rows.size(); j++) {
            if (j == jmin || rows[j][1] == 0) continue;
            Int q = fdiv(rows[j][1], rows[jmin][1]);
            rows[j][0] -= q * rows[jmin][0];
            rows[j][1] -= q * rows[jmin][1];
        }
    }
    Int A = 0, B = 0, C = 0;
    for (auto& r : rows) {
        if (r[1] != 0) {
            B = r[0];
            C = r[1];
        } else {
            A = gcd(A, r[0]);
        }
    }
    if (C < 0) {
        B = -B;
        C = -C;
    }
    if (A == 0 || C == 0) throw error("rank-deficient module (not full rank in K)");
    if (A < 0) A = -A;
    B = fmod(B, A);
    Int g = gcd(gcd(A, B), gcd(C, den));
    qlattice L;
    L.den = den / g;
    L.a = A / g;
    L.b = B / g;
    L.c = C / g;
    return L;
}

static qlattice hnf_rat_rows(const std::vector<std::array<Rat, 2>>& rows) {
    Int den = 1;
    for (auto& r : rows) {
        den = lcm(den, r[0].get_den());
        den = lcm(den, r[1].get_den());
    }
    std::vector<std::array<Int, 2>> zr;
    zr.reserve(rows.size());
    for (auto& r : rows) {
        Rat u = r[0] * den, v = r[1] * den;
        u.canonicalize();
        v.canonicalize();
        zr.push_back({Int(u.get_num()), Int(v.get_num())});
    }
    return hnf_rows(std::move(zr), den);
}

static std::array<Rat, 2> tau_coords(const quad_order& o, const qelem& e) {
    Rat u, v;
    o.welem_to_tau(e, u, v);
    return {u, v};
}

// tau-coordinate product: (u1 + v1 tau)(u2 + v2 tau)
static std::array<Rat, 2> tmul(const quad_order& o, const std::array<Rat, 2>& a,
                               const std::array<Rat, 2>& b) {
    Rat u = a[0] * b[0] - Rat(o.nm) * a[1] * b[1];
    Rat v = a[0] * b[1] + a[1] * b[0] + Rat(o.tr) * a[1] * b[1];
    u.canonicalize();
    v.canonicalize();
    return {u, v};
}

qlattice lattice_from_gens(const quad_order& o, const std::vector<qelem>& gens) {
    std::vector<std::array<Rat, 2>> rows;
    std::array<Rat, 2> tau = {Rat(0), Rat(1)};
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        auto t = tau_coords(o, g);
        rows.push_back(t);
        rows.push_back(tmul(o, t, tau));
    }
    if (rows.empty()) throw error("zero module is not representable");
    return hnf_rat_rows(rows);
}

qlattice lattice_ring(const quad_order&) { return qlattice{1, 1, 0, 1}; }

qlattice lattice_principal(const quad_order& o, const qelem& x) {
    if (x.is_zero()) throw error("zero ideal is not representable");
    auto t = tau_coords(o, x);
    return hnf_rat_rows({t, tmul(o, t, {Rat(0), Rat(1)})});
}

qlattice lattice_suborder(const quad_order& o, const Int& f2) {
    // T = Z + f2 * O_K, requires f2 | f; T = (1/(f/f2)) ((f/f2) Z + Z tau)
    if (f2 < 1 || fmod(o.f, f2) != 0)
        throw unrepresentable_overring("suborder index must divide the conductor index");
    Int m = o.f / f2;
    qlattice L;
    L.den = m;
    L.a = m;
    L.b = 0;
    L.c = 1;
    Int g = gcd(L.den, gcd(L.a, L.c));
    L.den /= g;
    L.a /= g;
    L.c /= g;
    return L;
}

qlattice lattice_maximal_order(const quad_order& o) { return lattice_suborder(o, 1); }

static std::vector<std::array<Int, 2>> basis_rows(const qlattice& L) {
    return {{L.a, Int(0)}, {L.b, L.c}};
}

qlattice lat_mul(const quad_order& o, const qlattice& A, const qlattice& B) {
    std::vector<std::array<Int, 2>> rows;
    for (auto& ra : basis_rows(A))
        for (auto& rb : basis_rows(B)) {
            Int u = ra[0] * rb[0] - o.nm * ra[1] * rb[1];
            Int v = ra[0] * rb[1] + ra[1] * rb[0] + o.tr * ra[1] * rb[1];
            rows.push_back({u, v});
        }
    return hnf_rows(std::move(rows), A.den * B.den);
}

qlattice lat_add(const quad_order&, const qlattice& A, const qlattice& B) {
    Int den = lcm(A.den, B.den);
    Int ka = den / A.den, kb = den / B.den;
    std::vector<std::array<Int, 2>> rows;
    for (auto& r : basis_rows(A)) rows.push_back({r[0] * ka, r[1] * ka});
    for (auto& r : basis_rows(B)) rows.push_back({r[0] * kb, r[1] * kb});
    return hnf_rows(std::move(rows), den);
}

// kernel-based intersection of two full-rank integer lattices
qlattice lat_intersect(const quad_order&, const qlattice& A, const qlattice& B) {
    Int den = lcm(A.den, B.den);
    Int ka = den / A.den, kb = den / B.den;
    std::array<std::array<Int, 2>, 2> l = {{{A.a * ka, Int(0)}, {A.b * ka, A.c * ka}}};
    std::array<std::array<Int, 2>, 2> m = {{{B.a * kb, Int(0)}, {B.b * kb, B.c * kb}}};
    // columns of W: l1, l2, -m1, -m2 (2 x 4); U tracks column operations
    Int W[2][4] = {{l[0][0], l[1][0], -m[0][0], -m[1][0]},
                   {l[0][1], l[1][1], -m[0][1], -m[1][1]}};
    Int U[4][4];
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) U[i][j] = (i == j) ? 1 : 0;
    auto colsub = [&](int j, int j0, const Int& q) {
        for (int r = 0; r < 2; r++) W[r][j] -= q * W[r][j0];
        for (int r = 0; r < 4; r++) U[r][j] -= q * U[r][j0];
    };
    auto colswap = [&](int j, int j0) {
        for (int r = 0; r < 2; r++) std::swap(W[r][j], W[r][j0]);
        for (int r = 0; r < 4; r++) std::swap(U[r][j], U[r][j0]);
    };
    int piv = 0;
    for (int r = 0; r < 2; r++) {
        while (true) {
            int jmin = -1, cnt = 0;
            for (int j = piv; j < 4; j++)
                if (W[r][j] != 0) {
                    cnt++;
                    if (jmin < 0 || abs(W[r][j]) < abs(W[r][jmin])) jmin = j;
                }
            if (cnt == 0) break;
            if (cnt == 1) {
                colswap(jmin, piv);
                piv++;
                break;
            }
            for (int j = piv; j < 4; j++) {
                if (j == jmin || W[r][j] == 0) continue;
                colsub(j, jmin, fdiv(W[r][j], W[r][jmin]));
            }
        }
    }
    if (piv != 2) throw error("unexpected rank in lattice intersection");
    std::vector<std::array<Int, 2>> rows;
    for (int j = piv; j < 4; j++) {
        Int u = U[0][j] * l[0][0] + U[1][j] * l[1][0];
        Int v = U[0][j] * l[0][1] + U[1][j] * l[1][1];
        rows.push_back({u, v});
    }
    return hnf_rows(std::move(rows), den);
}

// preimage of A under multiplication by the (nonzero) tau-coordinate vector b
static qlattice mul_preimage(const quad_order& o, const qlattice& A,
                             const std::array<Rat, 2>& b) {
    // matrix of z -> z*b on tau-coordinates: [[ub, -nm*vb], [vb, ub + tr*vb]]
    Rat m11 = b[0], m12 = -Rat(o.nm) * b[1];
    Rat m21 = b[1], m22 = b[0] + Rat(o.tr) * b[1];
    Rat det = m11 * m22 - m12 * m21;
    if (det == 0) throw error("zero multiplier in colon computation");
    std::vector<std::array<Rat, 2>> rows;
    for (auto& r : basis_rows(A)) {
        Rat u(r[0], A.den), v(r[1], A.den);
        u.canonicalize();
        v.canonicalize();
        Rat pu = (m22 * u - m12 * v) / det;
        Rat pv = (-m21 * u + m11 * v) / det;
        pu.canonicalize();
        pv.canonicalize();
        rows.push_back({pu, pv});
    }
    return hnf_rat_rows(rows);
}

qlattice lat_colon(const quad_order& o, const qlattice& A, const qlattice& B) {
    std::array<Rat, 2> b1 = {Rat(B.a, B.den), Rat(0)};
    std::array<Rat, 2> b2 = {Rat(B.b, B.den), Rat(B.c, B.den)};
    b1[0].canonicalize();
    b2[0].canonicalize();
    b2[1].canonicalize();
    return lat_intersect(o, mul_preimage(o, A, b1), mul_preimage(o, A, b2));
}

qlattice lat_scale(const quad_order& o, const qlattice& A, const qelem& x) {
    auto t = tau_coords(o, x);
    if (t[0] == 0 && t[1] == 0) throw error("scaling by zero");
    std::vector<std::array<Rat, 2>> rows;
    for (auto& r : basis_rows(A)) {
        Rat u(r[0], A.den), v(r[1], A.den);
        u.canonicalize();
        v.canonicalize();
        rows.push_back(tmul(o, {u, v}, t));
    }
    return hnf_rat_rows(rows);
}

bool lat_contains(const quad_order& o, const qlattice& A, const qelem& x) {
    if (x.is_zero()) return true;
    Rat u, v;
    o.welem_to_tau(x, u, v);
    Rat U = u * A.den, V = v * A.den;
    U.canonicalize();
    V.canonicalize();
    if (U.get_den() != 1 || V.get_den() != 1) return false;
    Int Ui = U.get_num(), Vi = V.get_num();
    if (fmod(Vi, A.c) != 0) return false;
    Int k2 = Vi / A.c;
    return fmod(Ui - k2 * A.b, A.a) == 0;
}

bool lat_subset(const quad_order& o, const qlattice& A, const qlattice& B) {
    for (auto& g : lat_gens(o, A))
        if (!lat_contains(o, B, g)) return false;
    return true;
}

std::vector<qelem> lat_gens(const quad_order& o, const qlattice& A) {
    Rat u1(A.a, A.den), z(0);
    Rat u2(A.b, A.den), v2(A.c, A.den);
    u1.canonicalize();
    u2.canonicalize();
    v2.canonicalize();
    return {o.tau_to_welem(u1, z), o.tau_to_welem(u2, v2)};
}

// --- primes -------------------------------------------------------------------

std::vector<quad_prime> primes_over(const quad_order& o, const Int& p) {
    if (!is_prime(p)) throw error("primes_over: not a rational prime");
    std::vector<quad_prime> out;
    auto mk = [&](prime_kind k, bool dvr, const qlattice& L, int which) {
        quad_prime P;
        P.p = p;
        P.which = which;
        P.kind = k;
        P.dvr = dvr;
        P.lat = L;
        out.push_back(P);
    };
    if (fmod(o.f, p) == 0) {
        // the unique (singular) prime over p: pZ + tau Z
        mk(prime_kind::singular, false, qlattice{1, p, 0, 1}, 0);
        return out;
    }
    // roots of t^2 - tr*t + nm mod p
    std::vector<Int> roots;
    bool ramified = false;
    if (p == 2) {
        for (Int t = 0; t < 2; t++)
            if (fmod(t * t - o.tr * t + o.nm, p) == 0) roots.push_back(t);
        if (roots.size() == 1 && fmod(o.tr, 2) == 0) ramified = true;
    } else {
        Int disc = o.tr * o.tr - 4 * o.nm;
        if (fmod(disc, p) == 0) {
            Int inv2 = powmod(2, p - 2, p);
            roots.push_back(fmod(o.tr * inv2, p));
            ramified = true;
        } else {
            auto ss = sqrt_mod_p(disc, p);
            if (!ss.empty()) {
                Int inv2 = powmod(2, p - 2, p);
                for (auto& s : ss) roots.push_back(fmod((o.tr + s) * inv2, p));
                std::sort(roots.begin(), roots.end());
                roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            }
        }
    }
    if (roots.empty()) {
        mk(prime_kind::inert, true, qlattice{1, p, 0, p}, 0);
    } else if (ramified || roots.size() == 1) {
        qlattice L{1, p, fmod(-roots[0], p), 1};
        mk(prime_kind::ramified, true, L, 0);
    } else {
        std::vector<Int> bs;
        for (auto& r : roots) bs.push_back(fmod(-r, p));
        std::sort(bs.begin(), bs.end());
        for (int i = 0; i < 2; i++) mk(prime_kind::split, true, qlattice{1, p, bs[i], 1}, i);
    }
    return out;
}

std::vector<quad_prime> special_primes(const quad_order& o) {
    std::vector<quad_prime> out;
    for (auto& p : factor_rational(o.f))
        for (auto& P : primes_over(o, p)) out.push_back(P);
    return out;
}

std::vector<quad_prime> active_primes(const quad_order& o, const qlattice& L) {
    std::vector<quad_prime> out;
    for (auto& p : factor_rational(L.den * L.a * L.c))
        for (auto& P : primes_over(o, p)) out.push_back(P);
    return out;
}

std::vector<quad_prime> fresh_primes(const quad_order& o, int k,
                                     const std::vector<quad_prime>& avoid) {
    std::vector<quad_prime> out;
    Int p = 1;
    while ((int)out.size() < k) {
        p = next_prime(p);
        for (auto& P : primes_over(o, p)) {
            if (std::find(avoid.begin(), avoid.end(), P) != avoid.end()) continue;
            if ((int)out.size() < k) out.push_back(P);
        }
    }
    return out;
}

// --- local surgery ------------------------------------------------------------

static bool prime_in(const std::vector<quad_prime>& S, const quad_prime& P) {
    return std::find(S.begin(), S.end(), P) != S.end();
}

qlattice trivialize(const quad_order& o, const qlattice& L,
                    const std::vector<quad_prime>& S) {
    if (S.empty()) return L;
    Int m = L.den;
    qlattice A0{1, L.a, L.b, L.c};  // m * L, integral
    qlattice J = S[0].lat;
    for (size_t i = 1; i < S.size(); i++) J = lat_mul(o, J, S[i].lat);
    qlattice D = lattice_ring(o);
    // ascending: union of (A0 :_D J^k), removes the S-parts
    qlattice B1 = A0;
    while (true) {
        qlattice nxt = lat_intersect(o, lat_colon(o, B1, J), D);
        if (nxt == B1) break;
        B1 = nxt;
    }
    // descending: A0*J^t + mD, pins the parts at S to m*D_P
    qlattice mD{1, m, 0, m};
    qlattice pw = A0;
    qlattice B2 = lat_add(o, lat_mul(o, pw, J), mD);
    while (true) {
        pw = lat_mul(o, pw, J);
        qlattice nxt = lat_add(o, lat_mul(o, pw, J), mD);
        if (nxt == B2) break;
        B2 = nxt;
    }
    // scale the combination back by 1/m
    qlattice R = lat_intersect(o, B1, B2);
    R.den *= m;
    Int g = gcd(gcd(R.den, R.a), gcd(R.b, R.c));
    if (g > 1) {
        R.den /= g;
        R.a /= g;
        R.b /= g;
        R.c /= g;
    }
    return R;
}

qlattice saturate_away(const quad_order& o, const qlattice& L,
                       const std::vector<quad_prime>& S) {
    return trivialize(o, L, S);
}

qlattice component_at(const quad_order& o, const qlattice& L, const quad_prime& P) {
    std::vector<quad_prime> S;
    for (auto& Q : active_primes(o, L))
        if (!(Q == P)) S.push_back(Q);
    return trivialize(o, L, S);
}

long val_at(const quad_order& o, const qlattice& L, const quad_prime& P) {
    if (!P.dvr) throw error("valuation at a non-DVR prime");
    qlattice C = component_at(o, L, P);
    Int nrm = (P.kind == prime_kind::inert) ? P.p * P.p : P.p;
    Rat idx = C.index();
    long v = 0;
    while (idx > 1) {
        idx /= nrm;
        idx.canonicalize();
        v++;
    }
    while (idx < 1) {
        idx *= nrm;
        idx.canonicalize();
        v--;
    }
    if (idx != 1)
        throw internal_disagreement("component index is not a power of the residue norm");
    return v;
}

// --- masked modules -------------------------------------------------------------

static std::vector<quad_prime> sorted_unique(std::vector<quad_prime> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](const quad_prime& a, const quad_prime& b) { return a == b; }),
            v.end());
    return v;
}

quad_module qm_lattice(const qlattice& L) {
    quad_module m;
    m.lat = L;
    m.mode = qmode::all_but;
    return m;
}

quad_module qm_full_k() {
    quad_module m;
    m.lat = qlattice{1, 1, 0, 1};
    m.mode = qmode::only;
    return m;
}

quad_module qm_make(const quad_order& o, const qlattice& L, qmode mode,
                    std::vector<quad_prime> set) {
    quad_module m;
    m.mode = mode;
    m.set = sorted_unique(std::move(set));
    if (mode == qmode::all_but) {
        m.lat = trivialize(o, L, m.set);
    } else {
        if (m.set.empty()) return qm_full_k();
        std::vector<quad_prime> off;
        for (auto& P : active_primes(o, L))
            if (!prime_in(m.set, P)) off.push_back(P);
        m.lat = trivialize(o, L, off);
    }
    return m;
}

static std::vector<quad_prime> set_union(const std::vector<quad_prime>& a,
                                         const std::vector<quad_prime>& b) {
    auto v = a;
    v.insert(v.end(), b.begin(), b.end());
    return sorted_unique(std::move(v));
}
static std::vector<quad_prime> set_minus(const std::vector<quad_prime>& a,
                                         const std::vector<quad_prime>& b) {
    std::vector<quad_prime> v;
    for (auto& P : a)
        if (!prime_in(b, P)) v.push_back(P);
    return v;
}
static std::vector<quad_prime> set_inter(const std::vector<quad_prime>& a,
                                         const std::vector<quad_prime>& b) {
    std::vector<quad_prime> v;
    for (auto& P : a)
        if (prime_in(b, P)) v.push_back(P);
    return v;
}

quad_module qm_mul(const quad_order& o, const quad_module& A, const quad_module& B) {
    qlattice L = lat_mul(o, A.lat, B.lat);
    if (A.mode == qmode::all_but && B.mode == qmode::all_but)
        return qm_make(o, L, qmode::all_but, set_union(A.set, B.set));
    if (A.mode == qmode::all_but) return qm_make(o, L, qmode::only, set_minus(B.set, A.set));
    if (B.mode == qmode::all_but) return qm_make(o, L, qmode::only, set_minus(A.set, B.set));
    return qm_make(o, L, qmode::only, set_inter(A.set, B.set));
}

quad_module qm_add(const quad_order& o, const quad_module& A, const quad_module& B) {
    qlattice L = lat_add(o, A.lat, B.lat);
    if (A.mode == qmode::all_but && B.mode == qmode::all_but)
        return qm_make(o, L, qmode::all_but, set_union(A.set, B.set));
    if (A.mode == qmode::all_but) return qm_make(o, L, qmode::only, set_minus(B.set, A.set));
    if (B.mode == qmode::all_but) return qm_make(o, L, qmode::only, set_minus(A.set, B.set));
    return qm_make(o, L, qmode::only, set_inter(A.set, B.set));
}

quad_module qm_intersect(const quad_order& o, const quad_module& A, const quad_module& B) {
    const qlattice D = lattice_ring(o);
    if (A.mode == qmode::all_but && B.mode == qmode::all_but) {
        qlattice base = trivialize(o, lat_intersect(o, A.lat, B.lat), set_union(A.set, B.set));
        for (auto& P : set_minus(A.set, B.set)) base = lat_mul(o, base, component_at(o, B.lat, P));
        for (auto& P : set_minus(B.set, A.set)) base = lat_mul(o, base, component_at(o, A.lat, P));
        return qm_make(o, base, qmode::all_but, set_inter(A.set, B.set));
    }
    if (A.mode == qmode::only && B.mode == qmode::only) {
        qlattice base = D;
        for (auto& P : set_inter(A.set, B.set))
            base = lat_mul(o, base, component_at(o, lat_intersect(o, A.lat, B.lat), P));
        for (auto& P : set_minus(A.set, B.set)) base = lat_mul(o, base, component_at(o, A.lat, P));
        for (auto& P : set_minus(B.set, A.set)) base = lat_mul(o, base, component_at(o, B.lat, P));
        return qm_make(o, base, qmode::only, set_union(A.set, B.set));
    }
    const quad_module& ab = (A.mode == qmode::all_but) ? A : B;
    const quad_module& on = (A.mode == qmode::all_but) ? B : A;
    qlattice base = trivialize(o, ab.lat, set_union(ab.set, on.set));
    for (auto& P : set_inter(ab.set, on.set)) base = lat_mul(o, base, component_at(o, on.lat, P));
    for (auto& P : set_minus(on.set, ab.set))
        base = lat_mul(o, base, component_at(o, lat_intersect(o, ab.lat, on.lat), P));
    return qm_make(o, base, qmode::all_but, set_minus(ab.set, on.set));
}

quad_module qm_colon(const quad_order& o, const quad_module& A, const quad_module& B) {
    if (A.mode == qmode::all_but) {
        if (B.mode != qmode::all_but || !set_minus(B.set, A.set).empty())
            throw colon_zero("colon vanishes: divisor unconstrained where dividend is constrained");
        return qm_make(o, lat_colon(o, A.lat, B.lat), qmode::all_but, A.set);
    }
    // A only-mode, constraint set A.set
    if (A.is_full_k()) {
        if (B.is_full_k()) return qm_full_k();
        return qm_full_k();  // (K : B) = K for every nonzero B
    }
    if (B.mode == qmode::all_but) {
        if (!set_inter(A.set, B.set).empty())
            throw colon_zero("colon vanishes at a masked prime of the divisor");
    } else {
        if (!set_minus(A.set, B.set).empty())
            throw colon_zero("colon vanishes at a masked prime of the divisor");
    }
    return qm_make(o, lat_colon(o, A.lat, B.lat), qmode::only, A.set);
}

bool qm_subset(const quad_order& o, const quad_module& A, const quad_module& B) {
    if (B.is_full_k()) return true;
    if (A.mode == qmode::all_but && B.mode == qmode::all_but) {
        if (!set_minus(A.set, B.set).empty()) return false;
        return lat_subset(o, trivialize(o, A.lat, B.set), B.lat);
    }
    if (A.mode == qmode::all_but) {  // B only-mode
        if (!set_inter(B.set, A.set).empty()) return false;
        for (auto& P : B.set)
            if (!lat_subset(o, component_at(o, A.lat, P), component_at(o, B.lat, P)))
                return false;
        return true;
    }
    if (B.mode == qmode::all_but) return false;  // cofinitely constrained target
    if (!set_minus(B.set, A.set).empty()) return false;
    for (auto& P : B.set)
        if (!lat_subset(o, component_at(o, A.lat, P), component_at(o, B.lat, P)))
            return false;
    return true;
}

bool qm_contains(const quad_order& o, const quad_module& A, const qelem& x) {
    if (x.is_zero()) return true;
    if (A.is_full_k()) return true;
    qlattice xl = lattice_principal(o, x);
    if (A.mode == qmode::all_but) {
        auto rel = set_minus(set_union(active_primes(o, A.lat), active_primes(o, xl)), A.set);
        for (auto& P : rel)
            if (!lat_subset(o, component_at(o, xl, P), component_at(o, A.lat, P)))
                return false;
        return true;
    }
    for (auto& P : A.set)
        if (!lat_subset(o, component_at(o, xl, P), component_at(o, A.lat, P)))
            return false;
    return true;
}

quad_module qm_scale(const quad_order& o, const quad_module& A, const qelem& x) {
    return qm_make(o, lat_scale(o, A.lat, x), A.mode, A.set);
}

quad_module qm_localize(const quad_order& o, const quad_module& A, const quad_prime& P) {
    bool constrained = (A.mode == qmode::all_but) ? !prime_in(A.set, P) : prime_in(A.set, P);
    if (!constrained) return qm_full_k();
    return qm_make(o, component_at(o, A.lat, P), qmode::only, {P});
}

std::optional<long> qm_val_at(const quad_order& o, const quad_module& A,
                              const quad_prime& P) {
    bool constrained = (A.mode == qmode::all_but) ? !prime_in(A.set, P) : prime_in(A.set, P);
    if (!constrained) return std::nullopt;
    return val_at(o, A.lat, P);
}

quad_module qm_cofinal_fg(const quad_order& o, const quad_module& A, int k) {
    if (A.fg()) return A;
    Int b = 1;
    if (A.mode == qmode::all_but) {
        std::vector<Int> ps;
        for (auto& P : A.set) ps.push_back(P.p);
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        for (auto& p : ps)
            for (int i = 0; i < k; i++) b *= p;
        qlattice scaled = A.lat;
        scaled.a *= b;
        scaled.b *= b;
        scaled.c *= b;
        // b*L may not be canonical; renormalize through hnf
        qlattice bl = hnf_rows({{scaled.a, Int(0)}, {scaled.b, scaled.c}}, scaled.den);
        qlattice t = trivialize(o, bl, A.set);
        // result = (1/b) * t
        t.den *= b;
        Int g = gcd(gcd(t.den, t.a), gcd(t.b, t.c));
        if (g > 1) {
            t.den /= g;
            t.a /= g;
            t.b /= g;
            t.c /= g;
        }
        return qm_lattice(t);
    }
    // only-mode: slack denominators accumulate over the first k rational primes
    Int p = 1;
    for (int i = 0; i < k; i++) {
        p = next_prime(p);
        for (int j = 0; j < k; j++) b *= p;
    }
    qlattice scaled = A.lat;
    scaled.a *= b;
    scaled.b *= b;
    scaled.c *= b;
    qlattice bl = hnf_rows({{scaled.a, Int(0)}, {scaled.b, scaled.c}}, scaled.den);
    std::vector<quad_prime> off;
    for (auto& P : active_primes(o, bl))
        if (!prime_in(A.set, P)) off.push_back(P);
    qlattice t = trivialize(o, bl, off);
    t.den *= b;
    Int g = gcd(gcd(t.den, t.a), gcd(t.b, t.c));
    if (g > 1) {
        t.den /= g;
        t.a /= g;
        t.b /= g;
        t.c /= g;
    }
    return qm_lattice(t);
}

}  // namespace semistar
