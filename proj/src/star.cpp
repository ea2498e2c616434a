#include <semistar/star.hpp>

#include <sstream>

namespace semistar {

static star node(star_op s) { return std::make_shared<const star_op>(std::move(s)); }

star mk_d() { return node({star_op::op::ident, nullptr, {}, {}, nullptr}); }
star mk_e() { return node({star_op::op::trivial, nullptr, {}, {}, nullptr}); }
star mk_v() { return node({star_op::op::v, nullptr, {}, {}, nullptr}); }
star mk_t() { return mk_ft(mk_v()); }
star mk_w() { return mk_tilde(mk_v()); }

star mk_over_t(const overring_ref& t) {
    return node({star_op::op::over_t, nullptr, t, {}, nullptr});
}
star mk_spectral(const prime_family& delta) {
    return node({star_op::op::spectral, nullptr, {}, delta, nullptr});
}
star mk_ft(const star& s) {
    using op = star_op::op;
    switch (s->k) {
        // operations that are already of finite type: d, e, star_{T},
        // spectral closures on the representable class, tilde, star_a,
        // star_Theta, and star_f itself
        case op::ident:
        case op::trivial:
        case op::over_t:
        case op::spectral:
        case op::stable:
        case op::eab:
        case op::theta:
        case op::finite_type: return s;
        // (dot-star^T)_f = (star_f)dot^T and the dual law for pullbacks
        case op::restrict_to: return mk_restrict(mk_ft(s->inner), s->parent, s->t);
        case op::pull_from: return mk_pull(mk_ft(s->inner), s->t);
        case op::v: break;
    }
    return node({star_op::op::finite_type, s, {}, {}, nullptr});
}
star mk_tilde(const star& s) {
    return node({star_op::op::stable, s, {}, {}, nullptr});
}
star mk_eab(const star& s) { return node({star_op::op::eab, s, {}, {}, nullptr}); }
star mk_theta() { return node({star_op::op::theta, nullptr, {}, {}, nullptr}); }

star mk_restrict(const star& inner_on_d, const domain& d, const overring_ref& t) {
    return node({star_op::op::restrict_to, inner_on_d, t, {}, d});
}
star mk_pull(const star& inner_on_t, const overring_ref& t) {
    return node({star_op::op::pull_from, inner_on_t, t, {}, nullptr});
}

static std::string overring_str(const overring_ref& t) {
    switch (t.k) {
        case overring_ref::kind::self: return "D";
        case overring_ref::kind::field_k: return "K";
        case overring_ref::kind::div_sub: {
            std::ostringstream s;
            s << "sub[";
            for (size_t i = 0; i < t.sub.size(); i++) s << (i ? "," : "") << (t.sub[i] + 1);
            s << "]";
            return s.str();
        }
        case overring_ref::kind::quad_sub: {
            if (t.f2 == 1) return "OK";
            std::ostringstream s;
            s << "order[" << t.f2 << "]";
            return s.str();
        }
        case overring_ref::kind::pull_t: return "T";
    }
    return "?";
}

std::string star_str(const domain& d, const star& s) {
    using op = star_op::op;
    switch (s->k) {
        case op::ident: return "d";
        case op::trivial: return "e";
        case op::v: return "v";
        case op::finite_type:
            if (s->inner->k == op::v) return "t";
            return "ft(" + star_str(d, s->inner) + ")";
        case op::stable:
            if (s->inner->k == op::v) return "w";
            return "tilde(" + star_str(d, s->inner) + ")";
        case op::eab: return "a(" + star_str(d, s->inner) + ")";
        case op::theta: return "theta";
        case op::over_t: return "star[" + overring_str(s->t) + "]";
        case op::spectral: {
            std::ostringstream o;
            o << "spectral[";
            if (s->delta.generic) {
                o << "max";
                for (auto& p : s->delta.excluded) o << "\\" << prime_str(d, p);
            } else {
                for (size_t i = 0; i < s->delta.members.size(); i++)
                    o << (i ? "," : "") << prime_str(d, s->delta.members[i]);
            }
            o << "]";
            return o.str();
        }
        case op::restrict_to:
            return "restrict(" + star_str(s->parent, s->inner) + "," + overring_str(s->t) + ")";
        case op::pull_from:
            return "pull(" + star_str(d, s->inner) + "," + overring_str(s->t) + ")";
    }
    return "?";
}

}  // namespace semistar
