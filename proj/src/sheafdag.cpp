#include "blowup/sheafdag.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "blowup/projcoh.hpp"

namespace blowup {

namespace {

std::string twist_str(const TwistPair& t) {
    return "(" + std::to_string(t.p) + "," + std::to_string(t.q) + ")";
}

}  // namespace

std::string SheafExpr::key() const {
    switch (kind) {
        case Kind::Line:
            return "L" + twist_str(twist);
        case Kind::Omega:
            return "Om^" + std::to_string(l) + twist_str(twist);
        case Kind::Push:
            return "Push[" + sub.key() + "](" + std::to_string(m) + ")";
        case Kind::Sum: {
            std::vector<std::string> keys;
            for (const auto& c : children) keys.push_back(c->key());
            std::sort(keys.begin(), keys.end());
            std::string s = "Sum{";
            for (size_t i = 0; i < keys.size(); ++i) {
                if (i) s += ";";
                s += keys[i];
            }
            return s + "}";
        }
        case Kind::IdealTwist: {
            std::vector<std::string> keys;
            for (const auto& c : comps) keys.push_back(c.key());
            std::sort(keys.begin(), keys.end());
            std::string s = "I[";
            for (size_t i = 0; i < keys.size(); ++i) {
                if (i) s += "+";
                s += keys[i];
            }
            return s + "]" + twist_str(twist);
        }
        case Kind::Named:
            return "N[" + id + "]" + twist_str(twist);
    }
    return "?";
}

long SheafExpr::rank() const {
    switch (kind) {
        case Kind::Line:
        case Kind::IdealTwist:
            return 1;
        case Kind::Omega:
            return to_long(binomial(n - 1, l));
        case Kind::Push:
            return 0;
        case Kind::Sum: {
            long r = 0;
            for (const auto& c : children) r += c->rank();
            return r;
        }
        case Kind::Named:
            throw std::logic_error("SheafExpr::rank: named node needs registry data");
    }
    return 0;
}

ExprPtr line(int n, TwistPair t) {
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::Line;
    e->n = n;
    e->twist = t;
    return e;
}

ExprPtr omega(int n, int l, TwistPair t) {
    if (l < 0 || l > n - 1) throw std::invalid_argument("omega: l out of range");
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::Omega;
    e->n = n;
    e->l = l;
    e->twist = t;
    return e;
}

ExprPtr push(const SubvarietySpec& sub, long m) {
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::Push;
    e->n = sub.n;
    e->sub = sub;
    e->m = m;
    return e;
}

ExprPtr sum(std::vector<ExprPtr> children) {
    if (children.empty()) throw std::invalid_argument("sum: empty");
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::Sum;
    e->n = children.front()->n;
    for (const auto& c : children)
        if (c->n != e->n) throw std::invalid_argument("sum: dimension mismatch");
    e->children = std::move(children);
    return e;
}

ExprPtr ideal_twist(std::vector<SubvarietySpec> comps, TwistPair t) {
    if (comps.empty()) throw std::invalid_argument("ideal_twist: empty component list");
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::IdealTwist;
    e->n = comps.front().n;
    e->comps = std::move(comps);
    e->twist = t;
    return e;
}

ExprPtr named(int n, std::string id, TwistPair folded) {
    auto e = std::make_shared<SheafExpr>();
    e->kind = SheafExpr::Kind::Named;
    e->n = n;
    e->id = std::move(id);
    e->twist = folded;
    return e;
}

ExprPtr twist(const ExprPtr& e, TwistPair t) {
    if (t.p == 0 && t.q == 0) return e;
    auto x = std::make_shared<SheafExpr>(*e);
    switch (e->kind) {
        case SheafExpr::Kind::Line:
        case SheafExpr::Kind::Omega:
        case SheafExpr::Kind::IdealTwist:
        case SheafExpr::Kind::Named:
            x->twist = e->twist + t;
            break;
        case SheafExpr::Kind::Push:
            x->m = e->m + e->sub.restriction_degree(t.p, t.q);
            break;
        case SheafExpr::Kind::Sum: {
            x->children.clear();
            for (const auto& c : e->children) x->children.push_back(twist(c, t));
            break;
        }
    }
    return x;
}

void Registry::define_named(const std::string& id, NamedData data) {
    named_.insert_or_assign(id, std::move(data));
}

const NamedData* Registry::named_data(const std::string& id) const {
    auto it = named_.find(id);
    return it == named_.end() ? nullptr : &it->second;
}

void Registry::add_ses(SESRecord ses) { ses_.push_back(std::move(ses)); }

ChowClass twist_chern(const ChowClass& total, long rank, const ChowClass& d) {
    const int n = total.dim();
    ChowClass acc = ChowClass::scalar(n, 0);
    for (int k = 0; k <= n; ++k) {
        ChowClass ck = ChowClass::scalar(n, 0);
        for (int j = 0; j <= k; ++j) {
            Int b = binomial(rank - j, k - j);
            if (b == 0) continue;
            ck = ck + total.graded_part(j) * d.pow(k - j) * Rat(b);
        }
        acc = acc + ck.graded_part(k);
    }
    return acc;
}

namespace {

// Twisted Koszul resolution of O_Y(m) by line bundles on the blow-up; each
// component is a complete intersection of two divisors.
std::vector<std::pair<TwistPair, int>> push_resolution(const SubvarietySpec& sub, long m) {
    // returns (twist, homological sign) with sign +1 for even position
    TwistPair d1{}, d2{}, tw{};
    switch (sub.kind) {
        case SubvarietySpec::Kind::WP:
            d1 = {1, 0};
            d2 = {1, 0};
            tw = {static_cast<long>(m), 0};
            break;
        case SubvarietySpec::Kind::KAPPA:
            d1 = {1, -1};  // exceptional divisor
            d2 = {0, 1};
            tw = {0, static_cast<long>(m)};
            break;
        case SubvarietySpec::Kind::Q1:
            d1 = {1, 0};
            d2 = {2, 0};
            tw = {static_cast<long>(m), 0};
            break;
        case SubvarietySpec::Kind::Q2:
            d1 = {1, -1};
            d2 = {0, 2};
            tw = {0, static_cast<long>(m)};
            break;
    }
    return {{tw, +1}, {tw + (-d1), -1}, {tw + (-d2), -1}, {tw + (-d1) + (-d2), +1}};
}

ChowClass omega_base_chern(int n, int l) {
    // c(pullback of Omega^l from the P^{n-1} base), via the exterior powers
    // of the Euler sequence: c(Om^l) = (1 - l a)^{binom(n,l)} / c(Om^{l-1}).
    ChowClass acc = ChowClass::scalar(n, 1);
    ChowClass a = ChowClass::alpha_power(n, 1);
    for (int j = 1; j <= l; ++j) {
        ChowClass lin = ChowClass::scalar(n, 1) - a * Rat(j);
        ChowClass p = ChowClass::scalar(n, 1);
        Int reps = binomial(n, j);
        // (1 - j a)^binom(n,j) with exponent possibly large: binary power
        ChowClass base = lin;
        Int k = reps;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) p = p * base;
            base = base * base;
            k >>= 1;
        }
        acc = p * acc.inverse();
    }
    return acc;
}

// Newton identities both ways between a total Chern class and a Chern
// character of the given virtual rank.
ChowClass chern_to_character(const ChowClass& c, long rank, int n) {
    std::vector<ChowClass> p(n + 1, ChowClass::scalar(n, 0));
    for (int k = 1; k <= n; ++k) {
        ChowClass acc = c.graded_part(k) * Rat(k % 2 ? k : -k);
        for (int i = 1; i < k; ++i)
            acc = acc + c.graded_part(i) * p[k - i] * Rat(i % 2 ? 1 : -1);
        p[k] = acc;
    }
    ChowClass ch = ChowClass::scalar(n, Rat(rank));
    for (int k = 1; k <= n; ++k) ch = ch + p[k] * Rat(1, factorial(k));
    return ch;
}

ChowClass character_to_chern(const ChowClass& ch, int n) {
    ChowClass c = ChowClass::scalar(n, 1);
    std::vector<ChowClass> p(n + 1, ChowClass::scalar(n, 0));
    for (int k = 1; k <= n; ++k) p[k] = ch.graded_part(k) * Rat(factorial(k));
    for (int k = 1; k <= n; ++k) {
        ChowClass acc = p[k];
        for (int i = 1; i < k; ++i)
            acc = acc - c.graded_part(i) * p[k - i] * Rat(i % 2 ? 1 : -1);
        c = c + acc * Rat(k % 2 ? 1 : -1, k);
    }
    return c;
}

long rank_of(const ExprPtr& e, const Registry& reg) {
    if (e->kind == SheafExpr::Kind::Named) {
        const NamedData* d = reg.named_data(e->id);
        if (!d) throw std::logic_error("rank_of: unknown named sheaf " + e->id);
        return d->rank;
    }
    if (e->kind == SheafExpr::Kind::Sum) {
        long r = 0;
        for (const auto& c : e->children) r += rank_of(c, reg);
        return r;
    }
    return e->rank();
}

}  // namespace

ChowClass chern_of(const ExprPtr& e, const Registry& reg) {
    const int n = e->n;
    switch (e->kind) {
        case SheafExpr::Kind::Line:
            return chern_line(n, e->twist);
        case SheafExpr::Kind::Omega: {
            ChowClass base = omega_base_chern(n, e->l);
            ChowClass d = ChowClass::divisor(n, e->twist.p, e->twist.q);
            return twist_chern(base, to_long(binomial(n - 1, e->l)), d);
        }
        case SheafExpr::Kind::Push: {
            ChowClass acc = ChowClass::scalar(n, 1);
            for (const auto& [tw, sign] : push_resolution(e->sub, e->m)) {
                ChowClass c = chern_line(n, tw);
                acc = acc * (sign > 0 ? c : c.inverse());
            }
            return acc;
        }
        case SheafExpr::Kind::Sum: {
            ChowClass acc = ChowClass::scalar(n, 1);
            for (const auto& c : e->children) acc = acc * chern_of(c, reg);
            return acc;
        }
        case SheafExpr::Kind::IdealTwist: {
            ChowClass acc = chern_line(n, e->twist);
            for (const auto& comp : e->comps) {
                auto p = push(comp, comp.restriction_degree(e->twist.p, e->twist.q));
                acc = acc * chern_of(p, reg).inverse();
            }
            return acc;
        }
        case SheafExpr::Kind::Named: {
            const NamedData* d = reg.named_data(e->id);
            if (!d) throw std::logic_error("chern_of: unknown named sheaf " + e->id);
            if (d->locally_free) {
                ChowClass tw = ChowClass::divisor(n, e->twist.p, e->twist.q);
                return twist_chern(d->total_chern, d->rank, tw);
            }
            // K-class: twist the character and convert back (the rank-r twist
            // formula is only valid for honest rank-r bundles).
            ChowClass ch = chern_to_character(d->total_chern, d->rank, n) *
                           exp_divisor(n, e->twist.p, e->twist.q);
            return character_to_chern(ch, n);
        }
    }
    throw std::logic_error("chern_of: unreachable");
}

ChowClass chern_character(const ExprPtr& e, const Registry& reg) {
    return chern_to_character(chern_of(e, reg), rank_of(e, reg), e->n);
}

std::optional<Int> h_exact(const ExprPtr& e, int i, const GenericityConfig& cfg) {
    switch (e->kind) {
        case SheafExpr::Kind::Line:
            return h_line(i, e->twist.p, e->twist.q, e->n);
        case SheafExpr::Kind::Omega:
            return h_omega(i, e->l, e->twist.p, e->twist.q, e->n);
        case SheafExpr::Kind::Push:
            return h_model(e->sub, i, e->m);
        case SheafExpr::Kind::Sum: {
            Int acc = 0;
            for (const auto& c : e->children) {
                auto h = h_exact(c, i, cfg);
                if (!h) return std::nullopt;
                acc += *h;
            }
            return acc;
        }
        case SheafExpr::Kind::IdealTwist:
            if (i == 0) return Int(h0_ideal(e->comps, e->twist.p, e->twist.q, cfg));
            return std::nullopt;
        case SheafExpr::Kind::Named:
            return std::nullopt;
    }
    return std::nullopt;
}

ExprPtr ideal_structural_ses(const ExprPtr& ideal, Registry& reg) {
    if (ideal->kind != SheafExpr::Kind::IdealTwist)
        throw std::invalid_argument("ideal_structural_ses: expected ideal twist");
    std::vector<ExprPtr> parts;
    for (const auto& comp : ideal->comps)
        parts.push_back(push(comp, comp.restriction_degree(ideal->twist.p, ideal->twist.q)));
    ExprPtr quot = parts.size() == 1 ? parts.front() : sum(parts);
    reg.add_ses({"restrict:" + ideal->key(), ideal, line(ideal->n, ideal->twist), quot,
                 "RESTRICTION"});
    return quot;
}

ExprPtr serre_construct(const std::vector<SubvarietySpec>& X, TwistPair t,
                        const std::string& id, Registry& reg) {
    if (X.empty()) throw std::invalid_argument("serre_construct: empty component list");
    const int n = X.front().n;
    // hypotheses: h^1(S^-1) = h^2(S^-1) = 0 and S restricts to det(N_Y)
    if (h_line(1, -t.p, -t.q, n) != 0 || h_line(2, -t.p, -t.q, n) != 0)
        throw std::invalid_argument("serre_construct: h^1 or h^2 of S^-1 does not vanish");
    for (const auto& comp : X)
        if (comp.restriction_degree(t.p, t.q) != comp.det_normal_degree())
            throw std::invalid_argument("serre_construct: determinant mismatch on " +
                                        comp.name());
    ChowClass c1 = ChowClass::divisor(n, t.p, t.q);
    ChowClass c2 = ChowClass::scalar(n, 0);
    for (const auto& comp : X) c2 = c2 + comp.cycle_class();
    reg.define_named(id, {2, ChowClass::scalar(n, 1) + c1 + c2, true});
    ExprPtr F = named(n, id);
    ExprPtr I = ideal_twist(X, t);
    reg.add_ses({id + ":serre", line(n, {0, 0}), F, I, "SERRE-CONSTRUCTION"});
    ideal_structural_ses(I, reg);
    return F;
}

ExprPtr elementary_transform(const ExprPtr& e, const SubvarietySpec& Y,
                             const std::string& id, Registry& reg) {
    const int n = e->n;
    ExprPtr q = push(Y, 0);
    ChowClass cG = chern_of(e, reg) * chern_of(q, reg).inverse();
    reg.define_named(id, {rank_of(e, reg), cG, false});
    ExprPtr G = named(n, id);
    reg.add_ses({id + ":elem", G, e, q, "ELEMENTARY-TRANSFORM"});
    return G;
}

nlohmann::json expr_to_json(const ExprPtr& e) {
    nlohmann::json j;
    j["n"] = e->n;
    switch (e->kind) {
        case SheafExpr::Kind::Line:
            j["kind"] = "line";
            j["p"] = e->twist.p;
            j["q"] = e->twist.q;
            break;
        case SheafExpr::Kind::Omega:
            j["kind"] = "omega";
            j["l"] = e->l;
            j["p"] = e->twist.p;
            j["q"] = e->twist.q;
            break;
        case SheafExpr::Kind::Push:
            j["kind"] = "push";
            j["component"] = e->sub.name();
            j["m"] = e->m;
            break;
        case SheafExpr::Kind::Sum: {
            j["kind"] = "sum";
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : e->children) arr.push_back(expr_to_json(c));
            j["children"] = arr;
            break;
        }
        case SheafExpr::Kind::IdealTwist: {
            j["kind"] = "ideal";
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : e->comps) arr.push_back(c.name());
            j["components"] = arr;
            j["p"] = e->twist.p;
            j["q"] = e->twist.q;
            break;
        }
        case SheafExpr::Kind::Named:
            j["kind"] = "named";
            j["id"] = e->id;
            j["p"] = e->twist.p;
            j["q"] = e->twist.q;
            break;
    }
    return j;
}

namespace {

SubvarietySpec comp_from_name(const std::string& name, int n) {
    if (name == "wp") return SubvarietySpec::wp(n);
    if (name == "kappa") return SubvarietySpec::kappa(n);
    if (name == "Q1") return SubvarietySpec::q1();
    if (name == "Q2") return SubvarietySpec::q2();
    throw std::invalid_argument("unknown component name: " + name);
}

}  // namespace

ExprPtr expr_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "line") return line(n, {j.at("p").get<long>(), j.at("q").get<long>()});
    if (kind == "omega")
        return omega(n, j.at("l").get<int>(),
                     {j.at("p").get<long>(), j.at("q").get<long>()});
    if (kind == "push")
        return push(comp_from_name(j.at("component").get<std::string>(), n),
                    j.at("m").get<long>());
    if (kind == "sum") {
        std::vector<ExprPtr> kids;
        for (const auto& c : j.at("children")) kids.push_back(expr_from_json(c));
        return sum(std::move(kids));
    }
    if (kind == "ideal") {
        std::vector<SubvarietySpec> comps;
        for (const auto& c : j.at("components"))
            comps.push_back(comp_from_name(c.get<std::string>(), n));
        return ideal_twist(std::move(comps), {j.at("p").get<long>(), j.at("q").get<long>()});
    }
    if (kind == "named")
        return named(n, j.at("id").get<std::string>(),
                     {j.at("p").get<long>(), j.at("q").get<long>()});
    throw std::invalid_argument("expr_from_json: unknown kind " + kind);
}

nlohmann::json Registry::to_json() const {
    nlohmann::json j;
    nlohmann::json named = nlohmann::json::object();
    for (const auto& [id, d] : named_) {
        named[id] = {{"rank", d.rank},
                     {"total_chern", d.total_chern.str()},
                     {"locally_free", d.locally_free}};
    }
    j["named"] = named;
    nlohmann::json ses = nlohmann::json::array();
    for (const auto& s : ses_) {
        ses.push_back({{"name", s.name},
                       {"sub", s.sub->key()},
                       {"mid", s.mid->key()},
                       {"quot", s.quot->key()},
                       {"provenance", s.provenance}});
    }
    j["sequences"] = ses;
    return j;
}

}  // namespace blowup
