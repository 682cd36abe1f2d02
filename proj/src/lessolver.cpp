#include "blowup/lessolver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace blowup {

std::string DimInterval::str() const {
    if (exact()) return lo.get_str();
    if (!has_hi) return "[" + lo.get_str() + ",inf)";
    return "[" + lo.get_str() + "," + hi.get_str() + "]";
}

std::string SignedInterval::str() const {
    if (exact()) return lo.get_str();
    std::string l = has_lo ? lo.get_str() : "-inf";
    std::string h = has_hi ? hi.get_str() : "inf";
    return "[" + l + "," + h + "]";
}

namespace {

DimInterval intersect(const DimInterval& a, const DimInterval& b) {
    DimInterval r;
    r.lo = std::max(a.lo, b.lo);
    r.has_hi = a.has_hi || b.has_hi;
    if (a.has_hi && b.has_hi)
        r.hi = std::min(a.hi, b.hi);
    else if (a.has_hi)
        r.hi = a.hi;
    else
        r.hi = b.hi;
    return r;
}

}  // namespace

CohomologySolver::CohomologySolver(const Registry& reg, GenericityConfig cfg)
    : reg_(reg), cfg_(cfg) {
    for (const auto& ses : reg_.sequences()) add_ses_constraints(ses);
}

std::string CohomologySolver::var_key(const ExprPtr& e, int i) const {
    return e->key() + "#" + std::to_string(i);
}

DimInterval& CohomologySolver::var(const std::string& key) {
    auto it = vars_.find(key);
    if (it == vars_.end()) it = vars_.emplace(key, DimInterval::unknown()).first;
    return it->second;
}

bool CohomologySolver::tighten(const std::string& key, const DimInterval& v,
                               const std::string& why) {
    DimInterval& cur = var(key);
    DimInterval next = intersect(cur, v);
    if (next == cur) return false;
    if (next.empty())
        throw std::runtime_error("solver inconsistency at " + key + " via " + why +
                                 ": " + cur.str() + " cap " + v.str());
    trace_.push_back(why + ": " + key + " := " + next.str());
    cur = next;
    dirty_ = true;
    return true;
}

void CohomologySolver::track(const ExprPtr& e) {
    std::string k = e->key();
    if (tracked_.count(k)) return;
    tracked_[k] = e;
    dirty_ = true;
    const int n = e->n;
    for (int i = 0; i <= n; ++i) {
        std::string vk = var_key(e, i);
        var(vk);
        auto hv = h_exact(e, i, cfg_);
        if (hv) {
            std::string prov =
                e->kind == SheafExpr::Kind::IdealTwist ? "ORACLE" : "FORMULA";
            tighten(vk, DimInterval::exact_val(*hv), prov);
        }
    }
    // Euler characteristic when the Chern data is available.
    try {
        Rat chi = hrr_chi(chern_character(e, reg_), n);
        if (is_integer(chi)) {
            ChiConstraint c;
            c.name = "CHI:" + k;
            for (int i = 0; i <= n; ++i) c.terms.push_back(var_key(e, i));
            c.chi = Int(chi.get_num());
            chi_.push_back(std::move(c));
        }
    } catch (const std::logic_error&) {
        // unknown named sheaf: no chi constraint
    }
}

void CohomologySolver::add_fact(const ExprPtr& e, int i, DimInterval v,
                                const std::string& provenance) {
    track(e);
    tighten(var_key(e, i), v, provenance);
}

void CohomologySolver::add_ses_constraints(const SESRecord& ses) {
    std::string sig = ses.sub->key() + "|" + ses.mid->key() + "|" + ses.quot->key();
    if (std::find(seen_ses_.begin(), seen_ses_.end(), sig) != seen_ses_.end()) return;
    seen_ses_.push_back(sig);
    track(ses.sub);
    track(ses.mid);
    track(ses.quot);
    LesConstraint c;
    c.name = "LES:" + ses.name;
    const int n = ses.sub->n;
    for (int i = 0; i <= n; ++i) {
        c.terms.push_back(var_key(ses.sub, i));
        c.terms.push_back(var_key(ses.mid, i));
        c.terms.push_back(var_key(ses.quot, i));
    }
    les_.push_back(std::move(c));
    dirty_ = true;
}

void CohomologySolver::instantiate_twists(const std::vector<TwistPair>& twists) {
    auto base = reg_.sequences();
    for (const auto& ses : base) {
        for (const auto& t : twists) {
            SESRecord s{ses.name + "@" + t.str(), twist(ses.sub, t), twist(ses.mid, t),
                        twist(ses.quot, t)};
            add_ses_constraints(s);
        }
    }
}

void CohomologySolver::add_duality_links() {
    std::set<std::pair<std::string, std::string>> links;
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = tracked_;
        for (const auto& [k, e] : snapshot) {
            if (e->kind != SheafExpr::Kind::Named) continue;
            const NamedData* d = reg_.named_data(e->id);
            if (!d || !d->locally_free || d->rank != 2) continue;
            ChowClass c1 = d->total_chern.graded_part(1);
            Rat f1 = c1.coeff_xi(1), f2 = c1.coeff_alpha(1);
            if (!is_integer(f1) || !is_integer(f2)) continue;
            const int n = e->n;
            // E^v = E(-c1); partner twist so that h^i(E(t)) = h^{n-i}(E(t') )
            // with t' = omega - c1 - t.
            TwistPair t2{-rat_to_long(f1) - 2 - e->twist.p,
                         -rat_to_long(f2) + 1 - n - e->twist.q};
            ExprPtr partner = named(n, e->id, t2);
            if (!tracked_.count(partner->key())) {
                track(partner);
                grew = true;
            }
            for (int i = 0; i <= n; ++i) {
                std::string a = var_key(e, i);
                std::string b = var_key(partner, n - i);
                auto pr = std::minmax(a, b);
                if (links.insert({pr.first, pr.second}).second) {
                    eq_.push_back({a, b});
                    dirty_ = true;
                }
            }
        }
    }
}

bool CohomologySolver::propagate_les(const LesConstraint& c) {
    const size_t L = c.terms.size();
    std::vector<DimInterval> d(L);
    for (size_t j = 0; j < L; ++j) d[j] = var(c.terms[j]);
    // ranks r_0..r_L with r_0 = r_L = 0 and d_j = r_j + r_{j+1}
    std::vector<DimInterval> r(L + 1, DimInterval::unknown());
    r[0] = DimInterval::exact_val(0);
    r[L] = DimInterval::exact_val(0);
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 200) {
        moved = false;
        for (size_t j = 1; j < L; ++j) {
            DimInterval nv = r[j];
            // d_{j-1} = r_{j-1} + r_j
            if (d[j - 1].has_hi) {
                Int ub = d[j - 1].hi - r[j - 1].lo;
                if (!nv.has_hi || ub < nv.hi) {
                    nv.has_hi = true;
                    nv.hi = ub;
                }
            }
            if (r[j - 1].has_hi) {
                Int lb = d[j - 1].lo - r[j - 1].hi;
                if (lb > nv.lo) nv.lo = lb;
            }
            // d_j = r_j + r_{j+1}
            if (d[j].has_hi) {
                Int ub = d[j].hi - r[j + 1].lo;
                if (!nv.has_hi || ub < nv.hi) {
                    nv.has_hi = true;
                    nv.hi = ub;
                }
            }
            if (r[j + 1].has_hi) {
                Int lb = d[j].lo - r[j + 1].hi;
                if (lb > nv.lo) nv.lo = lb;
            }
            if (nv.lo < 0) nv.lo = 0;
            if (nv.empty())
                throw std::runtime_error("solver inconsistency in " + c.name);
            if (!(nv == r[j])) {
                r[j] = nv;
                moved = true;
            }
        }
    }
    bool changed = false;
    for (size_t j = 0; j < L; ++j) {
        DimInterval nv;
        nv.lo = r[j].lo + r[j + 1].lo;
        nv.has_hi = r[j].has_hi && r[j + 1].has_hi;
        if (nv.has_hi) nv.hi = r[j].hi + r[j + 1].hi;
        changed |= tighten(c.terms[j], nv, c.name);
    }
    return changed;
}

bool CohomologySolver::propagate_chi(const ChiConstraint& c) {
    const size_t L = c.terms.size();
    std::vector<DimInterval> d(L);
    for (size_t j = 0; j < L; ++j) d[j] = var(c.terms[j]);
    bool changed = false;
    for (size_t i = 0; i < L; ++i) {
        // sign of term i in the alternating sum
        int si = (i % 2 == 0) ? 1 : -1;
        // d_i = si * (chi - sum_{j != i} sj d_j)
        Int lo = si > 0 ? c.chi : -c.chi;
        Int hi = lo;
        bool has_lo = true, has_hi = true;
        for (size_t j = 0; j < L; ++j) {
            if (j == i) continue;
            int sj = (j % 2 == 0) ? 1 : -1;
            // contribution of -si*sj*d_j
            int s = -si * sj;
            if (s > 0) {
                lo += d[j].lo;
                if (d[j].has_hi)
                    hi += d[j].hi;
                else
                    has_hi = false;
            } else {
                hi -= d[j].lo;
                if (d[j].has_hi)
                    lo -= d[j].hi;
                else
                    has_lo = false;
            }
        }
        DimInterval nv = DimInterval::unknown();
        if (has_lo && lo > 0) nv.lo = lo;
        if (has_hi) {
            nv.has_hi = true;
            nv.hi = hi;
        }
        changed |= tighten(c.terms[i], nv, c.name);
    }
    return changed;
}

bool CohomologySolver::propagate_eq(const EqConstraint& c) {
    DimInterval a = var(c.a), b = var(c.b);
    bool changed = tighten(c.a, b, "DUAL:" + c.b);
    changed |= tighten(c.b, a, "DUAL:" + c.a);
    return changed;
}

bool CohomologySolver::enumerate_components() {
    // connected components of non-exact variables through shared constraints
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find =
        [&](const std::string& x) -> std::string {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        std::string r = find(it->second);
        parent[x] = r;
        return r;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[std::min(ra, rb)] = std::max(ra, rb);
    };
    auto nonexact = [&](const std::string& k) { return !var(k).exact(); };
    auto touch = [&](const std::vector<std::string>& terms) {
        std::string first;
        for (const auto& t : terms) {
            if (!nonexact(t)) continue;
            parent.emplace(t, t);
            if (first.empty())
                first = t;
            else
                unite(first, t);
        }
    };
    for (const auto& c : les_) touch(c.terms);
    for (const auto& c : chi_) touch(c.terms);
    for (const auto& c : eq_) touch({c.a, c.b});

    std::map<std::string, std::vector<std::string>> comps;
    for (const auto& [k, _] : parent) comps[find(k)].push_back(k);

    bool changed = false;
    for (auto& [root, members] : comps) {
        std::sort(members.begin(), members.end());
        // all members must be bounded; cap the search space
        Int space = 1;
        bool ok = true;
        for (const auto& k : members) {
            const DimInterval& iv = var(k);
            if (!iv.has_hi) {
                ok = false;
                break;
            }
            space *= iv.hi - iv.lo + 1;
            if (space > 100000) {
                ok = false;
                break;
            }
        }
        if (!ok || members.empty()) continue;

        std::set<std::string> memberset(members.begin(), members.end());
        auto fully_fixed = [&](const std::vector<std::string>& terms,
                               const std::map<std::string, Int>& assign) {
            for (const auto& t : terms)
                if (!var(t).exact() && !assign.count(t)) return false;
            return true;
        };
        auto value_of = [&](const std::string& t, const std::map<std::string, Int>& a) {
            const DimInterval& iv = var(t);
            if (iv.exact()) return iv.lo;
            return a.at(t);
        };

        // collect the constraints decidable within this component
        std::vector<const LesConstraint*> cl;
        std::vector<const ChiConstraint*> cc;
        std::vector<const EqConstraint*> ce;
        for (const auto& c : les_) {
            bool rel = false, dec = true;
            for (const auto& t : c.terms) {
                if (var(t).exact()) continue;
                if (memberset.count(t))
                    rel = true;
                else
                    dec = false;
            }
            if (rel && dec) cl.push_back(&c);
        }
        for (const auto& c : chi_) {
            bool rel = false, dec = true;
            for (const auto& t : c.terms) {
                if (var(t).exact()) continue;
                if (memberset.count(t))
                    rel = true;
                else
                    dec = false;
            }
            if (rel && dec) cc.push_back(&c);
        }
        for (const auto& c : eq_) {
            bool rel = false, dec = true;
            for (const auto& t : {c.a, c.b}) {
                if (var(t).exact()) continue;
                if (memberset.count(t))
                    rel = true;
                else
                    dec = false;
            }
            if (rel && dec) ce.push_back(&c);
        }
        if (cl.empty() && cc.empty() && ce.empty()) continue;

        std::map<std::string, Int> assign;
        std::map<std::string, std::pair<Int, Int>> hull;  // feasible min/max
        bool any_feasible = false;
        std::function<void(size_t)> rec = [&](size_t idx) {
            if (idx == members.size()) {
                for (const auto* c : cl) {
                    if (!fully_fixed(c->terms, assign)) continue;
                    Int r = 0;
                    for (const auto& t : c->terms) {
                        r = value_of(t, assign) - r;
                        if (r < 0) return;
                    }
                    if (r != 0) return;
                }
                for (const auto* c : cc) {
                    if (!fully_fixed(c->terms, assign)) continue;
                    Int s = 0;
                    int sg = 1;
                    for (const auto& t : c->terms) {
                        s += sg * value_of(t, assign);
                        sg = -sg;
                    }
                    if (s != c->chi) return;
                }
                for (const auto* c : ce) {
                    if (!fully_fixed({c->a, c->b}, assign)) continue;
                    if (value_of(c->a, assign) != value_of(c->b, assign)) return;
                }
                any_feasible = true;
                for (const auto& [k, v] : assign) {
                    auto it = hull.find(k);
                    if (it == hull.end())
                        hull[k] = {v, v};
                    else {
                        it->second.first = std::min(it->second.first, v);
                        it->second.second = std::max(it->second.second, v);
                    }
                }
                return;
            }
            const std::string& k = members[idx];
            const DimInterval iv = var(k);
            for (Int v = iv.lo; v <= iv.hi; ++v) {
                assign[k] = v;
                rec(idx + 1);
            }
            assign.erase(k);
        };
        rec(0);
        if (!any_feasible)
            throw std::runtime_error("solver inconsistency: no feasible assignment in component " +
                                     root);
        for (const auto& [k, mm] : hull)
            changed |= tighten(k, DimInterval::range(mm.first, mm.second),
                               "ENUM:" + root);
    }
    return changed;
}

void CohomologySolver::solve() {
    if (!dirty_) return;
    for (int round = 0; round < 8; ++round) {
        bool changed = true;
        int guard = 0;
        while (changed && guard++ < 2000) {
            changed = false;
            for (const auto& c : les_) changed |= propagate_les(c);
            for (const auto& c : chi_) changed |= propagate_chi(c);
            for (const auto& c : eq_) changed |= propagate_eq(c);
        }
        if (!enumerate_components()) break;
    }
    dirty_ = false;
}

DimInterval CohomologySolver::h(const ExprPtr& e, int i) {
    if (i < 0 || i > e->n) return DimInterval::exact_val(0);
    track(e);
    solve();
    return var(var_key(e, i));
}

std::vector<DimInterval> CohomologySolver::h_all(const ExprPtr& e) {
    std::vector<DimInterval> v;
    for (int i = 0; i <= e->n; ++i) v.push_back(h(e, i));
    return v;
}

SignedInterval CohomologySolver::delta01(const ExprPtr& e) {
    DimInterval h0 = h(e, 0), h1 = h(e, 1);
    SignedInterval s;
    s.has_lo = h1.has_hi;
    if (s.has_lo) s.lo = h0.lo - h1.hi;
    s.has_hi = h0.has_hi;
    if (s.has_hi) s.hi = h0.hi - h1.lo;
    return s;
}

nlohmann::json CohomologySolver::report() const {
    nlohmann::json j;
    nlohmann::json vars = nlohmann::json::object();
    for (const auto& [k, iv] : vars_) {
        nlohmann::json e;
        e["lo"] = iv.lo.get_str();
        if (iv.has_hi) e["hi"] = iv.hi.get_str();
        e["exact"] = iv.exact();
        vars[k] = e;
    }
    j["dimensions"] = vars;
    j["trace"] = trace_;
    return j;
}

}  // namespace blowup
