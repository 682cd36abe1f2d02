#include "blowup/beilinson.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

ContributionRow row(int s, std::vector<ContributionEntry> entries, int n) {
    ContributionRow r;
    r.s = s;
    for (const auto& e : entries)
        if (e.q >= 0 && e.q <= n - 1) r.entries.push_back(e);
    return r;
}

// Simplified bundle for a summand: Omega^0 = O and Omega^{n-1} on the base is
// O(-n), so Omega^{n-1}(-h, n-1) = O(-h, -1).
ExprPtr summand_bundle(int n, int h, int q) {
    if (q == 0) return line(n, {-h, 0});
    if (q == n - 1) return line(n, {-h, -1});
    return omega(n, q, {-h, q});
}

}  // namespace

std::vector<ContributionRow> contribution_tables(int p, int n) {
    switch (p) {
        case -2:
            // Obstruction list for C^{-2}: degrees s = h + q - 2 in {0, 1}.
            return {row(0, {{0, 2}, {1, 1}}, n), row(1, {{0, 3}, {1, 2}}, n)};
        case -1:
            return {row(0, {{0, 1}, {1, 0}}, n), row(1, {{0, 2}, {1, 1}}, n),
                    row(n - 1, {{1, n - 1}}, n),
                    row(n, {{0, n - 1}, {1, n - 2}}, n)};
        case 0:
            return {row(0, {{0, 0}}, n), row(1, {{0, 1}, {1, 0}}, n),
                    row(n - 1, {{0, n - 1}, {1, n - 2}}, n),
                    row(n, {{1, n - 1}}, n)};
        case 1:
            return {row(0, {}, n), row(1, {{0, 0}}, n),
                    row(n - 1, {{0, n - 2}, {1, n - 3}}, n),
                    row(n, {{0, n - 1}, {1, n - 2}}, n)};
        case 2:
            // Obstruction list for C^2: H^n(F(0,2-n)), H^n(F(-1,4-n)),
            // H^{n-1}(F(0,3-n)), H^{n-1}(F(-1,5-n)).
            return {row(n - 1, {{0, n - 3}, {1, n - 4}}, n),
                    row(n, {{0, n - 2}, {1, n - 3}}, n)};
        default:
            throw std::invalid_argument("contribution tables cover |p| <= 2");
    }
}

long MonadTerm::rank() const {
    long r = 0;
    for (const auto& s : summands) r += to_long(s.mult) * s.bundle->rank();
    return r;
}

ChowClass MonadTerm::total_chern(const Registry& reg) const {
    int n = summands.empty() ? 1 : summands.front().bundle->n;
    ChowClass c = ChowClass::scalar(n, 1);
    for (const auto& s : summands) {
        ChowClass b = chern_of(s.bundle, reg);
        for (Int k = 0; k < s.mult; ++k) c = c * b;
    }
    return c;
}

ChowClass MonadTerm::character(const Registry& reg) const {
    int n = summands.empty() ? 1 : summands.front().bundle->n;
    ChowClass c = ChowClass::scalar(n, 0);
    for (const auto& s : summands)
        c = c + chern_character(s.bundle, reg) * Rat(s.mult);
    return c;
}

namespace {

std::string bundle_name(const MonadSummand& s) {
    int n = s.bundle->n;
    std::ostringstream os;
    if (s.q == 0 || s.q == n - 1) {
        os << "O" << s.bundle->twist.str();
    } else {
        os << "Omega^" << s.q << s.bundle->twist.str();
    }
    if (s.mult != 1) os << "^" << s.mult.get_str();
    return os.str();
}

}  // namespace

std::string MonadTerm::str() const {
    if (summands.empty()) return "0";
    std::string out;
    for (const auto& s : summands) {
        if (!out.empty()) out += " + ";
        out += bundle_name(s);
    }
    return out;
}

nlohmann::json MonadTerm::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["summands"] = nlohmann::json::array();
    for (const auto& s : summands) {
        nlohmann::json js;
        js["mult"] = s.mult.get_str();
        js["s"] = s.s;
        js["h"] = s.h;
        js["q"] = s.q;
        js["query_twist"] = {s.query_twist.p, s.query_twist.q};
        js["bundle"] = expr_to_json(s.bundle);
        j["summands"].push_back(js);
    }
    j["queries"] = nlohmann::json::array();
    for (const auto& [t, s] : queries) j["queries"].push_back({t.p, t.q, s});
    j["display"] = str();
    return j;
}

MonadTerm c_terms(CohomologySolver& solver, const ExprPtr& F, int p, int n) {
    MonadTerm term;
    term.p = p;
    std::vector<std::tuple<int, int, int>> seen;  // (s, h, q)
    for (const auto& r : contribution_tables(p, n)) {
        for (const auto& e : r.entries) {
            if (std::find(seen.begin(), seen.end(),
                          std::make_tuple(r.s, e.h, e.q)) != seen.end())
                continue;
            seen.emplace_back(r.s, e.h, e.q);
            TwistPair t{-e.h, e.h - e.q};
            term.queries.emplace_back(t, r.s);
            DimInterval v = solver.h(twist(F, t), r.s);
            if (!v.exact())
                throw std::runtime_error("table entry h^" + std::to_string(r.s) +
                                         "(F" + t.str() + ") is not exact: " + v.str());
            if (v.lo == 0) continue;
            MonadSummand s;
            s.mult = v.lo;
            s.s = r.s;
            s.h = e.h;
            s.q = e.q;
            s.query_twist = t;
            s.bundle = summand_bundle(n, e.h, e.q);
            term.summands.push_back(s);
        }
    }
    return term;
}

std::string Monad::str() const {
    return cm1.str() + " -> " + c0.str() + " -> " + c1.str();
}

nlohmann::json Monad::to_json() const {
    nlohmann::json j;
    j["sheaf"] = expr_to_json(E);
    j["C-1"] = cm1.to_json();
    j["C0"] = c0.to_json();
    j["C1"] = c1.to_json();
    j["display"] = str();
    return j;
}

Monad monad_for(const ExprPtr& E, CohomologySolver& solver, int n) {
    for (int p : {-2, 2}) {
        MonadTerm obs = c_terms(solver, E, p, n);
        if (!obs.zero())
            throw std::runtime_error("nonvanishing C^" + std::to_string(p) +
                                     ": " + obs.str());
    }
    Monad m;
    m.E = E;
    m.cm1 = c_terms(solver, E, -1, n);
    m.c0 = c_terms(solver, E, 0, n);
    m.c1 = c_terms(solver, E, 1, n);
    return m;
}

}  // namespace blowup
