#include "dimerglue/poly.hpp"

#include <sstream>

namespace dimerglue {

Monomial Monomial::var(uint32_t v, int32_t e) {
    Monomial m;
    if (e != 0) m.exps.push_back({v, e});
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.exps.reserve(exps.size() + o.exps.size());
    size_t i = 0, j = 0;
    while (i < exps.size() && j < o.exps.size()) {
        if (exps[i].first < o.exps[j].first) {
            r.exps.push_back(exps[i++]);
        } else if (exps[i].first > o.exps[j].first) {
            r.exps.push_back(o.exps[j++]);
        } else {
            int32_t e = exps[i].second + o.exps[j].second;
            if (e != 0) r.exps.push_back({exps[i].first, e});
            i++, j++;
        }
    }
    while (i < exps.size()) r.exps.push_back(exps[i++]);
    while (j < o.exps.size()) r.exps.push_back(o.exps[j++]);
    return r;
}

bool Monomial::has_negative() const {
    for (auto& [v, e] : exps)
        if (e < 0) return true;
    return false;
}

int64_t Monomial::total_degree() const {
    int64_t d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (!laurent_ && m.has_negative())
        throw ValidationError("negative exponent in non-Laurent polynomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    laurent_ = laurent_ || o.laurent_;
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    laurent_ = laurent_ || o.laurent_;
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r;
    r.laurent_ = laurent_ || o.laurent_;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly r;
    r.laurent_ = laurent_;
    if (c == 0) return r;
    for (auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

Rational MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::coeff_sum() const {
    Rational s = 0;
    for (auto& [m, c] : terms_) s += c;
    return s;
}

MultiPoly MultiPoly::substitute(uint32_t v, const MultiPoly& repl) const {
    MultiPoly out;
    out.laurent_ = laurent_ || repl.laurent_;
    for (auto& [m, c] : terms_) {
        int32_t e = 0;
        Monomial rest;
        for (auto& [vv, ee] : m.exps) {
            if (vv == v)
                e = ee;
            else
                rest.exps.push_back({vv, ee});
        }
        MultiPoly term;
        term.laurent_ = out.laurent_;
        term.add_term(rest, c);
        if (e < 0) throw ValidationError("substitute into negative exponent");
        for (int32_t t = 0; t < e; t++) term = term * repl;
        out += term;
    }
    return out;
}

std::string MultiPoly::str(const std::vector<std::string>* var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool coeff_one = (ac == 1) && !m.exps.empty();
        if (!coeff_one) os << ac.str();
        bool need_star = !coeff_one;
        for (auto& [v, e] : m.exps) {
            if (need_star) os << "*";
            if (var_names && v < var_names->size())
                os << (*var_names)[v];
            else
                os << "x" << (v + 1);
            if (e != 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace dimerglue
