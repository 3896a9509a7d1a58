#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimerglue {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse exponent vector, sorted by variable id. Equality of monomials is
// structural equality of these vectors.
struct Monomial {
    std::vector<std::pair<uint32_t, int32_t>> exps;  // (var, exponent != 0)

    static Monomial one() { return {}; }
    static Monomial var(uint32_t v, int32_t e = 1);

    Monomial operator*(const Monomial& o) const;
    bool operator<(const Monomial& o) const { return exps < o.exps; }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool has_negative() const;
    int64_t total_degree() const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Negative exponents (Laurent terms) are rejected unless the polynomial was
// created in laurent mode; only the Ising transform uses that mode.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(const Rational& c) { add_term(Monomial::one(), c); }
    static MultiPoly zero() { return MultiPoly(); }
    static MultiPoly one() { return MultiPoly(Rational(1)); }
    static MultiPoly variable(uint32_t v) {
        MultiPoly p;
        p.add_term(Monomial::var(v), 1);
        return p;
    }
    static MultiPoly laurent() {
        MultiPoly p;
        p.laurent_ = true;
        return p;
    }

    void add_term(const Monomial& m, const Rational& c);
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& c) const;
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    bool laurent_mode() const { return laurent_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coeff(const Monomial& m) const;
    Rational coeff_sum() const;  // evaluation at all variables = 1

    // Substitute variable -> polynomial (used by the van der Waerden check).
    MultiPoly substitute(uint32_t v, const MultiPoly& repl) const;

    std::string str(const std::vector<std::string>* var_names = nullptr) const;

  private:
    std::map<Monomial, Rational> terms_;
    bool laurent_ = false;
};

}  // namespace dimerglue
