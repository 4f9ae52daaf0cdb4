#include "resconj/poly.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace resconj {

namespace {

void reduce_coeff(mpq_class& c, const Domain& d) {
  c.canonicalize();
  switch (d.kind) {
    case Domain::Kind::Integer:
      if (c.get_den() != 1)
        throw UsageError("non-integral coefficient " + c.get_str() + " in integer domain");
      break;
    case Domain::Kind::Rational:
      break;
    case Domain::Kind::Prime: {
      mpz_class p = d.prime;
      mpz_class num = c.get_num() % p;
      if (c.get_den() != 1) {
        mpz_class den = c.get_den() % p;
        if (den == 0) throw UsageError("prime divides a coefficient denominator");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * inv) % p;
      }
      if (num < 0) num += p;
      c = mpq_class(num);
      break;
    }
  }
}

struct DescendingCmp {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

}  // namespace

Domain Domain::gf(std::uint32_t p) {
  if (p < 2) throw UsageError("field characteristic must be a prime >= 2");
  if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw UsageError(std::to_string(p) + " is not prime");
  return {Kind::Prime, p};
}

std::string Domain::describe() const {
  switch (kind) {
    case Kind::Integer: return "ZZ";
    case Kind::Rational: return "QQ";
    case Kind::Prime: return "GF(" + std::to_string(prime) + ")";
  }
  return "?";
}

Poly::Poly(RingPtr ring, Domain domain) : ring_(std::move(ring)), domain_(domain) {
  if (!ring_) throw UsageError("polynomial needs a ring");
}

Poly::Poly(RingPtr ring, Domain domain, std::vector<Term> canonical_terms, int)
    : ring_(std::move(ring)), domain_(domain), terms_(std::move(canonical_terms)) {}

Poly Poly::constant(RingPtr ring, const mpq_class& c, Domain domain) {
  return from_terms(std::move(ring), domain, {Term{Monomial{}, c}});
}

Poly Poly::variable(RingPtr ring, Var v, Domain domain) {
  if (v.index >= ring->vars().size()) throw UsageError("variable outside ring");
  return from_terms(std::move(ring), domain, {Term{Monomial::variable(v), mpq_class(1)}});
}

Poly Poly::a(RingPtr ring, int k, Domain domain) {
  if (k < 0 || k > ring->m()) return Poly(std::move(ring), domain);
  Var v = ring->vars().a(k);
  return variable(std::move(ring), v, domain);
}

Poly Poly::from_terms(RingPtr ring, Domain domain, std::vector<Term> terms) {
  Poly p(std::move(ring), domain);
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Poly::canonicalize() {
  for (auto& t : terms_) reduce_coeff(t.coeff, domain_);
  const auto& order = ring_->order();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& x, const Term& y) { return order.greater(x.mono, y.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  if (domain_.is_prime())
    for (auto& t : out) reduce_coeff(t.coeff, domain_);
  std::erase_if(out, [](const Term& t) { return sgn(t.coeff) == 0; });
  terms_ = std::move(out);
}

void Poly::require_compatible(const Poly& g, const char* op) const {
  if (!same_ring(ring_, g.ring_)) throw UsageError(std::string(op) + ": polynomials live in different rings");
  if (domain_ != g.domain_)
    throw UsageError(std::string(op) + ": coefficient domain mismatch (" + domain_.describe() +
                     " vs " + g.domain_.describe() + ")");
}

const Term& Poly::lead() const {
  if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
  return terms_.front();
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::uses(Var v) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[v] != 0; });
}

unsigned Poly::degree_in(Var v) const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[v]);
  return d;
}

unsigned Poly::total_degree() const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  if (domain_.is_prime())
    for (auto& t : r.terms_) reduce_coeff(t.coeff, domain_);
  return r;
}

Poly& Poly::operator+=(const Poly& g) {
  require_compatible(g, "add");
  const auto& order = ring_->order();
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto i = terms_.begin();
  auto j = g.terms_.begin();
  while (i != terms_.end() || j != g.terms_.end()) {
    if (j == g.terms_.end() || (i != terms_.end() && order.greater(i->mono, j->mono))) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || order.greater(j->mono, i->mono)) {
      out.push_back(*j++);
    } else {
      mpq_class c = i->coeff + j->coeff;
      if (domain_.is_prime()) reduce_coeff(c, domain_);
      if (sgn(c) != 0) out.push_back(Term{i->mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& g) { return *this += -g; }

Poly operator*(const Poly& f, const Poly& g) {
  f.require_compatible(g, "mul");
  if (f.is_zero() || g.is_zero()) return Poly(f.ring_, f.domain_);
  if (g.size() == 1) return f.mul_term(g.terms_[0].mono, g.terms_[0].coeff);
  if (f.size() == 1) return g.mul_term(f.terms_[0].mono, f.terms_[0].coeff);
  std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
  acc.reserve(f.size() * g.size());
  for (const auto& s : f.terms_)
    for (const auto& t : g.terms_) {
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono);
      if (inserted)
        mpq_mul(it->second.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      else
        it->second += s.coeff * t.coeff;
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [mono, c] : acc)
    if (sgn(c) != 0) terms.push_back(Term{mono, std::move(c)});
  return Poly::from_terms(f.ring_, f.domain_, std::move(terms));
}

Poly& Poly::operator*=(const Poly& g) { return *this = *this * g; }

Poly Poly::pow(unsigned k) const {
  Poly result = constant(ring_, 1, domain_);
  Poly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::scaled(const mpq_class& c) const {
  return mul_term(Monomial{}, c);
}

Poly Poly::mul_term(const Monomial& mono, const mpq_class& c) const {
  mpq_class cc = c;
  reduce_coeff(cc, domain_);
  if (sgn(cc) == 0) return Poly(ring_, domain_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpq_class p = t.coeff * cc;
    if (domain_.is_prime()) reduce_coeff(p, domain_);
    out.push_back(Term{t.mono * mono, std::move(p)});
  }
  // Multiplying by a monomial preserves the order of terms.
  return Poly(ring_, domain_, std::move(out), 0);
}

Poly Poly::in_ring(RingPtr ring) const {
  if (!(ring->vars() == ring_->vars())) throw UsageError("in_ring: variable tables differ");
  return from_terms(std::move(ring), domain_, terms_);
}

Poly Poly::to_domain(Domain domain) const {
  if (domain_.is_prime() && !(domain == domain_))
    throw UsageError("cannot lift a prime-field polynomial to another domain");
  return from_terms(ring_, domain, terms_);
}

Poly Poly::main_degree_part(unsigned d) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (main_degree(t.mono) == d) out.push_back(t);
  return Poly(ring_, domain_, std::move(out), 0);
}

bool operator==(const Poly& f, const Poly& g) {
  if (!same_ring(f.ring_, g.ring_) || f.domain_ != g.domain_ || f.size() != g.size()) return false;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!(f.terms_[k].mono == g.terms_[k].mono) || f.terms_[k].coeff != g.terms_[k].coeff)
      return false;
  return true;
}

unsigned main_degree(const Monomial& mono) noexcept { return mono.degree_from(kAuxCount); }

Poly exact_div(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw UsageError("exact_div: division by zero polynomial");
  if (!same_ring(f.ring(), g.ring()) || f.domain() != g.domain())
    throw UsageError("exact_div: ring or domain mismatch");
  const auto& order = f.ring()->order();
  const Domain dom = f.domain();
  const Term& glead = g.lead();
  mpq_class ginv;
  if (dom.is_prime()) {
    mpz_class inv, p = dom.prime;
    mpz_invert(inv.get_mpz_t(), glead.coeff.get_num_mpz_t(), p.get_mpz_t());
    ginv = inv;
  } else {
    ginv = 1 / glead.coeff;
  }

  std::map<Monomial, mpq_class, DescendingCmp> rem(DescendingCmp{&order});
  for (const auto& t : f.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!glead.mono.divides(top->first))
      throw InexactDivision("exact_div: divisor does not divide dividend");
    Monomial qm = top->first / glead.mono;
    mpq_class qc = top->second * ginv;
    if (dom.kind == Domain::Kind::Integer && qc.get_den() != 1)
      throw InexactDivision("exact_div: quotient is not integral");
    if (dom.is_prime()) reduce_coeff(qc, dom);
    for (const auto& t : g.terms()) {
      auto [it, inserted] = rem.try_emplace(t.mono * qm);
      it->second -= qc * t.coeff;
      if (dom.is_prime()) reduce_coeff(it->second, dom);
      if (sgn(it->second) == 0) rem.erase(it);
    }
    quotient.push_back(Term{qm, std::move(qc)});
  }
  return Poly::from_terms(f.ring(), dom, std::move(quotient));
}

Poly coeff_of(const Poly& f, Var v, unsigned k) {
  if (v.index >= f.ring()->vars().size()) throw UsageError("coeff_of: variable outside ring");
  std::vector<Term> out;
  for (const auto& t : f.terms())
    if (t.mono[v] == k) {
      Monomial m = t.mono;
      m.set(v, 0);
      out.push_back(Term{m, t.coeff});
    }
  return Poly::from_terms(f.ring(), f.domain(), std::move(out));
}

Poly substitute(const Poly& f, const std::map<Var, Poly>& assignments) {
  for (const auto& [v, p] : assignments) {
    if (v.index >= f.ring()->vars().size()) throw UsageError("substitute: variable outside ring");
    if (!same_ring(p.ring(), f.ring()) || p.domain() != f.domain())
      throw UsageError("substitute: replacement lives in a different ring or domain");
  }
  std::map<std::pair<std::uint8_t, unsigned>, Poly> powers;
  auto power = [&](Var v, unsigned e) -> const Poly& {
    auto key = std::make_pair(v.index, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, assignments.at(v).pow(e)).first;
    return it->second;
  };
  Poly result(f.ring(), f.domain());
  std::vector<Term> untouched;
  for (const auto& t : f.terms()) {
    Monomial rest = t.mono;
    Poly factor = Poly::constant(f.ring(), t.coeff, f.domain());
    bool touched = false;
    for (const auto& [v, p] : assignments) {
      unsigned e = t.mono[v];
      if (e == 0) continue;
      rest.set(v, 0);
      factor = factor * power(v, e);
      touched = true;
    }
    if (!touched) {
      untouched.push_back(t);
      continue;
    }
    result += factor.mul_term(rest, 1);
  }
  result += Poly::from_terms(f.ring(), f.domain(), std::move(untouched));
  return result;
}

std::map<Var, Poly> reversal_assignment(const RingPtr& ring, Domain domain) {
  std::map<Var, Poly> out;
  const int m = ring->m();
  for (int k = 0; k <= m; ++k) out.emplace(ring->vars().a(k), Poly::a(ring, m - k, domain));
  return out;
}

Homogeneity is_homogeneous(const Poly& f) {
  Homogeneity h;
  if (f.is_zero()) {
    h.zero = true;
    return h;
  }
  const unsigned d = main_degree(f.terms().front().mono);
  for (const auto& t : f.terms())
    if (main_degree(t.mono) != d) return h;
  h.degree = d;
  return h;
}

Poly reduce_mod_p(const Poly& f, std::uint32_t p) {
  if (f.domain().is_prime()) throw UsageError("reduce_mod_p: polynomial is already over a prime field");
  return Poly::from_terms(f.ring(), Domain::gf(p), f.terms());
}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip_ws();
    }
    if (pos_ >= text_.size()) throw ParseError("empty polynomial", pos_);
    terms.push_back(term(negative));
    skip_ws();
    while (pos_ < text_.size()) {
      char c = get();
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected '") + c + "'", pos_ - 1);
      skip_ws();
      terms.push_back(term(c == '-'));
      skip_ws();
    }
    return terms;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Term term(bool negative) {
    Term t{Monomial{}, mpq_class(negative ? -1 : 1)};
    bool first = true;
    while (true) {
      skip_ws();
      if (!first) {
        if (peek() != '*') break;
        ++pos_;
        skip_ws();
      }
      first = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        mpq_class c(integer());
        skip_ws();
        if (peek() == '/') {
          ++pos_;
          skip_ws();
          std::size_t at = pos_;
          mpz_class den = integer();
          if (den == 0) throw ParseError("zero denominator", at);
          c /= mpq_class(den);
        }
        t.coeff *= c;
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        auto name = text_.substr(start, pos_ - start);
        auto v = ring_->vars().lookup(name);
        if (!v) throw ParseError("unknown variable '" + std::string(name) + "'", start);
        unsigned e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          std::size_t at = pos_;
          mpz_class ez = integer();
          if (ez > kMaxExponent) throw ParseError("exponent too large", at);
          e = static_cast<unsigned>(ez.get_ui());
        }
        t.mono = t.mono * Monomial::variable(*v, e);
      } else {
        throw ParseError("expected coefficient or variable", pos_);
      }
    }
    return t;
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text, Domain domain) {
  auto terms = Parser(ring, text).parse();
  if (domain.kind == Domain::Kind::Integer &&
      std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.coeff.get_den() != 1; }))
    domain = Domain::rational();
  return Poly::from_terms(ring, domain, std::move(terms));
}

std::string format(const Poly& f) {
  if (f.is_zero()) return "0";
  const auto& vars = f.ring()->vars();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    mpq_class c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < vars.size(); ++i) {
      unsigned e = t.mono.exp(i);
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += vars.name(Var{static_cast<std::uint8_t>(i)});
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + '*';
      out += mono;
    }
  }
  return out;
}

}  // namespace resconj
