#include "wonder/rational.hpp"

#include <stdexcept>

namespace wonder {

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("bad rational literal '" + s + "'");
    return Rat(mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s)));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("bad rational literal '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rat(mpq_class(n, d));
}

std::string Rat::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rat binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(mpq_class(r));
}

}  // namespace wonder
