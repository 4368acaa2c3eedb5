#include "avk/scalar.hpp"

#include <cctype>

#include "avk/error.hpp"

namespace avk {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  q_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw Error(ErrorCode::kParse, "not an exact rational: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Scalar(parse_integer(num));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::kParse, "bad denominator in '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(parse_integer(num), d);
  q.canonicalize();
  return Scalar(q);
}

std::optional<long> Scalar::to_long() const {
  if (!is_integer() || !q_.get_num().fits_slong_p()) return std::nullopt;
  return q_.get_num().get_si();
}

mpz_class Scalar::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Scalar::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Scalar::hash() const {
  const mpz_srcptr num = q_.get_num_mpz_t();
  const mpz_srcptr den = q_.get_den_mpz_t();
  std::size_t h = mpz_get_ui(num) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(mpz_size(num)) + static_cast<std::size_t>(mpz_sgn(num) + 7);
  h = (h << 7) ^ (h >> 3) ^ (mpz_get_ui(den) * 0xc2b2ae3d27d4eb4fULL);
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace avk
