#include "avk/gaussian.hpp"

#include "avk/error.hpp"

namespace avk {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Scalar n = b.norm();
  if (n.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  GaussianRational num = a * b.conj();
  return {num.re_ / n, num.im_ / n};
}

GaussianRational GaussianRational::parse(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kParse, "empty Gaussian rational");
  if (text.back() != 'i') return {Scalar::parse(text)};
  std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not at position 0 and not part of a slash.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
      split = i;
      break;
    }
  }
  auto parse_im = [](std::string s) {
    if (s.empty() || s == "+") return Scalar(1);
    if (s == "-") return Scalar(-1);
    return Scalar::parse(s);
  };
  if (split == std::string::npos) return {Scalar(0), parse_im(body)};
  return {Scalar::parse(body.substr(0, split)), parse_im(body.substr(split))};
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string im = im_.to_string() + "i";
  if (re_.is_zero()) return im;
  return re_.to_string() + (im_.sign() > 0 ? "+" : "") + im;
}

}  // namespace avk
