#include "wg/int.hpp"

namespace wg {

std::string decimal_string(const Rat& x, int digits) {
  Rat a = x;
  bool neg = a < 0;
  if (neg) a = -a;
  Int scale = pow_int(10, static_cast<unsigned long>(digits));
  // truncate toward zero
  Int scaled = (a.get_num() * scale) / a.get_den();
  Int ip = scaled / scale;
  Int frac = scaled % scale;
  std::string f = frac.get_str();
  f.insert(f.begin(), static_cast<size_t>(digits) - f.size(), '0');
  std::string s = ip.get_str();
  if (digits > 0) s += "." + f;
  if (neg && (ip != 0 || frac != 0)) s = "-" + s;
  return s;
}

Rat round_down(const Rat& x, int digits) {
  Int scale = pow_int(10, static_cast<unsigned long>(digits));
  Int m = fdiv(x.get_num() * scale, x.get_den());
  Rat r(m, scale);
  r.canonicalize();
  return r;
}

} // namespace wg
