#include "hft/rational.hpp"

namespace hft {

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail_input("empty rational literal");
  std::string t = s;
  if (t.find('/') == std::string::npos) t += "/1";
  Rat r;
  if (r.set_str(t, 10) != 0) fail_input("bad rational literal: " + s);
  if (r.get_den() == 0) fail_input("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace hft
