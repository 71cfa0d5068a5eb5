#include "cocf/houghton.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>

#include "cocf/error.hpp"

namespace cocf::houghton {
namespace {

void check_rays(int n) {
  if (n < 2) throw InvalidRayCount(n);
}

int ray_mod(int ray, int n) { return ((ray - 1) % n + n) % n + 1; }

// The eventual rule; k <= 0 in the result marks a point that cannot follow it.
RayPoint eventual(const std::vector<int>& shifts, const RayPoint& p) {
  if (p.is_origin()) return p;
  return {p.k + shifts[static_cast<std::size_t>(p.ray - 1)], p.ray};
}

}  // namespace

bool valid_point(const RayPoint& p, int n) {
  if (p.is_origin()) return p.ray == 0;
  return p.k >= 1 && p.ray >= 1 && p.ray <= n;
}

template <class Map>
HoughtonElement HoughtonElement::tabulate(int n, std::vector<int> shifts,
                                          const std::vector<int>& reach, Map&& map) {
  std::map<RayPoint, RayPoint> table;
  auto consider = [&](const RayPoint& p) {
    RayPoint image = map(p);
    if (image != eventual(shifts, p)) table.emplace(p, image);
  };
  consider(RayPoint::origin());
  for (int l = 1; l <= n; ++l) {
    for (int k = 1; k <= reach[static_cast<std::size_t>(l - 1)]; ++k) consider({k, l});
  }
  return HoughtonElement(n, std::move(shifts), std::move(table));
}

HoughtonElement HoughtonElement::identity(int n) {
  check_rays(n);
  return HoughtonElement(n, std::vector<int>(static_cast<std::size_t>(n), 0), {});
}

HoughtonElement HoughtonElement::from_table(int n, std::vector<int> shifts,
                                            const std::map<RayPoint, RayPoint>& table) {
  check_rays(n);
  if (shifts.size() != static_cast<std::size_t>(n)) throw Error("shift vector has wrong length");
  if (std::accumulate(shifts.begin(), shifts.end(), 0) != 0)
    throw Error("shift vector does not sum to zero");

  int radius = 0;
  for (int s : shifts) radius = std::max(radius, std::abs(s));
  for (const auto& [p, q] : table) {
    if (!valid_point(p, n) || !valid_point(q, n)) throw Error("invalid point in table");
    radius = std::max({radius, p.k, q.k});
  }
  radius += 1;

  auto map = [&](const RayPoint& p) {
    if (auto it = table.find(p); it != table.end()) return it->second;
    return eventual(shifts, p);
  };

  // Beyond `radius` every ray is a plain translation, so the map is a
  // bijection iff the ball of that radius is sent injectively onto
  // 0 together with {(k, l) : k <= radius + s_l}.
  std::set<RayPoint> images;
  auto check = [&](const RayPoint& p) {
    RayPoint q = map(p);
    if (!valid_point(q, n)) throw Error("table leaves a point without a valid image");
    if (!q.is_origin() && q.k > radius + shifts[static_cast<std::size_t>(q.ray - 1)])
      throw Error("table is not a bijection");
    if (!images.insert(q).second) throw Error("table is not a bijection");
  };
  check(RayPoint::origin());
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= radius; ++k) check({k, l});

  std::vector<int> reach(static_cast<std::size_t>(n), radius);
  return tabulate(n, shifts, reach, map);
}

int HoughtonElement::threshold(int ray) const {
  if (ray < 1 || ray > n_) throw InvalidRay(ray, n_);
  int r = 0;
  for (const auto& [p, q] : exceptions_)
    if (p.ray == ray) r = std::max(r, p.k);
  return r;
}

RayPoint HoughtonElement::operator()(const RayPoint& p) const {
  if (auto it = exceptions_.find(p); it != exceptions_.end()) return it->second;
  return eventual(shifts_, p);
}

HoughtonElement shift_generator(int i, int n) {
  check_rays(n);
  if (i < 1 || i > n) throw InvalidRay(i, n);
  const int next = ray_mod(i + 1, n);
  std::vector<int> shifts(static_cast<std::size_t>(n), 0);
  shifts[static_cast<std::size_t>(i - 1)] = -1;
  shifts[static_cast<std::size_t>(next - 1)] = +1;
  auto map = [&](const RayPoint& p) -> RayPoint {
    if (p.is_origin()) return {1, next};
    if (p.ray == i) return p.k >= 2 ? RayPoint{p.k - 1, p.ray} : RayPoint::origin();
    if (p.ray == next) return {p.k + 1, p.ray};
    return p;
  };
  return HoughtonElement::tabulate(n, std::move(shifts), std::vector<int>(std::size_t(n), 1), map);
}

HoughtonElement swap_generator(int n) {
  check_rays(n);
  const RayPoint one{1, 2};
  auto map = [&](const RayPoint& p) -> RayPoint {
    if (p.is_origin()) return one;
    if (p == one) return RayPoint::origin();
    return p;
  };
  return HoughtonElement::tabulate(n, std::vector<int>(std::size_t(n), 0),
                                   std::vector<int>(std::size_t(n), 1), map);
}

RayPoint apply(const HoughtonElement& e, const RayPoint& p) { return e(p); }

HoughtonElement compose(const HoughtonElement& a, const HoughtonElement& b) {
  if (a.rays() != b.rays()) throw RayCountMismatch(a.rays(), b.rays());
  const int n = a.rays();
  std::vector<int> shifts(static_cast<std::size_t>(n));
  std::vector<int> reach(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    const auto idx = static_cast<std::size_t>(l - 1);
    shifts[idx] = a.shifts()[idx] + b.shifts()[idx];
    reach[idx] = std::max({0, a.threshold(l), b.threshold(l) - a.shifts()[idx]});
  }
  return HoughtonElement::tabulate(n, std::move(shifts), reach,
                                   [&](const RayPoint& p) { return b(a(p)); });
}

HoughtonElement inverse(const HoughtonElement& e) {
  const int n = e.rays();
  std::map<RayPoint, RayPoint> back;
  std::vector<int> reach(static_cast<std::size_t>(n), 0);
  for (const auto& [p, q] : e.exceptions()) {
    back.emplace(q, p);
    if (!q.is_origin()) {
      auto& r = reach[static_cast<std::size_t>(q.ray - 1)];
      r = std::max(r, q.k);
    }
  }
  std::vector<int> shifts = e.shifts();
  for (auto& s : shifts) s = -s;
  return HoughtonElement::tabulate(n, shifts, reach, [&](const RayPoint& p) {
    if (auto it = back.find(p); it != back.end()) return it->second;
    return eventual(shifts, p);
  });
}

bool is_identity(const HoughtonElement& e) {
  return e.exceptions().empty() &&
         std::all_of(e.shifts().begin(), e.shifts().end(), [](int s) { return s == 0; });
}

GeneratorAlphabet houghton_alphabet(int n) {
  check_rays(n);
  if (n == 2) return GeneratorAlphabet({"t", "tau"});
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
  return GeneratorAlphabet(std::move(names));
}

HoughtonElement houghton_generator(std::size_t generator, int n) {
  check_rays(n);
  if (n == 2) {
    if (generator == 0) return shift_generator(1, 2);
    if (generator == 1) return swap_generator(2);
    throw InvalidRay(static_cast<int>(generator) + 1, n);
  }
  return shift_generator(static_cast<int>(generator) + 1, n);
}

namespace {

std::vector<HoughtonElement> letter_table(const GroupWord& word, int n) {
  std::size_t count = 0;
  for (const auto& l : word) count = std::max(count, l.generator + 1);
  std::vector<HoughtonElement> table;
  for (std::size_t g = 0; g < count; ++g) {
    auto e = houghton_generator(g, n);
    table.push_back(inverse(e));
    table.push_back(std::move(e));
  }
  return table;
}

const HoughtonElement& lookup(const std::vector<HoughtonElement>& table, const Letter& l) {
  return table[2 * l.generator + (l.exponent > 0 ? 1 : 0)];
}

}  // namespace

HoughtonElement word_to_element(const GroupWord& word, int n) {
  auto table = letter_table(word, n);
  auto e = HoughtonElement::identity(n);
  for (const auto& l : word) e = compose(e, lookup(table, l));
  return e;
}

std::vector<RayPoint> trace_point(const GroupWord& word, const RayPoint& p, int n) {
  if (!valid_point(p, n)) throw Error("invalid point " + format_point(p));
  auto table = letter_table(word, n);
  std::vector<RayPoint> out{p};
  for (const auto& l : word) out.push_back(lookup(table, l)(out.back()));
  return out;
}

RayPoint parse_point(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return RayPoint::origin();
  int k = 0, l = 0, used = 0;
  if (std::sscanf(s.c_str(), "(%d,%d)%n", &k, &l, &used) != 2 ||
      used != static_cast<int>(s.size()) || k < 1 || l < 1)
    throw MalformedToken(std::string(text));
  return {k, l};
}

std::string format_point(const RayPoint& p) {
  if (p.is_origin()) return "0";
  return "(" + std::to_string(p.k) + "," + std::to_string(p.ray) + ")";
}

}  // namespace cocf::houghton
