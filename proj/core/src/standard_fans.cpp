#include "qtoric/standard_fans.hpp"

#include <numeric>

#include "qtoric/error.hpp"

namespace qtoric::fans {

namespace {

LatticeVector vec(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Fan plane(std::initializer_list<std::initializer_list<long>> rays,
          std::initializer_list<std::initializer_list<std::size_t>> cones_1based) {
  std::vector<LatticeVector> r;
  for (auto x : rays) r.push_back(vec(x));
  std::vector<IndexSet> c;
  for (auto cone : cones_1based) {
    IndexSet s;
    for (auto i : cone) s.push_back(i - 1);
    c.push_back(make_index_set(s));
  }
  return Fan(2, std::move(r), std::move(c));
}

}  // namespace

Fan projective_space(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n, Integer(0));
    e[i] = 1;
    rays.push_back(std::move(e));
  }
  rays.emplace_back(n, Integer(-1));
  std::vector<IndexSet> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    IndexSet c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan(n, std::move(rays), std::move(cones));
}

Fan product(const Fan& a, const Fan& b) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<LatticeVector> rays;
  for (const auto& r : a.rays()) {
    LatticeVector v = r;
    v.resize(n, Integer(0));
    rays.push_back(std::move(v));
  }
  for (const auto& r : b.rays()) {
    LatticeVector v(a.dim(), Integer(0));
    v.insert(v.end(), r.begin(), r.end());
    rays.push_back(std::move(v));
  }
  std::vector<IndexSet> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      IndexSet c = ca;
      for (auto i : cb) c.push_back(i + a.num_rays());
      cones.push_back(c);
    }
  return Fan(n, std::move(rays), std::move(cones));
}

Fan hirzebruch(long a) {
  return Fan(2, {vec({1, 0}), vec({-1, a}), vec({0, 1}), vec({0, -1})},
             {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

Fan blow_up(const Fan& fan, const IndexSet& sigma) {
  const IndexSet s = make_index_set(sigma);
  if (s.size() < 2 || !fan.is_cone(s)) {
    throw Error(ErrorKind::NotACone, "blow-up needs a cone of dimension >= 2");
  }
  std::vector<LatticeVector> rays = fan.rays();
  rays.push_back(fan.ray_sum(s));
  const std::size_t added = rays.size() - 1;
  std::vector<IndexSet> cones;
  for (const auto& mu : fan.max_cones()) {
    if (!is_subset(s, mu)) {
      cones.push_back(mu);
      continue;
    }
    for (auto h : s) {
      IndexSet c;
      for (auto i : mu)
        if (i != h) c.push_back(i);
      c.push_back(added);
      cones.push_back(make_index_set(c));
    }
  }
  return Fan(fan.dim(), std::move(rays), std::move(cones));
}

Fan projective_plane() { return plane({{1, 0}, {0, 1}, {-1, -1}}, {{1, 2}, {2, 3}, {3, 1}}); }

Fan p1_x_p1() {
  return plane({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
}

Fan blown_up_plane_1() {
  return plane({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{1, 4}, {2, 4}, {2, 3}, {3, 1}});
}

Fan blown_up_plane_2() {
  return plane({{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {-1, 0}},
               {{1, 4}, {2, 4}, {2, 5}, {3, 5}, {1, 3}});
}

Fan blown_up_plane_3() {
  // rays 1..6: (1,0), (-1,0), (0,1), (0,-1), (1,1), (-1,-1)
  return plane({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}},
               {{1, 5}, {3, 5}, {2, 3}, {2, 6}, {4, 6}, {1, 4}});
}

}  // namespace qtoric::fans
