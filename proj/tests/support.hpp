#pragma once
// Shared fixtures for the unit tests and the acceptance binary.

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "ymt/category.hpp"
#include "ymt/constructors.hpp"
#include "ymt/error.hpp"

namespace fixture {

using namespace ymt;

inline LatticePtr lattice(std::vector<int> ext, double w = 1.0) { return std::make_shared<const Lattice>(std::move(ext), w); }

inline YMTTheory killing_theory(LatticePtr lat, AlgebraPtr alg) {
  return YMTTheory::make(PairingSpec::killing(std::move(lat), std::move(alg)), "killing");
}

// Exact rank of the ad-invariance system, built straight from the structure constants.
inline int invariant_dim_oracle(const LieAlgebra& a) {
  const int l = a.dim();
  std::vector<std::vector<mpq_class>> rows;
  for (int z = 0; z < l; ++z)
    for (int x = 0; x < l; ++x)
      for (int y = 0; y < l; ++y) {
        // B([Z,X],Y) + B(X,[Z,Y]) = sum_k c(z,x,k) B(k,y) + c(z,y,k) B(x,k)
        std::vector<mpq_class> r(l * l, 0);
        for (int k = 0; k < l; ++k) {
          r[k * l + y] += mpq_class(a.c(z, x, k));
          r[x * l + k] += mpq_class(a.c(z, y, k));
        }
        rows.push_back(std::move(r));
      }
  int rank = 0;
  const int cols = l * l;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (int k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return cols - rank;
}

/// Same functional tables, correction positions and domain sizes.
inline bool same_values(const Extension& a, const Extension& b) {
  return a.domain->size() == b.domain->size() && a.correction == b.correction && a.s_hat == b.s_hat && a.c == b.c &&
         a.base_on_delta == b.base_on_delta;
}

/// A closed form A = d phi + constant per direction.
inline AlgebraCochain1 closed_cochain(LatticePtr lat, AlgebraPtr alg, Rng& rng) {
  auto a = coboundary0(random_section(lat, alg, rng, 1.0));
  for (int mu = 0; mu < lat->dim(); ++mu) {
    const Vec c = random_algebra_vector(*alg, rng, 1.0);
    for (std::size_t v = 0; v < lat->num_vertices(); ++v) a.values.col(static_cast<Eigen::Index>(lat->edge(v, mu))) += c;
  }
  return a;
}

/// g on correction positions induced by f when every correction point maps to one.
inline std::optional<std::vector<std::size_t>> induced_g(const Extension& s, const Extension& t,
                                                         const std::vector<std::size_t>& f) {
  std::vector<std::size_t> g;
  for (auto i : s.correction) {
    const auto p = t.correction_position(f[i]);
    if (!p) return std::nullopt;
    g.push_back(*p);
  }
  return g;
}

/// Random equivariant bijection of a domain: orbit representatives are permuted
/// among orbits of equal size.
inline std::optional<std::vector<std::size_t>> random_automorphism(const SampledDomain& d, Rng& rng) {
  const auto reps = d.orbit_representatives();
  std::vector<std::size_t> roots;
  std::vector<std::size_t> size(d.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) ++size[reps[i]];
  for (std::size_t i = 0; i < d.size(); ++i)
    if (reps[i] == i) roots.push_back(i);
  std::vector<std::optional<std::size_t>> forced(d.size());
  for (std::size_t s = 1; s <= d.size(); ++s) {
    std::vector<std::size_t> cls;
    for (auto r : roots)
      if (size[r] == s) cls.push_back(r);
    auto img = cls;
    std::shuffle(img.begin(), img.end(), rng);
    for (std::size_t k = 0; k < cls.size(); ++k) {
      std::vector<std::size_t> orbit;
      for (std::size_t i = 0; i < d.size(); ++i)
        if (reps[i] == img[k]) orbit.push_back(i);
      forced[cls[k]] = orbit[std::uniform_int_distribution<std::size_t>(0, orbit.size() - 1)(rng)];
    }
  }
  auto f = random_equivariant_map(d, d, forced, rng);
  if (!f) return std::nullopt;
  std::vector<char> hit(d.size(), 0);
  for (auto v : *f) hit[v] = 1;
  if (std::count(hit.begin(), hit.end(), 1) != static_cast<long>(d.size())) return std::nullopt;
  return f;
}

struct Corpus {
  std::vector<ExtMorphism> morphisms;
  std::size_t invalid = 0;  // generated pairs that failed check_morphism
};

/// Morphisms between constant extensions (equal c and D0) on nested and
/// unrelated su(2) domains: random equivariant maps, automorphisms and inclusions.
inline Corpus conservativity_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const auto lat = lattice({2, 2});
  const auto su2 = catalog::su2();
  const auto base = killing_theory(lat, su2);
  const auto emb = catalog::identity(su2);
  const auto d0 = random_links(lat, su2, rng, 0.3);
  const mpq_class c(1, 3);

  std::vector<ExtensionPtr> exts;
  for (int k : {2, 3, 4}) {
    auto dom = connection_domain(lat, su2, k, 0.4, rng);
    exts.push_back(std::make_shared<const Extension>(make_constant(base, emb, dom, c, d0)));
  }
  // nested pair: zero plus the first two orbits of the largest domain
  const auto& big = *exts.back()->domain;
  const auto reps = big.orbit_representatives();
  std::vector<std::size_t> keep;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < big.size(); ++i)
    if (reps[i] == i && roots.size() < 3) roots.push_back(i);
  for (std::size_t i = 0; i < big.size(); ++i)
    if (std::find(roots.begin(), roots.end(), reps[i]) != roots.end()) keep.push_back(i);
  auto small_dom = std::make_shared<const SampledDomain>(big.subset(keep));
  auto small = std::make_shared<const Extension>(make_constant(base, emb, small_dom, c, d0));
  exts.push_back(small);

  Corpus out;
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, exts.size() - 1);
  while (out.morphisms.size() < count) {
    std::optional<std::vector<std::size_t>> f;
    ExtensionPtr s, t;
    switch (kind(rng)) {
      case 0:
        s = exts[pick(rng)];
        t = exts[pick(rng)];
        f = random_equivariant_map(*s->domain, *t->domain, std::vector<std::optional<std::size_t>>(s->domain->size()), rng);
        break;
      case 1:
        s = t = exts[pick(rng)];
        f = random_automorphism(*s->domain, rng);
        break;
      default: {
        s = small;
        t = exts.back();
        std::vector<std::size_t> m;
        for (const auto& cfg : s->domain->configs()) m.push_back(*t->domain->find(cfg));
        f = m;
      }
    }
    if (!f) continue;
    auto g = induced_g(*s, *t, *f);
    if (!g) continue;
    ExtMorphism m{s, t, *f, *g};
    if (!check_morphism(m).ok) {
      ++out.invalid;
      continue;
    }
    out.morphisms.push_back(std::move(m));
  }
  return out;
}

}  // namespace fixture
