#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "cohomology.hpp"

using namespace gammadyn;

namespace {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

// Plain modular arithmetic on small modules, independent of the library.
struct Naive {
  long N;
  std::size_t k;
  std::vector<Mat> gens, invs;

  Vec apply(const Mat& m, const Vec& v) const {
    Vec out(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out[i] = (out[i] + m[i][j] * v[j]) % N;
    return out;
  }
  Mat mul(const Mat& a, const Mat& b) const {
    Mat c(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) c[i][j] = (c[i][j] + a[i][l] * b[l][j]) % N;
    return c;
  }
  Mat identity() const {
    Mat m(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return m;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = (a[i] + b[i]) % N;
    return c;
  }
  Vec neg(const Vec& a) const {
    Vec c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = (N - a[i]) % N;
    return c;
  }
  // Walks the word letter by letter: c(w s) = c(w) + alpha(w) c(s).
  Vec cocycle(const std::vector<Vec>& values, const Word& w) const {
    Mat g = identity();
    Vec c(k, 0);
    for (long l : w) {
      std::size_t i = static_cast<std::size_t>(std::labs(l)) - 1;
      Vec cs = l > 0 ? values[i] : neg(apply(invs[i], values[i]));
      c = add(c, apply(g, cs));
      g = mul(g, l > 0 ? gens[i] : invs[i]);
    }
    return c;
  }
  std::vector<Vec> module() const {
    std::vector<Vec> all{Vec(k, 0)};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Vec> next;
      for (const auto& v : all)
        for (long a = 0; a < N; ++a) {
          Vec w = v;
          w[i] = a;
          next.push_back(w);
        }
      all = next;
    }
    return all;
  }
};

Naive naive_of(const FiniteModuleAction& act) {
  Naive n{act.modulus.get_si(), act.rank, {}, {}};
  for (const auto& m : act.matrices) {
    Mat g(act.rank, Vec(act.rank));
    for (std::size_t i = 0; i < act.rank; ++i)
      for (std::size_t j = 0; j < act.rank; ++j) g[i][j] = mod_floor(m(i, j), act.modulus).get_si();
    n.gens.push_back(g);
    // inverse by search over the finite cyclic subgroup generated by g
    Mat p = g, prev = n.identity();
    while (p != n.identity()) {
      prev = p;
      p = n.mul(p, g);
    }
    n.invs.push_back(prev);
  }
  return n;
}

struct BruteCounts {
  std::size_t c = 0, b = 0, f = 0;
};

BruteCounts brute(const GroupPresentation& pres, const FiniteModuleAction& act) {
  Naive n = naive_of(act);
  auto xs = n.module();
  BruteCounts out;
  // cocycles: all generator assignments satisfying every relator
  std::vector<std::size_t> idx(pres.generator_count, 0);
  for (;;) {
    std::vector<Vec> values;
    for (auto i : idx) values.push_back(xs[i]);
    bool ok = true;
    for (const auto& r : pres.relators) ok = ok && n.cocycle(values, r) == Vec(n.k, 0);
    out.c += ok;
    std::size_t i = 0;
    while (i < idx.size() && idx[i] == xs.size() - 1) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  std::set<std::vector<Vec>> cob;
  for (const auto& x : xs) {
    std::vector<Vec> v;
    bool fixed = true;
    for (const auto& g : n.gens) {
      Vec d = n.add(n.apply(g, x), n.neg(x));
      fixed = fixed && d == Vec(n.k, 0);
      v.push_back(d);
    }
    cob.insert(v);
    out.f += fixed;
  }
  out.b = cob.size();
  return out;
}

FiniteModuleAction action(long N, std::vector<IntMatrix> ms) {
  FiniteModuleAction a;
  a.modulus = N;
  a.rank = ms.front().rows();
  a.matrices = std::move(ms);
  return a;
}

IntMatrix random_invertible_mod(std::mt19937_64& rng, std::size_t k, long N) {
  for (;;) {
    IntMatrix m = oracle::random_matrix(rng, k, k, N);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = mod_floor(m(i, j), Int(N));
    if (gcd(mod_floor(oracle::det(m), Int(N)), Int(N)) == 1) return m;
  }
}

IntMatrix mod_mul(const IntMatrix& a, const IntMatrix& b, long N) { return (a * b).mod(Int(N)); }

}  // namespace

TEST_CASE("worked examples") {
  auto z = GroupPresentation::integers();
  auto r = h1(z, action(5, {IntMatrix{{2}}}));
  CHECK(r.c_size == 5);
  CHECK(r.b_size == 5);
  CHECK(r.h1.trivial());

  auto t = h1(z, action(3, {IntMatrix{{1}}}));
  CHECK(t.h1.to_string() == "Z/3");
  CHECK(t.f_size() == 3);

  auto hz = h1(GroupPresentation::heisenberg(), action(2, {IntMatrix{{1}}, IntMatrix{{1}}, IntMatrix{{1}}}));
  CHECK(hz.h1.to_string() == "Z/2 x Z/2");

  auto q = h1(z, action(4, {IntMatrix{{3}}}));
  CHECK(q.b_size == 2);
  CHECK(q.h1_size() == 2);
}

TEST_CASE("invalid actions are rejected") {
  auto z2 = GroupPresentation::integers_2();
  auto bad = action(5, {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}});
  CHECK_THROWS_AS(bad.validate(z2), DomainError);
  auto singular = action(4, {IntMatrix{{2}}});
  CHECK_THROWS_AS(singular.validate(GroupPresentation::integers()), DomainError);
  auto wrong_count = action(3, {IntMatrix{{1}}});
  CHECK_THROWS_AS(wrong_count.validate(z2), DomainError);
}

TEST_CASE("orders agree with brute-force enumeration") {
  std::mt19937_64 rng(77);
  int done = 0;
  for (int t = 0; t < 60; ++t) {
    long N = 2 + static_cast<long>(rng() % 4);
    std::size_t k = N <= 3 && rng() % 2 ? 2 : 1;
    GroupPresentation pres;
    FiniteModuleAction act;
    switch (t % 3) {
      case 0:
        pres = GroupPresentation::integers();
        act = action(N, {random_invertible_mod(rng, k, N)});
        break;
      case 1: {
        pres = GroupPresentation::integers_2();
        IntMatrix a = random_invertible_mod(rng, k, N);
        IntMatrix b = a;
        for (unsigned e = rng() % 3; e > 0; --e) b = mod_mul(b, a, N);
        act = action(N, {a, b});
        break;
      }
      default: {
        pres = GroupPresentation::heisenberg();
        if (k == 1) {
          act = action(N, {random_invertible_mod(rng, 1, N), random_invertible_mod(rng, 1, N), IntMatrix{{1}}});
        } else {
          IntMatrix x{{1, long(rng() % N)}, {0, 1}}, y{{1, long(rng() % N)}, {0, 1}};
          act = action(N, {x, y, IntMatrix::identity(2)});
        }
      }
    }
    act.validate(pres);
    auto r = h1(pres, act);
    auto b = brute(pres, act);
    CHECK(r.c_size == b.c);
    CHECK(r.b_size == b.b);
    CHECK(r.f_size() == b.f);
    CHECK(r.c_size == r.b_size * r.h1_size());
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("cocycles satisfy c(uv) = c(u) + alpha(u) c(v) on random words") {
  std::mt19937_64 rng(5);
  auto pres = GroupPresentation::integers_2();
  auto act = action(6, {IntMatrix{{5, 0}, {0, 5}}, IntMatrix{{1, 1}, {0, 1}}});
  act.validate(pres);
  auto space = cocycle_space(pres, act);
  REQUIRE_FALSE(space.generators.empty());
  Naive n = naive_of(act);
  for (int t = 0; t < 50; ++t) {
    IntVector combo(2 * act.rank, 0);
    for (const auto& g : space.generators) {
      long s = static_cast<long>(rng() % 7) - 3;
      for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += s * g[i];
    }
    std::vector<IntVector> values{{combo[0], combo[1]}, {combo[2], combo[3]}};
    auto word = [&] {
      Word w;
      for (unsigned i = rng() % 6; i > 0; --i) w.push_back((rng() % 2 ? 1 : -1) * long(1 + rng() % 2));
      return w;
    };
    Word u = word(), v = word(), uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    IntVector cu = cocycle_value(act, values, u), cv = cocycle_value(act, values, v);
    IntVector expected = (evaluate_word(act, u) * cv);
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = mod_floor(expected[i] + cu[i], act.modulus);
    CHECK(cocycle_value(act, values, uv) == expected);
    // and agrees with the letter-by-letter oracle
    std::vector<Vec> nv;
    for (const auto& x : values) nv.push_back({mod_floor(x[0], Int(6)).get_si(), mod_floor(x[1], Int(6)).get_si()});
    Vec o = n.cocycle(nv, uv);
    CHECK(IntVector{o[0], o[1]} == cocycle_value(act, values, uv));
  }
}

TEST_CASE("fixed points mod N match the Smith form of M - I") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng() % 2;
    IntMatrix m = oracle::random_unimodular(rng, n, 3);
    long N = 2 + static_cast<long>(rng() % 6);
    auto r = h1(GroupPresentation::integers(), action(N, {m}));
    Int expected = 1;
    auto d = smith_normal_form(m - IntMatrix::identity(n)).diagonal();
    for (std::size_t i = 0; i < n; ++i) expected *= i < d.size() && d[i] != 0 ? gcd(d[i], Int(N)) : Int(N);
    CHECK(r.f_size() == expected);
  }
}

TEST_CASE("lemma inequalities with a triangular submodule") {
  auto ex = lemma_inequalities(GroupPresentation::integers(), action(2, {IntMatrix{{1, 1}, {0, 1}}}), {{1, 0}});
  CHECK(ex.extension_ok);
  CHECK(ex.dichotomy_ok);
  CHECK(ex.h1_alpha == 2);
  CHECK(ex.h1_beta == 2);
  CHECK(ex.h1_restricted == 2);

  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    long N = 2 + static_cast<long>(rng() % 4);
    auto u = [&] { return long(rng() % N); };
    auto unit = [&] {
      for (;;) {
        long a = 1 + u() % (N - 1);
        if (std::gcd(a, N) == 1) return a;
      }
    };
    IntMatrix m{{unit(), u()}, {0, unit()}};
    auto pres = GroupPresentation::integers();
    auto act = action(N, {m});
    auto l = lemma_inequalities(pres, act, {{1, 0}});
    CHECK(l.extension_ok);
    CHECK(l.dichotomy_ok);
    auto top = action(N, {IntMatrix{{m(0, 0).get_si()}}}), bottom = action(N, {IntMatrix{{m(1, 1).get_si()}}});
    auto bk = brute(pres, top), bq = brute(pres, bottom), ba = brute(pres, act);
    CHECK(l.h1_restricted == bk.c / bk.b);
    CHECK(l.h1_beta == bq.c / bq.b);
    CHECK(l.h1_alpha == ba.c / ba.b);
    CHECK(l.f_beta == bq.f);
  }
  CHECK_THROWS_AS(lemma_inequalities(GroupPresentation::integers(), action(3, {IntMatrix{{1, 1}, {0, 1}}}), {{0, 1}}),
                  DomainError);
}
