#pragma once

// The verification suites. Each law is checked on every case of its suite
// with exact equality; any exception raised while checking (a violated
// precondition included) is recorded as a failure of that law on that case.

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sdg/harness/config.hpp"
#include "sdg/harness/generators.hpp"
#include "sdg/harness/report.hpp"
#include "sdg/harness/rng.hpp"
#include "sdg/liealg.hpp"
#include "sdg/oracles.hpp"

namespace sdg::harness {

struct LawFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw LawFailure(what);
}

template <class Case>
struct Law {
  std::string name;
  std::string anchor;
  std::function<void(Case&)> check;
};

/// Runs every law on cases 0..trials-1, cases spread over worker threads.
/// Records come back grouped by case index, laws in declaration order.
template <class Case, class Make>
std::vector<CaseRecord> run_laws(const std::vector<Law<Case>>& laws, std::size_t trials, Make make) {
  std::vector<std::vector<CaseRecord>> per_case(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < trials;) {
      std::optional<Case> data;
      std::string gen_error;
      try {
        data.emplace(make(c));
      } catch (const std::exception& e) {
        gen_error = std::string("generation failed: ") + e.what();
      }
      for (const auto& law : laws) {
        CaseRecord r{law.name, law.anchor, c, true, std::nullopt};
        std::string detail = gen_error;
        if (data) {
          try {
            law.check(*data);
          } catch (const std::exception& e) {
            detail = e.what();
          }
        }
        if (!detail.empty()) {
          r.passed = false;
          nlohmann::json ce = data ? data->inputs() : nlohmann::json::object();
          ce["detail"] = detail;
          r.counterexample = std::move(ce);
        }
        per_case[c].push_back(std::move(r));
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, std::max<std::size_t>(trials, 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CaseRecord> out;
  for (auto& v : per_case)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// Case data

template <class G>
struct FieldCase {
  AGSection<G> X, Y, Z;
  Rational a, b;
  WBisection<G> sigma, tau;  // no infinitesimal part, over D
  WBisection<G> rho, kappa;  // with nilpotent part, over D^2
  WSection<G> u, v, w;       // arbitrary sections over D^2
  std::optional<std::array<AGSection<G>, 3>> microcube_terms;

  nlohmann::json inputs() const {
    return {{"X", to_string(X)},         {"Y", to_string(Y)},         {"Z", to_string(Z)},
            {"a", a.get_str()},          {"b", b.get_str()},          {"sigma", to_string(sigma.section())},
            {"tau", to_string(tau.section())}, {"rho", to_string(rho.section())}, {"kappa", to_string(kappa.section())},
            {"u", to_string(u)},         {"v", to_string(v)},         {"w", to_string(w)}};
  }
};

/// Case 0 is all zero / identity, case 1 repeats one random draw in every
/// slot, later cases are independent draws.
template <class G>
FieldCase<G> make_field_case(const Generator<G>& gen, Rng& rng, std::size_t c) {
  const DomainRef D = domain::first_order();
  const DomainRef D2 = domain::power(2);
  if (c == 0) {
    const auto zero = AGSection<G>::zero(gen.g);
    const auto id1 = identity_section(gen.g, D);
    const auto id2 = identity_section(gen.g, D2);
    return {zero, zero, zero, Rational(0), Rational(0), id1, id1, id2, id2, id2, id2, id2, std::nullopt};
  }
  if (c == 1) {
    const auto X = gen.field(rng);
    const Rational a = small(rng);
    const auto sigma = gen.scalar_bisection(rng, D);
    const auto rho = gen.bisection(rng, D2);
    const auto u = gen.section(rng, D2);
    return {X, X, X, a, a, sigma, sigma, rho, rho, u, u, u, std::nullopt};
  }
  auto X = gen.field(rng);
  auto Y = gen.field(rng);
  auto Z = gen.field(rng);
  Rational a = small(rng);
  Rational b = small(rng);
  auto sigma = gen.scalar_bisection(rng, D);
  auto tau = gen.scalar_bisection(rng, D);
  auto rho = gen.bisection(rng, D2);
  auto kappa = gen.bisection(rng, D2);
  auto u = gen.section(rng, D2);
  auto v = gen.section(rng, D2);
  auto w = gen.section(rng, D2);
  return {std::move(X), std::move(Y), std::move(Z), a, b, std::move(sigma), std::move(tau),
          std::move(rho), std::move(kappa), std::move(u), std::move(v), std::move(w), std::nullopt};
}

template <class G>
struct EngineCase {
  DomainRef dom;
  WeilElement p, q, r;
  WeilElement unit;  // invertible
  Substitution subst;
  WeilElement sp, sq;  // over subst.source
  DomainRef big, small_dom;
  WeilElement rp, rq;  // over big
  std::vector<WPoint> affine_squares, matrix_squares;
  std::array<std::pair<WPoint, WPoint>, 3> cube_pairs;
  SixMicrocubes<WPoint> six;
  std::vector<std::size_t> eps, phi;
  WPoint gamma;
  AGSection<G> X, Y, Z;

  nlohmann::json inputs() const {
    auto pt = [](const WPoint& p) {
      std::ostringstream os;
      os << p;
      return os.str();
    };
    nlohmann::json squares = nlohmann::json::array(), msquares = nlohmann::json::array(), pairs = nlohmann::json::array();
    for (const auto& s : affine_squares) squares.push_back(pt(s));
    for (const auto& s : matrix_squares) msquares.push_back(pt(s));
    for (const auto& [a, b] : cube_pairs) pairs.push_back({pt(a), pt(b)});
    nlohmann::json images = nlohmann::json::array();
    for (const auto& im : subst.images) images.push_back(to_string(im));
    return {{"domain", dom->to_string()},
            {"p", to_string(p)},
            {"q", to_string(q)},
            {"r", to_string(r)},
            {"unit", to_string(unit)},
            {"substitution", {{"source", subst.source->to_string()}, {"target", subst.target->to_string()}, {"images", images}}},
            {"sp", to_string(sp)},
            {"sq", to_string(sq)},
            {"restriction", {{"from", big->to_string()}, {"to", small_dom->to_string()}}},
            {"rp", to_string(rp)},
            {"rq", to_string(rq)},
            {"affine_squares", squares},
            {"matrix_squares", msquares},
            {"cube_pairs", pairs},
            {"six_cubes", {pt(six.g123), pt(six.g132), pt(six.g213), pt(six.g231), pt(six.g312), pt(six.g321)}},
            {"eps", eps},
            {"phi", phi},
            {"gamma", pt(gamma)},
            {"X", to_string(X)},
            {"Y", to_string(Y)},
            {"Z", to_string(Z)}};
  }
};

template <class G>
EngineCase<G> make_engine_case(const Generator<G>& gen, Rng& rng, std::size_t c) {
  const auto doms = engine_domains();
  const DomainRef dom = doms[static_cast<std::size_t>(rng.uniform(0, long(doms.size()) - 1))];
  const bool zero = c == 0, repeat = c == 1;
  auto elem = [&](const DomainRef& d) { return zero ? WeilElement(d) : random_weil(rng, d); };

  const WeilElement p = elem(dom);
  const WeilElement q = repeat ? p : elem(dom);
  const WeilElement r = repeat ? p : elem(dom);
  const WeilElement unit = scalar(dom, small_nonzero(rng)) + elem(dom).nilpotent_part();

  Substitution subst = random_substitution(rng);
  const WeilElement sp = elem(subst.source);
  const WeilElement sq = repeat ? sp : elem(subst.source);

  const std::array<std::pair<DomainRef, DomainRef>, 4> restrictions{
      {{domain::power(2), domain::first_neighbourhood(2)},
       {domain::power(3), domain::cube_without_13_23()},
       {domain::power(3), domain::first_neighbourhood(3)},
       {domain::cube_without_13_23(), domain::first_neighbourhood(3)}}};
  const auto& [big, small_dom] = restrictions[static_cast<std::size_t>(rng.uniform(0, 3))];
  const WeilElement rp = elem(big);
  const WeilElement rq = repeat ? rp : elem(big);

  auto squares = [&](const Space& s) {
    auto v = compatible_microsquares(rng, s, zero || repeat ? 1 : 3);
    while (v.size() < 3) v.push_back(v.front());
    return v;
  };
  auto affine = squares(AffineSpace{3});
  auto matrix = squares(MatrixGroup{2});

  std::array<std::pair<WPoint, WPoint>, 3> pairs{compatible_cube_pair(rng, 1, 3), compatible_cube_pair(rng, 2, 3),
                                                 compatible_cube_pair(rng, 3, 3)};
  if (zero)
    for (auto& pr : pairs) pr.second = pr.first;
  auto six = compatible_six_cubes(rng, 3);
  auto eps = random_permutation(rng, 3);
  auto phi = random_permutation(rng, 3);
  std::vector<WeilElement> gc;
  for (int i = 0; i < 2; ++i) gc.push_back(random_weil(rng, domain::power(3)));
  WPoint gamma(AffineSpace{2}, domain::power(3), std::move(gc));

  auto fields = make_field_case(gen, rng, c);
  return {dom,   p,     q,     r,     unit,  std::move(subst), sp,       sq,          big,         small_dom,  rp,
          rq,    std::move(affine), std::move(matrix), std::move(pairs), std::move(six), std::move(eps), std::move(phi),
          std::move(gamma), std::move(fields.X), std::move(fields.Y), std::move(fields.Z)};
}

// ---------------------------------------------------------------------------
// Laws

template <class G>
struct Ops {
  Mutation mutation = Mutation::none;

  AGSection<G> bracket(const AGSection<G>& X, const AGSection<G>& Y) const {
    AGSection<G> b = sdg::bracket(X, Y);
    return mutation == Mutation::sign_flip_bracket ? -b : b;
  }
};

namespace laws {

inline DomainRef D() { return domain::first_order(); }
inline DomainRef D2() { return domain::power(2); }

template <class G>
bool is_id(const WSection<G>& s) {
  return is_identity(s);
}

template <class G>
std::vector<Law<FieldCase<G>>> flows(const Ops<G>&) {
  using C = FieldCase<G>;
  return {
      {"X_{d1+d2} = X_{d1} * X_{d2} on D(2)", "prop:flow-additivity",
       [](C& c) {
         const DomainRef d = domain::first_neighbourhood(2);
         const auto d1 = generator(d, 0), d2 = generator(d, 1);
         for (const auto* F : {&c.X, &c.Y})
           expect(section_at(*F, d1 + d2) == section_at(*F, d1) * section_at(*F, d2), "flow law fails");
       }},
      {"X_d * X_{-d} = X_{-d} * X_d = id", "cor:flow-inverse",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(is_id((section_at(c.X, e) * section_at(c.X, -e)).section()), "X_d * X_{-d} is not the identity");
         expect(is_id((section_at(c.X, -e) * section_at(c.X, e)).section()), "X_{-d} * X_d is not the identity");
       }},
      {"invert_bisection(X_d) = X_{-d}", "cor:flow-inverse",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(invert_bisection(section_at(c.X, e)) == section_at(c.X, -e), "inverse of X_d differs from X_{-d}");
       }},
      {"X_0 = id", "def:flow",
       [](C& c) { expect(is_id(section_at(c.X, WeilElement(D())).section()), "X_0 is not the identity"); }},
      {"sigma * sigma^{-1} = sigma^{-1} * sigma = id", "prop:bisection-pairs",
       [](C& c) {
         for (const auto* s : {&c.sigma, &c.rho, &c.kappa}) {
           const auto inv = invert_bisection(*s);
           expect(is_id((*s * inv).section()), "sigma * sigma^{-1} is not the identity");
           expect(is_id((inv * *s).section()), "sigma^{-1} * sigma is not the identity");
         }
       }},
      {"(rho * kappa)^{-1} = kappa^{-1} * rho^{-1}", "def:bisection-group",
       [](C& c) {
         expect(invert_bisection(c.rho * c.kappa) == invert_bisection(c.kappa) * invert_bisection(c.rho),
                "inverse of a product is not the reversed product of inverses");
       }},
      {"(u * v) * w = u * (v * w), id * u = u * id = u", "def:section-monoid",
       [](C& c) {
         expect((c.u * c.v) * c.w == c.u * (c.v * c.w), "star is not associative");
         const auto id = identity_section(c.u.groupoid(), c.u.domain()).section();
         expect(id * c.u == c.u && c.u * id == c.u, "identity section is not a unit");
       }},
  };
}

template <class G>
std::vector<Law<FieldCase<G>>> module(const Ops<G>&) {
  using C = FieldCase<G>;
  return {
      {"(X+Y)_d = X_d * Y_d", "prop:flow-addition",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(section_at(c.X + c.Y, e) == section_at(c.X, e) * section_at(c.Y, e), "(X+Y)_d differs from X_d * Y_d");
       }},
      {"(X+Y)_d = Y_d * X_d", "prop:flow-addition",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(section_at(c.X + c.Y, e) == section_at(c.Y, e) * section_at(c.X, e), "(X+Y)_d differs from Y_d * X_d");
       }},
      {"X_{d1} * Y_{d2} = Y_{d2} * X_{d1} on D(2)", "prop:flow-addition",
       [](C& c) {
         const auto d1 = generator(D2(), 0), d2 = generator(D2(), 1);
         const auto xy = (section_at(c.X, d1) * section_at(c.Y, d2)).section();
         const auto yx = (section_at(c.Y, d2) * section_at(c.X, d1)).section();
         const DomainRef n2 = domain::first_neighbourhood(2);
         expect(restrict_section(xy, n2) == restrict_section(yx, n2), "flows do not commute on D(2)");
       }},
      {"(aX)_d = X_{ad}", "def:module-structure",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(section_at(c.a * c.X, e) == section_at(c.X, e * c.a), "(aX)_d differs from X_{ad}");
       }},
      {"(-X)_d = X_{-d}", "cor:flow-inverse",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(section_at(-c.X, e) == section_at(c.X, -e), "(-X)_d differs from X_{-d}");
       }},
      {"(X - Y)_d = X_d * Y_{-d}", "def:tangent-difference",
       [](C& c) {
         const auto e = generator(D(), 0);
         expect(section_at(c.X - c.Y, e) == section_at(c.X, e) * section_at(c.Y, -e), "(X-Y)_d differs from X_d * Y_{-d}");
       }},
      {"module axioms", "def:module-structure",
       [](C& c) {
         const auto zero = AGSection<G>::zero(c.X.groupoid());
         expect(c.X + c.Y == c.Y + c.X, "addition is not commutative");
         expect((c.X + c.Y) + c.Z == c.X + (c.Y + c.Z), "addition is not associative");
         expect(c.X + zero == c.X && (c.X + -c.X).is_zero(), "zero or negatives misbehave");
         expect(c.a * (c.X + c.Y) == c.a * c.X + c.a * c.Y, "scaling does not distribute over sums");
         expect(Rational(c.a + c.b) * c.X == c.a * c.X + c.b * c.X, "sum of scalars does not distribute");
         expect(Rational(c.a * c.b) * c.X == c.a * (c.b * c.X), "scaling is not associative");
         expect(Rational(1) * c.X == c.X, "1 X differs from X");
       }},
  };
}

template <class G>
std::vector<Law<FieldCase<G>>> bracket(const Ops<G>& ops) {
  using C = FieldCase<G>;
  return {
      {"[aX,Y] = a[X,Y]", "thm:lie-algebra/scaling",
       [ops](C& c) { expect(ops.bracket(c.a * c.X, c.Y) == c.a * ops.bracket(c.X, c.Y), "[aX,Y] differs from a[X,Y]"); }},
      {"[X+Y,Z] = [X,Z] + [Y,Z]", "thm:lie-algebra/additivity",
       [ops](C& c) {
         expect(ops.bracket(c.X + c.Y, c.Z) == ops.bracket(c.X, c.Z) + ops.bracket(c.Y, c.Z),
                "[X+Y,Z] differs from [X,Z] + [Y,Z]");
       }},
      {"[X,Y] = -[Y,X]", "thm:lie-algebra/antisymmetry",
       [ops](C& c) { expect(ops.bracket(c.X, c.Y) == -ops.bracket(c.Y, c.X), "[X,Y] differs from -[Y,X]"); }},
      {"[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0", "thm:lie-algebra/jacobi",
       [ops](C& c) {
         const auto sum = ops.bracket(c.X, ops.bracket(c.Y, c.Z)) + ops.bracket(c.Y, ops.bracket(c.Z, c.X)) +
                          ops.bracket(c.Z, ops.bracket(c.X, c.Y));
         expect(sum.is_zero(), "Jacobi sum is " + to_string(sum));
       }},
      {"[X,Y]_{d1 d2} = Y_{-d2} * X_{-d1} * Y_{d2} * X_{d1}", "def:lie-bracket",
       [ops](C& c) {
         const auto sq = commutator_square(c.X, c.Y);
         const auto d1 = generator(D2(), 0), d2 = generator(D2(), 1);
         const auto b = ops.bracket(c.X, c.Y);
         expect(section_at(b, d1 * d2).section() == sq.square.section(),
                "[X,Y] = " + to_string(b) + " does not reproduce the commutator square");
       }},
  };
}

template <class G>
std::vector<Law<FieldCase<G>>> liederiv(const Ops<G>& ops) {
  using C = FieldCase<G>;
  return {
      {"L_X Y = [X,Y]", "thm:lie-derivative",
       [ops](C& c) {
         const auto l = lie_derivative(c.X, c.Y);
         const auto b = ops.bracket(c.X, c.Y);
         expect(l == b, "L_X Y = " + to_string(l) + " but [X,Y] = " + to_string(b));
       }},
      {"L_X[Y,Z] = [L_X Y, Z] + [Y, L_X Z]", "thm:lie-derivative-leibniz",
       [ops](C& c) {
         expect(lie_derivative(c.X, ops.bracket(c.Y, c.Z)) ==
                    ops.bracket(lie_derivative(c.X, c.Y), c.Z) + ops.bracket(c.Y, lie_derivative(c.X, c.Z)),
                "Leibniz rule fails");
       }},
      {"sigma_*[Y,Z] = [sigma_* Y, sigma_* Z]", "thm:lie-derivative-leibniz/pushforward",
       [ops](C& c) {
         expect(pushforward(c.sigma, ops.bracket(c.Y, c.Z)) ==
                    ops.bracket(pushforward(c.sigma, c.Y), pushforward(c.sigma, c.Z)),
                "pushforward does not preserve the bracket");
       }},
      {"(sigma * tau)_* Y = sigma_*(tau_* Y)", "def:pushforward",
       [](C& c) {
         expect(pushforward(c.sigma * c.tau, c.Y) == pushforward(c.sigma, pushforward(c.tau, c.Y)),
                "pushforward is not functorial");
       }},
      {"[X,[Y,Z]] = [[X,Y],Z] + [Y,[X,Z]]", "thm:jacobi-first-route",
       [ops](C& c) {
         expect(ops.bracket(c.X, ops.bracket(c.Y, c.Z)) ==
                    ops.bracket(ops.bracket(c.X, c.Y), c.Z) + ops.bracket(c.Y, ops.bracket(c.X, c.Z)),
                "derivation form of Jacobi fails");
       }},
  };
}

template <class G>
const std::array<AGSection<G>, 3>& microcube_terms(FieldCase<G>& c) {
  if (!c.microcube_terms) c.microcube_terms = jacobi_terms_via_microcubes(c.X, c.Y, c.Z);
  return *c.microcube_terms;
}

template <class G>
std::vector<Law<FieldCase<G>>> jacobi2(const Ops<G>& ops) {
  using C = FieldCase<G>;
  const auto p12 = permutation_from_cycles(2, {{1, 2}});
  return {
      {"[X,Y] = (Y (*) X) -. Sigma_(12)(X (*) Y)", "prop:bracket-strong-difference",
       [ops](C& c) {
         expect(bracket_via_strong_difference(c.X, c.Y) == ops.bracket(c.X, c.Y), "strong-difference bracket differs");
         expect(bracket_via_strong_difference(c.Y, c.Z) == ops.bracket(c.Y, c.Z), "strong-difference bracket differs");
       }},
      {"lambda(d1,d2,0) = X_{d1} * Y_{d2} = Sigma_(12)(X (*) Y)", "prop:bracket-strong-difference/lambda",
       [p12](C& c) {
         const auto lw = lambda_witness(c.X, c.Y);
         const auto d1 = generator(D2(), 0), d2 = generator(D2(), 1);
         expect(lw.at_zero == (section_at(c.X, d1) * section_at(c.Y, d2)).section(), "lambda(d1,d2,0) differs");
         expect(lw.at_zero == sigma_perm(circledast_of(c.X, c.Y), p12).section(), "lambda(d1,d2,0) differs");
       }},
      {"lambda(d1,d2,d1 d2) = Y_{d2} * X_{d1} = (Y (*) X)", "prop:bracket-strong-difference/lambda",
       [](C& c) {
         const auto lw = lambda_witness(c.X, c.Y);
         const auto d1 = generator(D2(), 0), d2 = generator(D2(), 1);
         expect(lw.at_product == (section_at(c.Y, d2) * section_at(c.X, d1)).section(), "lambda(d1,d2,d1 d2) differs");
         expect(lw.at_product == circledast_of(c.Y, c.X).section(), "lambda(d1,d2,d1 d2) differs");
       }},
      {"lambda(0,0,d) = [X,Y]_d", "prop:bracket-strong-difference/lambda",
       [ops](C& c) {
         const auto lw = lambda_witness(c.X, c.Y);
         expect(lw.on_third_axis == section_at(ops.bracket(c.X, c.Y), generator(D(), 0)).section(),
                "lambda(0,0,d) differs from [X,Y]_d");
       }},
      {"[X,[Y,Z]] = (g123 -1 g132) -. (g231 -1 g321)", "prop:six-microcubes",
       [ops](C& c) {
         expect(microcube_terms(c)[0] == ops.bracket(c.X, ops.bracket(c.Y, c.Z)), "first microcube identity fails");
       }},
      {"[Y,[Z,X]] = (g231 -2 g213) -. (g312 -2 g132)", "prop:six-microcubes",
       [ops](C& c) {
         expect(microcube_terms(c)[1] == ops.bracket(c.Y, ops.bracket(c.Z, c.X)), "second microcube identity fails");
       }},
      {"[Z,[X,Y]] = (g312 -3 g321) -. (g123 -3 g213)", "prop:six-microcubes",
       [ops](C& c) {
         expect(microcube_terms(c)[2] == ops.bracket(c.Z, ops.bracket(c.X, c.Y)), "third microcube identity fails");
       }},
      {"the three microcube expressions sum to zero", "thm:general-jacobi",
       [](C& c) {
         const auto& t = microcube_terms(c);
         expect((t[0] + t[1] + t[2]).is_zero(), "microcube expressions do not cancel");
       }},
  };
}

inline oracle::PolyVectorField as_vf(const AGSection<PairGroupoid>& X) {
  return oracle::PolyVectorField(X.groupoid().dimension(), X.data());
}

inline oracle::PolyVectorField operator+(const oracle::PolyVectorField& a, const oracle::PolyVectorField& b) {
  auto out = a;
  for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] += b.components[i];
  return out;
}

template <class G>
std::vector<Law<FieldCase<G>>> oracle_laws(const Ops<G>& ops) {
  using C = FieldCase<G>;
  std::vector<Law<C>> out;
  if constexpr (std::is_same_v<G, PairGroupoid>) {
    out.push_back({"[X,Y] = classical Jacobi-Lie bracket", "claim:classical-degeneration", [ops](C& c) {
                     const auto b = ops.bracket(c.X, c.Y);
                     const auto o = oracle::classical_vf_bracket(as_vf(c.X), as_vf(c.Y));
                     expect(b.data() == o.components,
                            "bracket " + to_string(b) + " but classical " + to_string(o.components));
                   }});
    out.push_back({"classical bracket is antisymmetric and satisfies Jacobi", "oracle:self-consistency", [](C& c) {
                     using oracle::classical_vf_bracket;
                     const auto x = as_vf(c.X), y = as_vf(c.Y), z = as_vf(c.Z);
                     auto xy = classical_vf_bracket(x, y), yx = classical_vf_bracket(y, x);
                     for (std::size_t i = 0; i < xy.components.size(); ++i)
                       expect((xy.components[i] + yx.components[i]).is_zero(), "oracle is not antisymmetric");
                     const auto j = classical_vf_bracket(x, classical_vf_bracket(y, z)) +
                                    classical_vf_bracket(y, classical_vf_bracket(z, x)) +
                                    classical_vf_bracket(z, classical_vf_bracket(x, y));
                     for (const auto& p : j.components) expect(p.is_zero(), "oracle violates Jacobi");
                   }});
  } else {
    out.push_back({"[X,Y] = Y X - X Y pointwise", "claim:gauge-degeneration", [ops](C& c) {
                     const auto b = ops.bracket(c.X, c.Y);
                     expect(b.data() == oracle::matrix_table_bracket(c.X.data(), c.Y.data()),
                            "bracket " + to_string(b) + " differs from the matrix oracle");
                   }});
    out.push_back({"matrix bracket is antisymmetric and satisfies Jacobi", "oracle:self-consistency", [](C& c) {
                     using oracle::matrix_table_bracket;
                     const auto &x = c.X.data(), &y = c.Y.data(), &z = c.Z.data();
                     const auto xy = matrix_table_bracket(x, y), yx = matrix_table_bracket(y, x);
                     const auto a = matrix_table_bracket(x, matrix_table_bracket(y, z));
                     const auto b = matrix_table_bracket(y, matrix_table_bracket(z, x));
                     const auto d = matrix_table_bracket(z, matrix_table_bracket(x, y));
                     for (std::size_t i = 0; i < x.size(); ++i) {
                       expect((xy[i] + yx[i]).is_zero(), "oracle is not antisymmetric");
                       expect((a[i] + b[i] + d[i]).is_zero(), "oracle violates Jacobi");
                     }
                   }});
    out.push_back({"(I - d2 B)(I - d1 A)(I + d2 B)(I + d1 A) = I + d1 d2 (BA - AB)", "oracle:gauge-sign", [](C& c) {
                     const DomainRef d = D2();
                     const auto d1 = generator(d, 0), d2 = generator(d, 1);
                     for (std::size_t x = 0; x < c.X.data().size(); ++x) {
                       const Matrix& A = c.X.data()[x];
                       const Matrix& B = c.Y.data()[x];
                       const auto I = WeilMatrix::constant(d, Matrix::identity(A.rows()));
                       const auto word = (I - lift(d2, B)) * (I - lift(d1, A)) * (I + lift(d2, B)) * (I + lift(d1, A));
                       expect(word == I + lift(d1 * d2, Matrix(B * A - A * B)), "commutator word expansion differs");
                     }
                   }});
  }
  return out;
}

/// Product computed as polynomials in the generators, then truncated.
inline WeilElement truncated_product(const WeilElement& a, const WeilElement& b) {
  const std::size_t n = a.domain()->generator_count();
  auto to_poly = [n](const WeilElement& w) {
    Polynomial p;
    for (const auto& [m, c] : w.terms()) {
      std::vector<unsigned> e(n);
      for (std::size_t g = 0; g < n; ++g) e[g] = (m >> g) & 1u;
      p.add_term(Monomial::from_exponents(e), c);
    }
    return p;
  };
  const Polynomial prod = to_poly(a) * to_poly(b);
  WeilElement::Terms out;
  for (const auto& [mono, c] : prod.terms()) {
    Mask m = 0;
    bool square = false;
    for (std::size_t g = 0; g < n; ++g) {
      if (mono.exponent(g) > 1) square = true;
      if (mono.exponent(g) == 1) m |= generator_mask(g);
    }
    if (!square && !a.domain()->is_zero_monomial(m)) out.emplace(m, c);
  }
  return WeilElement(a.domain(), std::move(out));
}

template <class G>
std::vector<Law<EngineCase<G>>> strongdiff(const Ops<G>&) {
  using C = EngineCase<G>;
  return {
      {"weil product = truncated polynomial product", "engine:weil-ring",
       [](C& c) {
         expect(c.p * c.q == truncated_product(c.p, c.q), "product differs from the truncated polynomial product");
         expect(c.q * c.r == truncated_product(c.q, c.r), "product differs from the truncated polynomial product");
       }},
      {"weil ring axioms", "engine:weil-ring",
       [](C& c) {
         const auto& [p, q, r] = std::tie(c.p, c.q, c.r);
         const auto one = scalar(c.dom, 1);
         expect((p * q) * r == p * (q * r), "product is not associative");
         expect(p * q == q * p, "product is not commutative");
         expect(p * (q + r) == p * q + p * r, "product does not distribute");
         expect(p * one == p && (p - p).is_zero() && p + WeilElement(c.dom) == p, "units misbehave");
       }},
      {"generator squares and zero monomials vanish", "engine:weil-ring",
       [](C& c) {
         const auto& d = *c.dom;
         for (std::size_t g = 0; g < d.generator_count(); ++g) {
           const auto e = generator(c.dom, g);
           expect((e * e).is_zero(), "a generator does not square to zero");
         }
         for (Mask z : d.minimal_zero_monomials()) {
           WeilElement prod = scalar(c.dom, 1);
           for (std::size_t g = 0; g < d.generator_count(); ++g)
             if (z & generator_mask(g)) prod = prod * generator(c.dom, g);
           expect(prod.is_zero(), "a declared zero monomial survives");
         }
       }},
      {"substitution is a unital ring homomorphism", "engine:weil-substitution",
       [](C& c) {
         const auto& s = c.subst;
         auto phi = [&](const WeilElement& w) { return substitute(w, std::span<const WeilElement>(s.images), s.target); };
         expect(phi(c.sp * c.sq) == phi(c.sp) * phi(c.sq), "substitution does not preserve products");
         expect(phi(c.sp + c.sq) == phi(c.sp) + phi(c.sq), "substitution does not preserve sums");
         expect(phi(scalar(s.source, 1)) == scalar(s.target, 1), "substitution does not preserve 1");
         for (std::size_t g = 0; g < s.images.size(); ++g)
           expect(phi(generator(s.source, g)) == s.images[g], "substitution misplaces a generator");
       }},
      {"restriction is a ring homomorphism", "engine:weil-restriction",
       [](C& c) {
         expect((c.rp * c.rq).restrict(c.small_dom) == c.rp.restrict(c.small_dom) * c.rq.restrict(c.small_dom),
                "restriction does not preserve products");
         expect((c.rp + c.rq).restrict(c.small_dom) == c.rp.restrict(c.small_dom) + c.rq.restrict(c.small_dom),
                "restriction does not preserve sums");
       }},
      {"a * a^{-1} = 1", "engine:weil-inverse",
       [](C& c) { expect(c.unit * invert(c.unit) == scalar(c.dom, 1), "inverse is wrong"); }},
      {"Sigma_phi Sigma_eps = Sigma_(phi o eps)", "engine:sigma-action",
       [](C& c) {
         std::vector<std::size_t> comp(3);
         for (std::size_t g = 0; g < 3; ++g) comp[g] = c.phi[c.eps[g]];
         expect(sigma_perm(sigma_perm(c.gamma, c.eps), c.phi) == sigma_perm(c.gamma, comp),
                "permutation action does not compose");
       }},
      {"(g1 -. g2) + (g2 -. g3) + (g3 -. g1) = 0 in AffineSpace(3)", "prop:strong-difference-cocycle",
       [](C& c) {
         const auto& s = c.affine_squares;
         expect((strong_difference(s[0], s[1]) + strong_difference(s[1], s[2]) + strong_difference(s[2], s[0])).is_zero(),
                "cocycle identity fails");
       }},
      {"(g1 -. g2) + (g2 -. g3) + (g3 -. g1) = 0 in MatrixGroup(2)", "prop:strong-difference-cocycle",
       [](C& c) {
         const auto& s = c.matrix_squares;
         expect((strong_difference(s[0], s[1]) + strong_difference(s[1], s[2]) + strong_difference(s[2], s[0])).is_zero(),
                "cocycle identity fails");
       }},
      {"relative strong difference: coefficient rule = compositional definition", "engine:relative-strong-difference",
       [](C& c) {
         for (int i = 1; i <= 3; ++i) {
           const auto& [plus, minus] = c.cube_pairs[static_cast<std::size_t>(i - 1)];
           expect(relative_strong_difference(i, plus, minus) == relative_strong_difference_by_composition(i, plus, minus),
                  "the two constructions differ along axis " + std::to_string(i));
         }
       }},
      {"general Jacobi on compatible six-tuples in AffineSpace(3)", "thm:general-jacobi",
       [](C& c) {
         const auto t = general_jacobi_terms(c.six);
         expect((t[0] + t[1] + t[2]).is_zero(), "the three expressions do not sum to zero");
       }},
      {"general Jacobi on the six (*)-microcubes", "thm:general-jacobi",
       [](C& c) {
         const auto t = jacobi_terms_via_microcubes(c.X, c.Y, c.Z);
         expect((t[0] + t[1] + t[2]).is_zero(), "the three expressions do not sum to zero");
       }},
  };
}

}  // namespace laws

// ---------------------------------------------------------------------------

template <class G>
std::vector<CaseRecord> run_one(const std::string& suite, const Generator<G>& gen, const SuiteConfig& cfg) {
  const Ops<G> ops{cfg.mutation};
  auto field_cases = [&](std::vector<Law<FieldCase<G>>> laws) {
    return run_laws(laws, cfg.trials, [&](std::size_t c) {
      Rng rng(cfg.seed, suite, c);
      return make_field_case(gen, rng, c);
    });
  };
  std::vector<CaseRecord> out;
  if (suite == "flows") out = field_cases(laws::flows(ops));
  else if (suite == "module") out = field_cases(laws::module(ops));
  else if (suite == "bracket") out = field_cases(laws::bracket(ops));
  else if (suite == "liederiv") out = field_cases(laws::liederiv(ops));
  else if (suite == "jacobi2") out = field_cases(laws::jacobi2(ops));
  else if (suite == "oracle") out = field_cases(laws::oracle_laws(ops));
  else if (suite == "strongdiff")
    out = run_laws(laws::strongdiff(ops), cfg.trials, [&](std::size_t c) {
      Rng rng(cfg.seed, suite, c);
      return make_engine_case(gen, rng, c);
    });
  else
    throw ConfigError("unknown suite '" + suite + "'");
  for (auto& r : out) r.law = suite + ": " + r.law;
  return out;
}

/// Validates the configuration, then runs one suite or all of them in order.
inline Report run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  Report report{cfg.suite, cfg.groupoid.to_string(), cfg.seed, cfg.trials, {}};
  std::vector<std::string> suites;
  if (cfg.suite == "all")
    suites.assign(kSuites.begin(), kSuites.end());
  else
    suites.push_back(cfg.suite);
  for (const auto& s : suites) {
    std::vector<CaseRecord> recs;
    if (cfg.groupoid.kind == GroupoidSpec::Kind::pair)
      recs = run_one(s, Generator<PairGroupoid>{PairGroupoid(cfg.groupoid.dimension), cfg.groupoid.degree}, cfg);
    else
      recs = run_one(s, Generator<TrivialGaugeGroupoid>{TrivialGaugeGroupoid(cfg.groupoid.base, cfg.groupoid.k)}, cfg);
    for (auto& r : recs) report.cases.push_back(std::move(r));
  }
  return report;
}

}  // namespace sdg::harness
