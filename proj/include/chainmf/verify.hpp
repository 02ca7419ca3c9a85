#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainmf/collection.hpp"
#include "chainmf/hom.hpp"
#include "chainmf/parallel.hpp"

namespace chainmf {

struct Counterexample {
  std::size_t source = 0, target = 0;
  int shift = 0;
  long long expected = 0, found = 0;
  std::string note;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> warnings;
  bool pass() const { return counterexamples.empty(); }
};

/// Shifts to examine for a pair: the window widened by one below and two above, so that the
/// vanishing just outside it is observed too.
inline std::pair<int, int> checked_range(const MatrixFactorization& E, const MatrixFactorization& F) {
  auto [lo, hi] = shift_window(E, F);
  if (lo > hi) return {-1, 1};
  return {lo - 1, hi + 2};
}

/// Dimensions of Hom(E_s, E_t[l]) for all ordered pairs of a list of objects.
class HomTable {
 public:
  struct Entry {
    int window_lo = 0, window_hi = -1;  // empty when lo > hi
    int from = 0;                       // dims[k] is the dimension at l = from + k
    std::vector<std::size_t> dims;
  };

  HomTable() = default;

  /// With `override` every pair is computed on exactly that range of shifts.
  HomTable(const std::vector<MfPtr>& objects, unsigned jobs, std::optional<std::pair<int, int>> override = std::nullopt)
      : size_(objects.size()), entries_(size_ * size_) {
    struct Task {
      std::size_t pair;
      int l;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < size_; ++s)
      for (std::size_t t = 0; t < size_; ++t) {
        auto& e = entries_[s * size_ + t];
        std::tie(e.window_lo, e.window_hi) = shift_window(*objects[s], *objects[t]);
        auto [from, to] = override ? *override : checked_range(*objects[s], *objects[t]);
        e.from = from;
        e.dims.assign(static_cast<std::size_t>(std::max(0, to - from + 1)), 0);
        for (int l = from; l <= to; ++l) tasks.push_back({s * size_ + t, l});
      }
    parallel_for(tasks.size(), jobs, [&](std::size_t k) {
      const auto& task = tasks[k];
      const std::size_t s = task.pair / size_, t = task.pair % size_;
      auto& e = entries_[task.pair];
      e.dims[static_cast<std::size_t>(task.l - e.from)] = HomComplex(objects[s], *objects[t], task.l).dim();
    });
  }

  std::size_t size() const { return size_; }
  const Entry& entry(std::size_t s, std::size_t t) const { return entries_.at(s * size_ + t); }

  bool computed(std::size_t s, std::size_t t, int l) const {
    const auto& e = entry(s, t);
    return l >= e.from && l < e.from + static_cast<int>(e.dims.size());
  }

  /// Zero outside the computed range.
  std::size_t dim(std::size_t s, std::size_t t, int l) const {
    const auto& e = entry(s, t);
    return computed(s, t, l) ? e.dims[static_cast<std::size_t>(l - e.from)] : 0;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t s = 0; s < size_; ++s)
      for (std::size_t t = 0; t < size_; ++t) {
        const auto& e = entry(s, t);
        for (std::size_t k = 0; k < e.dims.size(); ++k) f(s, t, e.from + static_cast<int>(k), e.dims[k]);
      }
  }

 private:
  std::size_t size_ = 0;
  std::vector<Entry> entries_;
};

inline std::vector<MfPtr> object_pointers(const std::vector<ExceptionalObject>& objs) {
  std::vector<MfPtr> out;
  for (const auto& o : objs) out.push_back(o.object);
  return out;
}

inline HomTable compute_hom_table(const Collection& c, unsigned jobs = 1,
                                  std::optional<std::pair<int, int>> override = std::nullopt) {
  return HomTable(object_pointers(c.objects()), jobs, override);
}

/// End(E_s) = k and no self-extensions in non-zero degrees.
inline CheckResult verify_exceptional(const HomTable& h) {
  CheckResult r{"exceptional"};
  for (std::size_t s = 0; s < h.size(); ++s) {
    const auto& e = h.entry(s, s);
    for (std::size_t k = 0; k < e.dims.size(); ++k) {
      const int l = e.from + static_cast<int>(k);
      const long long want = l == 0 ? 1 : 0;
      ++r.cases;
      if (static_cast<long long>(e.dims[k]) != want)
        r.counterexamples.push_back({s, s, l, want, static_cast<long long>(e.dims[k]), "endomorphisms"});
    }
    if (!h.computed(s, s, 0)) r.counterexamples.push_back({s, s, 0, 1, 0, "degree 0 not computed"});
  }
  return r;
}

/// Hom(E_s, E_t[l]) = 0 for every pair and every l != 0.
inline CheckResult verify_strong(const HomTable& h) {
  CheckResult r{"strong"};
  h.for_each([&](std::size_t s, std::size_t t, int l, std::size_t d) {
    if (l == 0) return;
    ++r.cases;
    if (d != 0) r.counterexamples.push_back({s, t, l, 0, static_cast<long long>(d), "non-zero shift"});
  });
  return r;
}

/// Hom(E_t, E_s[l]) = 0 for s < t and all l.
inline CheckResult verify_semiorthogonal(const HomTable& h) {
  CheckResult r{"semiorthogonal"};
  h.for_each([&](std::size_t s, std::size_t t, int l, std::size_t d) {
    if (s <= t) return;
    ++r.cases;
    if (d != 0) r.counterexamples.push_back({s, t, l, 0, static_cast<long long>(d), "backward morphism"});
  });
  return r;
}

/// Hom(E_s, E_t) has dimension 0 or 1 for s != t.
inline CheckResult verify_hom_binary(const HomTable& h) {
  CheckResult r{"hom values in {0,1}"};
  for (std::size_t s = 0; s < h.size(); ++s)
    for (std::size_t t = 0; t < h.size(); ++t) {
      if (s == t) continue;
      ++r.cases;
      const auto d = h.dim(s, t, 0);
      if (d > 1) r.counterexamples.push_back({s, t, 0, 1, static_cast<long long>(d), "dimension above one"});
    }
  return r;
}

/// Computed dimensions vanish outside the shift window of each pair.
inline CheckResult verify_window(const HomTable& h) {
  CheckResult r{"shift window"};
  h.for_each([&](std::size_t s, std::size_t t, int l, std::size_t d) {
    const auto& e = h.entry(s, t);
    if (l >= e.window_lo && l <= e.window_hi) return;
    ++r.cases;
    if (d != 0) r.counterexamples.push_back({s, t, l, 0, static_cast<long long>(d), "outside window"});
  });
  return r;
}

/// hom(A, B, l) = hom(B, serre_twist(A), -l) = hom(B, A(-x), n - l) for every pair and every
/// computed shift.
inline CheckResult verify_serre(const std::vector<MfPtr>& objects, const HomTable& h, unsigned jobs = 1) {
  CheckResult r{"serre duality"};
  struct Task {
    std::size_t s, t;
    int l;
  };
  std::vector<Task> tasks;
  h.for_each([&](std::size_t s, std::size_t t, int l, std::size_t) { tasks.push_back({s, t, l}); });
  std::vector<MfPtr> dual;
  for (const auto& o : objects) dual.push_back(make_mf(serre_twist(*o)));
  std::vector<std::size_t> rhs(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t k) {
    const auto& [s, t, l] = tasks[k];
    rhs[k] = HomComplex(objects[t], *dual[s], -l).dim();
  });
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto& [s, t, l] = tasks[k];
    ++r.cases;
    const auto lhs = h.dim(s, t, l);
    if (lhs != rhs[k])
      r.counterexamples.push_back({s, t, l, static_cast<long long>(lhs), static_cast<long long>(rhs[k]), "serre dual side"});
  }
  return r;
}

namespace detail {

// One comparison hom(lhs pair, l) = expected, where expected is either a constant 0 or
// hom(rhs pair, l).
struct IdentityCase {
  MfPtr a, b;          // left side
  MfPtr c, d;          // right side, null when the expected value is zero
  std::size_t s, t;    // indices reported in counterexamples
  std::string note;
};

inline void run_identity_cases(const std::vector<IdentityCase>& cases, unsigned jobs, CheckResult& r) {
  struct Task {
    std::size_t c;
    int l;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    auto [lo, hi] = checked_range(*cases[k].a, *cases[k].b);
    if (cases[k].c) {
      auto [lo2, hi2] = checked_range(*cases[k].c, *cases[k].d);
      lo = std::min(lo, lo2);
      hi = std::max(hi, hi2);
    }
    for (int l = lo; l <= hi; ++l) tasks.push_back({k, l});
  }
  std::vector<std::pair<std::size_t, std::size_t>> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t k) {
    const auto& cs = cases[tasks[k].c];
    const int l = tasks[k].l;
    out[k].first = HomComplex(cs.a, *cs.b, l).dim();
    out[k].second = cs.c ? HomComplex(cs.c, *cs.d, l).dim() : 0;
  });
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    ++r.cases;
    if (out[k].first != out[k].second) {
      const auto& cs = cases[tasks[k].c];
      r.counterexamples.push_back({cs.s, cs.t, tasks[k].l, static_cast<long long>(out[k].second),
                                   static_cast<long long>(out[k].first), cs.note});
    }
  }
}

}  // namespace detail

/// hom(psi_i E, psi_j F, l) = hom(E, F, l) when j = i + 1 and 0 for other i < j, for E, F in
/// E^{m-1} at every level m. The case i = j (psi_i fully faithful) is checked as well.
inline CheckResult verify_psi_psi(const Collection& c, unsigned jobs = 1) {
  CheckResult r{"psi to psi homs"};
  const auto& T = c.tower();
  std::vector<detail::IdentityCase> cases;
  for (std::size_t m = 1; m <= c.top(); ++m) {
    const auto& prev = c.level(m - 1);
    const int b = T.exponent(m);
    std::vector<std::vector<MfPtr>> psis(static_cast<std::size_t>(std::max(0, b - 1)));
    for (int i = 0; i <= b - 2; ++i)
      for (const auto& e : prev) psis[i].push_back(make_mf(T.psi_i(*e.object, i)));
    for (std::size_t s = 0; s < prev.size(); ++s)
      for (std::size_t t = 0; t < prev.size(); ++t)
        for (int i = 0; i <= b - 2; ++i)
          for (int j = i; j <= b - 2; ++j) {
            const bool same = j == i + 1 || j == i;
            const std::string note = "level " + std::to_string(m) + " psi" + std::to_string(i) + " -> psi" + std::to_string(j);
            cases.push_back({psis[i][s], psis[j][t], same ? prev[s].object : nullptr, same ? prev[t].object : nullptr, s, t, note});
          }
  }
  detail::run_identity_cases(cases, jobs, r);
  return r;
}

/// hom(psi_i E, phi_j F, l) = hom(E, psi_j F, l) when i = a_m - 2 and 0 otherwise, for E in
/// E^{m-1}, F in E^{m-2}, 0 <= j <= a_{m-1} - 1 at every level m >= 2.
inline CheckResult verify_psi_phi(const Collection& c, unsigned jobs = 1) {
  CheckResult r{"psi to phi homs"};
  const auto& T = c.tower();
  std::vector<detail::IdentityCase> cases;
  for (std::size_t m = 2; m <= c.top(); ++m) {
    const auto& prev = c.level(m - 1);
    const auto& prev2 = c.level(m - 2);
    const int b = T.exponent(m), a = T.exponent(m - 1);
    for (std::size_t t = 0; t < prev2.size(); ++t)
      for (int j = 0; j <= a - 1; ++j) {
        auto phi = make_mf(T.phi_j(*prev2[t].object, j));
        auto psi = make_mf(T.psi_twisted(*prev2[t].object, j));
        for (std::size_t s = 0; s < prev.size(); ++s)
          for (int i = 0; i <= b - 2; ++i) {
            const bool last = i == b - 2;
            const std::string note = "level " + std::to_string(m) + " psi" + std::to_string(i) + " -> phi" + std::to_string(j);
            cases.push_back({make_mf(T.psi_i(*prev[s].object, i)), phi, last ? prev[s].object : nullptr,
                             last ? psi : nullptr, s, t, note});
          }
      }
  }
  detail::run_identity_cases(cases, jobs, r);
  return r;
}

/// For every F in E^m with m + 2 <= n: z : phi F(-z) -> phi F is a morphism, and the explicit
/// alpha : psi^2 F -> Cone(z) is a morphism with a two-sided inverse over S.
inline CheckResult triangle_check(const Collection& c, unsigned jobs = 1) {
  CheckResult r{"triangle"};
  const auto& T = c.tower();
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t m = 0; m + 2 <= c.top(); ++m)
    for (std::size_t p = 0; p < c.level(m).size(); ++p) items.emplace_back(m, p);
  std::vector<std::string> failure(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t k) {
    const auto& F = *c.level(items[k].first)[items[k].second].object;
    auto tri = T.triangle(F);
    if (!is_valid(tri.z_map))
      failure[k] = "multiplication by z is not a morphism";
    else if (auto v = validate(tri.alpha); !v.empty())
      failure[k] = "alpha: " + v.front().message;
    else if (!has_strict_inverse(tri.alpha))
      failure[k] = "alpha has no inverse over S";
  });
  for (std::size_t k = 0; k < items.size(); ++k) {
    ++r.cases;
    if (!failure[k].empty())
      r.counterexamples.push_back({items[k].second, items[k].second, 0, 0, 0,
                                   "level " + std::to_string(items[k].first) + " " + c.level(items[k].first)[items[k].second].label +
                                       ": " + failure[k]});
  }
  return r;
}

/// Triangle check for a single object F at level m <= n - 2.
inline CheckResult triangle_check(const ChainTower& T, const MatrixFactorization& F) {
  CheckResult r{"triangle"};
  ++r.cases;
  auto tri = T.triangle(F);
  std::string failure;
  if (!is_valid(tri.z_map))
    failure = "multiplication by z is not a morphism";
  else if (auto v = validate(tri.alpha); !v.empty())
    failure = "alpha: " + v.front().message;
  else if (!has_strict_inverse(tri.alpha))
    failure = "alpha has no inverse over S";
  if (!failure.empty()) r.counterexamples.push_back({0, 0, 0, 0, 0, failure});
  return r;
}

namespace detail {

// Canonical morphism at a level: valid and, when non-zero source, not null-homotopic.
inline void check_canonical(const MfMorphism& m, const std::string& what, std::size_t s, CheckResult& r) {
  ++r.cases;
  if (auto v = validate(m); !v.empty()) {
    r.counterexamples.push_back({s, s, 0, 0, 0, what + " invalid: " + v.front().message});
    return;
  }
  if (is_null_homotopic(m)) r.counterexamples.push_back({s, s, 0, 1, 0, what + " is null-homotopic"});
}

// g1 . a = b . g0 exactly, or up to homotopy with a warning.
inline void check_square(const MfMorphism& top_then_right, const MfMorphism& left_then_bottom, const std::string& what,
                         std::size_t s, std::size_t t, CheckResult& r) {
  ++r.cases;
  if (top_then_right == left_then_bottom) return;
  if (homotopy_equal(top_then_right, left_then_bottom)) {
    r.warnings.push_back(what + " commutes only up to homotopy");
    return;
  }
  r.counterexamples.push_back({s, t, 0, 0, 0, what + " does not commute"});
}

}  // namespace detail

/// lambda, sigma and theta at every level: valid, not null-homotopic, natural with respect to
/// a basis of Hom(E, E') for E != E' in the lower collection, and the composite after the
/// functor image of a non-zero map is non-zero.
inline CheckResult verify_canonical_morphisms(const Collection& c, unsigned jobs = 1) {
  CheckResult r{"canonical morphisms"};
  const auto& T = c.tower();
  std::vector<std::function<void(CheckResult&)>> work;
  for (std::size_t m = 1; m <= c.top(); ++m) {
    const auto& prev = c.level(m - 1);
    const int b = T.exponent(m);
    for (int i = 0; i <= b - 3; ++i)
      for (std::size_t s = 0; s < prev.size(); ++s) {
        work.push_back([&, i, s, m](CheckResult& out) {
          detail::check_canonical(T.lambda(*c.level(m - 1)[s].object, i), "lambda" + std::to_string(i) + " level " + std::to_string(m), s, out);
        });
        for (std::size_t t = 0; t < prev.size(); ++t) {
          if (s == t) continue;
          work.push_back([&, i, s, t, m](CheckResult& out) {
            const auto& lower = c.level(m - 1);
            const auto& E = *lower[s].object;
            const auto& F = *lower[t].object;
            for (const auto& a : hom_basis(E, F, 0).basis) {
              const auto top_right = compose(T.psi_i(a, i + 1), T.lambda(E, i));
              const auto left_bottom = compose(T.lambda(F, i), T.psi_i(a, i));
              const std::string what = "lambda" + std::to_string(i) + " square level " + std::to_string(m);
              detail::check_square(top_right, left_bottom, what, s, t, out);
              ++out.cases;
              if (is_null_homotopic(left_bottom)) out.counterexamples.push_back({s, t, 0, 1, 0, what + " composite vanishes"});
            }
          });
        }
      }
    if (m < 2 || b < 2) continue;
    const auto& prev2 = c.level(m - 2);
    const int a = T.exponent(m - 1);
    for (std::size_t s = 0; s < prev2.size(); ++s) {
      for (int j = 0; j <= a - 2; ++j)
        work.push_back([&, j, s, m](CheckResult& out) {
          detail::check_canonical(T.sigma(*c.level(m - 2)[s].object, j), "sigma" + std::to_string(j) + " level " + std::to_string(m), s, out);
        });
      if (a >= 2)
        work.push_back([&, s, m](CheckResult& out) {
          detail::check_canonical(T.theta(*c.level(m - 2)[s].object), "theta level " + std::to_string(m), s, out);
        });
      for (std::size_t t = 0; t < prev2.size(); ++t) {
        if (s == t) continue;
        work.push_back([&, s, t, m, a, b](CheckResult& out) {
          const auto& lower = c.level(m - 2);
          const auto& E = *lower[s].object;
          const auto& F = *lower[t].object;
          for (const auto& al : hom_basis(E, F, 0).basis) {
            for (int j = 0; j <= a - 2; ++j) {
              const auto top_right = compose(T.phi_j(al, j), T.sigma(E, j));
              const auto left_bottom = compose(T.sigma(F, j), T.psi_i(T.psi_i(al, j), b - 2));
              const std::string what = "sigma" + std::to_string(j) + " square level " + std::to_string(m);
              detail::check_square(top_right, left_bottom, what, s, t, out);
              ++out.cases;
              if (is_null_homotopic(left_bottom)) out.counterexamples.push_back({s, t, 0, 1, 0, what + " composite vanishes"});
            }
            if (a >= 2) {
              const auto top_right = compose(T.phi_j(al, a - 1), T.theta(E));
              const auto left_bottom = compose(T.theta(F), T.psi_i(T.psi_i(al, a - 2), b - 2));
              const std::string what = "theta square level " + std::to_string(m);
              detail::check_square(top_right, left_bottom, what, s, t, out);
              ++out.cases;
              if (is_null_homotopic(left_bottom)) out.counterexamples.push_back({s, t, 0, 1, 0, what + " composite vanishes"});
            }
          }
        });
      }
    }
  }
  std::vector<CheckResult> parts(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t k) { work[k](parts[k]); });
  for (auto& p : parts) {
    r.cases += p.cases;
    for (auto& x : p.counterexamples) r.counterexamples.push_back(std::move(x));
    for (auto& w : p.warnings) r.warnings.push_back(std::move(w));
  }
  return r;
}

/// Length of E^n against both Milnor number formulas (the weight formula only when a_n >= 2).
inline CheckResult verify_length(const Collection& c) {
  CheckResult r{"length = milnor number"};
  ++r.cases;
  const Integer mu = milnor_number(c.exponents());
  if (Integer(c.size()) != mu)
    r.counterexamples.push_back({0, 0, 0, mu.get_si(), static_cast<long long>(c.size()), "collection length"});
  if (!c.exponents().empty() && c.exponents().back() >= 2) {
    ++r.cases;
    const Integer w = milnor_by_weights(c.exponents());
    if (w != mu) r.counterexamples.push_back({0, 0, 0, mu.get_si(), w.get_si(), "weight product"});
  }
  return r;
}

/// Every object of every level satisfies the factorization identities.
inline CheckResult verify_objects(const Collection& c) {
  CheckResult r{"objects valid"};
  for (std::size_t m = 0; m <= c.top(); ++m)
    for (std::size_t s = 0; s < c.level(m).size(); ++s) {
      ++r.cases;
      if (auto v = validate(*c.level(m)[s].object); !v.empty())
        r.counterexamples.push_back({s, s, 0, 0, 0, "level " + std::to_string(m) + " " + c.level(m)[s].label + ": " + v.front().message});
    }
  return r;
}

}  // namespace chainmf
