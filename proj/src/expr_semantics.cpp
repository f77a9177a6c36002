#include <map>
#include <tuple>

#include "graphdef/expr.hpp"

namespace graphdef {

RegisterAssignment empty_assignment(unsigned k) { return RegisterAssignment(k); }

bool cond_eval(const Condition& c, const std::string& d, const RegisterAssignment& tau) {
  if (c.max_register() > tau.size()) {
    throw Error("condition mentions r" + std::to_string(c.max_register()) + " but only " +
                std::to_string(tau.size()) + " registers are assigned");
  }
  return evaluate(c, [&](unsigned r) { return tau[r - 1].has_value() && *tau[r - 1] == d; });
}

unsigned registers_of(const RemExpr& e) {
  unsigned k = 0;
  if (e.kind == RemExpr::Kind::Store) k = e.registers.back();
  if (e.kind == RemExpr::Kind::Test) k = e.condition.max_register();
  for (const auto& a : e.args) k = std::max(k, registers_of(a));
  return k;
}

namespace {

template <class Expr>
void collect_letters(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Letter) out.insert(e.letter);
  for (const auto& a : e.args) collect_letters(a, out);
}

}  // namespace

std::set<std::string> letters_of(const RemExpr& e) {
  std::set<std::string> out;
  collect_letters(e, out);
  return out;
}

std::set<std::string> letters_of(const ReeExpr& e) {
  std::set<std::string> out;
  collect_letters(e, out);
  return out;
}

bool is_plain(const RemExpr& e) {
  if (e.kind == RemExpr::Kind::Store || e.kind == RemExpr::Kind::Test) return false;
  for (const auto& a : e.args)
    if (!is_plain(a)) return false;
  return true;
}

ReeExpr to_ree(const RemExpr& e) {
  using K = RemExpr::Kind;
  switch (e.kind) {
    case K::Eps: return ReeExpr::eps();
    case K::Letter: return ReeExpr::sym(e.letter);
    case K::Union: return ReeExpr::either(to_ree(e.args[0]), to_ree(e.args[1]));
    case K::Concat: return ReeExpr::concat(to_ree(e.args[0]), to_ree(e.args[1]));
    case K::Plus: return ReeExpr::plus(to_ree(e.args[0]));
    default: break;
  }
  throw Error("expression uses registers; it is not a plain regular expression");
}

namespace {

// Structural recursion over (subexpression, slice of w, incoming assignment).
// Slices are value index ranges [i, j]; concatenation shares the boundary.
class RemMatcher {
 public:
  explicit RemMatcher(const DataPath& w) : w_(w) {}

  const std::set<RegisterAssignment>& match(const RemExpr& e, std::size_t i, std::size_t j,
                                            const RegisterAssignment& sigma) {
    auto key = std::make_tuple(&e, i, j, sigma);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<RegisterAssignment> out = compute(e, i, j, sigma);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  std::set<RegisterAssignment> compute(const RemExpr& e, std::size_t i, std::size_t j,
                                       const RegisterAssignment& sigma) {
    using K = RemExpr::Kind;
    std::set<RegisterAssignment> out;
    switch (e.kind) {
      case K::Eps:
        if (i == j) out.insert(sigma);
        break;
      case K::Letter:
        if (j == i + 1 && w_.letters[i] == e.letter) out.insert(sigma);
        break;
      case K::Union: {
        out = match(e.args[0], i, j, sigma);
        const auto& rhs = match(e.args[1], i, j, sigma);
        out.insert(rhs.begin(), rhs.end());
        break;
      }
      case K::Concat:
        for (std::size_t m = i; m <= j; ++m) {
          const auto left = match(e.args[0], i, m, sigma);
          for (const auto& mid : left) {
            const auto& right = match(e.args[1], m, j, mid);
            out.insert(right.begin(), right.end());
          }
        }
        break;
      case K::Plus: {
        // (position, assignment) pairs reachable after one or more iterations.
        std::set<std::pair<std::size_t, RegisterAssignment>> reached;
        std::vector<std::pair<std::size_t, RegisterAssignment>> frontier{{i, sigma}};
        while (!frontier.empty()) {
          auto [m, tau] = std::move(frontier.back());
          frontier.pop_back();
          for (std::size_t next = m; next <= j; ++next) {
            const auto results = match(e.args[0], m, next, tau);
            for (const auto& r : results) {
              if (reached.emplace(next, r).second) frontier.emplace_back(next, r);
            }
          }
        }
        for (const auto& [m, tau] : reached)
          if (m == j) out.insert(tau);
        break;
      }
      case K::Test: {
        const auto& d = w_.values[j];
        for (const auto& tau : match(e.args[0], i, j, sigma)) {
          if (cond_eval(e.condition, d, tau)) out.insert(tau);
        }
        break;
      }
      case K::Store: {
        RegisterAssignment stored = sigma;
        for (auto r : e.registers) stored[r - 1] = w_.values[i];
        out = match(e.args[0], i, j, stored);
        break;
      }
    }
    return out;
  }

  const DataPath& w_;
  std::map<std::tuple<const RemExpr*, std::size_t, std::size_t, RegisterAssignment>,
           std::set<RegisterAssignment>>
      memo_;
};

class ReeMatcher {
 public:
  explicit ReeMatcher(const DataPath& w) : w_(w) {}

  bool match(const ReeExpr& e, std::size_t i, std::size_t j) {
    auto key = std::make_tuple(&e, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool out = compute(e, i, j);
    memo_.emplace(key, out);
    return out;
  }

 private:
  bool compute(const ReeExpr& e, std::size_t i, std::size_t j) {
    using K = ReeExpr::Kind;
    switch (e.kind) {
      case K::Eps: return i == j;
      case K::Letter: return j == i + 1 && w_.letters[i] == e.letter;
      case K::Union: return match(e.args[0], i, j) || match(e.args[1], i, j);
      case K::Concat:
        for (std::size_t m = i; m <= j; ++m) {
          if (match(e.args[0], i, m) && match(e.args[1], m, j)) return true;
        }
        return false;
      case K::Plus: {
        std::vector<bool> reached(w_.values.size(), false);
        std::vector<std::size_t> frontier{i};
        while (!frontier.empty()) {
          const std::size_t m = frontier.back();
          frontier.pop_back();
          for (std::size_t next = m; next <= j; ++next) {
            if (!reached[next] && match(e.args[0], m, next)) {
              reached[next] = true;
              frontier.push_back(next);
            }
          }
        }
        return reached[j];
      }
      case K::Eq: return w_.values[i] == w_.values[j] && match(e.args[0], i, j);
      case K::Neq: return w_.values[i] != w_.values[j] && match(e.args[0], i, j);
    }
    return false;
  }

  const DataPath& w_;
  std::map<std::tuple<const ReeExpr*, std::size_t, std::size_t>, bool> memo_;
};

}  // namespace

std::set<RegisterAssignment> rem_match(const RemExpr& e, const DataPath& w,
                                       const RegisterAssignment& sigma) {
  if (registers_of(e) > sigma.size()) {
    throw Error("assignment has " + std::to_string(sigma.size()) + " registers, expression uses " +
                std::to_string(registers_of(e)));
  }
  RemMatcher matcher(w);
  return matcher.match(e, 0, w.values.size() - 1, sigma);
}

bool rem_lang_member(const RemExpr& e, const DataPath& w) {
  return !rem_match(e, w, empty_assignment(registers_of(e))).empty();
}

bool ree_member(const ReeExpr& e, const DataPath& w) {
  ReeMatcher matcher(w);
  return matcher.match(e, 0, w.values.size() - 1);
}

RemExpr canonical_rem(const DataPath& w) {
  std::map<std::string, unsigned> reg_of;
  reg_of.emplace(w.values[0], 1);
  RemExpr out = RemExpr::store({1}, RemExpr::eps());
  for (std::size_t i = 1; i < w.values.size(); ++i) {
    const auto& d = w.values[i];
    if (auto it = reg_of.find(d); it != reg_of.end()) {
      out = RemExpr::concat(std::move(out),
                            RemExpr::test(RemExpr::sym(w.letters[i - 1]), Condition::reg_eq(it->second)));
    } else {
      // A fresh value differs from every value seen so far.
      const auto r = static_cast<unsigned>(reg_of.size() + 1);
      Condition fresh = Condition::reg_neq(1);
      for (unsigned q = 2; q < r; ++q) fresh = Condition::conj(std::move(fresh), Condition::reg_neq(q));
      reg_of.emplace(d, r);
      out = RemExpr::concat(
          RemExpr::concat(std::move(out), RemExpr::test(RemExpr::sym(w.letters[i - 1]), std::move(fresh))),
          RemExpr::store({r}, RemExpr::eps()));
    }
  }
  return out;
}

}  // namespace graphdef
