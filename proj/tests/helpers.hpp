#ifndef EBREF_TEST_HELPERS_HPP
#define EBREF_TEST_HELPERS_HPP

#include <deque>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebref/lts.hpp"
#include "ebref/parser.hpp"
#include "ebref/wp.hpp"

namespace testutil {

inline std::string read_corpus(const std::string& rel) {
  std::string path = std::string(CORPUS_DIR) + "/" + rel;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline ebref::Machine load_machine(const std::string& rel,
                                   const ebref::Machine* ctx = nullptr) {
  return ebref::parse_machine(read_corpus(rel), ctx);
}

inline ebref::RefinementChain load_chain(const std::vector<std::string>& rels) {
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& r : rels) named.emplace_back(r, read_corpus(r));
  return ebref::parse_chain(named);
}

// Seeded random LTS: 2..8 states, alphabet drawn from {a,b,c,d}, edge
// density ~0.3, initial state 0.
inline ebref::Lts random_lts(std::mt19937_64& rng, int max_states = 8,
                             int max_alpha = 4, double density = 0.3) {
  static const std::vector<std::string> pool{"a", "b", "c", "d"};
  std::uniform_int_distribution<int> nd(2, max_states);
  std::uniform_int_distribution<int> kd(1, max_alpha);
  std::bernoulli_distribution ed(density);
  ebref::Lts p;
  p.num_states = nd(rng);
  int k = kd(rng);
  p.alphabet.assign(pool.begin(), pool.begin() + k);
  p.initials = {0};
  for (int s = 0; s < p.num_states; ++s)
    for (int l = 0; l < k; ++l)
      for (int d = 0; d < p.num_states; ++d)
        if (ed(rng)) p.transitions.push_back({s, l, d});
  p.normalize();
  return p;
}

// Path-enumeration trace oracle, structured differently from the library's
// determinization-based one: BFS over (state, trace) pairs with tau moves.
inline std::set<ebref::Trace> naive_traces(const ebref::Lts& p, int depth) {
  std::set<ebref::Trace> out;
  std::set<std::pair<int, ebref::Trace>> seen;
  std::deque<std::pair<int, ebref::Trace>> queue;
  for (int s : p.initials) {
    queue.emplace_back(s, ebref::Trace{});
    seen.emplace(s, ebref::Trace{});
  }
  while (!queue.empty()) {
    auto [s, tr] = queue.front();
    queue.pop_front();
    out.insert(tr);
    for (const auto& t : p.transitions) {
      if (t.src != s) continue;
      ebref::Trace next = tr;
      if (t.label != ebref::kHiddenLabel) {
        if (static_cast<int>(tr.size()) == depth) continue;
        next.push_back(p.alphabet[static_cast<std::size_t>(t.label)]);
      }
      if (seen.emplace(t.dst, next).second) queue.emplace_back(t.dst, next);
    }
  }
  return out;
}

// existence of a path from `from` to `to` (inclusive of length 0) using only
// edges accepted by `ok`
template <typename EdgeOk>
inline bool naive_path(const ebref::Lts& p, int from, int to, EdgeOk ok) {
  if (from == to) return true;
  std::vector<bool> seen(static_cast<std::size_t>(p.num_states), false);
  std::vector<int> stack{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const auto& t : p.transitions) {
      if (t.src != s || !ok(t)) continue;
      if (t.dst == to) return true;
      if (!seen[static_cast<std::size_t>(t.dst)]) {
        seen[static_cast<std::size_t>(t.dst)] = true;
        stack.push_back(t.dst);
      }
    }
  }
  return false;
}

// brute-force CA check: no reachable cycle avoiding R that contains a C edge
inline bool naive_ca(const ebref::Lts& p, const std::set<std::string>& c,
                     const std::set<std::string>& r) {
  auto reach = p.reachable();
  auto avoids_r = [&](const ebref::Transition& t) {
    return t.label == ebref::kHiddenLabel ||
           !r.count(p.alphabet[static_cast<std::size_t>(t.label)]);
  };
  for (const auto& e : p.transitions) {
    if (e.label == ebref::kHiddenLabel) continue;
    if (!c.count(p.alphabet[static_cast<std::size_t>(e.label)])) continue;
    if (!reach[static_cast<std::size_t>(e.src)]) continue;
    if (naive_path(p, e.dst, e.src, avoids_r)) return false;
  }
  return true;
}

// brute-force divergence-freedom of p \ n: no reachable cycle over n only
inline bool naive_div_free_after_hide(const ebref::Lts& p,
                                      const std::set<std::string>& n) {
  auto reach = p.reachable();
  auto in_n = [&](const ebref::Transition& t) {
    return t.label != ebref::kHiddenLabel &&
           n.count(p.alphabet[static_cast<std::size_t>(t.label)]) > 0;
  };
  for (const auto& e : p.transitions) {
    if (!in_n(e) || !reach[static_cast<std::size_t>(e.src)]) continue;
    if (naive_path(p, e.dst, e.src, in_n)) return false;
  }
  return true;
}

}  // namespace testutil

#endif
