#include "ptslab/atomic_base.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "ptslab/errors.hpp"

namespace ptslab {

AtomicRule::AtomicRule(std::vector<Atom> premises, Atom conclusion)
    : premises_(std::move(premises)), conclusion_(std::move(conclusion)) {
  std::sort(premises_.begin(), premises_.end());
  premises_.erase(std::unique(premises_.begin(), premises_.end()), premises_.end());
  for (const Atom& a : premises_)
    if (a.is_bottom()) throw Error("atomic rule premise may not be bot");
}

std::string AtomicRule::to_string() const {
  std::string out;
  for (const Atom& a : premises_) {
    out += a.to_string();
    out += ' ';
  }
  out += "-> ";
  out += conclusion_.to_string();
  return out;
}

AtomicBase::AtomicBase(std::set<AtomicRule> rules, std::string id) : rules_(std::move(rules)) {
  id_ = id.empty() ? canonical_text() : std::move(id);
}

std::string AtomicBase::canonical_text() const {
  std::string out = "{";
  bool first = true;
  for (const AtomicRule& r : rules_) {
    if (!first) out += "; ";
    first = false;
    out += r.to_string();
  }
  return out + "}";
}

std::set<Atom> AtomicBase::signature() const {
  std::set<Atom> out;
  for (const AtomicRule& r : rules_) {
    out.insert(r.premises().begin(), r.premises().end());
    if (!r.conclusion().is_bottom()) out.insert(r.conclusion());
  }
  return out;
}

AtomicBase parse_base(std::string_view text, std::string id) {
  std::set<AtomicRule> rules;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;) toks.push_back(w);
    if (toks.empty()) continue;
    auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) throw ParseError("expected '->' in rule", line_no, 1);
    if (std::next(arrow) == toks.end() || std::next(arrow, 2) != toks.end())
      throw ParseError("expected exactly one conclusion after '->'", line_no, 1);
    auto to_atom = [&](const std::string& w) {
      if (w == "bot" || w == "_|_" || w == "\xE2\x8A\xA5") return Atom::bottom();
      if (!Atom::valid_name(w)) throw ParseError("invalid atom '" + w + "'", line_no, 1);
      return Atom(w);
    };
    std::vector<Atom> premises;
    for (auto it = toks.begin(); it != arrow; ++it) {
      Atom a = to_atom(*it);
      if (a.is_bottom()) throw ParseError("bot may not be a premise", line_no, 1);
      premises.push_back(a);
    }
    rules.emplace(std::move(premises), to_atom(*std::next(arrow)));
  }
  return AtomicBase(std::move(rules), std::move(id));
}

std::size_t AtomicDerivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

namespace {

// Forward chaining with per-rule counters of unsatisfied premises. `reason`
// records the rule that first produced each atom; since a rule fires only
// after all its premises are present, following reasons is well-founded.
std::map<Atom, const AtomicRule*> saturate(const AtomicBase& base, const std::set<Atom>& assumptions) {
  std::map<Atom, const AtomicRule*> reason;
  std::vector<Atom> queue;
  for (const Atom& a : assumptions) {
    reason.emplace(a, nullptr);
    queue.push_back(a);
  }
  std::vector<const AtomicRule*> rules;
  std::vector<std::size_t> pending;
  std::map<Atom, std::vector<std::size_t>> watchers;
  for (const AtomicRule& r : base.rules()) {
    std::size_t idx = rules.size();
    rules.push_back(&r);
    pending.push_back(r.premises().size());
    for (const Atom& p : r.premises()) watchers[p].push_back(idx);
  }
  auto fire = [&](std::size_t idx) {
    const AtomicRule* r = rules[idx];
    if (reason.emplace(r->conclusion(), r).second) queue.push_back(r->conclusion());
  };
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (pending[i] == 0) fire(i);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto it = watchers.find(queue[head]);
    if (it == watchers.end()) continue;
    for (std::size_t idx : it->second)
      if (--pending[idx] == 0) fire(idx);
  }
  return reason;
}

AtomicDerivation build(const Atom& goal, const std::map<Atom, const AtomicRule*>& reason) {
  AtomicDerivation d{goal, std::nullopt, {}};
  const AtomicRule* r = reason.at(goal);
  if (r == nullptr) return d;
  d.rule = *r;
  for (const Atom& p : r->premises()) d.premises.push_back(build(p, reason));
  return d;
}

}  // namespace

std::set<Atom> atomic_closure(const AtomicBase& base, const std::set<Atom>& assumptions) {
  std::set<Atom> out;
  for (const auto& [a, r] : saturate(base, assumptions)) out.insert(a);
  return out;
}

bool derives(const AtomicBase& base, const std::set<Atom>& assumptions, const Atom& goal) {
  if (assumptions.count(goal)) return true;
  return saturate(base, assumptions).count(goal) > 0;
}

std::optional<AtomicDerivation> atomic_derivation(const AtomicBase& base,
                                                  const std::set<Atom>& assumptions,
                                                  const Atom& goal) {
  auto reason = saturate(base, assumptions);
  if (!reason.count(goal)) return std::nullopt;
  return build(goal, reason);
}

bool check_derivation(const AtomicBase& base, const std::set<Atom>& assumptions,
                      const AtomicDerivation& d) {
  if (d.is_assumption()) return d.premises.empty() && assumptions.count(d.conclusion) > 0;
  if (!base.rules().count(*d.rule) || d.rule->conclusion() != d.conclusion) return false;
  const auto& want = d.rule->premises();
  if (want.size() != d.premises.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (d.premises[i].conclusion != want[i]) return false;
    if (!check_derivation(base, assumptions, d.premises[i])) return false;
  }
  return true;
}

bool is_consistent(const AtomicBase& base) { return !derives(base, {}, Atom::bottom()); }

std::vector<AtomicRule> all_rules(const std::vector<Atom>& atoms) {
  std::vector<Atom> sig(atoms);
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  if (!sig.empty() && sig.front().is_bottom()) sig.erase(sig.begin());
  std::vector<Atom> conclusions = sig;
  conclusions.push_back(Atom::bottom());
  std::vector<AtomicRule> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << sig.size()); ++mask) {
    std::vector<Atom> premises;
    for (std::size_t i = 0; i < sig.size(); ++i)
      if (mask & (std::size_t{1} << i)) premises.push_back(sig[i]);
    for (const Atom& c : conclusions) out.emplace_back(premises, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_bases(std::size_t atom_count, std::size_t max_rules) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (atom_count >= 32) return kMax;
  std::size_t rules = (std::size_t{1} << atom_count) * (atom_count + 1);
  std::size_t total = 0;
  std::size_t binom = 1;  // C(rules, k)
  for (std::size_t k = 0; k <= max_rules && k <= rules; ++k) {
    if (k > 0) {
      std::size_t num = rules - k + 1;
      if (binom > kMax / num) return kMax;
      binom = binom * num / k;
    }
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

void enumerate_bases(const std::vector<Atom>& atoms, const EnumerationOptions& opts,
                     const std::function<bool(const AtomicBase&)>& visit) {
  std::vector<AtomicRule> pool = all_rules(atoms);
  std::set<Atom> sig;
  for (const Atom& a : atoms)
    if (!a.is_bottom()) sig.insert(a);
  std::size_t total = count_bases(sig.size(), opts.max_rules);
  if (total > opts.cap)
    throw ResourceError("base enumeration would visit " + std::to_string(total) +
                        " bases, cap is " + std::to_string(opts.cap));
  std::size_t n = pool.size();
  for (std::size_t k = 0; k <= opts.max_rules && k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::set<AtomicRule> rules;
      for (std::size_t i : idx) rules.insert(pool[i]);
      AtomicBase b(std::move(rules));
      if (!opts.consistent_only || is_consistent(b))
        if (!visit(b)) return;
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::vector<AtomicBase> enumerate_bases(const std::vector<Atom>& atoms, const EnumerationOptions& opts) {
  std::vector<AtomicBase> out;
  enumerate_bases(atoms, opts, [&](const AtomicBase& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::vector<Atom> letter_atoms(std::size_t k) {
  static const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::vector<Atom> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::string name = i < letters.size() ? std::string(1, letters[i]) : "a" + std::to_string(i);
    out.emplace_back(name);
  }
  return out;
}

}  // namespace ptslab
