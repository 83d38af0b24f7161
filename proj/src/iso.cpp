#include "defmatch/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace defmatch {

namespace {

using i128 = __int128;

u64 checked_u64(i128 v, const char* what) {
  if (v < 0 || v > i128(INT64_MAX))
    throw std::logic_error(std::string(what) + ": value out of range");
  return u64(v);
}

void check_magnitude(i128 v, const char* what) {
  if (v > i128(1) << 62 || v < -(i128(1) << 62))
    throw resource_limit_error(std::string(what) + ": coefficient overflow");
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

RatAffine reduce_rule(i128 al, i128 be, i128 ga) {
  check_magnitude(al, "affine rule");
  check_magnitude(be, "affine rule");
  check_magnitude(ga, "affine rule");
  u64 g = gcd_u64(u64(al), u64(ga));
  if (be != 0) g = gcd_u64(g, u64(be < 0 ? -be : be));
  if (g == 0) g = 1;
  return RatAffine{u64(al) / g, i64(be / i128(g)), u64(ga) / g};
}

// Exact image of an eventually periodic set under a rational-affine rule.
// Requires s to lie inside the rule's domain of definition, i.e. ga divides
// al*x + be for every member; callers guarantee this by intersecting with
// the iso's dom first.
DefSet affine_image(const UniversePtr& u, const RatAffine& r, const DefSet& s) {
  PeriodicForm f = s.periodic_form();
  auto val = [&](u64 x) -> u64 {
    i128 num = i128(r.al) * x + r.be;
    if (num < 0 || num % i128(r.ga) != 0)
      throw std::logic_error("affine_image: point outside rule domain");
    return checked_u64(num / i128(r.ga), "affine_image");
  };
  std::vector<u64> pts;
  for (u64 e : f.E) pts.push_back(val(e));
  if (f.R.empty()) return DefSet::of(u, pts);

  i128 step = i128(r.al) * f.P;
  if (step % i128(r.ga) != 0)
    throw std::logic_error("affine_image: period step not integral");
  u64 delta = checked_u64(step / i128(r.ga), "affine_image");

  std::vector<u64> starts;
  u64 t_img = 0;
  for (u64 rr : f.R) {
    u64 x0 = f.T + (rr + f.P - f.T % f.P) % f.P;
    u64 v0 = val(x0);
    starts.push_back(v0);
    t_img = std::max(t_img, v0);
  }
  std::vector<u64> residues;
  for (u64 v0 : starts) {
    residues.push_back(v0 % delta);
    for (u64 v = v0; v < t_img; v += delta) pts.push_back(v);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PeriodicForm out;
  out.T = t_img;
  out.P = delta;
  out.R = std::move(residues);
  std::sort(out.R.begin(), out.R.end());
  out.R.erase(std::unique(out.R.begin(), out.R.end()), out.R.end());
  out.E = std::move(pts);
  return DefSet::from_data(u, SetData{std::move(out)});
}

DefSet table_image(const UniversePtr& u, const TableRule& t, const DefSet& s) {
  std::vector<u64> pts;
  for (u64 x : s.enumerate_window(u->size())) {
    if (t.fwd[x] < 0) throw std::logic_error("table_image: point outside rule domain");
    pts.push_back(u64(t.fwd[x]));
  }
  return DefSet::of(u, pts);
}

DefSet rule_image(const UniversePtr& u, const std::variant<TableRule, RatAffine>& rule,
                  const DefSet& s) {
  if (std::holds_alternative<TableRule>(rule))
    return table_image(u, std::get<TableRule>(rule), s);
  return affine_image(u, std::get<RatAffine>(rule), s);
}

TableRule table_invert(const TableRule& t) {
  TableRule out;
  out.fwd.assign(t.fwd.size(), -1);
  for (u64 x = 0; x < t.fwd.size(); ++x)
    if (t.fwd[x] >= 0) out.fwd[u64(t.fwd[x])] = i64(x);
  return out;
}

}  // namespace

IsoWord free_reduce(IsoWord w) {
  IsoWord out;
  for (const IsoLetter& l : w) {
    if (!out.empty() && out.back().label == l.label && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

IsoWord word_inverse(const IsoWord& w) {
  IsoWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->label, -it->sign});
  return out;
}

IsoWord word_concat(const IsoWord& a, const IsoWord& b) {
  IsoWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(std::move(out));
}

std::string word_str(const IsoWord& w) {
  if (w.empty()) return "id";
  std::string s;
  for (const IsoLetter& l : w) {
    if (!s.empty()) s += '.';
    s += l.label;
    if (l.sign < 0) s += '~';
  }
  return s;
}

std::optional<u64> PartialIso::apply(u64 x) const {
  if (!dom.contains(x)) return std::nullopt;
  if (std::holds_alternative<TableRule>(rule)) {
    i64 y = std::get<TableRule>(rule).fwd[x];
    if (y < 0) throw std::logic_error("PartialIso: dom disagrees with table");
    return u64(y);
  }
  const RatAffine& r = std::get<RatAffine>(rule);
  i128 num = i128(r.al) * x + r.be;
  if (num < 0 || num % i128(r.ga) != 0)
    throw std::logic_error("PartialIso: dom disagrees with affine rule");
  return checked_u64(num / i128(r.ga), "apply");
}

PartialIso make_iso(const UniversePtr& u, std::variant<TableRule, RatAffine> rule, DefSet dom,
                    IsoWord word) {
  PartialIso f;
  f.u = u;
  f.word = std::move(word);
  f.rule = std::move(rule);
  f.dom = std::move(dom);
  f.img = rule_image(u, f.rule, f.dom);
  return f;
}

PartialIso identity_iso(const UniversePtr& u) {
  PartialIso f;
  f.u = u;
  f.dom = DefSet::full(u);
  f.img = f.dom;
  if (u->ground() == Ground::finite) {
    TableRule t;
    t.fwd.resize(u->size());
    for (u64 x = 0; x < u->size(); ++x) t.fwd[x] = i64(x);
    f.rule = std::move(t);
  } else {
    f.rule = RatAffine{1, 0, 1};
  }
  return f;
}

PartialIso letter_iso(const UniversePtr& u, const IsoLetter& l) {
  const GeneratorSpec& g = u->generator(l.label);
  PartialIso f;
  f.u = u;
  f.word = {IsoLetter{l.label, 1}};
  if (std::holds_alternative<GeneratorSpec::Table>(g.rule)) {
    TableRule t;
    t.fwd.assign(u->size(), -1);
    std::vector<u64> srcs;
    for (auto [x, y] : std::get<GeneratorSpec::Table>(g.rule).pairs) {
      t.fwd[x] = i64(y);
      srcs.push_back(x);
    }
    f.rule = std::move(t);
    f.dom = DefSet::of(u, srcs);
  } else {
    const auto& a = std::get<GeneratorSpec::Affine>(g.rule);
    f.rule = RatAffine{a.a, i64(a.b), 1};
    f.dom = DefSet::full(u);
  }
  if (g.domain) f.dom = set_intersect(f.dom, DefSet::from_data(u, *g.domain));
  f.img = rule_image(u, f.rule, f.dom);
  return l.sign > 0 ? f : invert(f);
}

PartialIso realize(const UniversePtr& u, const IsoWord& w) {
  PartialIso cur = identity_iso(u);
  for (const IsoLetter& l : w) cur = compose(letter_iso(u, l), cur);
  return cur;
}

PartialIso compose(const PartialIso& f, const PartialIso& g) {
  if (f.u != g.u) throw universe_mismatch_error("compose: different universes");
  PartialIso out;
  out.u = f.u;
  out.word = word_concat(g.word, f.word);
  if (std::holds_alternative<TableRule>(f.rule)) {
    const TableRule& tf = std::get<TableRule>(f.rule);
    const TableRule& tg = std::get<TableRule>(g.rule);
    TableRule t;
    t.fwd.assign(tg.fwd.size(), -1);
    for (u64 x = 0; x < tg.fwd.size(); ++x)
      if (tg.fwd[x] >= 0 && tf.fwd[u64(tg.fwd[x])] >= 0) t.fwd[x] = tf.fwd[u64(tg.fwd[x])];
    out.rule = std::move(t);
  } else {
    const RatAffine& rf = std::get<RatAffine>(f.rule);
    const RatAffine& rg = std::get<RatAffine>(g.rule);
    out.rule = reduce_rule(i128(rf.al) * rg.al, i128(rf.al) * rg.be + i128(rf.be) * rg.ga,
                           i128(rf.ga) * rg.ga);
  }
  out.dom = set_intersect(g.dom, preimage(g, set_intersect(f.dom, g.img)));
  out.img = rule_image(out.u, out.rule, out.dom);
  return out;
}

PartialIso invert(const PartialIso& f) {
  PartialIso out;
  out.u = f.u;
  out.word = word_inverse(f.word);
  if (std::holds_alternative<TableRule>(f.rule))
    out.rule = table_invert(std::get<TableRule>(f.rule));
  else {
    const RatAffine& r = std::get<RatAffine>(f.rule);
    out.rule = RatAffine{r.ga, -r.be, r.al};
  }
  out.dom = f.img;
  out.img = f.dom;
  return out;
}

PartialIso restrict(const PartialIso& f, const DefSet& d) {
  PartialIso out = f;
  out.dom = set_intersect(f.dom, d);
  out.img = rule_image(f.u, f.rule, out.dom);
  return out;
}

DefSet image(const PartialIso& f, const DefSet& s) {
  return rule_image(f.u, f.rule, set_intersect(s, f.dom));
}

DefSet preimage(const PartialIso& f, const DefSet& s) { return image(invert(f), s); }

DefSet equalizer(const PartialIso& f, const PartialIso& g) {
  if (f.u != g.u) throw universe_mismatch_error("equalizer: different universes");
  DefSet common = set_intersect(f.dom, g.dom);
  if (common.is_empty()) return common;
  if (f.u->ground() == Ground::finite) {
    std::vector<u64> eq;
    for (u64 x : common.enumerate_window(f.u->size()))
      if (*f.apply(x) == *g.apply(x)) eq.push_back(x);
    return DefSet::of(f.u, eq);
  }
  const RatAffine& rf = std::get<RatAffine>(f.rule);
  const RatAffine& rg = std::get<RatAffine>(g.rule);
  // (al_f x + be_f)/ga_f = (al_g x + be_g)/ga_g  <=>  c x = d
  i128 c = i128(rf.al) * rg.ga - i128(rg.al) * rf.ga;
  i128 d = i128(rg.be) * rf.ga - i128(rf.be) * rg.ga;
  if (c == 0) return d == 0 ? common : DefSet::empty(f.u);
  if (d % c != 0) return DefSet::empty(f.u);
  i128 x = d / c;
  if (x < 0 || !common.contains(checked_u64(x, "equalizer"))) return DefSet::empty(f.u);
  return DefSet::of(f.u, {u64(x)});
}

bool extensionally_equal(const PartialIso& f, const PartialIso& g) {
  if (!(f.dom == g.dom)) return false;
  return equalizer(f, g) == f.dom;
}

std::vector<PartialIso> enumerate_pseudogroup(const UniversePtr& u, u32 max_word_len, u64 cap) {
  std::vector<IsoLetter> letters;
  for (const auto& [label, gen] : u->generators()) {
    (void)gen;
    letters.push_back({label, 1});
    letters.push_back({label, -1});
  }
  std::vector<PartialIso> out;
  out.push_back(identity_iso(u));
  std::vector<size_t> frontier = {0};
  for (u32 len = 1; len <= max_word_len && !frontier.empty(); ++len) {
    std::vector<size_t> next;
    for (size_t idx : frontier) {
      for (const IsoLetter& l : letters) {
        const IsoWord& w = out[idx].word;
        if (!w.empty() && w.back().label == l.label && w.back().sign == -l.sign) continue;
        PartialIso cand = compose(letter_iso(u, l), out[idx]);
        bool fresh = true;
        for (const PartialIso& seen : out)
          if (extensionally_equal(cand, seen)) {
            fresh = false;
            break;
          }
        if (!fresh) continue;
        if (out.size() >= cap)
          throw resource_limit_error("enumerate_pseudogroup: element cap exceeded");
        next.push_back(out.size());
        out.push_back(std::move(cand));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace defmatch
