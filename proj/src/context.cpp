#include "sstt/context.hpp"

#include "sstt/surface.hpp"

namespace sstt {

namespace {
bool mentions_or(const Expr& t) {
  if (t->tag == Tag::Or) return true;
  for (const auto& k : t->kids)
    if (k && mentions_or(k)) return true;
  return false;
}
}  // namespace

TriContext TriContext::with_cube(const std::string& name, const tope::Cube& c) const {
  TriContext r = *this;
  r.entries_.push_back(Entry{name, true, c, nullptr});
  return r;
}

TriContext TriContext::with_var(const std::string& name, const Expr& type) const {
  TriContext r = *this;
  r.entries_.push_back(Entry{name, false, tope::Cube::interval(), type});
  return r;
}

TriContext TriContext::with_hyp(const Expr& tope) const {
  if (tope->tag == Tag::Top) return *this;
  TriContext r = *this;
  if (tope->tag == Tag::And) {
    r = r.with_hyp(tope->kids[0]).with_hyp(tope->kids[1]);
    return r;
  }
  r.hyps_.push_back(tope);
  r.has_or_ = has_or_ || mentions_or(tope);
  r.consistent_memo = std::make_shared<std::optional<bool>>();
  return r;
}

TriContext TriContext::with_hyps(std::vector<Expr> hyps) const {
  TriContext r = *this;
  r.hyps_.clear();
  r.has_or_ = false;
  r.consistent_memo = std::make_shared<std::optional<bool>>();
  for (const auto& h : hyps) r = r.with_hyp(h);
  return r;
}

const TriContext::Entry* TriContext::lookup(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

tope::CubeContext TriContext::cube_context() const {
  tope::CubeContext out;
  for (const auto& e : entries_)
    if (e.is_cube) out.emplace_back(e.name, e.cube);
  return out;
}

Expr TriContext::hyp() const {
  if (hyps_.empty()) return mk::top();
  Expr h = hyps_[0];
  for (std::size_t i = 1; i < hyps_.size(); ++i) h = mk::conj(h, hyps_[i]);
  return h;
}

std::vector<std::string> TriContext::snapshot() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.is_cube) out.push_back(e.name + " : " + e.cube.str());
    else out.push_back(e.name + " : " + print_expr(e.type));
  }
  for (const auto& h : hyps_) out.push_back("| " + print_expr(h));
  return out;
}

}  // namespace sstt
