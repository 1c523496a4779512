#include "sstt/shapes.hpp"

#include <set>

namespace sstt {

Expr ShapeDef::at(const Expr& point) const { return instantiate(constraint, pat, point); }

tope::Shape ShapeDef::to_solver() const {
  return tope::Shape{to_point(pattern_point(pat)), cube, to_tope(constraint)};
}

namespace {

ShapeTable make_builtin() {
  using tope::Cube;
  auto I = Cube::interval();
  auto II = Cube::product(I, I);
  auto t = mk::var("t"), t1 = mk::var("t1"), t2 = mk::var("t2");
  auto t12 = PatternNode::pair(PatternNode::name("t1"), PatternNode::name("t2"));
  auto inDelta2 = mk::le(t2, t1);

  ShapeTable table;
  table.add({"Delta0", PatternNode::name("t"), Cube::unit(), mk::top()});
  table.add({"Delta1", PatternNode::name("t"), I, mk::top()});
  table.add({"Delta2", t12, II, inDelta2});
  table.add({"BDelta1", PatternNode::name("t"), I, mk::disj(mk::teq(t, mk::zero()), mk::teq(t, mk::one()))});
  table.add({"BDelta2", t12, II,
             mk::conj(inDelta2, mk::disj(mk::disj(mk::teq(t2, mk::zero()), mk::teq(t1, t2)), mk::teq(t1, mk::one())))});
  table.add({"Lambda21", t12, II, mk::conj(inDelta2, mk::disj(mk::teq(t1, mk::one()), mk::teq(t2, mk::zero())))});
  table.add_alias("Δ⁰", "Delta0", true);
  table.add_alias("Δ¹", "Delta1", true);
  table.add_alias("Δ²", "Delta2", true);
  table.add_alias("∂Δ¹", "BDelta1", true);
  table.add_alias("∂Δ²", "BDelta2", true);
  table.add_alias("Λ²₁", "Lambda21", true);
  return table;
}

}  // namespace

const ShapeTable& ShapeTable::builtin() {
  static const ShapeTable table = make_builtin();
  return table;
}

const ShapeDef* ShapeTable::find(const std::string& name) const {
  auto it = defs_.find(canonical(name));
  return it == defs_.end() ? nullptr : &it->second;
}

std::string ShapeTable::canonical(const std::string& name) const {
  auto it = alias_.find(name);
  return it == alias_.end() ? name : it->second;
}

std::optional<std::string> ShapeTable::unicode_name(const std::string& canonical) const {
  auto it = unicode_.find(canonical);
  if (it == unicode_.end()) return std::nullopt;
  return it->second;
}

void ShapeTable::add(ShapeDef def) {
  std::string n = def.name;
  if (!defs_.count(n)) order_.push_back(n);
  defs_[n] = std::move(def);
}

void ShapeTable::add_alias(const std::string& alias, const std::string& canonical, bool preferred_unicode) {
  alias_[alias] = canonical;
  if (preferred_unicode) unicode_[canonical] = alias;
}

bool pattern_fits(const Pattern& pat, const tope::Cube& cube) {
  if (!pat->is_pair()) return true;
  if (cube.kind() != tope::Cube::Kind::Product) return false;
  return pattern_fits(pat->left(), cube.left()) && pattern_fits(pat->right(), cube.right());
}

namespace {

struct Resolver {
  const ShapeTable& table;
  std::multiset<std::string> bound;

  const ShapeDef* shape_named(const std::string& n) const {
    if (bound.count(n)) return nullptr;
    return table.find(n);
  }

  Expr under(const std::vector<std::string>& names, const Expr& e) {
    for (const auto& n : names) bound.insert(n);
    Expr r = go(e);
    for (const auto& n : names) bound.erase(bound.find(n));
    return r;
  }

  Expr go(const Expr& e) {
    if (!e) return e;
    switch (e->tag) {
      case Tag::App: {
        if (e->kids[0]->tag == Tag::Var) {
          if (const ShapeDef* s = shape_named(e->kids[0]->name)) return s->at(go(e->kids[1]));
        }
        break;
      }
      case Tag::ShapeApp: {
        const ShapeDef* s = shape_named(e->name);
        if (!s) throw ShapeError("unknown shape '" + e->name + "'", e->span);
        return s->at(go(e->kids[0]));
      }
      case Tag::Pi:
      case Tag::Sigma:
        return rebuild(e, {go(e->kids[0]), under({e->name}, e->kids[1])});
      case Tag::Lam:
      case Tag::Ext: {
        std::vector<std::string> leaves;
        e->pat->leaves(leaves);
        std::vector<Expr> kids;
        const Expr& shape = e->kids[0];
        tope::Cube cube = e->cube;
        if (e->tag == Tag::Ext && e->cube_pending) {
          // `{pat : S}` or `{pat : S | extra}`: the cube comes from S
          Expr head = shape->tag == Tag::And ? shape->kids[0] : shape;
          const ShapeDef* s = head->tag == Tag::ShapeApp ? shape_named(head->name) : nullptr;
          if (!s) throw ShapeError("unknown shape '" + head->name + "'", head->span);
          if (!pattern_fits(e->pat, s->cube))
            throw ShapeError("pattern " + std::string(e->pat->is_pair() ? "tuple" : "variable") +
                                 " does not fit the cube " + s->cube.str() + " of shape '" + head->name + "'",
                             head->span);
          cube = s->cube;
        }
        for (const auto& k : e->kids) kids.push_back(under(leaves, k));
        auto n = std::make_shared<Node>(e->tag, e->name, e->pat, std::move(kids), e->span);
        n->cube = cube;
        n->cube_pending = false;
        return n;
      }
      default: break;
    }
    std::vector<Expr> kids;
    bool changed = false;
    for (const auto& k : e->kids) {
      kids.push_back(go(k));
      changed = changed || kids.back() != k;
    }
    return changed ? rebuild(e, std::move(kids)) : e;
  }
};

}  // namespace

Expr resolve_shapes(const Expr& e, const ShapeTable& table) {
  Resolver r{table, {}};
  return r.go(e);
}

}  // namespace sstt
