#include "rwpe/ident.hpp"

#include <array>
#include <functional>

#include "rwpe/errors.hpp"

namespace rwpe {

struct Ident::Payload {
  Int i0;
  Int i1;
  std::string text;
  std::array<Type, 2> types{nullptr, nullptr};
};

namespace {

std::shared_ptr<const Ident::Payload> no_payload() {
  static const auto empty = std::make_shared<const Ident::Payload>();
  return empty;
}

void require_base(Type t, const char* what) {
  if (!t->is_base()) throw TypeError(std::string(what) + " requires a base type, got " + to_string(t));
}

}  // namespace

Ident Ident::int_lit(Int value) {
  auto p = std::make_shared<Payload>();
  p->i0 = std::move(value);
  return Ident(IdentTag::IntLit, int_type(), std::move(p));
}

Ident Ident::bool_lit(bool value) {
  auto p = std::make_shared<Payload>();
  p->i0 = value ? 1 : 0;
  return Ident(IdentTag::BoolLit, bool_type(), std::move(p));
}

Ident Ident::nil(Type elem) {
  auto p = std::make_shared<Payload>();
  p->types = {elem, nullptr};
  return Ident(IdentTag::Nil, list_type(elem), std::move(p));
}

Ident Ident::unit() { return Ident(IdentTag::UnitLit, unit_type(), no_payload()); }

Ident Ident::prim(IdentTag tag) {
  const Type i = int_type();
  switch (tag) {
    case IdentTag::Add:
    case IdentTag::Sub:
    case IdentTag::Mul:
    case IdentTag::Div:
    case IdentTag::Shr:
    case IdentTag::Pow:
      return Ident(tag, arrow_type({i, i}, i), no_payload());
    case IdentTag::Log2Floor:
      return Ident(tag, arrow_type(i, i), no_payload());
    case IdentTag::AddWithCarry64:
      return Ident(tag, arrow_type({i, i}, pair_type(i, i)), no_payload());
    default:
      throw TypeError("not a monomorphic primitive");
  }
}

Ident Ident::fst(Type a, Type b) {
  auto p = std::make_shared<Payload>();
  p->types = {a, b};
  return Ident(IdentTag::Fst, arrow_type(pair_type(a, b), a), std::move(p));
}

Ident Ident::snd(Type a, Type b) {
  auto p = std::make_shared<Payload>();
  p->types = {a, b};
  return Ident(IdentTag::Snd, arrow_type(pair_type(a, b), b), std::move(p));
}

Ident Ident::pair(Type a, Type b) {
  auto p = std::make_shared<Payload>();
  p->types = {a, b};
  return Ident(IdentTag::PairMk, arrow_type({a, b}, pair_type(a, b)), std::move(p));
}

Ident Ident::cons(Type elem) {
  auto p = std::make_shared<Payload>();
  p->types = {elem, nullptr};
  const Type l = list_type(elem);
  return Ident(IdentTag::Cons, arrow_type({elem, l}, l), std::move(p));
}

Ident Ident::clip(Int lo, Int hi) {
  auto p = std::make_shared<Payload>();
  p->i0 = std::move(lo);
  p->i1 = std::move(hi);
  return Ident(IdentTag::Clip, arrow_type(int_type(), int_type()), std::move(p));
}

Ident Ident::comment(std::string text, Type t) {
  require_base(t, "comment");
  auto p = std::make_shared<Payload>();
  p->text = std::move(text);
  p->types = {t, nullptr};
  return Ident(IdentTag::Comment, arrow_type(t, t), std::move(p));
}

Ident Ident::list_rect(Type elem, Type motive) {
  require_base(motive, "list_rect motive");
  auto p = std::make_shared<Payload>();
  p->types = {elem, motive};
  const Type l = list_type(elem);
  const Type step = arrow_type({elem, l, motive}, motive);
  return Ident(IdentTag::ListRect, arrow_type({motive, step, l}, motive), std::move(p));
}

Ident Ident::nat_rect(Type motive) {
  require_base(motive, "nat_rect motive");
  auto p = std::make_shared<Payload>();
  p->types = {motive, nullptr};
  const Type step = arrow_type({int_type(), motive}, motive);
  return Ident(IdentTag::NatRect, arrow_type({motive, step, int_type()}, motive), std::move(p));
}

Ident Ident::map(Type from, Type to) {
  auto p = std::make_shared<Payload>();
  p->types = {from, to};
  return Ident(IdentTag::Map,
               arrow_type({arrow_type(from, to), list_type(from)}, list_type(to)), std::move(p));
}

Ident Ident::opaque(std::string name, Type t) {
  auto p = std::make_shared<Payload>();
  p->text = std::move(name);
  return Ident(IdentTag::Opaque, t, std::move(p));
}

const Int& Ident::int_value() const { return payload_->i0; }
bool Ident::bool_value() const { return payload_->i0 != 0; }
const Int& Ident::clip_lo() const { return payload_->i0; }
const Int& Ident::clip_hi() const { return payload_->i1; }
const std::string& Ident::text() const { return payload_->text; }
Type Ident::param(std::size_t index) const { return payload_->types.at(index); }

std::string_view Ident::name() const {
  switch (tag_) {
    case IdentTag::IntLit: return "int";
    case IdentTag::BoolLit: return bool_value() ? "true" : "false";
    case IdentTag::Nil: return "nil";
    case IdentTag::UnitLit: return "()";
    case IdentTag::Add: return "add";
    case IdentTag::Sub: return "sub";
    case IdentTag::Mul: return "mul";
    case IdentTag::Div: return "div";
    case IdentTag::Shr: return "shr";
    case IdentTag::Pow: return "pow";
    case IdentTag::Log2Floor: return "log2floor";
    case IdentTag::Fst: return "fst";
    case IdentTag::Snd: return "snd";
    case IdentTag::PairMk: return "pair";
    case IdentTag::Cons: return "cons";
    case IdentTag::AddWithCarry64: return "awc64";
    case IdentTag::Clip: return "clip";
    case IdentTag::Comment: return "comment";
    case IdentTag::ListRect: return "list_rect";
    case IdentTag::NatRect: return "nat_rect";
    case IdentTag::Map: return "map";
    case IdentTag::Opaque: return payload_->text;
  }
  return "?";
}

bool operator==(const Ident& a, const Ident& b) {
  if (a.tag_ != b.tag_ || a.type_ != b.type_) return false;
  if (a.payload_ == b.payload_) return true;
  const auto& p = *a.payload_;
  const auto& q = *b.payload_;
  return p.types == q.types && p.i0 == q.i0 && p.i1 == q.i1 && p.text == q.text;
}

std::size_t Ident::hash() const {
  std::size_t h = std::hash<int>{}(static_cast<int>(tag_)) * 31 + std::hash<Type>{}(type_);
  if (tag_ == IdentTag::IntLit || tag_ == IdentTag::Clip) {
    h = h * 31 + static_cast<std::size_t>((payload_->i0 % 1000003).convert_to<long long>());
  }
  if (!payload_->text.empty()) h = h * 31 + std::hash<std::string>{}(payload_->text);
  return h;
}

std::string to_string(const Ident& id) {
  switch (id.tag()) {
    case IdentTag::IntLit: return to_string(id.int_value());
    case IdentTag::Clip: return "clip[" + to_string(id.clip_lo()) + "," + to_string(id.clip_hi()) + "]";
    case IdentTag::Comment: return "comment \"" + id.text() + "\"";
    default: return std::string(id.name());
  }
}

Int clip_semantics(const Int& lo, const Int& hi, const Int& n) {
  return (lo <= n && n < hi) ? n : lo;
}

}  // namespace rwpe
