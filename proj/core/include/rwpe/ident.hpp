#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "rwpe/int.hpp"
#include "rwpe/type.hpp"

namespace rwpe {

enum class IdentTag {
  IntLit,
  BoolLit,
  Nil,
  UnitLit,
  Add,
  Sub,
  Mul,
  Div,
  Shr,
  Pow,
  Log2Floor,
  Fst,
  Snd,
  PairMk,
  Cons,
  AddWithCarry64,
  Clip,
  Comment,
  ListRect,
  NatRect,
  Map,
  Opaque,
};

/// A constant of the object language: literal, primitive, eliminator or
/// user-declared opaque symbol. Carries its type; copies are cheap.
class Ident {
 public:
  static Ident int_lit(Int value);
  static Ident bool_lit(bool value);
  static Ident nil(Type elem);
  static Ident unit();
  /// Monomorphic integer primitives: Add, Sub, Mul, Div, Shr, Pow, Log2Floor,
  /// AddWithCarry64.
  static Ident prim(IdentTag tag);
  static Ident fst(Type a, Type b);
  static Ident snd(Type a, Type b);
  static Ident pair(Type a, Type b);
  static Ident cons(Type elem);
  static Ident clip(Int lo, Int hi);
  static Ident comment(std::string text, Type t);
  static Ident list_rect(Type elem, Type motive);
  static Ident nat_rect(Type motive);
  static Ident map(Type from, Type to);
  static Ident opaque(std::string name, Type t);

  IdentTag tag() const noexcept { return tag_; }
  Type type() const noexcept { return type_; }

  const Int& int_value() const;  // IntLit
  bool bool_value() const;       // BoolLit
  const Int& clip_lo() const;    // Clip
  const Int& clip_hi() const;    // Clip
  const std::string& text() const;  // Comment text or Opaque name
  /// Type parameters: Nil/Cons element, Fst/Snd/PairMk components, Map domain
  /// and codomain, ListRect element and motive, NatRect motive, Comment type.
  Type param(std::size_t index) const;

  bool is_literal() const noexcept {
    return tag_ == IdentTag::IntLit || tag_ == IdentTag::BoolLit || tag_ == IdentTag::Nil ||
           tag_ == IdentTag::UnitLit;
  }

  /// Surface name used by the term printer (`add`, `fst`, `list_rect`, ...).
  std::string_view name() const;

  friend bool operator==(const Ident& a, const Ident& b);
  std::size_t hash() const;

  struct Payload;

 private:
  Ident(IdentTag tag, Type type, std::shared_ptr<const Payload> payload)
      : tag_(tag), type_(type), payload_(std::move(payload)) {}

  IdentTag tag_;
  Type type_;
  std::shared_ptr<const Payload> payload_;
};

std::string to_string(const Ident& id);

/// clip_{l,u}(n): n when l <= n < u, otherwise l.
Int clip_semantics(const Int& lo, const Int& hi, const Int& n);

}  // namespace rwpe

template <>
struct std::hash<rwpe::Ident> {
  std::size_t operator()(const rwpe::Ident& id) const { return id.hash(); }
};
