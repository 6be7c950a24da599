#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cltl
{
  enum class domain { int_z, dense };
  enum class game_mode { general, single_sided };
  enum class owner { env, sys };
  enum class var_kind { blind, ahead };

  const char* domain_name(domain d);
  const char* mode_name(game_mode m);

  struct variable
  {
    std::string name;
    owner who;
    var_kind kind;
  };

  /// X^depth var
  struct term
  {
    unsigned depth = 0;
    std::string var;

    bool operator==(const term&) const = default;
  };

  enum class rel { lt, eq };

  enum class op
  {
    ff,
    tt,
    atom,
    not_,
    or_,
    and_,
    next,
    until,
    finally,
    globally,
    prompt_finally,
  };

  /// Immutable, structurally compared LTL formula over constraint atoms.
  class formula
  {
    struct node;

  public:
    formula();                  // true

    static formula tt();
    static formula ff();
    static formula atom(rel r, term lhs, term rhs);
    static formula lt(term lhs, term rhs) { return atom(rel::lt, std::move(lhs), std::move(rhs)); }
    static formula eq(term lhs, term rhs) { return atom(rel::eq, std::move(lhs), std::move(rhs)); }
    static formula not_(formula f);
    static formula or_(formula l, formula r);
    static formula and_(formula l, formula r);
    static formula next(formula f);
    static formula until(formula l, formula r);
    static formula finally(formula f);
    static formula globally(formula f);
    static formula prompt_finally(formula f);
    static formula implies(formula l, formula r) { return or_(not_(std::move(l)), std::move(r)); }
    static formula iff(formula l, formula r);

    /// n-ary helpers; the empty disjunction is false, the empty conjunction true.
    static formula any_of(const std::vector<formula>& fs);
    static formula all_of(const std::vector<formula>& fs);

    op kind() const;
    bool is(op o) const { return kind() == o; }
    rel relation() const;
    const term& lhs() const;
    const term& rhs() const;
    formula child() const;   // unary operators, and the left operand
    formula left() const { return child(); }
    formula right() const;
    std::size_t hash() const;
    const void* id() const { return n_.get(); }

    /// Number of nodes, counting shared subterms once per occurrence.
    std::size_t size() const;

    bool operator==(const formula& o) const;
    bool operator!=(const formula& o) const { return !(*this == o); }

  private:
    explicit formula(std::shared_ptr<const node> n) : n_(std::move(n)) {}
    static formula make(op o, formula a, formula b);
    static formula leaf(op o);
    std::shared_ptr<const node> n_;
  };

  struct formula_hash
  {
    std::size_t operator()(const formula& f) const { return f.hash(); }
  };

  struct game_spec
  {
    domain dom = domain::int_z;
    game_mode mode = game_mode::general;
    bool prompt = false;
    std::vector<variable> variables;   // declaration order
    formula winning_condition;

    const variable* find(std::string_view name) const;
    std::vector<std::string> names(owner who, var_kind kind) const;
    std::vector<std::string> env_blind() const { return names(owner::env, var_kind::blind); }
    std::vector<std::string> env_ahead() const { return names(owner::env, var_kind::ahead); }
    std::vector<std::string> sys_blind() const { return names(owner::sys, var_kind::blind); }
    std::vector<std::string> sys_ahead() const { return names(owner::sys, var_kind::ahead); }
  };

  struct parse_options
  {
    bool prompt = false;        // allow FP even without a `prompt: true;` header
    bool validate = true;
  };

  game_spec parse_spec(std::string_view text, const parse_options& opt = {});
  /// Parses a bare formula; terms are not checked against any declaration.
  formula parse_formula(std::string_view text);

  /// Checks declarations, atom homogeneity, ownership and mode constraints.
  void validate(const game_spec& spec);

  std::string to_string(const term& t);
  std::string to_string(const formula& f);
  std::string to_string(const game_spec& spec);

  /// Largest X-depth of any term in f.
  unsigned x_length(const formula& f);

  /// Negation that folds double negation and true/false.
  formula negate(const formula& f);

  /// Rewrites F, G (and FP, read as F) into until form.
  formula desugar(const formula& f);

  /// Fischer-Ladner closure of the desugared formula: every subformula and
  /// its negation.  Post-order, each entry followed by its negation.
  std::vector<formula> closure(const formula& f);

  /// Distinct atoms, in first-occurrence (pre-order) order.
  std::vector<formula> atoms(const formula& f);

  /// Variables mentioned in f, in first-occurrence order.
  std::vector<std::string> variables_of(const formula& f);

  bool is_reserved_word(std::string_view w);
}
