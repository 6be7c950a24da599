#include <cltl/corpus.hh>
#include <cltl/errors.hh>

#include <algorithm>
#include <sstream>

namespace cltl
{
  namespace
  {
    bool contains(const std::vector<std::string>& v, const std::string& s)
    {
      return std::find(v.begin(), v.end(), s) != v.end();
    }

    const char* op_name(counter_op o)
    {
      switch (o)
        {
        case counter_op::inc: return "inc";
        case counter_op::dec: return "dec";
        case counter_op::keep: return "keep";
        case counter_op::zero: return "zero";
        }
      return "?";
    }

    bool changes(const counter_transition& t, unsigned c)
    {
      return t.counter == c
        && (t.op == counter_op::inc || t.op == counter_op::dec);
    }

    term x(unsigned d = 0) { return {d, "x"}; }
    term y(unsigned d = 0) { return {d, "y"}; }

    // p_t, inlined as u_t = v_t.
    formula taken(std::size_t t)
    {
      auto i = std::to_string(t);
      return formula::eq({0, "u_" + i}, {0, "v_" + i});
    }

    formula next_n(formula f, unsigned n)
    {
      while (n--)
        f = formula::next(std::move(f));
      return f;
    }

    // (x < X^2 y && X^2 y < X^2 x) || (X^2 x < X^2 y && X^2 y < x)
    formula jump()
    {
      return formula::or_(
        formula::and_(formula::lt(x(), y(2)), formula::lt(y(2), x(2))),
        formula::and_(formula::lt(x(2), y(2)), formula::lt(y(2), x())));
    }

    formula y_constant() { return formula::eq(y(), y(1)); }
  }

  bool counter_machine::is_initial(const counter_transition& t) const
  {
    return contains(initial, t.source);
  }

  bool counter_machine::is_halting(const counter_transition& t) const
  {
    return contains(halting, t.target);
  }

  bool counter_machine::compatible(const counter_transition& t1,
                                   const counter_transition& t2) const
  {
    return t1.target == t2.source;
  }

  counter_machine parse_counter_machine(std::string_view text)
  {
    counter_machine m;
    bool has_init = false;
    std::istringstream in{std::string(text)};
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line))
      {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
          line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;)
          words.push_back(w);
        if (words.empty())
          continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (words[0] == "init:" || words[0] == "halt:")
          {
            auto& dst = words[0] == "init:" ? m.initial : m.halting;
            dst.insert(dst.end(), words.begin() + 1, words.end());
            has_init |= words[0] == "init:";
            continue;
          }
        if (words.size() != 3)
          throw error(error_kind::syntax, where + "expected `source op target`");
        const std::string& o = words[1];
        if (o.size() < 4 || (o.back() != '1' && o.back() != '2'))
          throw error(error_kind::syntax, where + "unknown operation " + o);
        std::string base = o.substr(0, o.size() - 1);
        counter_op op;
        if (base == "inc")
          op = counter_op::inc;
        else if (base == "dec")
          op = counter_op::dec;
        else if (base == "keep")
          op = counter_op::keep;
        else if (base == "zero")
          op = counter_op::zero;
        else
          throw error(error_kind::syntax, where + "unknown operation " + o);
        m.transitions.push_back({words[0], op,
                                 static_cast<unsigned>(o.back() - '0'), words[2]});
      }
    if (m.transitions.empty())
      throw error(error_kind::invalid_spec, "counter machine has no transitions");
    if (!has_init)
      m.initial.push_back(m.transitions.front().source);
    return m;
  }

  std::string to_string(const counter_machine& m)
  {
    std::ostringstream os;
    os << "init:";
    for (auto& s: m.initial)
      os << ' ' << s;
    os << "\nhalt:";
    for (auto& s: m.halting)
      os << ' ' << s;
    os << '\n';
    for (auto& t: m.transitions)
      os << t.source << ' ' << op_name(t.op) << t.counter << ' ' << t.target << '\n';
    return os.str();
  }

  std::vector<encoding_family> env_families(const counter_machine& m)
  {
    const auto& ts = m.transitions;
    std::size_t n = ts.size();
    std::vector<encoding_family> res;
    auto select = [&](auto&& pred, unsigned depth) {
      std::vector<formula> ds;
      for (std::size_t t = 0; t < n; ++t)
        if (pred(ts[t]))
          ds.push_back(next_n(taken(t), depth));
      return ds;
    };
    auto all = [](const counter_transition&) { return true; };

    {
      auto any = formula::any_of(select(all, 0));
      res.push_back({"transition at position 0 or 1",
                     formula::or_(any, formula::next(any)), n});
    }
    {
      auto ds = select([&](auto& t) { return !m.is_initial(t); }, 0);
      res.push_back({"first transition not initial",
                     next_n(formula::any_of(ds), 2), ds.size()});
    }
    {
      std::vector<formula> ds;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = t + 1; u < n; ++u)
          ds.push_back(formula::and_(taken(t), taken(u)));
      res.push_back({"two transitions at one position",
                     next_n(formula::finally(formula::any_of(ds)), 2), ds.size()});
    }
    {
      std::vector<formula> ds;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < n; ++u)
          ds.push_back(formula::and_(taken(t), formula::next(taken(u))));
      res.push_back({"transitions at consecutive positions",
                     next_n(formula::finally(formula::any_of(ds)), 2), ds.size()});
    }
    {
      std::vector<formula> now, later;
      for (std::size_t t = 0; t < n; ++t)
        {
          now.push_back(formula::not_(taken(t)));
          later.push_back(formula::next(formula::not_(taken(t))));
        }
      res.push_back({"no transition at consecutive positions",
                     formula::next(formula::finally(formula::and_(
                       formula::all_of(now), formula::all_of(later)))),
                     n});
    }
    {
      std::vector<formula> ds;
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < n; ++u)
          if (!m.compatible(ts[t], ts[u]))
            ds.push_back(formula::and_(taken(t), next_n(taken(u), 2)));
      res.push_back({"incompatible consecutive transitions",
                     next_n(formula::finally(formula::any_of(ds)), 2), ds.size()});
    }

    // Counter updates: c1 transitions are read two positions ahead, c2
    // transitions one position ahead.
    auto update = [&](const char* name, auto&& pred, unsigned depth,
                      formula wrong) {
      auto ds = select(pred, depth);
      res.push_back({name,
                     formula::finally(formula::and_(formula::any_of(ds),
                                                    std::move(wrong))),
                     ds.size()});
    };
    auto is = [](counter_op o, unsigned c) {
      return [o, c](const counter_transition& t) { return t.op == o && t.counter == c; };
    };
    formula x_up = formula::lt(x(), x(2));
    formula x_down = formula::lt(x(2), x());
    formula x_same = formula::eq(x(), x(2));
    update("c1 increment without x increase", is(counter_op::inc, 1), 2,
           formula::not_(x_up));
    update("c2 increment without x increase", is(counter_op::inc, 2), 1,
           formula::not_(x_up));
    update("c1 decrement without x decrease", is(counter_op::dec, 1), 2,
           formula::not_(x_down));
    update("c2 decrement without x decrease", is(counter_op::dec, 2), 1,
           formula::not_(x_down));
    update("c1 unchanged but x changes",
           [](const counter_transition& t) { return !changes(t, 1); }, 2,
           formula::not_(x_same));
    update("c2 unchanged but x changes",
           [](const counter_transition& t) { return !changes(t, 2); }, 1,
           formula::not_(x_same));
    update("c1 zero test with x != y", is(counter_op::zero, 1), 0,
           formula::not_(formula::eq(x(), y())));
    update("c2 zero test with X(x != y)", is(counter_op::zero, 2), 0,
           formula::not_(formula::next(formula::eq(x(), y()))));

    res.push_back({"negative counter", formula::finally(formula::lt(x(), y())), 1});
    res.push_back({"counter moves by more than one", formula::finally(jump()), 1});
    {
      std::vector<formula> ds;
      for (std::size_t t = 0; t < n; ++t)
        ds.push_back(formula::not_(formula::iff(taken(t), taken(t))));
      res.push_back({"p_t disagrees with u_t = v_t",
                     formula::finally(formula::any_of(ds)), n});
    }
    return res;
  }

  std::vector<encoding_family> sys_families(const counter_machine& m)
  {
    std::vector<encoding_family> res;
    res.push_back({"y constant on the first three positions",
                   formula::and_(y_constant(), formula::next(y_constant())), 1});
    res.push_back({"initial c1 non-negative",
                   formula::not_(formula::lt(y(), x())), 1});
    res.push_back({"y constant or used to catch a jump",
                   formula::or_(formula::globally(y_constant()),
                                formula::finally(jump())),
                   1});
    std::vector<formula> ds;
    for (std::size_t t = 0; t < m.transitions.size(); ++t)
      if (m.is_halting(m.transitions[t]))
        ds.push_back(taken(t));
    res.push_back({"halting infinitely often unless y moved",
                   formula::implies(formula::globally(y_constant()),
                                    formula::globally(formula::finally(
                                      formula::any_of(ds)))),
                   ds.size()});
    return res;
  }

  game_spec encode_counter_machine(const counter_machine& m,
                                   const encode_options& opt)
  {
    game_spec s;
    s.dom = domain::int_z;
    s.mode = game_mode::general;
    s.variables.push_back({"x", owner::env, var_kind::ahead});
    for (std::size_t t = 0; t < m.transitions.size(); ++t)
      {
        auto i = std::to_string(t);
        s.variables.push_back({"u_" + i, owner::env, var_kind::blind});
        s.variables.push_back({"v_" + i, owner::env, var_kind::blind});
      }
    s.variables.push_back({"y", owner::sys, var_kind::ahead});

    std::vector<formula> env, sys;
    auto ef = env_families(m);
    if (!opt.tautology_guard)
      ef.pop_back();
    for (auto& f: ef)
      env.push_back(f.phi);
    for (auto& f: sys_families(m))
      sys.push_back(f.phi);
    s.winning_condition = formula::or_(formula::any_of(env), formula::all_of(sys));
    return s;
  }

  std::vector<suite_entry> builtin_suite()
  {
    struct raw
    {
      const char* name;
      const char* text;
      verdict expected;
      const char* provenance;
    };
    static const raw entries[] = {
      {"dense-counterexample",
       "domain: dense; env { ahead x; } sys { ahead y; }\n"
       "spec: G((y > X y) && !((X^2 x > y) && (X^2 x < X y)));",
       verdict::unrealizable,
       "PAPER: environment places its third value strictly between two values of y"},
      {"dense-copy",
       "domain: dense; env { ahead e; } sys { ahead s; } spec: G(e = s);",
       verdict::realizable, "TRIVIAL: system copies e in the same round"},
      {"dense-copy-ahead",
       "domain: dense; env { ahead e; } sys { ahead s; } spec: G(s = X e);",
       verdict::unrealizable, "TRIVIAL: environment avoids the committed value"},
      {"dense-above",
       "domain: dense; env { ahead e; } sys { ahead s; } spec: G(e < s);",
       verdict::realizable, "TRIVIAL: system answers above e"},
      {"dense-bounded-ascent",
       "domain: dense; sys { ahead y1, y2; }\n"
       "spec: G(y1 < X y1) && G(y1 < y2) && G(y2 = X y2);",
       verdict::realizable, "PAPER: ascending sequences may converge in dense orders"},
      {"z-bounded-ascent",
       "domain: Z; mode: single-sided; sys { ahead y1, y2; }\n"
       "spec: G(y1 < X y1) && G(y1 < y2) && G(y2 = X y2);",
       verdict::unrealizable, "TRIVIAL: pigeonhole on integers"},
      {"z-descent",
       "domain: Z; mode: single-sided; sys { ahead y; } spec: G(y > X y);",
       verdict::realizable, "TRIVIAL: y_i = -i"},
      {"z-ascent",
       "domain: Z; mode: single-sided; sys { ahead y; } spec: G(y < X y);",
       verdict::realizable, "DERIVED: y_i = i"},
      {"z-false",
       "domain: Z; mode: single-sided; sys { ahead y; } spec: false;",
       verdict::unrealizable, "TRIVIAL: empty condition"},
      {"z-adjacent-blind",
       "domain: Z; mode: single-sided; env { blind u, v; } sys { blind s; }\n"
       "spec: G(!(u < v) || (u < s && s < v));",
       verdict::unrealizable, "TRIVIAL: environment plays adjacent integers"},
      {"z-copy-blind",
       "domain: Z; mode: single-sided; env { blind u, v; } sys { blind s; }\n"
       "spec: G(!(u = v) || s = u);",
       verdict::realizable, "TRIVIAL: system copies u"},
      {"prompt-constant",
       "domain: Z; mode: single-sided; prompt: true; sys { ahead y; }\n"
       "spec: G FP(y = X y);",
       verdict::realizable, "TRIVIAL: constant y meets every prompt eventuality"},
      {"prompt-contradiction",
       "domain: Z; mode: single-sided; prompt: true; sys { ahead y; }\n"
       "spec: G FP(y < X y) && G(y > X y);",
       verdict::unrealizable, "TRIVIAL: contradictory"},
      {"prompt-false",
       "domain: Z; mode: single-sided; prompt: true; sys { ahead y; }\n"
       "spec: FP false;",
       verdict::unrealizable, "TRIVIAL: unsatisfiable eventuality"},
    };
    std::vector<suite_entry> res;
    for (auto& e: entries)
      res.push_back({e.name, parse_spec(e.text), e.expected, e.provenance});
    return res;
  }
}
