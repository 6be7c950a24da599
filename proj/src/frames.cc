#include <cltl/errors.hh>
#include <cltl/frames.hh>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cltl
{
  rational parse_rational(std::string_view text)
  {
    std::string t(text);
    auto bad = [&] {
      return error(error_kind::syntax, "not a number: " + t);
    };
    if (t.empty())
      throw bad();
    try
      {
        if (auto slash = t.find('/'); slash != std::string::npos)
          {
            boost::multiprecision::cpp_int p(t.substr(0, slash));
            boost::multiprecision::cpp_int q(t.substr(slash + 1));
            if (q == 0)
              throw bad();
            return rational(p, q);
          }
        auto dot = t.find('.');
        if (dot == std::string::npos)
          return rational(boost::multiprecision::cpp_int(t));
        std::string frac = t.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
          throw bad();
        std::string whole = t.substr(0, dot);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+")
          whole += "0";
        boost::multiprecision::cpp_int den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
          den *= 10;
        boost::multiprecision::cpp_int w(whole), f(frac);
        rational r(w);
        rational part(f, den);
        return neg ? rational(r - part) : rational(r + part);
      }
    catch (const error&)
      {
        throw;
      }
    catch (const std::exception&)
      {
        throw bad();
      }
  }

  std::string to_decimal(const rational& r)
  {
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(r);
    cpp_int den = boost::multiprecision::denominator(r);
    cpp_int d = den;
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0)
      {
        d /= 2;
        ++twos;
      }
    while (d % 5 == 0)
      {
        d /= 5;
        ++fives;
      }
    if (d != 1)
      return num.str() + "/" + den.str();
    unsigned digits = std::max(twos, fives);
    cpp_int scale = 1;
    for (unsigned i = 0; i < digits; ++i)
      scale *= 10;
    cpp_int scaled = num * (scale / den);
    bool neg = scaled < 0;
    if (neg)
      scaled = -scaled;
    std::string s = scaled.str();
    if (digits > 0)
      {
        if (s.size() <= digits)
          s.insert(0, digits - s.size() + 1, '0');
        s.insert(s.size() - digits, ".");
      }
    return (neg ? "-" : "") + s;
  }

  vocabulary::vocabulary(const game_spec& spec) : vocabulary(spec.variables) {}

  vocabulary::vocabulary(const std::vector<variable>& vars)
  {
    for (auto& v: vars)
      if (v.kind == var_kind::ahead)
        {
          (v.who == owner::env ? env_ahead_ : sys_ahead_).push_back(ahead_.size());
          ahead_.push_back(v);
        }
      else
        {
          (v.who == owner::env ? env_blind_ : sys_blind_).push_back(blind_.size());
          blind_.push_back(v);
        }
    if (ahead_.size() > 255 || blind_.size() > 255)
      throw resource_exceeded("too many variables");
  }

  int vocabulary::ahead_index(std::string_view name) const
  {
    for (unsigned i = 0; i < ahead_.size(); ++i)
      if (ahead_[i].name == name)
        return i;
    return -1;
  }

  int vocabulary::blind_index(std::string_view name) const
  {
    for (unsigned i = 0; i < blind_.size(); ++i)
      if (blind_[i].name == name)
        return i;
    return -1;
  }

  unsigned gap_function::at(std::string_view var) const
  {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == var)
        return values[i];
    throw error(error_kind::unknown_variable,
                "not in the gap function's domain: " + std::string(var));
  }

  namespace
  {
    template<class T>
    std::vector<unsigned> gaps_of(std::span<const T> vals, unsigned ceiling,
                                  auto to_unsigned)
    {
      std::vector<std::size_t> idx(vals.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(),
                [&](auto a, auto b) { return vals[a] < vals[b]; });
      std::vector<unsigned> res(vals.size(), 0);
      for (std::size_t i = 1; i < idx.size(); ++i)
        {
          const T& lo = vals[idx[i - 1]];
          const T& hi = vals[idx[i]];
          unsigned step;
          if (hi == lo)
            step = 0;
          else if (hi - lo > T(ceiling))
            step = ceiling;
          else
            step = to_unsigned(T(hi - lo));
          res[idx[i]] = res[idx[i - 1]] + step;
        }
      return res;
    }
  }

  std::vector<unsigned> gap_values(std::span<const rational> vals,
                                   unsigned ceiling)
  {
    return gaps_of<rational>(vals, ceiling, [](const rational& d) {
      if (denominator(d) != 1)
        throw error(error_kind::invalid_spec,
                    "gap functions need integer values");
      return static_cast<unsigned>(numerator(d));
    });
  }

  std::vector<unsigned> gap_values(std::span<const long long> vals,
                                   unsigned ceiling)
  {
    return gaps_of<long long>(vals, ceiling, [](long long d) {
      return static_cast<unsigned>(d);
    });
  }

  gap_function make_gap_function(
      const std::vector<std::pair<std::string, long long>>& vals,
      unsigned ceiling)
  {
    gap_function g;
    g.ceiling = ceiling;
    std::vector<long long> raw;
    for (auto& [name, v]: vals)
      {
        g.vars.push_back(name);
        raw.push_back(v);
      }
    g.values = gap_values(std::span<const long long>(raw), ceiling);
    return g;
  }

  namespace
  {
    bool is_gap_vector(const std::vector<unsigned>& v, unsigned ceiling)
    {
      if (v.empty())
        return true;
      std::vector<unsigned> s(v);
      std::sort(s.begin(), s.end());
      if (s.front() != 0)
        return false;
      for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] - s[i - 1] > ceiling)
          return false;
      return true;
    }
  }

  std::vector<std::vector<unsigned>> enumerate_gap_vectors(unsigned n,
                                                           unsigned ceiling)
  {
    std::vector<std::vector<unsigned>> res;
    if (n == 0)
      {
        res.emplace_back();
        return res;
      }
    unsigned top = (n - 1) * ceiling;
    std::vector<unsigned> cur(n, 0);
    for (;;)
      {
        if (is_gap_vector(cur, ceiling))
          res.push_back(cur);
        unsigned i = n;
        while (i > 0 && cur[i - 1] == top)
          cur[--i] = 0;
        if (i == 0)
          break;
        ++cur[i - 1];
      }
    return res;
  }

  std::vector<gap_function> enumerate_env_gap_functions(const game_spec& spec)
  {
    vocabulary voc(spec);
    auto names = spec.env_blind();
    std::vector<gap_function> res;
    for (auto& v: enumerate_gap_vectors(names.size(), voc.gap_ceiling()))
      res.push_back({names, v, voc.gap_ceiling()});
    return res;
  }

  unsigned frame::classes() const
  {
    unsigned m = 0;
    for (auto r: rank)
      m = std::max<unsigned>(m, r + 1u);
    return m;
  }

  namespace
  {
    std::size_t hash_bytes(std::size_t h, const std::vector<std::uint8_t>& v)
    {
      for (auto b: v)
        h = h * 1099511628211ULL ^ b;
      return h;
    }
  }

  std::size_t frame_hash::operator()(const frame& f) const
  {
    std::size_t h = 1469598103934665603ULL ^ f.size;
    return hash_bytes(hash_bytes(h, f.rank) * 31, f.gaps);
  }

  std::size_t partial_frame_hash::operator()(const partial_frame& f) const
  {
    return hash_bytes(1469598103934665603ULL ^ (f.size * 7919u), f.rank);
  }

  frame bottom_frame(const vocabulary& voc)
  {
    frame f;
    f.na = voc.num_ahead();
    f.nb = voc.num_blind();
    return f;
  }

  void normalize_ranks(std::span<std::uint8_t> r)
  {
    std::vector<std::uint8_t> used;
    for (auto x: r)
      if (x != partial_frame::absent)
        used.push_back(x);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& x: r)
      if (x != partial_frame::absent)
        x = std::lower_bound(used.begin(), used.end(), x) - used.begin();
  }

  std::vector<std::vector<std::uint8_t>>
  extend_orders(const std::vector<std::uint8_t>& base,
                const std::vector<unsigned>& fill)
  {
    std::vector<std::vector<std::uint8_t>> cur{base};
    normalize_ranks(cur.front());
    for (unsigned pos: fill)
      {
        std::vector<std::vector<std::uint8_t>> nxt;
        for (auto& r: cur)
          {
            unsigned m = 0;
            for (auto x: r)
              if (x != partial_frame::absent)
                m = std::max<unsigned>(m, x + 1u);
            // Join an existing class.
            for (unsigned c = 0; c < m; ++c)
              {
                nxt.push_back(r);
                nxt.back()[pos] = c;
              }
            // Open a new class below class `slot`.
            for (unsigned slot = 0; slot <= m; ++slot)
              {
                auto e = r;
                for (auto& x: e)
                  if (x != partial_frame::absent && x >= slot)
                    ++x;
                e[pos] = slot;
                nxt.push_back(std::move(e));
              }
          }
        cur = std::move(nxt);
      }
    return cur;
  }

  namespace
  {
    // Cartesian product of gap vectors appended to each order.
    void add_gap_choices(std::vector<frame>& out, frame proto,
                         const std::vector<std::vector<unsigned>>& gvs,
                         unsigned from_pos)
    {
      if (proto.nb == 0)
        {
          out.push_back(std::move(proto));
          return;
        }
      std::vector<std::size_t> choice(proto.size - from_pos, 0);
      for (;;)
        {
          frame f = proto;
          for (unsigned p = from_pos; p < proto.size; ++p)
            for (unsigned b = 0; b < proto.nb; ++b)
              f.gaps[p * proto.nb + b] = gvs[choice[p - from_pos]][b];
          out.push_back(std::move(f));
          std::size_t i = choice.size();
          while (i > 0 && choice[i - 1] + 1 == gvs.size())
            choice[--i] = 0;
          if (i == 0)
            break;
          ++choice[i - 1];
        }
    }
  }

  std::vector<frame> enumerate_frames(const vocabulary& voc, unsigned size)
  {
    unsigned na = voc.num_ahead(), nb = voc.num_blind();
    std::vector<std::uint8_t> base(size * na, partial_frame::absent);
    std::vector<unsigned> fill(size * na);
    std::iota(fill.begin(), fill.end(), 0);
    auto gvs = enumerate_gap_vectors(nb, voc.gap_ceiling());
    std::vector<frame> res;
    for (auto& r: extend_orders(base, fill))
      {
        frame f;
        f.na = na;
        f.nb = nb;
        f.size = size;
        f.rank = std::move(r);
        f.gaps.assign(size * nb, 0);
        add_gap_choices(res, std::move(f), gvs, 0);
      }
    return res;
  }

  std::vector<std::uint8_t> restrict_ranks(const frame& f, unsigned from,
                                           unsigned count)
  {
    std::vector<std::uint8_t> r(f.rank.begin() + from * f.na,
                                f.rank.begin() + (from + count) * f.na);
    normalize_ranks(r);
    return r;
  }

  bool one_step_compatible(const frame& f, const frame& g)
  {
    if (f.na != g.na || f.nb != g.nb)
      return false;
    std::uint32_t s = f.size;
    if (g.size == s + 1)
      {
        if (restrict_ranks(g, 0, s) != f.rank)
          return false;
        return std::equal(f.gaps.begin(), f.gaps.end(), g.gaps.begin());
      }
    if (g.size == s && s >= 1)
      {
        if (restrict_ranks(f, 1, s - 1) != restrict_ranks(g, 0, s - 1))
          return false;
        return std::equal(f.gaps.begin() + f.nb, f.gaps.end(), g.gaps.begin());
      }
    return false;
  }

  std::vector<frame> successor_frames(const frame& f, unsigned k,
                                      const vocabulary& voc)
  {
    unsigned na = f.na, nb = f.nb;
    unsigned s = f.size;
    bool grow = s < k + 1;
    unsigned s2 = grow ? s + 1 : s;
    std::vector<std::uint8_t> base(s2 * na, partial_frame::absent);
    frame proto;
    proto.na = na;
    proto.nb = nb;
    proto.size = s2;
    proto.gaps.assign(s2 * nb, 0);
    if (grow)
      {
        std::copy(f.rank.begin(), f.rank.end(), base.begin());
        std::copy(f.gaps.begin(), f.gaps.end(), proto.gaps.begin());
      }
    else
      {
        std::copy(f.rank.begin() + na, f.rank.end(), base.begin());
        std::copy(f.gaps.begin() + nb, f.gaps.end(), proto.gaps.begin());
      }
    std::vector<unsigned> fill;
    for (unsigned v = 0; v < na; ++v)
      fill.push_back((s2 - 1) * na + v);
    auto gvs = enumerate_gap_vectors(nb, voc.gap_ceiling());
    std::vector<frame> res;
    for (auto& r: extend_orders(base, fill))
      {
        frame g = proto;
        g.rank = std::move(r);
        add_gap_choices(res, std::move(g), gvs, s2 - 1);
      }
    return res;
  }

  bool atom_holds(const frame& f, const formula& atom, const vocabulary& voc)
  {
    const term& l = atom.lhs();
    const term& r = atom.rhs();
    int li = voc.ahead_index(l.var);
    if (li >= 0)
      {
        int ri = voc.ahead_index(r.var);
        if (ri < 0)
          throw error(error_kind::mixed_atom, "mixed atom " + to_string(atom));
        if (l.depth >= f.size || r.depth >= f.size)
          throw error(error_kind::term_out_of_range,
                      "atom " + to_string(atom) + " exceeds a "
                      + std::to_string(f.size) + "-frame");
        auto a = f.rank_of(l.depth, li);
        auto b = f.rank_of(r.depth, ri);
        return atom.relation() == rel::lt ? a < b : a == b;
      }
    int lb = voc.blind_index(l.var);
    int rb = voc.blind_index(r.var);
    if (lb < 0 || rb < 0)
      throw error(error_kind::unknown_variable,
                  "atom over unknown variables: " + to_string(atom));
    if (f.size == 0)
      throw error(error_kind::term_out_of_range,
                  "blind atom read on the empty frame");
    auto a = f.gap(0, lb);
    auto b = f.gap(0, rb);
    return atom.relation() == rel::lt ? a < b : a == b;
  }

  valuation make_valuation(const vocabulary& voc,
                           const std::map<std::string, rational>& vals)
  {
    valuation v;
    v.ahead.assign(voc.num_ahead(), 0);
    v.blind.assign(voc.num_blind(), 0);
    for (auto& [name, x]: vals)
      {
        if (int i = voc.ahead_index(name); i >= 0)
          v.ahead[i] = x;
        else if (int j = voc.blind_index(name); j >= 0)
          v.blind[j] = x;
        else
          throw error(error_kind::unknown_variable, "unknown variable " + name);
      }
    return v;
  }

  std::map<std::string, rational> named(const vocabulary& voc,
                                        const valuation& v)
  {
    std::map<std::string, rational> res;
    for (unsigned i = 0; i < voc.num_ahead(); ++i)
      res[voc.ahead(i).name] = v.ahead[i];
    for (unsigned i = 0; i < voc.num_blind(); ++i)
      res[voc.blind(i).name] = v.blind[i];
    return res;
  }

  namespace
  {
    // Dense ranks of a list of values.
    template<class T>
    std::vector<std::uint8_t> ranks_of(const std::vector<const T*>& vals)
    {
      std::vector<const T*> sorted(vals);
      std::sort(sorted.begin(), sorted.end(),
                [](auto a, auto b) { return *a < *b; });
      sorted.erase(std::unique(sorted.begin(), sorted.end(),
                               [](auto a, auto b) { return *a == *b; }),
                   sorted.end());
      if (sorted.size() > 254)
        throw resource_exceeded("too many order classes in a frame");
      std::vector<std::uint8_t> r(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i)
        r[i] = std::lower_bound(sorted.begin(), sorted.end(), vals[i],
                                [](auto a, auto b) { return *a < *b; })
          - sorted.begin();
      return r;
    }
  }

  frame mu_step(std::span<const valuation> window, const vocabulary& voc)
  {
    frame f = bottom_frame(voc);
    f.size = window.size();
    std::vector<const rational*> vals;
    for (auto& w: window)
      for (unsigned v = 0; v < f.na; ++v)
        vals.push_back(&w.ahead[v]);
    f.rank = ranks_of(vals);
    for (auto& w: window)
      for (auto g: gap_values(std::span<const rational>(w.blind),
                              voc.gap_ceiling()))
        f.gaps.push_back(g);
    return f;
  }

  std::vector<frame> frame_sequence(const std::vector<valuation>& seq,
                                    unsigned k, const vocabulary& voc)
  {
    std::vector<frame> res;
    for (std::size_t i = k; i < seq.size(); ++i)
      res.push_back(mu_step(std::span<const valuation>(seq).subspan(i - k, k + 1), voc));
    return res;
  }

  bool partial_compatible_pre(const frame& f, const partial_frame& pf)
  {
    unsigned s = f.size;
    unsigned na = f.na;
    if (pf.na != na)
      return false;
    std::vector<std::uint8_t> head(pf.rank.begin(),
                                   pf.rank.begin() + (pf.size - 1) * na);
    normalize_ranks(head);
    if (pf.size == s + 1)
      return head == f.rank;
    if (pf.size == s && s >= 1)
      return head == restrict_ranks(f, 1, s - 1);
    return false;
  }

  bool partial_compatible_post(const partial_frame& pf, const frame& g)
  {
    if (pf.size != g.size || pf.na != g.na)
      return false;
    std::vector<std::uint8_t> r(g.rank);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (pf.rank[i] == partial_frame::absent)
        r[i] = partial_frame::absent;
    normalize_ranks(r);
    return r == pf.rank;
  }

  std::vector<partial_frame> env_extensions(const frame& f, unsigned k,
                                            const vocabulary& voc)
  {
    unsigned na = f.na;
    unsigned s = f.size;
    bool grow = s < k + 1;
    unsigned s2 = grow ? s + 1 : s;
    std::vector<std::uint8_t> base(s2 * na, partial_frame::absent);
    if (grow)
      std::copy(f.rank.begin(), f.rank.end(), base.begin());
    else
      std::copy(f.rank.begin() + na, f.rank.end(), base.begin());
    std::vector<unsigned> fill;
    for (unsigned v: voc.env_ahead())
      fill.push_back((s2 - 1) * na + v);
    std::vector<partial_frame> res;
    for (auto& r: extend_orders(base, fill))
      res.push_back({static_cast<std::uint8_t>(na), s2, std::move(r)});
    return res;
  }

  std::vector<frame> sys_completions(const partial_frame& pf,
                                     const vocabulary& voc)
  {
    std::vector<unsigned> fill;
    for (unsigned v: voc.sys_ahead())
      fill.push_back((pf.size - 1) * pf.na + v);
    std::vector<frame> res;
    for (auto& r: extend_orders(pf.rank, fill))
      {
        frame g = bottom_frame(voc);
        g.size = pf.size;
        g.rank = std::move(r);
        g.gaps.assign(g.size * g.nb, 0);
        res.push_back(std::move(g));
      }
    return res;
  }

  partial_frame partial_frame_of(std::span<const valuation> history,
                                 const valuation& env_values,
                                 const vocabulary& voc)
  {
    unsigned na = voc.num_ahead();
    std::vector<const rational*> vals;
    std::vector<unsigned> where;
    partial_frame pf;
    pf.na = na;
    pf.size = history.size() + 1;
    pf.rank.assign(pf.size * na, partial_frame::absent);
    for (std::size_t d = 0; d < history.size(); ++d)
      for (unsigned v = 0; v < na; ++v)
        {
          vals.push_back(&history[d].ahead[v]);
          where.push_back(d * na + v);
        }
    for (unsigned v: voc.env_ahead())
      {
        vals.push_back(&env_values.ahead[v]);
        where.push_back(history.size() * na + v);
      }
    auto r = ranks_of(vals);
    for (std::size_t i = 0; i < r.size(); ++i)
      pf.rank[where[i]] = r[i];
    return pf;
  }

  bool gap_compatible(std::span<const unsigned> env_gap, const frame& g,
                      const vocabulary& voc)
  {
    if (g.size == 0)
      return false;
    const auto& eb = voc.env_blind();
    unsigned last = g.size - 1;
    for (std::size_t i = 1; i < eb.size(); ++i)
      {
        long long dg = static_cast<long long>(env_gap[i]) - env_gap[0];
        long long df = static_cast<long long>(g.gap(last, eb[i]))
          - g.gap(last, eb[0]);
        if (dg != df)
          return false;
      }
    return true;
  }

  valuation realize_rational(std::span<const valuation> history,
                             const valuation& env_values, const frame& target,
                             const vocabulary& voc)
  {
    unsigned na = voc.num_ahead();
    if (target.size != history.size() + 1 || target.na != na)
      throw error(error_kind::incompatible_target,
                  "target frame size does not match the history");
    unsigned last = history.size();
    // Known values per term index; the system's newest terms are unknown.
    std::vector<std::optional<rational>> known(target.size * na);
    for (unsigned d = 0; d < last; ++d)
      for (unsigned v = 0; v < na; ++v)
        known[d * na + v] = history[d].ahead[v];
    for (unsigned v: voc.env_ahead())
      known[last * na + v] = env_values.ahead[v];

    for (std::size_t i = 0; i < known.size(); ++i)
      for (std::size_t j = 0; j < known.size(); ++j)
        if (known[i] && known[j])
          {
            bool lt_val = *known[i] < *known[j];
            bool lt_rank = target.rank[i] < target.rank[j];
            bool eq_val = *known[i] == *known[j];
            bool eq_rank = target.rank[i] == target.rank[j];
            if (lt_val != lt_rank || eq_val != eq_rank)
              throw error(error_kind::incompatible_target,
                          "target frame contradicts the known values");
          }

    unsigned classes = target.classes();
    std::vector<std::optional<rational>> class_val(classes);
    for (std::size_t i = 0; i < known.size(); ++i)
      if (known[i])
        class_val[target.rank[i]] = *known[i];

    for (unsigned c = 0; c < classes; ++c)
      {
        if (class_val[c])
          continue;
        std::optional<rational> lo, hi;
        for (unsigned d = c; d-- > 0;)
          if (class_val[d])
            {
              lo = *class_val[d];
              break;
            }
        for (unsigned d = c + 1; d < classes; ++d)
          if (class_val[d])
            {
              hi = *class_val[d];
              break;
            }
        if (lo && hi)
          class_val[c] = (*lo + *hi) / 2;
        else if (lo)
          class_val[c] = *lo + 1;
        else if (hi)
          class_val[c] = *hi - 1;
        else
          class_val[c] = rational(0);
      }

    valuation res = env_values;
    res.ahead.resize(na);
    for (unsigned v: voc.sys_ahead())
      res.ahead[v] = *class_val[target.rank_of(last, v)];
    return res;
  }

  std::vector<long long> realize_blind_int(std::span<const long long> env_vals,
                                           std::span<const unsigned> target,
                                           const vocabulary& voc)
  {
    const auto& eb = voc.env_blind();
    unsigned nb = voc.num_blind();
    if (env_vals.size() != eb.size() || target.size() != nb)
      throw error(error_kind::not_gap_compatible, "size mismatch");
    auto em_gap = gap_values(env_vals, voc.gap_ceiling());
    for (std::size_t i = 1; i < eb.size(); ++i)
      if (static_cast<long long>(em_gap[i]) - em_gap[0]
          != static_cast<long long>(target[eb[i]]) - target[eb[0]])
        throw error(error_kind::not_gap_compatible,
                    "environment gaps disagree with the target");

    std::vector<long long> res(nb, 0);
    for (std::size_t i = 0; i < eb.size(); ++i)
      res[eb[i]] = env_vals[i];
    for (unsigned s: voc.sys_blind())
      {
        long long t = target[s];
        if (eb.empty())
          {
            res[s] = t;
            continue;
          }
        // Anchor at the nearest environment variable below (or at) t, else
        // at the least one above.
        std::optional<std::size_t> below, above;
        for (std::size_t i = 0; i < eb.size(); ++i)
          {
            long long ti = target[eb[i]];
            if (ti <= t && (!below || ti > static_cast<long long>(target[eb[*below]])))
              below = i;
            if (ti > t && (!above || ti < static_cast<long long>(target[eb[*above]])))
              above = i;
          }
        if (below)
          res[s] = env_vals[*below] + (t - static_cast<long long>(target[eb[*below]]));
        else
          res[s] = env_vals[*above] - (static_cast<long long>(target[eb[*above]]) - t);
      }
    return res;
  }

  std::string to_string(const frame& f, const vocabulary& voc)
  {
    if (f.size == 0)
      return "bottom";
    std::ostringstream os;
    unsigned m = f.classes();
    std::vector<std::vector<std::string>> cls(m);
    for (unsigned d = 0; d < f.size; ++d)
      for (unsigned v = 0; v < f.na; ++v)
        cls[f.rank_of(d, v)].push_back(to_string(term{d, voc.ahead(v).name}));
    for (unsigned c = 0; c < m; ++c)
      {
        if (c)
          os << " < ";
        for (std::size_t i = 0; i < cls[c].size(); ++i)
          os << (i ? " = " : "") << cls[c][i];
      }
    if (f.nb)
      {
        os << (m ? " | " : "|");
        for (unsigned p = 0; p < f.size; ++p)
          {
            os << (p ? " " : "") << '{';
            for (unsigned b = 0; b < f.nb; ++b)
              os << (b ? "," : "") << voc.blind(b).name << ':'
                 << unsigned(f.gap(p, b));
            os << '}';
          }
      }
    return os.str();
  }

  std::string to_string(const partial_frame& f, const vocabulary& voc)
  {
    std::ostringstream os;
    os << f.size << "-partial [";
    for (unsigned d = 0; d < f.size; ++d)
      for (unsigned v = 0; v < f.na; ++v)
        {
          auto r = f.rank[d * f.na + v];
          if (r == partial_frame::absent)
            continue;
          os << ' ' << to_string(term{d, voc.ahead(v).name}) << ':' << unsigned(r);
        }
    os << " ]";
    return os.str();
  }
}
