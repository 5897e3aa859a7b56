#include "mlschur/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace mlschur {

PresentationError::PresentationError(const std::string& msg, int line_, int column_)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ", column " +
                                         std::to_string(column_) + ": " + msg
                                   : msg),
      line(line_), column(column_) {}

EnumerationOverflow::EnumerationOverflow(std::size_t max)
    : std::runtime_error("coset enumeration exceeded " + std::to_string(max) +
                         " cosets (raise --max-cosets, or the group is too large or infinite)"),
      max_cosets(max) {}

void Presentation::validate() const {
  int g = generator_count();
  for (std::size_t r = 0; r < relators.size(); ++r)
    for (int x : relators[r])
      if (x == 0 || x > g || -x > g)
        throw PresentationError("relator " + std::to_string(r) + " uses letter " +
                                    std::to_string(x) + " out of range",
                                0, 0);
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r)
    x = -x;
  return r;
}

Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (int x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return Word(r.begin() + std::ptrdiff_t(i), r.begin() + std::ptrdiff_t(j));
}

Word commutator_word(const Word& x, const Word& y) {
  Word w = x;
  w.insert(w.end(), y.begin(), y.end());
  auto xi = inverse_word(x), yi = inverse_word(y);
  w.insert(w.end(), xi.begin(), xi.end());
  w.insert(w.end(), yi.begin(), yi.end());
  return free_reduce(w);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  Presentation run() {
    Presentation p;
    skip_ws();
    expect_keyword("gens");
    skip_ws();
    expect(':');
    while (true) {
      skip_ws();
      if (peek() == ';' || at_end())
        break;
      auto [line, col] = here();
      std::string name = identifier();
      if (name.empty())
        error("expected generator name", line, col);
      if (std::find(p.generator_names.begin(), p.generator_names.end(), name) !=
          p.generator_names.end())
        error("duplicate generator '" + name + "'", line, col);
      p.generator_names.push_back(name);
    }
    expect(';');
    skip_ws();
    expect_keyword("rels");
    skip_ws();
    expect(':');
    names_ = &p.generator_names;
    skip_ws();
    if (!at_end()) {
      while (true) {
        Word lhs = word();
        skip_ws();
        if (peek() == '=') {
          ++pos_;
          Word rhs = word();
          auto ri = inverse_word(rhs);
          lhs.insert(lhs.end(), ri.begin(), ri.end());
        }
        p.relators.push_back(free_reduce(lhs));
        skip_ws();
        if (at_end())
          break;
        expect(',');
      }
    }
    return p;
  }

private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  std::pair<int, int> here() const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void error(const std::string& msg) {
    auto [l, c] = here();
    error(msg, l, c);
  }
  [[noreturn]] void error(const std::string& msg, int l, int c) {
    throw PresentationError(msg, l, c);
  }

  void skip_ws() {
    while (!at_end() && std::isspace((unsigned char)s_[pos_]))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_keyword(const std::string& kw) {
    if (s_.compare(pos_, kw.size(), kw) != 0)
      error("expected '" + kw + "'");
    pos_ += kw.size();
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (!at_end() && (std::isalpha((unsigned char)peek()) || peek() == '_')) {
      ++pos_;
      while (!at_end() && (std::isalnum((unsigned char)peek()) || peek() == '_'))
        ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  long long integer() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    if (!std::isdigit((unsigned char)peek()))
      error("expected integer exponent");
    long long v = 0;
    while (std::isdigit((unsigned char)peek())) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000)
        error("exponent too large");
    }
    return neg ? -v : v;
  }

  Word word() {
    Word w;
    while (true) {
      skip_ws();
      char c = peek();
      if (at_end() || c == ',' || c == ';' || c == ']' || c == ')' || c == '=')
        break;
      Word f = factor();
      w.insert(w.end(), f.begin(), f.end());
    }
    return free_reduce(w);
  }

  Word factor() {
    skip_ws();
    Word a;
    char c = peek();
    if (c == '(') {
      ++pos_;
      a = word();
      expect(')');
    } else if (c == '[') {
      ++pos_;
      Word x = word();
      expect(',');
      Word y = word();
      expect(']');
      a = commutator_word(x, y);
    } else if (c == '1') {
      ++pos_;
    } else {
      auto [l, col] = here();
      std::string name = identifier();
      if (name.empty())
        error(std::string("unexpected character '") + c + "'");
      auto it = std::find(names_->begin(), names_->end(), name);
      if (it == names_->end())
        error("unknown generator '" + name + "'", l, col);
      a.push_back(int(it - names_->begin()) + 1);
    }
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      long long k = integer();
      Word base = k < 0 ? inverse_word(a) : a;
      Word r;
      for (long long i = 0; i < (k < 0 ? -k : k); ++i)
        r.insert(r.end(), base.begin(), base.end());
      a = free_reduce(r);
    }
    return a;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* names_ = nullptr;
};

} // namespace

Presentation parse_presentation(const std::string& text) {
  Parser ps(text);
  return ps.run();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    int x = w[i];
    long long e = (long long)(j - i) * (x > 0 ? 1 : -1);
    if (!out.empty())
      out += ' ';
    out += names.at(std::size_t(std::abs(x) - 1));
    if (e != 1)
      out += '^' + std::to_string(e);
    i = j;
  }
  return out;
}

std::string format_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.generator_names)
    out += ' ' + n;
  out += " ; rels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    out += (i ? ", " : " ") + format_word(p.relators[i], p.generator_names);
  return out;
}

// ---------------------------------------------------------------------------
// Tietze elimination

namespace {

// least rotation (Booth)
Word least_rotation(const Word& w) {
  std::size_t n = w.size();
  if (n == 0)
    return w;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  auto at = [&](std::size_t i) { return w[i % n]; };
  for (std::size_t j = 1; j < 2 * n; ++j) {
    int sj = at(j);
    long i = f[j - k - 1];
    while (i != -1 && sj != at(k + std::size_t(i) + 1)) {
      if (sj < at(k + std::size_t(i) + 1))
        k = j - std::size_t(i) - 1;
      i = f[std::size_t(i)];
    }
    if (sj != at(k + std::size_t(i) + 1)) {
      if (sj < at(k))
        k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  Word r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = at(k + i);
  return r;
}

Word canonical(const Word& w) {
  Word a = least_rotation(w), b = least_rotation(inverse_word(w));
  return std::min(a, b);
}

std::uint64_t hash_word(const Word& w) {
  std::uint64_t h = 1469598103934665603ull;
  for (int x : w) {
    h ^= std::uint64_t(std::uint32_t(x));
    h *= 1099511628211ull;
  }
  return h ^ w.size();
}

class Tietze {
public:
  Tietze(const Presentation& p, std::size_t maxlen) : G_(p.generator_count()), maxlen_(maxlen) {
    occ_.resize(G_ + 1);
    raw_.resize(G_ + 1);
    eliminated_.assign(G_ + 1, 0);
    for (const auto& r0 : p.relators) {
      Word r = cyclic_reduce(r0);
      if (r.empty())
        continue;
      add_relator(std::move(r));
    }
    for (const auto& r : rels_)
      initial_total_ += r.size();
  }

  void run() {
    std::size_t total_cap = std::max<std::size_t>(initial_total_ * 40, 2000000);
    while (!cand_.empty()) {
      auto [len, id] = *cand_.begin();
      if (len > maxlen_ || total_ > total_cap)
        break;
      int g = pick_generator(rels_[id]);
      if (g == 0) {
        cand_.erase(cand_.begin());
        continue;
      }
      eliminate(id, g);
    }
  }

  TietzeResult result() const {
    std::vector<int> newidx(G_ + 1, 0);
    Presentation red;
    for (int g = 1; g <= G_; ++g)
      if (!eliminated_[g]) {
        newidx[g] = int(red.generator_names.size()) + 1;
        red.generator_names.push_back("x" + std::to_string(g));
      }
    std::vector<Word> expanded(G_ + 1);
    for (int g = 1; g <= G_; ++g)
      if (!eliminated_[g])
        expanded[g] = {newidx[g]};
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      int g = *it;
      Word e;
      for (int x : raw_[g]) {
        const Word& sub = expanded[std::abs(x)];
        if (x > 0)
          e.insert(e.end(), sub.begin(), sub.end());
        else {
          auto inv = inverse_word(sub);
          e.insert(e.end(), inv.begin(), inv.end());
        }
        e = free_reduce(e);
      }
      expanded[g] = std::move(e);
    }
    for (std::size_t id = 0; id < rels_.size(); ++id)
      if (alive_[id]) {
        Word r;
        for (int x : rels_[id])
          r.push_back(x > 0 ? newidx[x] : -newidx[-x]);
        red.relators.push_back(std::move(r));
      }
    TietzeResult out;
    out.reduced = std::move(red);
    out.substitution.assign(expanded.begin() + 1, expanded.end());
    return out;
  }

private:
  void add_relator(Word r) {
    Word c = canonical(r);
    std::uint64_t h = hash_word(c);
    auto& bucket = by_hash_[h];
    for (int other : bucket)
      if (canonical(rels_[other]) == c)
        return;
    int id = int(rels_.size());
    bucket.push_back(id);
    hash_.push_back(h);
    alive_.push_back(1);
    for (int x : r)
      occ_[std::abs(x)].push_back(id);
    total_ += r.size();
    cand_.insert({r.size(), id});
    rels_.push_back(std::move(r));
  }

  void kill(int id) {
    if (!alive_[id])
      return;
    alive_[id] = 0;
    cand_.erase({rels_[id].size(), id});
    auto& bucket = by_hash_[hash_[id]];
    bucket.erase(std::remove(bucket.begin(), bucket.end(), id), bucket.end());
    total_ -= rels_[id].size();
    rels_[id].clear();
    rels_[id].shrink_to_fit();
  }

  // replace relator id by r (already cyclically reduced)
  void replace(int id, Word r) {
    cand_.erase({rels_[id].size(), id});
    auto& bucket = by_hash_[hash_[id]];
    bucket.erase(std::remove(bucket.begin(), bucket.end(), id), bucket.end());
    total_ -= rels_[id].size();
    if (r.empty()) {
      alive_[id] = 0;
      rels_[id].clear();
      return;
    }
    Word c = canonical(r);
    std::uint64_t h = hash_word(c);
    auto& nb = by_hash_[h];
    for (int other : nb)
      if (canonical(rels_[other]) == c) {
        alive_[id] = 0;
        rels_[id].clear();
        return;
      }
    nb.push_back(id);
    hash_[id] = h;
    total_ += r.size();
    cand_.insert({r.size(), id});
    rels_[id] = std::move(r);
  }

  int pick_generator(const Word& r) {
    std::map<int, int> count;
    for (int x : r)
      ++count[std::abs(x)];
    int best = 0;
    std::size_t best_occ = 0;
    for (auto [g, c] : count)
      if (c == 1 && (best == 0 || occ_[g].size() <= best_occ)) {
        best = g;
        best_occ = occ_[g].size();
      }
    return best;
  }

  void eliminate(int id, int g) {
    const Word& r = rels_[id];
    std::size_t p = 0;
    while (std::abs(r[p]) != g)
      ++p;
    Word c;
    for (std::size_t i = 1; i < r.size(); ++i)
      c.push_back(r[(p + i) % r.size()]);
    Word value = r[p] > 0 ? inverse_word(c) : c;
    Word value_inv = inverse_word(value);
    raw_[g] = value;
    eliminated_[g] = 1;
    order_.push_back(g);
    kill(id);
    std::vector<int> targets = occ_[g];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    occ_[g].clear();
    occ_[g].shrink_to_fit();
    for (int t : targets) {
      if (!alive_[t])
        continue;
      const Word& old = rels_[t];
      if (std::none_of(old.begin(), old.end(), [&](int x) { return std::abs(x) == g; }))
        continue;
      Word nw;
      nw.reserve(old.size() + 4 * value.size());
      for (int x : old) {
        if (x == g)
          nw.insert(nw.end(), value.begin(), value.end());
        else if (x == -g)
          nw.insert(nw.end(), value_inv.begin(), value_inv.end());
        else
          nw.push_back(x);
      }
      nw = cyclic_reduce(nw);
      for (int x : nw)
        if (std::abs(x) != g)
          occ_[std::abs(x)].push_back(t);
      replace(t, std::move(nw));
    }
    // occurrence lists accumulate stale ids; prune the ones that grew large
    for (int x : value) {
      auto& o = occ_[std::abs(x)];
      if (o.size() > 64 && o.size() > 4 * (o.capacity() / 8 + 1)) {
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
        o.erase(std::remove_if(o.begin(), o.end(), [&](int t) { return !alive_[t]; }), o.end());
      }
    }
  }

  int G_;
  std::size_t maxlen_;
  std::vector<Word> rels_;
  std::vector<char> alive_;
  std::vector<std::uint64_t> hash_;
  std::unordered_map<std::uint64_t, std::vector<int>> by_hash_;
  std::vector<std::vector<int>> occ_;
  std::set<std::pair<std::size_t, int>> cand_;
  std::vector<Word> raw_;
  std::vector<char> eliminated_;
  std::vector<int> order_;
  std::size_t total_ = 0, initial_total_ = 0;
};

} // namespace

TietzeResult tietze_reduce(const Presentation& p, std::size_t max_relator_length) {
  p.validate();
  Tietze t(p, max_relator_length);
  t.run();
  return t.result();
}

// ---------------------------------------------------------------------------
// coset enumeration

namespace {

class Felsch {
public:
  Felsch(const Presentation& p, std::size_t max_cosets)
      : G_(p.generator_count()), C_(2 * G_), max_(max_cosets) {
    for (const auto& r0 : p.relators) {
      Word r = cyclic_reduce(r0);
      if (r.empty())
        continue;
      std::vector<int> cols;
      for (int x : r)
        cols.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
      rels_.push_back(std::move(cols));
    }
    occ_.resize(C_);
    for (std::size_t r = 0; r < rels_.size(); ++r)
      for (std::size_t i = 0; i < rels_[r].size(); ++i)
        occ_[rels_[r][i]].push_back({int(r), int(i)});
  }

  CosetTable run(EnumerationStats* stats) {
    new_coset();
    std::size_t ptr = 0;
    int colptr = 0;
    bool rescanned = false;
    while (true) {
      process_deductions();
      // first undefined entry at or after (ptr, colptr)
      bool found = false;
      while (ptr < alive_.size()) {
        if (alive_[ptr]) {
          for (; colptr < C_; ++colptr)
            if (at(ptr, colptr) < 0) {
              found = true;
              break;
            }
          if (found)
            break;
        }
        ++ptr;
        colptr = 0;
      }
      if (!found) {
        if (rescanned)
          break;
        // coincidences never undefine entries of live cosets, but check once
        rescanned = true;
        ptr = 0;
        colptr = 0;
        continue;
      }
      rescanned = false;
      if (live_ >= max_)
        throw EnumerationOverflow(max_);
      int d = new_coset();
      set(int(ptr), colptr, d);
      deductions_.push_back({int(ptr), colptr});
      if (dead_ > 20000 && dead_ > live_)
        compact(ptr);
    }
    if (stats) {
      stats->cosets_defined += defined_;
      stats->max_live = std::max(stats->max_live, max_live_);
    }
    return standardize();
  }

private:
  int& at(std::size_t c, int col) { return tab_[c * std::size_t(C_) + std::size_t(col)]; }
  static int inv(int col) { return col ^ 1; }

  int new_coset() {
    int c = int(alive_.size());
    tab_.resize(tab_.size() + std::size_t(C_), -1);
    alive_.push_back(1);
    parent_.push_back(c);
    ++live_;
    ++defined_;
    max_live_ = std::max(max_live_, live_);
    return c;
  }

  void set(int c, int col, int d) {
    at(c, col) = d;
    at(d, inv(col)) = c;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r)
      r = parent_[r];
    while (parent_[c] != r) {
      int n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b)
      return;
    if (a > b)
      std::swap(a, b);
    parent_[b] = a;
    alive_[b] = 0;
    --live_;
    ++dead_;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int e = queue[qi];
      for (int col = 0; col < C_; ++col) {
        int f = at(e, col);
        if (f < 0)
          continue;
        if (at(f, inv(col)) == e)
          at(f, inv(col)) = -1;
        int e1 = rep(e), f1 = rep(f);
        if (at(e1, col) >= 0) {
          merge(f1, at(e1, col), queue);
        } else if (at(f1, inv(col)) >= 0) {
          merge(e1, at(f1, inv(col)), queue);
        } else {
          set(e1, col, f1);
          deductions_.push_back({e1, col});
        }
      }
    }
  }

  // scan relator r rotated to start at position p, at coset c
  void scan(int c, const std::vector<int>& r, int p) {
    int L = int(r.size());
    int f = c, i = 0;
    while (i < L) {
      int nf = at(f, r[(p + i) % L]);
      if (nf < 0)
        break;
      f = nf;
      ++i;
    }
    if (i == L) {
      if (f != c)
        coincidence(f, c);
      return;
    }
    int b = c, j = L - 1;
    while (j >= i) {
      int nb = at(b, inv(r[(p + j) % L]));
      if (nb < 0)
        break;
      b = nb;
      --j;
    }
    if (j < i) {
      coincidence(f, b);
    } else if (j == i) {
      set(f, r[(p + i) % L], b);
      deductions_.push_back({f, r[(p + i) % L]});
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      if (!alive_[c])
        continue;
      int d = at(c, col);
      if (d < 0)
        continue;
      for (auto [r, p] : occ_[col]) {
        if (!alive_[c])
          break;
        scan(c, rels_[r], p);
      }
      if (!alive_[d])
        d = rep(d);
      for (auto [r, p] : occ_[inv(col)]) {
        if (!alive_[d])
          break;
        scan(d, rels_[r], p);
      }
    }
  }

  void compact(std::size_t& ptr) {
    std::vector<int> nid(alive_.size(), -1);
    int k = 0;
    for (std::size_t c = 0; c < alive_.size(); ++c)
      if (alive_[c])
        nid[c] = k++;
    std::vector<int> nt(std::size_t(k) * std::size_t(C_));
    for (std::size_t c = 0; c < alive_.size(); ++c)
      if (alive_[c])
        for (int col = 0; col < C_; ++col) {
          int v = at(c, col);
          nt[std::size_t(nid[c]) * std::size_t(C_) + std::size_t(col)] = v < 0 ? -1 : nid[v];
        }
    std::size_t np = 0;
    for (std::size_t c = 0; c < std::min(ptr, alive_.size()); ++c)
      if (alive_[c])
        ++np;
    ptr = np;
    std::vector<std::pair<int, int>> nd;
    for (auto [c, col] : deductions_)
      if (alive_[c])
        nd.push_back({nid[c], col});
    deductions_ = std::move(nd);
    tab_ = std::move(nt);
    alive_.assign(std::size_t(k), 1);
    parent_.resize(std::size_t(k));
    std::iota(parent_.begin(), parent_.end(), 0);
    dead_ = 0;
  }

  CosetTable standardize() {
    std::vector<int> nid(alive_.size(), -1);
    std::vector<int> order{0};
    nid[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int col = 0; col < C_; ++col) {
        int d = at(std::size_t(order[i]), col);
        if (d >= 0 && nid[d] < 0) {
          nid[d] = int(order.size());
          order.push_back(d);
        }
      }
    CosetTable t;
    t.generator_count = G_;
    t.coset_count = order.size();
    t.action.resize(order.size() * std::size_t(C_));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int col = 0; col < C_; ++col) {
        int d = at(std::size_t(order[i]), col);
        if (d < 0 || nid[d] < 0)
          throw std::logic_error("coset enumeration finished with an incomplete table");
        t.action[i * std::size_t(C_) + std::size_t(col)] = nid[d];
      }
    return t;
  }

  int G_, C_;
  std::size_t max_;
  std::vector<std::vector<int>> rels_;
  std::vector<std::vector<std::pair<int, int>>> occ_;
  std::vector<int> tab_;
  std::vector<char> alive_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> deductions_;
  std::size_t live_ = 0, dead_ = 0, defined_ = 0, max_live_ = 0;
};

int trace(const CosetTable& t, int coset, const Word& w) {
  for (int x : w)
    coset = t(std::size_t(coset), x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
  return coset;
}

} // namespace

CosetTable enumerate_cosets(const Presentation& p, std::size_t max_cosets,
                            EnumerationStats* stats) {
  p.validate();
  if (max_cosets < 1)
    throw std::invalid_argument("max_cosets must be >= 1");
  Felsch f(p, max_cosets);
  return f.run(stats);
}

Elem EnumerationResult::evaluate(const Word& w) const {
  Elem e = group.identity();
  for (int x : w) {
    Elem g = generator_images.at(std::size_t(std::abs(x) - 1));
    e = group.mul(e, x > 0 ? g : group.inv(g));
  }
  return e;
}

EnumerationResult todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  p.validate();
  if (p.relators.empty())
    throw PresentationError("presentation has no relators (infinite group)", 0, 0);
  if (max_cosets < 1)
    throw std::invalid_argument("max_cosets must be >= 1");
  auto tz = tietze_reduce(p);
  const Presentation& red = tz.reduced;
  EnumerationStats stats;
  CosetTable table;
  if (red.generator_count() == 0) {
    table.generator_count = 0;
    table.coset_count = 1;
  } else {
    // enumerate with a subset of the relators, then add whichever of the
    // remaining relators fail in the result
    std::vector<std::size_t> order(red.relators.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return red.relators[a].size() < red.relators[b].size();
    });
    std::size_t total = order.size();
    std::size_t k = std::min<std::size_t>(total, std::max<std::size_t>(64, 8 * std::size_t(red.generator_count())));
    std::vector<char> used(total, 0);
    std::vector<std::size_t> subset;
    auto take = [&](std::size_t upto) {
      for (std::size_t i = 0; i < total && subset.size() < upto; ++i)
        if (!used[order[i]]) {
          used[order[i]] = 1;
          subset.push_back(order[i]);
        }
    };
    take(k);
    while (true) {
      ++stats.attempts;
      Presentation sub;
      sub.generator_names = red.generator_names;
      for (std::size_t i : subset)
        sub.relators.push_back(red.relators[i]);
      bool full = subset.size() == total;
      std::size_t budget = full ? max_cosets : std::min<std::size_t>(max_cosets, 50000);
      try {
        table = enumerate_cosets(sub, budget, &stats);
      } catch (const EnumerationOverflow&) {
        if (full)
          throw EnumerationOverflow(max_cosets);
        take(std::min(total, subset.size() * 4));
        continue;
      }
      std::vector<std::size_t> failing;
      for (std::size_t i = 0; i < total; ++i)
        if (!used[i] && trace(table, 0, red.relators[i]) != 0)
          failing.push_back(i);
      if (failing.empty())
        break;
      for (std::size_t i : failing) {
        used[i] = 1;
        subset.push_back(i);
      }
    }
    stats.relators_used = subset.size();
  }

  // regular representation: coset d <-> element g_d with 0.g_d = d
  std::size_t n = table.coset_count;
  int C = 2 * table.generator_count;
  std::vector<int> parent(n, -1), pcol(n, -1), bfs{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (int col = 0; col < C; ++col) {
      int d = table(std::size_t(bfs[i]), col);
      if (!seen[d]) {
        seen[d] = 1;
        parent[d] = bfs[i];
        pcol[d] = col;
        bfs.push_back(d);
      }
    }
  std::vector<std::vector<Elem>> cay(n, std::vector<Elem>(n));
  for (std::size_t c = 0; c < n; ++c) {
    cay[c][0] = Elem(c);
    for (std::size_t i = 1; i < bfs.size(); ++i) {
      int d = bfs[i];
      cay[c][d] = table(std::size_t(cay[c][parent[d]]), pcol[d]);
    }
  }
  std::vector<Elem> red_images;
  for (int g = 0; g < table.generator_count; ++g)
    red_images.push_back(table(0, 2 * g));

  EnumerationResult out{FiniteGroup("fp", std::move(cay)), {}, stats};
  for (const auto& w : tz.substitution) {
    Elem e = out.group.identity();
    for (int x : w) {
      Elem g = red_images[std::size_t(std::abs(x) - 1)];
      e = out.group.mul(e, x > 0 ? g : out.group.inv(g));
    }
    out.generator_images.push_back(e);
  }
  // every original relator must evaluate to the identity
  for (const auto& r : p.relators)
    if (out.evaluate(r) != out.group.identity())
      throw std::logic_error("todd_coxeter: relator check failed");
  std::vector<MarkedGenerator> marks;
  for (int i = 0; i < p.generator_count(); ++i)
    marks.push_back({p.generator_names[std::size_t(i)], out.generator_images[std::size_t(i)]});
  out.group = out.group.with_generators(std::move(marks));
  return out;
}

} // namespace mlschur
