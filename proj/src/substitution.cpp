#include "cutproject/substitution.hpp"

#include <algorithm>
#include <set>

#include "cutproject/error.hpp"

namespace cutproject {

SubstitutionSystem SubstitutionSystem::fibonacci() {
  SubstitutionSystem s;
  s.rules = {{'a', "ab"}, {'b', "a"}};
  s.lengths = {{'a', Scalar::parse("tau")}, {'b', Scalar(1)}};
  s.seed_left = "a";
  s.seed_right = "a";
  return s;
}

std::string SubstitutionSystem::apply(const std::string& word) const {
  std::string out;
  for (char c : word) {
    const auto it = rules.find(c);
    if (it == rules.end()) throw InvalidInput(std::string("letter without a rule: ") + c);
    out += it->second;
  }
  return out;
}

void SubstitutionSystem::validate() const {
  if (rules.empty()) throw InvalidInput("substitution has no rules");
  std::vector<char> letters;
  for (const auto& [c, w] : rules) {
    if (w.empty()) throw InvalidInput(std::string("empty image for letter ") + c);
    const auto len = lengths.find(c);
    if (len == lengths.end() || len->second.sign() <= 0)
      throw InvalidInput(std::string("tile length must be positive for letter ") + c);
    for (char x : w)
      if (!rules.count(x)) throw InvalidInput(std::string("image uses unknown letter ") + x);
    letters.push_back(c);
  }
  // Primitive iff some power of the incidence matrix is positive; the
  // Wielandt bound (k-1)^2 + 1 limits the powers worth trying.
  const std::size_t k = letters.size();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (char x : rules.at(letters[i]))
      reach[i][static_cast<std::size_t>(std::find(letters.begin(), letters.end(), x) - letters.begin())] = true;
  auto power = reach;
  bool primitive = false;
  for (std::size_t p = 1; p <= (k - 1) * (k - 1) + 1 && !primitive; ++p) {
    primitive = true;
    for (const auto& row : power)
      for (bool b : row) primitive = primitive && b;
    if (primitive) break;
    std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (power[i][j])
          for (std::size_t l = 0; l < k; ++l) next[i][l] = next[i][l] || reach[j][l];
    power = next;
  }
  if (!primitive) throw InvalidInput("substitution is not primitive");
  if (seed_left.empty() || seed_right.empty()) throw InvalidInput("seed needs letters on both sides of the origin");
  const std::string l2 = apply(apply(seed_left));
  const std::string r2 = apply(apply(seed_right));
  if (l2.size() < seed_left.size() || l2.compare(l2.size() - seed_left.size(), seed_left.size(), seed_left) != 0 ||
      r2.compare(0, seed_right.size(), seed_right) != 0)
    throw InvalidInput("seed is not extended by the squared substitution");
}

namespace {

struct Words {
  std::string left;
  std::string right;
};

Words grow(const SubstitutionSystem& sys, int iterations) {
  Words w{sys.seed_left, sys.seed_right};
  for (int i = 0; i < iterations; ++i) {
    w.left = sys.apply(sys.apply(w.left));
    w.right = sys.apply(sys.apply(w.right));
    if (w.left.size() + w.right.size() > 50'000'000) throw EnumerationOverflow("substitution word too long");
  }
  return w;
}

Scalar word_length(const SubstitutionSystem& sys, const std::string& w) {
  std::map<char, long long> count;
  for (char c : w) ++count[c];
  Scalar total(0);
  for (const auto& [c, n] : count) total += Scalar(n) * sys.lengths.at(c);
  return total;
}

std::vector<ScalarVec> endpoints(const SubstitutionSystem& sys, const Words& w, const Box& b) {
  std::vector<ScalarVec> pts;
  Scalar x(0);
  for (char c : w.right) {
    if (compare(x, b.hi[0]) > 0) break;
    if (compare(x, b.lo[0]) >= 0) pts.push_back({x});
    x += sys.lengths.at(c);
  }
  x = Scalar(0);
  for (auto it = w.left.rbegin(); it != w.left.rend(); ++it) {
    x -= sys.lengths.at(*it);
    if (compare(x, b.lo[0]) < 0) break;
    if (compare(x, b.hi[0]) <= 0) pts.push_back({x});
  }
  sort_points(pts);
  return pts;
}

bool covers(const SubstitutionSystem& sys, const Words& w, const Box& b) {
  // The last tile on each side must end beyond B so that every endpoint in
  // B is a left endpoint of a generated tile.
  return compare(-word_length(sys, w.left), b.lo[0]) < 0 && compare(word_length(sys, w.right), b.hi[0]) > 0;
}

}  // namespace

int iterations_to_cover(const SubstitutionSystem& sys, const Box& b) {
  if (b.dim() != 1) throw InvalidInput("substitution patches are one-dimensional");
  sys.validate();
  for (int k = 0; k < 64; ++k)
    if (covers(sys, grow(sys, k), b)) return k;
  throw CoverageError("box cannot be covered");
}

Patch fixed_point_patch(const SubstitutionSystem& sys, int iterations, const Box& b) {
  if (b.dim() != 1) throw InvalidInput("substitution patches are one-dimensional");
  if (iterations < 0) throw InvalidInput("iterations must be non-negative");
  sys.validate();
  const Words w = grow(sys, iterations);
  if (!covers(sys, w, b))
    throw CoverageError("substitution word after " + std::to_string(iterations) + " iterations covers [" +
                        (-word_length(sys, w.left)).to_string() + ", " + word_length(sys, w.right).to_string() +
                        "], not " + b.to_string());
  Patch p;
  p.box = b;
  p.scheme_id = "substitution";
  p.points = endpoints(sys, w, b);
  const Words next{sys.apply(sys.apply(w.left)), sys.apply(sys.apply(w.right))};
  const auto again = endpoints(sys, next, b);
  if (again.size() != p.points.size() ||
      !std::equal(again.begin(), again.end(), p.points.begin(), [](const ScalarVec& a, const ScalarVec& c) {
        return equal(a, c);
      }))
    throw Error("substitution patch is not stable under a further iteration");
  return p;
}

WindowFit fit_half_open_window(const CutProjectScheme& scheme, const Patch& oracle, int height) {
  if (!(scheme.space() == InternalSpace::real(1)) || scheme.dim() != 1)
    throw InvalidInput("window fitting needs a one-dimensional scheme with internal space R");
  if (height < 1) throw InvalidInput("height must be positive");
  struct Candidate {
    Scalar value;
    IntVec n;
    long long height;
  };
  std::vector<Candidate> cands;
  for (const auto& n : scheme.coordinate_box(height)) {
    const Scalar v = std::get<RealCoord>(scheme.star(n).factors[0].v).x[0];
    long long h = 0;
    for (long long c : n) h = std::max(h, std::llabs(c));
    bool dup = false;
    for (auto& c : cands) {
      if (c.value == v) {
        if (h < c.height) c = Candidate{v, n, h};
        dup = true;
      }
    }
    if (!dup) cands.push_back(Candidate{v, n, h});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return compare(a.value, b.value) < 0; });
  const Window hull = Window::interval(Interval::closed(cands.front().value, cands.back().value));
  std::vector<Scalar> in, out;
  for (const auto& lp : scheme.enumerate(oracle.box, hull)) {
    const Scalar s = std::get<RealCoord>(lp.star.factors[0].v).x[0];
    (oracle.contains(lp.x) ? in : out).push_back(s);
  }
  if (in.size() != oracle.size())
    throw CertificationFailure("oracle points are not all lattice points with stars in the candidate range",
                               std::to_string(oracle.size() - in.size()) + " unmatched points");

  struct Fit {
    Interval iv;
    std::size_t lo, hi;
    long long height;
  };
  std::vector<Fit> fits;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      for (bool left_closed : {true, false}) {
        const Interval iv{cands[i].value, cands[j].value, left_closed, !left_closed};
        const bool ok = std::all_of(in.begin(), in.end(), [&](const Scalar& s) { return iv.contains(s); }) &&
                        std::none_of(out.begin(), out.end(), [&](const Scalar& s) { return iv.contains(s); });
        if (ok) fits.push_back(Fit{iv, i, j, std::max(cands[i].height, cands[j].height)});
      }
    }
  }
  if (fits.empty())
    throw CertificationFailure("no half-open window with endpoints of height <= " + std::to_string(height) +
                                   " reproduces the oracle",
                               std::to_string(in.size()) + " inside, " + std::to_string(out.size()) + " outside");
  long long best = fits.front().height;
  for (const auto& f : fits) best = std::min(best, f.height);
  WindowFit result;
  bool first = true;
  for (const auto& f : fits) {
    if (f.height != best) continue;
    if (first) {
      result.window = f.iv;
      result.lo_coords = cands[f.lo].n;
      result.hi_coords = cands[f.hi].n;
      first = false;
    }
    result.alternatives.push_back(f.iv);
  }
  return result;
}

}  // namespace cutproject
