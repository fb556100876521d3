#include "facering/koszul.hpp"

#include <cctype>
#include <charconv>

namespace facering {

Multidegree indicator(int m, VertexSet s) {
  Multidegree a(std::size_t(m), 0);
  for (int v : s) a[std::size_t(v - 1)] = 1;
  return a;
}

VertexSet support(const Multidegree& a) {
  VertexSet s;
  for (std::size_t t = 0; t < a.size(); ++t)
    if (a[t] != 0) s.insert(int(t) + 1);
  return s;
}

int total(const Multidegree& a) {
  int n = 0;
  for (int e : a) n += e;
  return n;
}

bool is_squarefree(const Multidegree& a) {
  return std::all_of(a.begin(), a.end(), [](int e) { return e <= 1; });
}

std::string to_string(const Multidegree& a) {
  std::string s = "(";
  for (std::size_t t = 0; t < a.size(); ++t) s += (t ? "," : "") + std::to_string(a[t]);
  return s + ")";
}

Multidegree KoszulMonomial::multidegree() const {
  Multidegree a = alpha;
  for (int j : sigma) a[std::size_t(j - 1)] += 1;
  return a;
}

std::string KoszulMonomial::to_string() const {
  std::string s;
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    if (alpha[t] == 0) continue;
    if (!s.empty()) s += " ";
    s += "v" + std::to_string(t + 1);
    if (alpha[t] > 1) s += "^" + std::to_string(alpha[t]);
  }
  for (int j : sigma) {
    if (!s.empty()) s += " ";
    s += "u" + std::to_string(j);
  }
  return s.empty() ? "1" : s;
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::invalid_input, "cannot parse monomial '" + std::string(whole) + "'");
  return value;
}

}  // namespace

KoszulMonomial KoszulMonomial::parse(std::string_view text, int m) {
  KoszulMonomial mono = unit(m);
  std::size_t pos = 0;
  int last_u = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != '*') ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "1") continue;
    const char kind = token[0];
    if (kind != 'v' && kind != 'u')
      throw Error(ErrorCode::invalid_input, "cannot parse monomial '" + std::string(text) + "'");
    std::string_view rest = token.substr(1);
    int exponent = 1;
    if (auto caret = rest.find('^'); caret != std::string_view::npos) {
      exponent = parse_int(rest.substr(caret + 1), text);
      rest = rest.substr(0, caret);
    }
    const int index = parse_int(rest, text);
    if (index < 1 || index > m)
      throw Error(ErrorCode::vertex_out_of_range,
                  "variable index " + std::to_string(index) + " outside 1.." + std::to_string(m));
    if (kind == 'v') {
      if (exponent < 0) throw Error(ErrorCode::invalid_input, "negative exponent in '" + std::string(text) + "'");
      mono.alpha[std::size_t(index - 1)] += exponent;
    } else {
      if (exponent != 1 || index <= last_u)
        throw Error(ErrorCode::invalid_input,
                    "exterior variables must appear once each, in increasing order: '" + std::string(text) + "'");
      mono.sigma.insert(index);
      last_u = index;
    }
  }
  return mono;
}

std::vector<KoszulMonomial> strand_basis(const SimplicialComplex& k, const Multidegree& a, int i) {
  std::vector<KoszulMonomial> basis;
  for_each_subset(support(a), [&](VertexSet sigma) {
    if (sigma.size() != i) return;
    KoszulMonomial mono{a, sigma};
    for (int j : sigma) mono.alpha[std::size_t(j - 1)] -= 1;
    if (k.is_face(mono.v_support())) basis.push_back(std::move(mono));
  });
  std::sort(basis.begin(), basis.end());
  return basis;
}

namespace {

void enumerate_multidegrees(const SimplicialComplex& k, int bound, int vertex, Multidegree& current, VertexSet heavy,
                            int used, std::vector<Multidegree>& out) {
  const int m = k.vertex_count();
  if (vertex > m) {
    if (!heavy.empty()) out.push_back(current);
    return;
  }
  for (int e = 0; used + e <= bound; ++e) {
    VertexSet next_heavy = heavy;
    if (e >= 2) {
      next_heavy.insert(vertex);
      if (!k.is_face(next_heavy)) break;
    }
    current[std::size_t(vertex - 1)] = e;
    enumerate_multidegrees(k, bound, vertex + 1, current, next_heavy, used + e, out);
  }
  current[std::size_t(vertex - 1)] = 0;
}

void enumerate_face_monomials(const SimplicialComplex& k, int remaining, int vertex, Multidegree& current,
                              VertexSet used, std::vector<Multidegree>& out) {
  const int m = k.vertex_count();
  if (vertex > m) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    VertexSet next = used;
    if (e > 0) {
      next.insert(vertex);
      if (!k.is_face(next)) break;
    }
    current[std::size_t(vertex - 1)] = e;
    enumerate_face_monomials(k, remaining - e, vertex + 1, current, next, out);
  }
  current[std::size_t(vertex - 1)] = 0;
}

}  // namespace

std::vector<Multidegree> nonsquarefree_multidegrees(const SimplicialComplex& k, int bound) {
  std::vector<Multidegree> out;
  if (k.vertex_count() == 0 || bound < 2) return out;
  Multidegree current(std::size_t(k.vertex_count()), 0);
  enumerate_multidegrees(k, bound, 1, current, {}, 0, out);
  return out;
}

std::vector<Multidegree> face_ring_monomials(const SimplicialComplex& k, int d) {
  std::vector<Multidegree> out;
  Multidegree current(std::size_t(k.vertex_count()), 0);
  if (d < 0) return out;
  enumerate_face_monomials(k, d, 1, current, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> face_ring_hilbert(const SimplicialComplex& k, int bound) {
  if (bound < 0) throw Error(ErrorCode::invalid_input, "Hilbert series bound must be nonnegative");
  std::vector<mpz_class> coeffs(std::size_t(bound) + 1, 0);
  const auto f = k.f_vector();
  coeffs[0] = 1;
  for (int d = 1; d <= bound; ++d) {
    for (std::size_t size = 1; size < f.size(); ++size) {
      // monomials of degree d with support exactly a given face of this size
      mpz_class compositions;
      mpz_bin_uiui(compositions.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(size - 1));
      coeffs[std::size_t(d)] += compositions * mpz_class(static_cast<unsigned long>(f[size]));
    }
  }
  return coeffs;
}

}  // namespace facering
