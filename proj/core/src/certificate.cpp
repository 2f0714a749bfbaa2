#include "bmvshs/certificate.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace bmvshs {

using nlohmann::json;

std::string to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

Parity parity_from_string(std::string_view s) {
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  throw std::invalid_argument("bad parity: '" + std::string(s) + "'");
}

Word GeneratorTriple::word(Parity parity) const {
  const bool odd = parity == Parity::odd;
  std::size_t head = static_cast<std::size_t>(k);
  std::size_t tail = static_cast<std::size_t>(k_prime);
  if (family == GeneratorFamily::v0) {
    if (odd) tail += 1;
  } else {
    head += 1;
    if (!odd) tail += 1;
  }
  Word w = Word::run(Letter::X, head);
  w.append(Word::run(Letter::Y, 2));
  w.append(Word::run(Letter::X, static_cast<std::size_t>(l)));
  w.append(Word::run(Letter::Y, 2));
  w.append(Word::run(Letter::X, tail));
  return w;
}

std::vector<GeneratorTriple> enumerate_v0(int m) {
  const int budget = m % 2 != 0 ? m - 5 : m - 4;
  std::vector<GeneratorTriple> out;
  for (int k = 0; k <= budget; k += 2)
    for (int l = 0; l + k <= budget; l += 2) {
      const int kp = budget - k - l;
      if (k <= kp) out.push_back({k, l, kp, GeneratorFamily::v0});
    }
  return out;
}

std::vector<GeneratorTriple> enumerate_v1(int m) {
  const bool odd = m % 2 != 0;
  const int budget = odd ? m - 5 : m - 6;
  std::vector<GeneratorTriple> out;
  for (int k = 0; k <= budget; k += 2)
    for (int l = 0; l + k <= budget; l += 2) {
      const int kp = budget - k - l;
      if (odd ? k + 1 <= kp : k <= kp) out.push_back({k, l, kp, GeneratorFamily::v1});
    }
  return out;
}

Polynomial Certificate::expansion() const {
  Polynomial sum;
  for (const Polynomial& f : generators) sum += star(f) * f;
  return multiplier * sum;
}

std::vector<std::vector<Word>> Certificate::half_weighted_words() const {
  std::vector<std::vector<Word>> out(generators.size());
  const Rational half(1, 2);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& [w, c] : generators[i].terms())
      if (c == half) out[i].push_back(w);
  return out;
}

Certificate build_odd(int m) {
  if (m % 2 == 0) throw std::invalid_argument("build_odd requires odd m");
  if (m < 5) throw std::invalid_argument("build_odd requires m >= 5");
  Certificate cert;
  cert.m = m;
  cert.parity = Parity::odd;
  cert.multiplier = m;
  cert.generators.resize(static_cast<std::size_t>((m - 5) / 2) + 1);
  for (const auto& t : enumerate_v0(m))
    cert.generators[static_cast<std::size_t>(t.k)].add_term(t.word(Parity::odd), 1);
  for (const auto& t : enumerate_v1(m))
    cert.generators[static_cast<std::size_t>(t.k + 1)].add_term(t.word(Parity::odd), 1);
  return cert;
}

Certificate build_even(int m) {
  if (m % 2 != 0) throw std::invalid_argument("build_even requires even m");
  if (m < 6) throw std::invalid_argument("build_even requires m >= 6");
  Certificate cert;
  cert.m = m;
  cert.parity = Parity::even;
  cert.multiplier = m;
  cert.generators.resize(static_cast<std::size_t>((m - 4) / 2) + 1);
  const auto weight = [](const GeneratorTriple& t) {
    return t.k == t.k_prime ? Rational(1, 2) : Rational(1);
  };
  for (const auto& t : enumerate_v0(m))
    cert.generators[static_cast<std::size_t>(t.k)].add_term(t.word(Parity::even), weight(t));
  for (const auto& t : enumerate_v1(m))
    cert.generators[static_cast<std::size_t>(t.k + 1)].add_term(t.word(Parity::even),
                                                                weight(t));
  return cert;
}

Certificate build(int m) { return m % 2 != 0 ? build_odd(m) : build_even(m); }

bool in_v2(const Word& w) {
  if (w.empty() || w.at(0) != Letter::X) return false;
  return squared_reading(w.subword(1, w.size() - 1)).has_value();
}

Certificate to_v2_form(const Certificate& cert) {
  if (cert.parity == Parity::even)
    throw std::invalid_argument(
        "to_v2_form supports odd m only; no explicit V2 rewriting is available for even m");
  Certificate out = cert;
  for (Polynomial& g : out.generators) {
    if (g.is_zero()) continue;
    bool all_v2 = true;
    for (const auto& [w, c] : g.terms()) all_v2 = all_v2 && in_v2(w);
    if (!all_v2) g = star(g);
  }
  for (const Polynomial& g : out.generators)
    for (const auto& [w, c] : g.terms())
      if (!in_v2(w)) throw std::logic_error("to_v2_form produced a word outside V2");
  if (!cyc_equivalent(out.expansion(), cert.expansion()))
    throw std::logic_error("to_v2_form changed the expansion class decomposition");
  return out;
}

Rational expected_class_count(int m) {
  if (m < 5) throw std::invalid_argument("expected_class_count requires m >= 5");
  const Rational total(binomial(m, 4));
  return m % 2 != 0 ? total / m : total;
}

WordCountReport word_count_check(const Certificate& cert) {
  WordCountReport rep;
  rep.m = cert.m;
  rep.parity = cert.parity;
  const int m = cert.m;
  const bool odd = cert.parity == Parity::odd;
  bool ok = true;
  const Rational half(1, 2);
  for (std::size_t k = 0; k < cert.generators.size(); ++k) {
    GeneratorCount gc;
    gc.k = static_cast<int>(k);
    const int expected_units = odd ? (m - 3) / 2 - gc.k : (m - 4) / 2 - gc.k;
    gc.expected_unit_words = expected_units > 0 ? static_cast<std::size_t>(expected_units) : 0;
    gc.expected_half_words = odd ? 0 : 1;
    bool clean = true;
    for (const auto& [w, c] : cert.generators[k].terms()) {
      if (c == 1)
        ++gc.actual_unit_words;
      else if (c == half)
        ++gc.actual_half_words;
      else
        clean = false;
    }
    gc.pass = clean && gc.actual_unit_words == gc.expected_unit_words &&
              gc.actual_half_words == gc.expected_half_words;
    ok = ok && gc.pass;
    rep.per_generator.push_back(gc);
  }
  if (odd) {
    const int half_span = (m - 3) / 2;
    rep.expected_total =
        Rational(Integer(half_span) * ((m - 1) / 2) * (m - 2), 6);
    rep.actual_total = Rational(cert.expansion().term_count());
  } else {
    rep.expected_total = Rational(binomial(m, 4));
    rep.actual_total = cert.expansion().coefficient_sum();
  }
  rep.passed = ok && rep.expected_total == rep.actual_total;
  return rep;
}

InequivalenceReport pairwise_inequivalence_check(const Certificate& cert) {
  InequivalenceReport rep;
  rep.m = cert.m;
  rep.parity = cert.parity;
  const Polynomial exp = cert.expansion();
  rep.expansion_words = exp.term_count();

  std::map<CyclicClass, std::vector<std::pair<Word, Rational>>> by_class;
  for (const auto& [w, c] : exp.terms()) by_class[CyclicClass::of(w)].push_back({w, c});
  rep.expansion_classes = by_class.size();

  bool ok = true;
  for (const auto& [cls, members] : by_class) {
    rep.max_words_per_class = std::max(rep.max_words_per_class, members.size());
    if (cert.parity == Parity::odd) {
      if (members.size() != 1) {
        ok = false;
        rep.violations.push_back({cls.str(), std::to_string(members.size()) +
                                                 " expansion words share this class"});
      }
    } else {
      if (members.size() > 2) {
        ok = false;
        rep.violations.push_back({cls.str(), std::to_string(members.size()) +
                                                 " expansion words share this class"});
      }
      Rational sum = 0;
      for (const auto& [w, c] : members) sum += c;
      const auto ord = squared_order(cls.canonical);
      if (!ord) {
        ok = false;
        rep.violations.push_back({cls.str(), "class word has an odd cyclic run"});
      } else if (sum > Rational(*ord)) {
        ok = false;
        rep.violations.push_back(
            {cls.str(), "coefficient sum " + to_string(sum) + " exceeds order " +
                            std::to_string(*ord)});
      }
    }
  }
  rep.passed = ok;
  return rep;
}

std::string Certificate::to_json() const {
  json gens = json::array();
  for (const Polynomial& g : generators) {
    json terms = json::array();
    for (const auto& [w, c] : g.terms()) terms.push_back({to_string(c), w.str()});
    gens.push_back(terms);
  }
  json j{{"m", m},
         {"parity", to_string(parity)},
         {"multiplier", to_string(multiplier)},
         {"generators", gens}};
  return j.dump();
}

Certificate Certificate::from_json(std::string_view text) {
  json j = json::parse(text);
  Certificate cert;
  cert.m = j.at("m").get<int>();
  cert.parity = parity_from_string(j.at("parity").get<std::string>());
  cert.multiplier = parse_rational(j.at("multiplier").get<std::string>());
  for (const auto& gen : j.at("generators")) {
    Polynomial g;
    for (const auto& term : gen) {
      if (!term.is_array() || term.size() != 2)
        throw std::invalid_argument("certificate term must be [coeff, word]");
      g.add_term(Word::parse(term.at(1).get<std::string>()),
                 parse_rational(term.at(0).get<std::string>()));
    }
    cert.generators.push_back(std::move(g));
  }
  return cert;
}

std::string WordCountReport::to_json() const {
  json per = json::array();
  for (const auto& gc : per_generator)
    per.push_back({{"k", gc.k},
                   {"expected_unit_words", gc.expected_unit_words},
                   {"actual_unit_words", gc.actual_unit_words},
                   {"expected_half_words", gc.expected_half_words},
                   {"actual_half_words", gc.actual_half_words},
                   {"pass", gc.pass}});
  json j{{"m", m},
         {"parity", to_string(parity)},
         {"per_generator", per},
         {"expected_total", to_string(expected_total)},
         {"actual_total", to_string(actual_total)},
         {"passed", passed}};
  return j.dump();
}

std::string InequivalenceReport::to_json() const {
  json v = json::array();
  for (const auto& viol : violations) v.push_back({{"class", viol.cls}, {"detail", viol.detail}});
  json j{{"m", m},
         {"parity", to_string(parity)},
         {"expansion_words", expansion_words},
         {"expansion_classes", expansion_classes},
         {"max_words_per_class", max_words_per_class},
         {"violations", v},
         {"passed", passed}};
  return j.dump();
}

}  // namespace bmvshs
