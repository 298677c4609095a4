#include "sblab/distcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sblab {

std::string to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

Side side_from_string(std::string const& text) {
  if (text == "left") return Side::kLeft;
  if (text == "right") return Side::kRight;
  throw DomainError("unknown tail side '" + text + "'");
}

double canonical_atom(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

void CompensatedSum::add(double x) noexcept {
  double const t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

FinitePmf::FinitePmf(std::vector<double> atoms, std::vector<double> probs) {
  if (atoms.size() != probs.size()) {
    throw DomainError("FinitePmf: atoms and probs differ in length");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) pairs.emplace_back(atoms[i], probs[i]);
  canonicalize(std::move(pairs));
}

FinitePmf FinitePmf::point_mass(double c) { return FinitePmf({c}, {1.0}); }

FinitePmf FinitePmf::from_pairs(std::vector<std::pair<double, double>> pairs) {
  FinitePmf p;
  p.canonicalize(std::move(pairs));
  return p;
}

FinitePmf FinitePmf::normalized(std::vector<std::pair<double, double>> pairs) {
  CompensatedSum total;
  for (auto const& [x, w] : pairs) {
    if (!(w >= 0.0)) throw DomainError("FinitePmf: negative or NaN weight");
    total.add(w);
  }
  if (!(total.value() > 0.0)) throw DomainError("FinitePmf: zero total mass");
  for (auto& pair : pairs) pair.second /= total.value();
  return from_pairs(std::move(pairs));
}

void FinitePmf::canonicalize(std::vector<std::pair<double, double>> pairs) {
  for (auto& [x, w] : pairs) {
    if (!std::isfinite(x)) throw DomainError("FinitePmf: non-finite atom");
    if (!(w >= 0.0)) throw DomainError("FinitePmf: negative or NaN probability");
    x = canonical_atom(x);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](auto const& a, auto const& b) { return a.first < b.first; });
  atoms_.clear();
  probs_.clear();
  CompensatedSum total;
  std::size_t i = 0;
  while (i < pairs.size()) {
    CompensatedSum mass;
    std::size_t j = i;
    for (; j < pairs.size() && pairs[j].first == pairs[i].first; ++j) {
      mass.add(pairs[j].second);
    }
    if (mass.value() > 0.0) {
      atoms_.push_back(pairs[i].first);
      probs_.push_back(mass.value());
      total.add(mass.value());
    }
    i = j;
  }
  if (atoms_.empty() || std::fabs(total.value() - 1.0) > 1e-12) {
    throw DomainError("FinitePmf: probabilities must sum to 1 within 1e-12");
  }
}

double FinitePmf::prob_of(double x) const {
  double const key = canonical_atom(x);
  auto const it = std::lower_bound(atoms_.begin(), atoms_.end(), key);
  if (it == atoms_.end() || *it != key) return 0.0;
  return probs_[static_cast<std::size_t>(it - atoms_.begin())];
}

Moments pmf_moments(FinitePmf const& p) {
  CompensatedSum first;
  for (std::size_t i = 0; i < p.size(); ++i) first.add(p.atoms()[i] * p.probs()[i]);
  double const mean = first.value();
  // Centered second moment avoids cancellation for large atoms.
  CompensatedSum second;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double const d = p.atoms()[i] - mean;
    second.add(d * d * p.probs()[i]);
  }
  return {mean, std::max(0.0, second.value())};
}

FinitePmf size_bias_pmf(FinitePmf const& p) {
  if (p.min_atom() < 0.0) throw DomainError("size_bias_pmf: negative atom");
  double const mean = pmf_moments(p).mean;
  if (!(mean > 0.0)) throw DomainError("size_bias_pmf: mean must be positive");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double const x = p.atoms()[i];
    if (x > 0.0) pairs.emplace_back(x, x * p.probs()[i] / mean);
  }
  return FinitePmf::normalized(std::move(pairs));
}

double tv_distance(FinitePmf const& p, FinitePmf const& q) {
  CompensatedSum sum;
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p.atoms()[i] < q.atoms()[j])) {
      sum.add(p.probs()[i++]);
    } else if (i == p.size() || q.atoms()[j] < p.atoms()[i]) {
      sum.add(q.probs()[j++]);
    } else {
      sum.add(std::fabs(p.probs()[i++] - q.probs()[j++]));
    }
  }
  return std::clamp(0.5 * sum.value(), 0.0, 1.0);
}

bool in_tail(double y, double mu, double sigma, double t, Side side) noexcept {
  double const shift = sigma > 0.0 ? t * sigma : t;
  double const slack = 1e-12 * (1.0 + std::fabs(mu) + std::fabs(shift));
  if (side == Side::kRight) return y - mu >= shift - slack;
  return mu - y >= shift - slack;
}

double exact_tail(FinitePmf const& p, double mu, double sigma, double t, Side side) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (in_tail(p.atoms()[i], mu, sigma, t, side)) sum.add(p.probs()[i]);
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

void to_json(nlohmann::json& j, FinitePmf const& p) {
  j = nlohmann::json{{"atoms", std::vector<double>(p.atoms().begin(), p.atoms().end())},
                     {"probs", std::vector<double>(p.probs().begin(), p.probs().end())}};
}

FinitePmf pmf_from_json(nlohmann::json const& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("probs")) {
    throw DomainError("FinitePmf JSON needs \"atoms\" and \"probs\"");
  }
  return FinitePmf(j.at("atoms").get<std::vector<double>>(),
                   j.at("probs").get<std::vector<double>>());
}

}  // namespace sblab
