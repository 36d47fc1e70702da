// Copyright 2026 The bcc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bcc/ns_programs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcc/error.hpp"

namespace bcc {
namespace {

void check_sizes(std::size_t k1, std::size_t k2) {
  if (k1 == 0 || k2 == 0) throw BadParameters("message set sizes must be at least 1");
}

std::string idx(std::size_t a) { return std::to_string(a); }
std::string idx(std::size_t a, std::size_t b) { return idx(a) + "_" + idx(b); }
std::string idx(std::size_t a, std::size_t b, std::size_t c) { return idx(a, b) + "_" + idx(c); }

// Variables and the six constraint families shared by both compact programs.
LpModel build_compact(const ChannelTable& w, std::size_t k1, std::size_t k2) {
  check_sizes(k1, k2);
  const CompactLayout L{w.input_size(), w.out1_size(), w.out2_size()};
  LpModel m(L.num_vars());
  for (std::size_t x = 0; x < L.inputs; ++x) {
    m.set_var_name(L.p(x), "p_" + idx(x));
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
      for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
        m.set_var_name(L.r(x, y1, y2), "r_" + idx(x, y1, y2));
      }
      m.set_var_name(L.r1(x, y1), "ra_" + idx(x, y1));
    }
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) m.set_var_name(L.r2(x, y2), "rb_" + idx(x, y2));
  }
  const double k1d = static_cast<double>(k1), k2d = static_cast<double>(k2);

  for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
      std::vector<LinearTerm> t;
      for (std::size_t x = 0; x < L.inputs; ++x) t.push_back({L.r(x, y1, y2), 1.0});
      m.add_constraint(std::move(t), Relation::kEqual, 1.0, "sum_r_" + idx(y1, y2));
    }
  }
  for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
    std::vector<LinearTerm> t;
    for (std::size_t x = 0; x < L.inputs; ++x) t.push_back({L.r1(x, y1), 1.0});
    m.add_constraint(std::move(t), Relation::kEqual, k2d, "sum_ra_" + idx(y1));
  }
  for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
    std::vector<LinearTerm> t;
    for (std::size_t x = 0; x < L.inputs; ++x) t.push_back({L.r2(x, y2), 1.0});
    m.add_constraint(std::move(t), Relation::kEqual, k1d, "sum_rb_" + idx(y2));
  }
  {
    std::vector<LinearTerm> t;
    for (std::size_t x = 0; x < L.inputs; ++x) t.push_back({L.p(x), 1.0});
    m.add_constraint(std::move(t), Relation::kEqual, k1d * k2d, "sum_p");
  }
  for (std::size_t x = 0; x < L.inputs; ++x) {
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
      m.add_constraint({{L.r1(x, y1), 1.0}, {L.p(x), -1.0}}, Relation::kLessEqual, 0.0,
                       "ra_le_p_" + idx(x, y1));
    }
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
      m.add_constraint({{L.r2(x, y2), 1.0}, {L.p(x), -1.0}}, Relation::kLessEqual, 0.0,
                       "rb_le_p_" + idx(x, y2));
    }
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
      for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
        const std::string s = idx(x, y1, y2);
        m.add_constraint({{L.r(x, y1, y2), 1.0}, {L.r1(x, y1), -1.0}}, Relation::kLessEqual, 0.0,
                         "r_le_ra_" + s);
        m.add_constraint({{L.r(x, y1, y2), 1.0}, {L.r2(x, y2), -1.0}}, Relation::kLessEqual, 0.0,
                         "r_le_rb_" + s);
        m.add_constraint(
            {{L.p(x), 1.0}, {L.r1(x, y1), -1.0}, {L.r2(x, y2), -1.0}, {L.r(x, y1, y2), 1.0}},
            Relation::kGreaterEqual, 0.0, "incl_excl_" + s);
      }
    }
  }
  return m;
}

std::int64_t denominator(std::size_t k1, std::size_t k2, std::int64_t factor) {
  return static_cast<std::int64_t>(k1) * static_cast<std::int64_t>(k2) * factor;
}

}  // namespace

LpModel build_ns_joint(const ChannelTable& w, std::size_t k1, std::size_t k2) {
  LpModel m = build_compact(w, k1, k2);
  const CompactLayout L{w.input_size(), w.out1_size(), w.out2_size()};
  for (std::size_t x = 0; x < L.inputs; ++x) {
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
      for (std::size_t y2 = 0; y2 < L.out2; ++y2) m.set_objective(L.r(x, y1, y2), w(x, y1, y2));
    }
  }
  m.set_objective_denominator(denominator(k1, k2, 1));
  return m;
}

LpModel build_ns_sum(const ChannelTable& w, std::size_t k1, std::size_t k2) {
  LpModel m = build_compact(w, k1, k2);
  const CompactLayout L{w.input_size(), w.out1_size(), w.out2_size()};
  const auto [w1, w2] = marginals(w);
  for (std::size_t x = 0; x < L.inputs; ++x) {
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) m.set_objective(L.r1(x, y1), w1(x, y1));
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) m.set_objective(L.r2(x, y2), w2(x, y2));
  }
  m.set_objective_denominator(denominator(k1, k2, 2));
  return m;
}

LpModel build_ns_full(const ChannelTable& w, std::size_t k1, std::size_t k2, Objective objective,
                      std::size_t var_cap) {
  check_sizes(k1, k2);
  const FullLayout L{w.input_size(), w.out1_size(), w.out2_size(), k1, k2};
  const double n = static_cast<double>(k1) * static_cast<double>(k2) * static_cast<double>(k1) *
                   static_cast<double>(k2) * static_cast<double>(L.inputs) *
                   static_cast<double>(L.out1) * static_cast<double>(L.out2);
  if (n > static_cast<double>(var_cap)) {
    throw SizeCapExceeded("full non-signaling program needs " + std::to_string(n) +
                          " variables, cap is " + std::to_string(var_cap));
  }
  LpModel m(L.num_vars());

  // Senders' inputs (i1 i2) do not influence the receivers' joint output.
  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          for (std::size_t j1 = 0; j1 < k1; ++j1) {
            for (std::size_t j2 = 0; j2 < k2; ++j2) {
              std::vector<LinearTerm> t;
              for (std::size_t x = 0; x < L.inputs; ++x) {
                t.push_back({L(i1, i2, y1, y2, x, j1, j2), 1.0});
                t.push_back({L(0, 0, y1, y2, x, j1, j2), -1.0});
              }
              m.add_constraint(std::move(t), Relation::kEqual, 0.0);
            }
          }
        }
      }
    }
  }
  // y1 does not influence (x, j2).
  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      for (std::size_t y1 = 1; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          for (std::size_t x = 0; x < L.inputs; ++x) {
            for (std::size_t j2 = 0; j2 < k2; ++j2) {
              std::vector<LinearTerm> t;
              for (std::size_t j1 = 0; j1 < k1; ++j1) {
                t.push_back({L(i1, i2, y1, y2, x, j1, j2), 1.0});
                t.push_back({L(i1, i2, 0, y2, x, j1, j2), -1.0});
              }
              m.add_constraint(std::move(t), Relation::kEqual, 0.0);
            }
          }
        }
      }
    }
  }
  // y2 does not influence (x, j1).
  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 1; y2 < L.out2; ++y2) {
          for (std::size_t x = 0; x < L.inputs; ++x) {
            for (std::size_t j1 = 0; j1 < k1; ++j1) {
              std::vector<LinearTerm> t;
              for (std::size_t j2 = 0; j2 < k2; ++j2) {
                t.push_back({L(i1, i2, y1, y2, x, j1, j2), 1.0});
                t.push_back({L(i1, i2, y1, 0, x, j1, j2), -1.0});
              }
              m.add_constraint(std::move(t), Relation::kEqual, 0.0);
            }
          }
        }
      }
    }
  }
  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          std::vector<LinearTerm> t;
          for (std::size_t x = 0; x < L.inputs; ++x) {
            for (std::size_t j1 = 0; j1 < k1; ++j1) {
              for (std::size_t j2 = 0; j2 < k2; ++j2) t.push_back({L(i1, i2, y1, y2, x, j1, j2), 1.0});
            }
          }
          m.add_constraint(std::move(t), Relation::kEqual, 1.0);
        }
      }
    }
  }

  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          for (std::size_t x = 0; x < L.inputs; ++x) {
            const double wv = w(x, y1, y2);
            if (wv == 0.0) continue;
            if (objective == Objective::kJoint) {
              m.add_objective(L(i1, i2, y1, y2, x, i1, i2), wv);
            } else {
              // Each receiver's success, averaged; W sums to its marginals
              // because the per-receiver box marginals do not depend on the
              // other receiver's output.
              for (std::size_t j2 = 0; j2 < k2; ++j2) m.add_objective(L(i1, i2, y1, y2, x, i1, j2), wv);
              for (std::size_t j1 = 0; j1 < k1; ++j1) m.add_objective(L(i1, i2, y1, y2, x, j1, i2), wv);
            }
          }
        }
      }
    }
  }
  m.set_objective_denominator(denominator(k1, k2, objective == Objective::kJoint ? 1 : 2));
  return m;
}

LpModel build_decoder_box_lp(const ChannelTable& w, const std::vector<std::size_t>& encoder,
                             std::size_t k1, std::size_t k2, Objective objective) {
  check_sizes(k1, k2);
  if (encoder.size() != k1 * k2) {
    throw DimensionMismatch("encoder has " + std::to_string(encoder.size()) + " entries, expected " +
                            std::to_string(k1 * k2));
  }
  for (std::size_t x : encoder) {
    if (x >= w.input_size()) throw DimensionMismatch("encoder maps to input " + std::to_string(x));
  }
  const DecoderBoxLayout L{w.out1_size(), w.out2_size(), k1, k2};
  LpModel m(L.num_vars());

  // Receiver 1's marginal does not depend on y2.
  for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
    for (std::size_t y2 = 1; y2 < L.out2; ++y2) {
      for (std::size_t j1 = 0; j1 < k1; ++j1) {
        std::vector<LinearTerm> t;
        for (std::size_t j2 = 0; j2 < k2; ++j2) {
          t.push_back({L(j1, j2, y1, y2), 1.0});
          t.push_back({L(j1, j2, y1, 0), -1.0});
        }
        m.add_constraint(std::move(t), Relation::kEqual, 0.0);
      }
    }
  }
  // Receiver 2's marginal does not depend on y1.
  for (std::size_t y1 = 1; y1 < L.out1; ++y1) {
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
      for (std::size_t j2 = 0; j2 < k2; ++j2) {
        std::vector<LinearTerm> t;
        for (std::size_t j1 = 0; j1 < k1; ++j1) {
          t.push_back({L(j1, j2, y1, y2), 1.0});
          t.push_back({L(j1, j2, 0, y2), -1.0});
        }
        m.add_constraint(std::move(t), Relation::kEqual, 0.0);
      }
    }
  }
  for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
      std::vector<LinearTerm> t;
      for (std::size_t j1 = 0; j1 < k1; ++j1) {
        for (std::size_t j2 = 0; j2 < k2; ++j2) t.push_back({L(j1, j2, y1, y2), 1.0});
      }
      m.add_constraint(std::move(t), Relation::kEqual, 1.0);
    }
  }

  for (std::size_t i1 = 0; i1 < k1; ++i1) {
    for (std::size_t i2 = 0; i2 < k2; ++i2) {
      const std::size_t x = encoder[i1 * k2 + i2];
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          const double wv = w(x, y1, y2);
          if (wv == 0.0) continue;
          if (objective == Objective::kJoint) {
            m.add_objective(L(i1, i2, y1, y2), wv);
          } else {
            for (std::size_t j2 = 0; j2 < k2; ++j2) m.add_objective(L(i1, j2, y1, y2), wv);
            for (std::size_t j1 = 0; j1 < k1; ++j1) m.add_objective(L(j1, i2, y1, y2), wv);
          }
        }
      }
    }
  }
  m.set_objective_denominator(denominator(k1, k2, objective == Objective::kJoint ? 1 : 2));
  return m;
}

double NsSolution::max_violation() const {
  double worst = 0.0;
  auto at_r = [&](std::size_t x, std::size_t y1, std::size_t y2) {
    return r[(x * out1 + y1) * out2 + y2];
  };
  for (std::size_t y1 = 0; y1 < out1; ++y1) {
    for (std::size_t y2 = 0; y2 < out2; ++y2) {
      double s = 0.0;
      for (std::size_t x = 0; x < inputs; ++x) s += at_r(x, y1, y2);
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  for (std::size_t y1 = 0; y1 < out1; ++y1) {
    double s = 0.0;
    for (std::size_t x = 0; x < inputs; ++x) s += r1[x * out1 + y1];
    worst = std::max(worst, std::abs(s - static_cast<double>(k2)));
  }
  for (std::size_t y2 = 0; y2 < out2; ++y2) {
    double s = 0.0;
    for (std::size_t x = 0; x < inputs; ++x) s += r2[x * out2 + y2];
    worst = std::max(worst, std::abs(s - static_cast<double>(k1)));
  }
  double sp = 0.0;
  for (double v : p) sp += v;
  worst = std::max(worst, std::abs(sp - static_cast<double>(k1 * k2)));
  for (std::size_t x = 0; x < inputs; ++x) {
    for (std::size_t y1 = 0; y1 < out1; ++y1) {
      worst = std::max(worst, r1[x * out1 + y1] - p[x]);
    }
    for (std::size_t y2 = 0; y2 < out2; ++y2) {
      worst = std::max(worst, r2[x * out2 + y2] - p[x]);
    }
    for (std::size_t y1 = 0; y1 < out1; ++y1) {
      for (std::size_t y2 = 0; y2 < out2; ++y2) {
        const double rv = at_r(x, y1, y2), a = r1[x * out1 + y1], b = r2[x * out2 + y2];
        worst = std::max({worst, -rv, rv - a, rv - b, -(p[x] - a - b + rv)});
      }
    }
  }
  return worst;
}

NsSolution extract_ns_solution(const ChannelTable& w, std::size_t k1, std::size_t k2,
                               const LpSolution& solution, double tolerance) {
  if (!solution.optimal()) {
    throw LpError(std::string("compact program not optimal: ") + to_string(solution.status));
  }
  const CompactLayout L{w.input_size(), w.out1_size(), w.out2_size()};
  if (solution.assignment.size() != L.num_vars()) {
    throw InvariantViolation("solution has " + std::to_string(solution.assignment.size()) +
                             " variables, compact layout needs " + std::to_string(L.num_vars()));
  }
  NsSolution ns;
  ns.inputs = L.inputs;
  ns.out1 = L.out1;
  ns.out2 = L.out2;
  ns.k1 = k1;
  ns.k2 = k2;
  const auto& a = solution.assignment;
  for (std::size_t x = 0; x < L.inputs; ++x) {
    ns.p.push_back(a[L.p(x)]);
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
      for (std::size_t y2 = 0; y2 < L.out2; ++y2) ns.r.push_back(a[L.r(x, y1, y2)]);
    }
  }
  for (std::size_t x = 0; x < L.inputs; ++x) {
    for (std::size_t y1 = 0; y1 < L.out1; ++y1) ns.r1.push_back(a[L.r1(x, y1)]);
  }
  for (std::size_t x = 0; x < L.inputs; ++x) {
    for (std::size_t y2 = 0; y2 < L.out2; ++y2) ns.r2.push_back(a[L.r2(x, y2)]);
  }
  ns.value = solution.value;
  const double v = ns.max_violation();
  if (v > tolerance) {
    throw InvariantViolation("compact solution violates its constraints by " + std::to_string(v));
  }
  return ns;
}

std::vector<double> reconstruct_full_box(const NsSolution& ns) {
  if (ns.k1 < 2 || ns.k2 < 2) throw BadParameters("box reconstruction needs k1, k2 >= 2");
  const FullLayout L{ns.inputs, ns.out1, ns.out2, ns.k1, ns.k2};
  const double k1 = static_cast<double>(ns.k1), k2 = static_cast<double>(ns.k2);
  const double kk = k1 * k2;
  std::vector<double> box(L.num_vars(), 0.0);
  for (std::size_t i1 = 0; i1 < ns.k1; ++i1) {
    for (std::size_t i2 = 0; i2 < ns.k2; ++i2) {
      for (std::size_t y1 = 0; y1 < ns.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < ns.out2; ++y2) {
          for (std::size_t x = 0; x < ns.inputs; ++x) {
            const double r = ns.r[(x * ns.out1 + y1) * ns.out2 + y2];
            const double a = ns.r1[x * ns.out1 + y1];
            const double b = ns.r2[x * ns.out2 + y2];
            const double p = ns.p[x];
            for (std::size_t j1 = 0; j1 < ns.k1; ++j1) {
              for (std::size_t j2 = 0; j2 < ns.k2; ++j2) {
                double v;
                if (j1 == i1 && j2 == i2) {
                  v = r / kk;
                } else if (j2 == i2) {
                  v = (b - r) / (kk * (k1 - 1));
                } else if (j1 == i1) {
                  v = (a - r) / (kk * (k2 - 1));
                } else {
                  v = (p - a - b + r) / (kk * (k1 - 1) * (k2 - 1));
                }
                box[L(i1, i2, y1, y2, x, j1, j2)] = v;
              }
            }
          }
        }
      }
    }
  }
  return box;
}

double full_box_violation(const FullLayout& L, const std::vector<double>& box) {
  if (box.size() != L.num_vars()) throw DimensionMismatch("box size does not match layout");
  double worst = 0.0;
  for (double v : box) worst = std::max(worst, -v);
  for (std::size_t i1 = 0; i1 < L.k1; ++i1) {
    for (std::size_t i2 = 0; i2 < L.k2; ++i2) {
      for (std::size_t y1 = 0; y1 < L.out1; ++y1) {
        for (std::size_t y2 = 0; y2 < L.out2; ++y2) {
          double total = 0.0;
          for (std::size_t x = 0; x < L.inputs; ++x) {
            for (std::size_t j1 = 0; j1 < L.k1; ++j1) {
              for (std::size_t j2 = 0; j2 < L.k2; ++j2) {
                const double v = box[L(i1, i2, y1, y2, x, j1, j2)];
                total += v;
              }
            }
          }
          worst = std::max(worst, std::abs(total - 1.0));
          for (std::size_t j1 = 0; j1 < L.k1; ++j1) {
            for (std::size_t j2 = 0; j2 < L.k2; ++j2) {
              double s = 0.0, s0 = 0.0;
              for (std::size_t x = 0; x < L.inputs; ++x) {
                s += box[L(i1, i2, y1, y2, x, j1, j2)];
                s0 += box[L(0, 0, y1, y2, x, j1, j2)];
              }
              worst = std::max(worst, std::abs(s - s0));
            }
          }
          for (std::size_t x = 0; x < L.inputs; ++x) {
            for (std::size_t j2 = 0; j2 < L.k2; ++j2) {
              double s = 0.0, s0 = 0.0;
              for (std::size_t j1 = 0; j1 < L.k1; ++j1) {
                s += box[L(i1, i2, y1, y2, x, j1, j2)];
                s0 += box[L(i1, i2, 0, y2, x, j1, j2)];
              }
              worst = std::max(worst, std::abs(s - s0));
            }
            for (std::size_t j1 = 0; j1 < L.k1; ++j1) {
              double s = 0.0, s0 = 0.0;
              for (std::size_t j2 = 0; j2 < L.k2; ++j2) {
                s += box[L(i1, i2, y1, y2, x, j1, j2)];
                s0 += box[L(i1, i2, y1, 0, x, j1, j2)];
              }
              worst = std::max(worst, std::abs(s - s0));
            }
          }
        }
      }
    }
  }
  return worst;
}

NsValue solve_ns(const ChannelTable& w, std::size_t k1, std::size_t k2, Objective objective,
                 const LpOptions& options) {
  const LpModel m =
      objective == Objective::kJoint ? build_ns_joint(w, k1, k2) : build_ns_sum(w, k1, k2);
  const LpSolution sol = lp_solve(m, options);
  NsValue out;
  out.solution = extract_ns_solution(w, k1, k2, sol);
  out.value = sol.value;
  out.pivots = sol.pivots;
  return out;
}

}  // namespace bcc
