#include "revtri/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <thread>

#include "revtri/errors.hpp"

namespace revtri {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FeasibilityReport infeasible(std::string reason) { return {false, std::move(reason), {}}; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------
// Ball-intersection theorems (thm2, cor3, thm4, thm7, cor8, cor9, thm10, thm11)

struct Ball {
  Vector center;
  double radius;
  std::string name;
};

struct BallProblem {
  std::vector<Ball> balls;
  /// Accepted points satisfy ‖x‖² > norm_sq_floor (admissibility of the
  /// radii: p < sqrt(‖x‖² + 1)).
  double norm_sq_floor = 0.0;
};

void require_radius(double p, double upper, const char* name) {
  if (!std::isfinite(p) || !(p > 0.0) || !(p <= upper)) {
    throw InputError(std::string(name) + " = " + fmt_double(p) + " outside its admissible range");
  }
}

void require_ordered(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || !(hi >= lo)) {
    throw InputError("interval parameters must satisfy upper >= lower > 0");
  }
}

std::optional<BallProblem> ball_problem(const TheoremSpec& spec, const OrthonormalFrame& frame) {
  const double inf = std::numeric_limits<double>::infinity();
  BallProblem problem;
  auto add_radius_floor = [&](double p) {
    problem.norm_sq_floor = std::max(problem.norm_sq_floor, p * p - 1.0);
  };
  switch (spec.id) {
    case TheoremId::thm2:
    case TheoremId::cor9: {
      const auto& p = std::get<Thm2Params>(spec.params);
      const double upper = spec.id == TheoremId::cor9 ? 1.0 : inf;
      require_radius(p.p1, upper, "p1");
      require_radius(p.p2, upper, "p2");
      problem.balls = {{frame[0], p.p1, "a"}, {kI * frame[0], p.p2, "i*a"}};
      add_radius_floor(p.p1);
      add_radius_floor(p.p2);
      return problem;
    }
    case TheoremId::cor3:
      problem.balls = {{frame[0], 1.0, "a"}, {kI * frame[0], 1.0, "i*a"}};
      return problem;
    case TheoremId::thm4: {
      const auto& p = std::get<Thm4Params>(spec.params);
      require_radius(p.p, inf, "p");
      problem.balls = {{frame[0], p.p, "a"}};
      add_radius_floor(p.p);
      return problem;
    }
    case TheoremId::thm7: {
      const auto& p = std::get<Thm7Params>(spec.params);
      if (p.p.size() != frame.size() || p.q.size() != frame.size()) {
        throw InputError("thm7: p and q must have one entry per frame member");
      }
      for (std::size_t t = 0; t < frame.size(); ++t) {
        require_radius(p.p[t], inf, "p_t");
        require_radius(p.q[t], inf, "q_t");
        problem.balls.push_back({frame[t], p.p[t], "a_" + std::to_string(t)});
        problem.balls.push_back({kI * frame[t], p.q[t], "i*a_" + std::to_string(t)});
        add_radius_floor(p.p[t]);
        add_radius_floor(p.q[t]);
      }
      return problem;
    }
    case TheoremId::cor8:
      for (std::size_t t = 0; t < frame.size(); ++t) {
        problem.balls.push_back({frame[t], 1.0, "a_" + std::to_string(t)});
        problem.balls.push_back({kI * frame[t], 1.0, "i*a_" + std::to_string(t)});
      }
      return problem;
    case TheoremId::thm10:
    case TheoremId::thm11: {
      const auto& p = std::get<Thm10Params>(spec.params);
      require_ordered(p.m, p.M);
      require_ordered(p.ell, p.L);
      problem.balls = {{((p.m + p.M) / 2.0) * frame[0], (p.M - p.m) / 2.0, "(m+M)/2*a"},
                       {((p.L + p.ell) / 2.0) * (kI * frame[0]), (p.L - p.ell) / 2.0,
                        "(L+ell)/2*i*a"}};
      return problem;
    }
    default:
      return std::nullopt;
  }
}

// Smallest ball known to contain the intersection: either one of the balls
// or, for a pair whose radical hyperplane lies between the centers, the ball
// through their intersection sphere.
Ball proposal_ball(const BallProblem& problem) {
  Ball best = *std::min_element(problem.balls.begin(), problem.balls.end(),
                                [](const Ball& x, const Ball& y) { return x.radius < y.radius; });
  for (std::size_t i = 0; i < problem.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.balls.size(); ++j) {
      const Ball& b1 = problem.balls[i];
      const Ball& b2 = problem.balls[j];
      const Vector axis = b2.center - b1.center;
      const double dist = norm(axis);
      if (dist == 0.0) continue;
      const double offset =
          (dist * dist + b1.radius * b1.radius - b2.radius * b2.radius) / (2.0 * dist);
      if (offset < 0.0 || offset > dist) continue;
      const double h_sq = b1.radius * b1.radius - offset * offset;
      if (h_sq < 0.0) continue;
      const double h = std::sqrt(h_sq);
      if (h < best.radius) best = {b1.center + (offset / dist) * axis, h, "lens"};
    }
  }
  return best;
}

bool inside_all(const Vector& x, const BallProblem& problem) {
  for (const auto& b : problem.balls) {
    if (norm(x - b.center) > b.radius) return false;
  }
  const double n = norm(x);
  return n >= 1e-9 && n * n > problem.norm_sq_floor;
}

// Vector-level acceptance through the same code path that certifies it.
bool passes_hypotheses(const Vector& x, const TheoremSpec& spec, const OrthonormalFrame& frame) {
  try {
    return evaluate(VectorFamily({x}), frame, spec, 0.0).hypothesis.satisfied;
  } catch (const InputError&) {
    return false;
  }
}

std::optional<FeasibilityReport> analytic_infeasibility(const BallProblem& problem) {
  for (std::size_t i = 0; i < problem.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.balls.size(); ++j) {
      const Ball& b1 = problem.balls[i];
      const Ball& b2 = problem.balls[j];
      const double dist = norm(b1.center - b2.center);
      if (dist > b1.radius + b2.radius) {
        return infeasible("balls around " + b1.name + " and " + b2.name +
                          " are disjoint: center distance " + fmt_double(dist) +
                          " exceeds radius sum " + fmt_double(b1.radius + b2.radius));
      }
    }
  }
  return std::nullopt;
}

SampleOutcome sample_balls(const TheoremSpec& spec, const OrthonormalFrame& frame,
                           const BallProblem& problem, std::size_t n, std::mt19937_64& rng) {
  if (auto report = analytic_infeasibility(problem)) return *report;
  const Ball proposal = proposal_ball(problem);
  std::vector<Vector> xs;
  for (std::size_t k = 0; k < n; ++k) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kProposalCap && !accepted; ++attempt) {
      Vector x = sample_in_ball(proposal.center, proposal.radius, rng);
      if (inside_all(x, problem) && passes_hypotheses(x, spec, frame)) {
        xs.push_back(std::move(x));
        accepted = true;
      }
      if (proposal.radius == 0.0) break;
    }
    if (!accepted) {
      if (proposal.radius == 0.0) {
        return infeasible("degenerate ball center " + proposal.name +
                          " violates the remaining constraints");
      }
      return infeasible("sampling cap: no admissible proposal for vector " + std::to_string(k) +
                        " in " + std::to_string(kProposalCap) + " draws");
    }
  }
  return VectorFamily(std::move(xs));
}

// Frame-ball theorems (thm7, cor8). With u_t = <x, a_t> and s = ‖x‖², the
// balls around a_t and i·a_t read Re u_t >= (s + 1 - p_t²)/2 and
// Im u_t >= (s + 1 - q_t²)/2, so a point exists at squared norm s iff
// g(s) = Σ_j max(0, (s + 1 - P_j²)/2)² - s <= 0 over all 2m radii P_j.
// g is convex, so the feasible norms form an interval.

double frame_ball_gap(std::span<const double> radii, double s) {
  double total = 0.0;
  for (double P : radii) {
    const double c = std::max(0.0, (s + 1.0 - P * P) / 2.0);
    total += c * c;
  }
  return total - s;
}

SampleOutcome sample_frame_balls(const TheoremSpec& spec, const OrthonormalFrame& frame,
                                 const BallProblem& problem, std::size_t n,
                                 std::mt19937_64& rng) {
  std::vector<double> radii;
  for (const auto& b : problem.balls) radii.push_back(b.radius);
  const double p_min = *std::min_element(radii.begin(), radii.end());
  const double lower = std::max(0.0, problem.norm_sq_floor);
  const double upper = (p_min + 1.0) * (p_min + 1.0);

  auto g = [&](double s) { return frame_ball_gap(radii, s); };
  double lo = lower, hi = upper;
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (g(a) <= g(b)) hi = b; else lo = a;
  }
  const double s_best = (lo + hi) / 2.0;
  if (!(g(s_best) < 0.0)) {
    return infeasible("ball constraints have empty intersection: min over ||x||^2 of "
                      "sum_j max(0, (||x||^2 + 1 - P_j^2)/2)^2 - ||x||^2 is " +
                      fmt_double(g(s_best)));
  }
  auto root = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = (inside + outside) / 2.0;
      (g(mid) < 0.0 ? inside : outside) = mid;
    }
    return inside;
  };
  const double s_lo = g(lower) < 0.0 ? lower : root(s_best, lower);
  const double s_hi = g(upper) < 0.0 ? upper : root(s_best, upper);

  const std::size_t m = frame.size();
  const bool has_complement = frame.dimension() > m;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> xs;
  for (std::size_t k = 0; k < n; ++k) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kProposalCap && !accepted; ++attempt) {
      const double s = uniform(rng, s_lo, s_hi);
      // Start at the lowest admissible corner and move outward to the sphere.
      std::vector<double> base(2 * m), dir(2 * m);
      double base_sq = 0.0, dir_sq = 0.0;
      for (std::size_t j = 0; j < 2 * m; ++j) {
        const double c = (s + 1.0 - radii[j] * radii[j]) / 2.0;
        base[j] = std::max(0.0, c);
        base_sq += base[j] * base[j];
        const double z = normal(rng);
        dir[j] = c >= 0.0 ? std::abs(z) : z;
        dir_sq += dir[j] * dir[j];
      }
      if (base_sq > s || dir_sq == 0.0) continue;
      double proj = 0.0;
      for (std::size_t j = 0; j < 2 * m; ++j) {
        dir[j] /= std::sqrt(dir_sq);
        proj += base[j] * dir[j];
      }
      const double lambda_max = -proj + std::sqrt(proj * proj + s - base_sq);
      const double lambda = has_complement ? lambda_max * uniform(rng, 0.0, 1.0) : lambda_max;

      Vector x(frame.dimension());
      double u_sq = 0.0;
      for (std::size_t t = 0; t < m; ++t) {
        const Complex u(base[2 * t] + lambda * dir[2 * t], base[2 * t + 1] + lambda * dir[2 * t + 1]);
        u_sq += std::norm(u);
        x += u * frame[t];
      }
      if (has_complement) {
        x += std::sqrt(std::max(0.0, s - u_sq)) * random_unit_orthogonal(frame, rng);
      }
      if (inside_all(x, problem) && passes_hypotheses(x, spec, frame)) {
        xs.push_back(std::move(x));
        accepted = true;
      }
    }
    if (!accepted) {
      return infeasible("sampling cap: no admissible proposal for vector " + std::to_string(k) +
                        " in " + std::to_string(kProposalCap) + " draws");
    }
  }
  return VectorFamily(std::move(xs));
}

// ---------------------------------------------------------------------------
// Inner-product theorems (dm, thm1, thm5, cor6)

// Constraint on one real coordinate of u = <x, a_t> / ‖x‖: sign·u >= lower,
// or no constraint when sign == 0.
struct CoordConstraint {
  double lower = 0.0;
  int sign = 0;
};

CoordConstraint signed_constraint(double c) {
  if (c == 0.0) return {};
  return {std::abs(c), c > 0.0 ? 1 : -1};
}

std::optional<std::vector<CoordConstraint>> coefficient_constraints(const TheoremSpec& spec,
                                                                    const OrthonormalFrame& frame) {
  std::vector<CoordConstraint> cs;
  switch (spec.id) {
    case TheoremId::dm: {
      const auto& p = std::get<DmParams>(spec.params);
      if (!std::isfinite(p.r) || p.r < 0.0) throw InputError("dm: r must be >= 0");
      cs = {{p.r, 1}, {}};
      return cs;
    }
    case TheoremId::thm1: {
      const auto& p = std::get<Thm1Params>(spec.params);
      if (!(std::abs(p.r1) <= 1.0) || !(std::abs(p.r2) <= 1.0)) {
        throw InputError("thm1: r1 and r2 must lie in [-1, 1]");
      }
      cs = {signed_constraint(p.r1), signed_constraint(p.r2)};
      return cs;
    }
    case TheoremId::thm5:
    case TheoremId::cor6: {
      const auto& p = std::get<Thm5Params>(spec.params);
      const bool with_rho = spec.id == TheoremId::thm5;
      if (p.r.size() != frame.size() || (with_rho && p.rho.size() != frame.size())) {
        throw InputError("coefficient lists must have one entry per frame member");
      }
      for (std::size_t t = 0; t < frame.size(); ++t) {
        cs.push_back(signed_constraint(p.r[t]));
        cs.push_back(with_rho ? signed_constraint(p.rho[t]) : CoordConstraint{});
      }
      return cs;
    }
    default:
      return std::nullopt;
  }
}

SampleOutcome sample_coefficients(const TheoremSpec& spec, const OrthonormalFrame& frame,
                                  const std::vector<CoordConstraint>& cs, std::size_t n,
                                  std::mt19937_64& rng) {
  double base_sq = 0.0;
  for (const auto& c : cs) base_sq += c.lower * c.lower;
  if (base_sq > 1.0) {
    return infeasible("coefficient norm sqrt(" + fmt_double(base_sq) +
                      ") exceeds 1: only zero vectors satisfy the hypotheses");
  }
  const bool has_complement = frame.dimension() > frame.size();
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<Vector> xs;
  for (std::size_t k = 0; k < n; ++k) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kProposalCap && !accepted; ++attempt) {
      // Direction of the move away from the constraint corner; constrained
      // coordinates only move outward.
      std::vector<double> dir(cs.size());
      double dir_norm_sq = 0.0;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        const double g = normal(rng);
        dir[j] = cs[j].sign == 0 ? g : cs[j].sign * std::abs(g);
        dir_norm_sq += dir[j] * dir[j];
      }
      const double dir_norm = std::sqrt(dir_norm_sq);
      if (dir_norm == 0.0) continue;
      double b = 0.0;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        dir[j] /= dir_norm;
        b += cs[j].lower * std::abs(dir[j]) * (cs[j].sign == 0 ? 0.0 : 1.0);
      }
      const double lambda_max = -b + std::sqrt(b * b + 1.0 - base_sq);
      const double lambda = has_complement ? lambda_max * uniform(rng, 0.0, 1.0) : lambda_max;

      Vector x(frame.dimension());
      double u_sq = 0.0;
      for (std::size_t t = 0; t < frame.size(); ++t) {
        const double re = cs[2 * t].sign * cs[2 * t].lower + lambda * dir[2 * t];
        const double im = cs[2 * t + 1].sign * cs[2 * t + 1].lower + lambda * dir[2 * t + 1];
        u_sq += re * re + im * im;
        x += Complex(re, im) * frame[t];
      }
      if (has_complement) {
        x += std::sqrt(std::max(0.0, 1.0 - u_sq)) * random_unit_orthogonal(frame, rng);
      }
      x *= uniform(rng, 0.25, 2.5);
      if (passes_hypotheses(x, spec, frame)) {
        xs.push_back(std::move(x));
        accepted = true;
      }
    }
    if (!accepted) {
      return infeasible("sampling cap: no admissible proposal for vector " + std::to_string(k) +
                        " in " + std::to_string(kProposalCap) + " draws");
    }
  }
  return VectorFamily(std::move(xs));
}

// ---------------------------------------------------------------------------
// Equality constructors

SampleOutcome coefficient_equality(const OrthonormalFrame& frame,
                                   std::span<const Complex> coeffs,
                                   std::span<const double> norms, std::mt19937_64& rng) {
  double s_sq = 0.0;
  Vector v(frame.dimension());
  for (std::size_t t = 0; t < frame.size(); ++t) {
    s_sq += std::norm(coeffs[t]);
    v += coeffs[t] * frame[t];
  }
  const double s = std::sqrt(s_sq);
  if (s > 1.0 + 1e-12) {
    return infeasible("equality case needs sum of squared coefficients <= 1 (got " +
                      fmt_double(s_sq) + ")");
  }

  std::vector<Vector> xs;
  if (s >= 1.0 - 1e-12) {
    for (double n : norms) xs.push_back((n / s) * v);
    return VectorFamily(std::move(xs));
  }

  const double slack = std::sqrt(1.0 - s_sq);
  Vector b(frame.dimension());
  if (s == 0.0) {
    b = random_unit_vector(frame.dimension(), rng);
  } else if (frame.dimension() > frame.size()) {
    b = random_unit_orthogonal(frame, rng);
  } else {
    return infeasible("equality case with coefficient norm " + fmt_double(s) +
                      " < 1 needs a direction orthogonal to the frame (dimension > m)");
  }
  std::vector<double> sides;
  for (double n : norms) sides.push_back(n * slack);
  auto phases = closing_phases(sides, rng);
  if (!phases && s == 0.0) {
    // Bound zero: the zero family is the only equality case left.
    return VectorFamily(std::vector<Vector>(norms.size(), Vector(frame.dimension())));
  }
  if (!phases) {
    return infeasible("norms cannot close a polygon: need n >= 2 and the largest norm at most "
                      "the sum of the others");
  }
  for (std::size_t k = 0; k < norms.size(); ++k) {
    xs.push_back(norms[k] * v + (sides[k] * (*phases)[k]) * b);
  }
  return VectorFamily(std::move(xs));
}

SampleOutcome lens_equality(const OrthonormalFrame& frame, std::span<const double> norms,
                            std::mt19937_64& rng) {
  const double alpha = norms.front();
  for (double n : norms) {
    if (std::abs(n - alpha) > 1e-12 * alpha) {
      return infeasible("equality case needs all norms equal to alpha = min norm");
    }
  }
  const double m = static_cast<double>(frame.size());
  const double alpha_max = std::sqrt(2.0 / m);
  if (alpha > alpha_max * (1.0 + 1e-12)) {
    return infeasible("equality case needs alpha <= sqrt(2/m) = " + fmt_double(alpha_max));
  }
  Vector v(frame.dimension());
  for (const auto& a : frame.members()) v += a;
  v *= alpha * alpha * Complex(0.5, 0.5);

  const double w_sq = alpha * alpha - m * alpha * alpha * alpha * alpha / 2.0;
  std::vector<Vector> xs;
  if (w_sq <= 1e-24 * alpha * alpha) {
    for (std::size_t k = 0; k < norms.size(); ++k) xs.push_back(v);
    return VectorFamily(std::move(xs));
  }
  if (frame.dimension() <= frame.size()) {
    return infeasible("equality case with alpha < sqrt(2/m) needs dimension > m");
  }
  const Vector b = random_unit_orthogonal(frame, rng);
  const std::vector<double> sides(norms.size(), std::sqrt(w_sq));
  auto phases = closing_phases(sides, rng);
  if (!phases) return infeasible("equality case with alpha < sqrt(2/m) needs n >= 2");
  for (std::size_t k = 0; k < norms.size(); ++k) {
    xs.push_back(v + (sides[k] * (*phases)[k]) * b);
  }
  return VectorFamily(std::move(xs));
}

// ---------------------------------------------------------------------------
// Fuzzing

TheoremParams draw_params(TheoremId id, std::size_t m, std::mt19937_64& rng) {
  auto unit_scaled = [&](std::size_t count) {
    // Random direction scaled to norm in [0, 1.1]: mostly feasible.
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> c(count);
    double sq = 0.0;
    for (auto& v : c) {
      v = normal(rng);
      sq += v * v;
    }
    const double scale = uniform(rng, 0.0, 1.1) / std::max(std::sqrt(sq), 1e-300);
    for (auto& v : c) v *= scale;
    return c;
  };
  switch (id) {
    case TheoremId::dm: return DmParams{uniform(rng, 0.0, 1.0)};
    case TheoremId::thm1: return Thm1Params{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    case TheoremId::thm2: return Thm2Params{uniform(rng, 0.2, 1.6), uniform(rng, 0.2, 1.6)};
    case TheoremId::cor9: return Thm2Params{uniform(rng, 0.6, 1.0), uniform(rng, 0.6, 1.0)};
    case TheoremId::thm4: return Thm4Params{uniform(rng, 0.05, 1.8)};
    case TheoremId::thm5: {
      auto c = unit_scaled(2 * m);
      Thm5Params p;
      for (std::size_t t = 0; t < m; ++t) {
        p.r.push_back(c[2 * t]);
        p.rho.push_back(c[2 * t + 1]);
      }
      return p;
    }
    case TheoremId::cor6: return Thm5Params{unit_scaled(m), std::vector<double>(m, 0.0)};
    case TheoremId::thm7: {
      Thm7Params p;
      for (std::size_t t = 0; t < m; ++t) {
        p.p.push_back(uniform(rng, 0.7, 1.6));
        p.q.push_back(uniform(rng, 0.7, 1.6));
      }
      return p;
    }
    case TheoremId::thm10:
    case TheoremId::thm11: {
      auto interval = [&](double& lo, double& hi) {
        lo = uniform(rng, 0.01, 0.6);
        hi = uniform(rng, 0.0, 1.0) < 0.05 ? lo : lo + uniform(rng, 0.5, 4.0);
      };
      Thm10Params p;
      interval(p.m, p.M);
      interval(p.ell, p.L);
      return p;
    }
    case TheoremId::cor3:
    case TheoremId::cor8:
      return NoParams{};
  }
  return NoParams{};
}

struct TrialOutcome {
  bool sampled = false;
  bool infeasible = false;
  bool rejected = false;
  bool hit = false;
  std::optional<FuzzViolation> violation;
};

TrialOutcome run_trial(TheoremId id, std::size_t trial, std::size_t d_max, std::size_t n_max,
                       std::uint64_t seed) {
  const std::uint64_t trial_seed = mix_seed(seed, trial);
  std::mt19937_64 rng(trial_seed);
  const std::size_t d = uniform_index(rng, 1, d_max);
  const std::size_t n = uniform_index(rng, 1, n_max);
  const std::size_t m = uses_single_vector(id) ? 1 : uniform_index(rng, 1, std::min<std::size_t>(d, 4));

  std::vector<Vector> raw;
  for (std::size_t t = 0; t < m; ++t) raw.push_back(gaussian_vector(d, rng));
  const OrthonormalFrame frame = gram_schmidt(raw);
  const TheoremSpec spec{id, draw_params(id, m, rng)};

  TrialOutcome out;
  std::optional<VectorFamily> family;
  if (uniform(rng, 0.0, 1.0) < 0.8) {
    SampleOutcome sampled = sample_family(spec, frame, n, d, mix_seed(trial_seed, 1));
    if (auto* fam = std::get_if<VectorFamily>(&sampled)) {
      family = std::move(*fam);
      out.sampled = true;
    } else {
      out.infeasible = true;
    }
  }
  if (!family) {
    const double scale = uniform(rng, 0.1, 2.0);
    std::vector<Vector> xs;
    for (std::size_t k = 0; k < n; ++k) xs.push_back(scale * gaussian_vector(d, rng));
    family = VectorFamily(std::move(xs));
  }

  try {
    BoundCertificate cert = evaluate(*family, frame, spec, kDefaultTolerance);
    out.hit = cert.hypothesis.satisfied;
    if (cert.status() == CertificateStatus::soundness_violation) {
      out.violation = FuzzViolation{trial, spec, frame, *family, std::move(cert)};
    }
  } catch (const InputError&) {
    out.rejected = true;
  }
  return out;
}

}  // namespace

std::optional<std::vector<Complex>> closing_phases(std::span<const double> sides,
                                                   std::mt19937_64& rng) {
  const std::size_t n = sides.size();
  if (n == 0) return std::nullopt;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sides[i] > sides[j]; });

  const double longest = sides[order[0]];
  std::vector<Complex> phases(n, Complex(1.0, 0.0));
  if (longest == 0.0) return phases;
  if (n == 1) return std::nullopt;

  // Split the remaining sides into two collinear groups with |S_A - S_B| <=
  // longest, then close the triangle (longest, S_A, S_B).
  std::vector<bool> in_a(n, false);
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t idx = 1; idx < n; ++idx) {
    const std::size_t k = order[idx];
    if (sum_a <= sum_b) {
      in_a[k] = true;
      sum_a += sides[k];
    } else {
      sum_b += sides[k];
    }
  }
  if (longest > (sum_a + sum_b) * (1.0 + 1e-12)) return std::nullopt;

  const double x = (longest * longest + sum_b * sum_b - sum_a * sum_a) / (2.0 * longest);
  const double y = std::sqrt(std::max(0.0, sum_b * sum_b - x * x));
  const Complex apex(x, y);
  const Complex leg_a = apex - longest;
  const Complex leg_b = -apex;
  const Complex dir_a = std::abs(leg_a) > 0.0 ? leg_a / std::abs(leg_a) : Complex(1.0, 0.0);
  const Complex dir_b = std::abs(leg_b) > 0.0 ? leg_b / std::abs(leg_b) : Complex(1.0, 0.0);

  const Complex rotation = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  phases[order[0]] = rotation;
  for (std::size_t idx = 1; idx < n; ++idx) {
    const std::size_t k = order[idx];
    phases[k] = rotation * (in_a[k] ? dir_a : dir_b);
  }
  return phases;
}

SampleOutcome sample_family(const TheoremSpec& spec, const OrthonormalFrame& frame,
                            std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw InputError("sample_family: n must be at least 1");
  if (frame.dimension() != d) {
    throw InputError("sample_family: frame dimension does not match d");
  }
  if (uses_single_vector(spec.id) && frame.size() != 1) {
    throw InputError("sample_family: theorem " + std::string(to_string(spec.id)) +
                     " takes a single unit vector");
  }
  std::mt19937_64 rng(seed);
  try {
    if (auto problem = ball_problem(spec, frame)) {
      if (spec.id == TheoremId::thm7 || spec.id == TheoremId::cor8) {
        return sample_frame_balls(spec, frame, *problem, n, rng);
      }
      return sample_balls(spec, frame, *problem, n, rng);
    }
    if (auto cs = coefficient_constraints(spec, frame)) {
      return sample_coefficients(spec, frame, *cs, n, rng);
    }
  } catch (const std::bad_variant_access&) {
    throw InputError("sample_family: parameters do not match theorem " +
                     std::string(to_string(spec.id)));
  } catch (const InputError& e) {
    return infeasible(std::string("parameters outside the admissible region: ") + e.what());
  }
  throw InputError("sample_family: unsupported theorem");
}

SampleOutcome equality_family(const TheoremSpec& spec, const OrthonormalFrame& frame,
                              std::span<const double> norms, std::uint64_t seed) {
  if (norms.empty()) throw InputError("equality_family: norms must be non-empty");
  for (double n : norms) {
    if (!std::isfinite(n) || !(n > 0.0)) {
      throw InputError("equality_family: norms must be finite and positive");
    }
  }
  if (uses_single_vector(spec.id) && frame.size() != 1) {
    throw InputError("equality_family: theorem " + std::string(to_string(spec.id)) +
                     " takes a single unit vector");
  }
  std::mt19937_64 rng(seed);
  std::vector<Complex> coeffs;
  switch (spec.id) {
    case TheoremId::dm: {
      const auto* p = std::get_if<DmParams>(&spec.params);
      if (!p) throw InputError("equality_family: dm expects {r}");
      if (!(p->r >= 0.0)) return infeasible("dm equality case needs r >= 0");
      coeffs = {Complex(p->r, 0.0)};
      break;
    }
    case TheoremId::thm1: {
      const auto* p = std::get_if<Thm1Params>(&spec.params);
      if (!p) throw InputError("equality_family: thm1 expects {r1, r2}");
      if (p->r1 * p->r1 + p->r2 * p->r2 > 1.0) {
        return infeasible("thm1 equality case needs r1^2 + r2^2 <= 1 (got " +
                          fmt_double(p->r1 * p->r1 + p->r2 * p->r2) + ")");
      }
      coeffs = {Complex(p->r1, p->r2)};
      break;
    }
    case TheoremId::thm5:
    case TheoremId::cor6: {
      const auto* p = std::get_if<Thm5Params>(&spec.params);
      if (!p) throw InputError("equality_family: expects {r, rho}");
      const bool with_rho = spec.id == TheoremId::thm5;
      if (p->r.size() != frame.size() || (with_rho && p->rho.size() != frame.size())) {
        throw InputError("equality_family: coefficient lists must have length m");
      }
      for (std::size_t t = 0; t < frame.size(); ++t) {
        coeffs.emplace_back(p->r[t], with_rho ? p->rho[t] : 0.0);
      }
      break;
    }
    case TheoremId::cor3:
    case TheoremId::cor8:
      return lens_equality(frame, norms, rng);
    default:
      return infeasible("no equality constructor for theorem " +
                        std::string(to_string(spec.id)));
  }
  return coefficient_equality(frame, coeffs, norms, rng);
}

FuzzSummary fuzz_falsify(TheoremId theorem, std::size_t trials, std::size_t d_max,
                         std::size_t n_max, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw InputError("fuzz_falsify: trials must be at least 1");
  if (d_max == 0 || n_max == 0) throw InputError("fuzz_falsify: d_max and n_max must be >= 1");

  std::vector<TrialOutcome> outcomes(trials);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < trials; i += workers) {
      outcomes[i] = run_trial(theorem, i, d_max, n_max, seed);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  FuzzSummary summary;
  summary.theorem = theorem;
  summary.trials_run = trials;
  for (auto& o : outcomes) {
    summary.sampled_families += o.sampled;
    summary.infeasible_draws += o.infeasible;
    summary.rejected_inputs += o.rejected;
    summary.hypothesis_hits += o.hit;
    if (o.violation) summary.violations.push_back(std::move(*o.violation));
  }
  return summary;
}

}  // namespace revtri
