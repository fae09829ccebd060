#include "herzlab/exponent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "herzlab/error.hpp"

namespace herzlab {
namespace detail {

struct ExponentNode {
  virtual ~ExponentNode() = default;
  virtual double value(double r) const = 0;

  ExponentKind kind = ExponentKind::constant;
  double lower = 0.0;
  double upper = 0.0;
  double origin = 0.0;
  double infinity = 0.0;
  std::optional<double> holder;
  bool constant = false;
  std::string text;
};

}  // namespace detail

namespace {

using detail::ExponentNode;
using NodePtr = std::shared_ptr<const ExponentNode>;

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct ConstantNode final : ExponentNode {
  double v;
  explicit ConstantNode(double value) : v(value) {
    kind = ExponentKind::constant;
    lower = upper = origin = infinity = v;
    holder = 0.0;
    constant = true;
    text = "const:" + fmt(v);
  }
  double value(double) const override { return v; }
};

struct LogNode final : ExponentNode {
  double g0;
  double ginf;
  LogNode(double at_origin, double at_infinity) : g0(at_origin), ginf(at_infinity) {
    kind = ExponentKind::log_family;
    lower = std::min(g0, ginf);
    upper = std::max(g0, ginf);
    origin = g0;
    infinity = ginf;
    holder = std::abs(g0 - ginf);
    constant = g0 == ginf;
    text = "log:" + fmt(g0) + "," + fmt(ginf);
  }
  double value(double r) const override {
    return ginf + (g0 - ginf) / std::log(std::numbers::e + r);
  }
};

struct StepNode final : ExponentNode {
  double radius;
  double inner;
  double outer;
  StepNode(double r, double in, double out) : radius(r), inner(in), outer(out) {
    kind = ExponentKind::step;
    lower = std::min(in, out);
    upper = std::max(in, out);
    origin = in;
    infinity = out;
    constant = in == out;
    if (constant) holder = 0.0;
    text = "step:" + fmt(r) + "," + fmt(in) + "," + fmt(out);
  }
  double value(double r) const override { return r < radius ? inner : outer; }
};

struct ConjugateNode final : ExponentNode {
  NodePtr inner;
  explicit ConjugateNode(NodePtr p) : inner(std::move(p)) {
    kind = ExponentKind::conjugate;
    auto conj = [](double v) { return v / (v - 1.0); };
    lower = conj(inner->upper);
    upper = conj(inner->lower);
    origin = conj(inner->origin);
    infinity = conj(inner->infinity);
    if (inner->holder) {
      const double m = inner->lower - 1.0;
      holder = *inner->holder / (m * m);
    }
    constant = inner->constant;
    text = "conj(" + inner->text + ")";
  }
  double value(double r) const override {
    const double v = inner->value(r);
    return v / (v - 1.0);
  }
};

struct HarmonicNode final : ExponentNode {
  NodePtr a;
  NodePtr b;
  HarmonicNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {
    kind = ExponentKind::harmonic_sum;
    auto h = [](double u, double v) { return 1.0 / (1.0 / u + 1.0 / v); };
    lower = h(a->lower, b->lower);
    upper = h(a->upper, b->upper);
    origin = h(a->origin, b->origin);
    infinity = h(a->infinity, b->infinity);
    if (a->holder && b->holder) {
      holder = upper * upper *
               (*a->holder / (a->lower * a->lower) + *b->holder / (b->lower * b->lower));
    }
    constant = a->constant && b->constant;
    text = "harm(" + a->text + "," + b->text + ")";
  }
  double value(double r) const override {
    return 1.0 / (1.0 / a->value(r) + 1.0 / b->value(r));
  }
};

struct SumNode final : ExponentNode {
  NodePtr a;
  NodePtr b;
  SumNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {
    kind = ExponentKind::sum;
    lower = a->lower + b->lower;
    upper = a->upper + b->upper;
    origin = a->origin + b->origin;
    infinity = a->infinity + b->infinity;
    if (a->holder && b->holder) holder = *a->holder + *b->holder;
    constant = a->constant && b->constant;
    text = "sum(" + a->text + "," + b->text + ")";
  }
  double value(double r) const override { return a->value(r) + b->value(r); }
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::BadExponent, std::string(what) + " must be finite");
}

}  // namespace

ExponentFunction::ExponentFunction(std::shared_ptr<const detail::ExponentNode> node)
    : node_(std::move(node)) {}

ExponentFunction ExponentFunction::constant(double value) {
  require_finite(value, "constant exponent");
  return ExponentFunction(std::make_shared<ConstantNode>(value));
}

ExponentFunction ExponentFunction::log_family(double at_origin, double at_infinity) {
  require_finite(at_origin, "exponent value at the origin");
  require_finite(at_infinity, "exponent value at infinity");
  return ExponentFunction(std::make_shared<LogNode>(at_origin, at_infinity));
}

ExponentFunction ExponentFunction::step(double radius, double inner, double outer) {
  require_finite(inner, "inner step value");
  require_finite(outer, "outer step value");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::BadExponent, "step radius must be positive");
  }
  return ExponentFunction(std::make_shared<StepNode>(radius, inner, outer));
}

ExponentFunction ExponentFunction::harmonic_sum(const ExponentFunction& a,
                                                const ExponentFunction& b) {
  if (a.lower() <= 0.0 || b.lower() <= 0.0) {
    throw Error(ErrorCode::BadExponent, "harmonic sum needs positive exponents");
  }
  return ExponentFunction(std::make_shared<HarmonicNode>(a.node_, b.node_));
}

ExponentFunction ExponentFunction::sum(const ExponentFunction& a, const ExponentFunction& b) {
  return ExponentFunction(std::make_shared<SumNode>(a.node_, b.node_));
}

double ExponentFunction::operator()(const Point& x) const {
  return node_->value(std::hypot(x[0], x[1]));
}

double ExponentFunction::at_radius(double r) const { return node_->value(r); }
double ExponentFunction::lower() const { return node_->lower; }
double ExponentFunction::upper() const { return node_->upper; }
double ExponentFunction::at_origin() const { return node_->origin; }
double ExponentFunction::at_infinity() const { return node_->infinity; }
std::optional<double> ExponentFunction::log_holder_constant() const { return node_->holder; }
bool ExponentFunction::is_constant() const { return node_->constant; }
ExponentKind ExponentFunction::kind() const { return node_->kind; }
std::string ExponentFunction::describe() const { return node_->text; }

std::vector<double> ExponentFunction::sample(const Grid& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(grid.center(i));
  return out;
}

ExponentFunction conjugate(const ExponentFunction& p) {
  if (p.kind() == ExponentKind::conjugate) {
    return ExponentFunction(static_cast<const ConjugateNode&>(*p.node_).inner);
  }
  if (p.lower() <= 1.0) {
    throw Error(ErrorCode::NotInClassP,
                "conjugate exponent needs p^- > 1, got " + std::to_string(p.lower()));
  }
  return ExponentFunction(std::make_shared<ConjugateNode>(p.node_));
}

ExponentFunction parse_exponent(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "exponent spec '" + text + "' lacks a kind prefix");
  }
  const std::string kind = text.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "bad number '" + item + "' in exponent spec '" + text + "'");
    }
  }
  try {
    if (kind == "const" && args.size() == 1) return ExponentFunction::constant(args[0]);
    if (kind == "log" && args.size() == 2) return ExponentFunction::log_family(args[0], args[1]);
    if (kind == "step" && args.size() == 3) return ExponentFunction::step(args[0], args[1], args[2]);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  throw Error(ErrorCode::ConfigError, "unrecognised exponent spec '" + text + "'");
}

}  // namespace herzlab
