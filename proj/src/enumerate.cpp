#include <cmath>
#include <sstream>

#include "class_walk.hpp"
#include "sbm/estimator.hpp"
#include "size_table.hpp"

namespace sbm {
namespace {

std::string cap_message(double estimate, double cap) {
  std::ostringstream os;
  os << "enumeration refused: about " << estimate << " classes exceed the cap of " << cap;
  return os.str();
}

struct CallbackVisitor {
  const std::function<void(const std::vector<int>&, int)>& visit;
  void place(int, int, int) {}
  void unplace(int, int) {}
  void leaf(const std::vector<int>& labels, int first_changed) { visit(labels, first_changed); }
};

}  // namespace

EnumerationCapExceeded::EnumerationCapExceeded(double estimate, double cap)
    : std::runtime_error(cap_message(estimate, cap)), estimate_(estimate), cap_(cap) {}

double count_classes(const SizeConstraint& rule) {
  const double log_count = detail::log_labelled_count(rule);
  if (std::isinf(log_count)) return 0.0;
  return std::round(std::exp(log_count - std::lgamma(rule.k() + 1.0)));
}

void for_each_class(const SizeConstraint& rule,
                    const std::function<void(const std::vector<int>&, int)>& visit, double cap) {
  const double estimate = count_classes(rule);
  if (estimate > cap) throw EnumerationCapExceeded(estimate, cap);
  CallbackVisitor visitor{visit};
  detail::ClassWalk<CallbackVisitor>(rule, visitor).run();
}

std::vector<Assignment> enumerate_classes(const SizeConstraint& rule, double cap) {
  std::vector<Assignment> out;
  for_each_class(
      rule,
      [&](const std::vector<int>& labels, int) {
        out.push_back(Assignment::from_zero_based(labels, rule.k()));
      },
      cap);
  return out;
}

std::vector<Assignment> enumerate_classes(int n, int k, const SpaceKind& kind, double beta,
                                          double cap) {
  return enumerate_classes(SizeConstraint::for_space(n, k, beta, kind), cap);
}

}  // namespace sbm
