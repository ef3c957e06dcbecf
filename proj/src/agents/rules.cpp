#include "faf/agents/rules.hpp"

#include <stdexcept>

namespace faf::agents {

std::string category_name(DecisionRule::Category c) {
    switch (c) {
    case DecisionRule::Category::reactive: return "reactive";
    case DecisionRule::Category::routine: return "routine";
    case DecisionRule::Category::cognitive: return "cognitive";
    }
    throw std::logic_error("unknown rule category");
}

DecisionRule::Category category_from_name(const std::string& name) {
    if (name == "reactive") return DecisionRule::Category::reactive;
    if (name == "routine") return DecisionRule::Category::routine;
    if (name == "cognitive") return DecisionRule::Category::cognitive;
    throw std::invalid_argument("unknown rule category: " + name);
}

} // namespace faf::agents
