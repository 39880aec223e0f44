#ifndef MEFE_ENGINES_HPP
#define MEFE_ENGINES_HPP

#include "mefe/engines/deferred_acceptance.hpp"
#include "mefe/engines/max_matching.hpp"
#include "mefe/engines/preference_system.hpp"
#include "mefe/engines/stable_enum.hpp"
#include "mefe/engines/strongly_stable.hpp"

#endif  // MEFE_ENGINES_HPP
