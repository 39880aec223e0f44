#ifndef MEFE_MEFE_HPP
#define MEFE_MEFE_HPP

#include "mefe/dispatch.hpp"
#include "mefe/engines.hpp"
#include "mefe/error.hpp"
#include "mefe/existence.hpp"
#include "mefe/graph.hpp"
#include "mefe/instance.hpp"
#include "mefe/io.hpp"
#include "mefe/oracle.hpp"
#include "mefe/outcome.hpp"
#include "mefe/paramsolvers.hpp"
#include "mefe/polycases.hpp"
#include "mefe/rational.hpp"
#include "mefe/reductions.hpp"
#include "mefe/verify.hpp"

#endif  // MEFE_MEFE_HPP
