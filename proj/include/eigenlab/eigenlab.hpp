#ifndef EIGENLAB_HPP
#define EIGENLAB_HPP

#include "eigenlab/error.hpp"
#include "eigenlab/expr.hpp"
#include "eigenlab/opspec.hpp"
#include "eigenlab/discretize.hpp"
#include "eigenlab/perron.hpp"
#include "eigenlab/shooting.hpp"
#include "eigenlab/parallel.hpp"
#include "eigenlab/check.hpp"
#include "eigenlab/unbounded.hpp"
#include "eigenlab/principles.hpp"
#include "eigenlab/asymptotics.hpp"
#include "eigenlab/scenarios.hpp"
#include "eigenlab/config.hpp"
#include "eigenlab/report.hpp"

#endif  // EIGENLAB_HPP
