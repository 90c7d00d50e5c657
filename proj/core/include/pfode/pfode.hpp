#pragma once

#include "pfode/analysis.hpp"
#include "pfode/config.hpp"
#include "pfode/errors.hpp"
#include "pfode/mlf.hpp"
#include "pfode/models.hpp"
#include "pfode/output.hpp"
#include "pfode/problem.hpp"
#include "pfode/random.hpp"
#include "pfode/runner.hpp"
#include "pfode/steppers.hpp"
