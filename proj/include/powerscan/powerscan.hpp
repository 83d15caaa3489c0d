#pragma once

#include "powerscan/bench.hpp"
#include "powerscan/bootstrap.hpp"
#include "powerscan/distance.hpp"
#include "powerscan/errors.hpp"
#include "powerscan/estimators.hpp"
#include "powerscan/io.hpp"
#include "powerscan/mle.hpp"
#include "powerscan/model.hpp"
#include "powerscan/rng.hpp"
#include "powerscan/sample.hpp"
#include "powerscan/synth.hpp"
#include "powerscan/zeta.hpp"
